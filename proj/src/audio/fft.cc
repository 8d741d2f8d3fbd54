/*
Copyright 2026 The Clarity Bench Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS-IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#include "clarity/audio/fft.h"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <mutex>
#include <utility>

#include "clarity/common/error.h"

namespace clarity {

namespace {

struct PlanPair {
  fftw_plan forward;
  fftw_plan inverse;
};

std::mutex& PlannerMutex() {
  static std::mutex mutex;
  return mutex;
}

// Plans are made once per size on scratch arrays and executed later through
// the new-array interface. fftw_malloc guarantees the same alignment for all
// arrays, which keeps the chosen codelets (and therefore results) identical
// from run to run.
PlanPair PlansForSize(size_t n) {
  static std::map<size_t, PlanPair> plans;
  std::lock_guard<std::mutex> lock(PlannerMutex());
  auto it = plans.find(n);
  if (it != plans.end()) return it->second;
  double* time = fftw_alloc_real(n);
  fftw_complex* freq = fftw_alloc_complex(n / 2 + 1);
  PlanPair pair{
      fftw_plan_dft_r2c_1d(static_cast<int>(n), time, freq, FFTW_ESTIMATE),
      fftw_plan_dft_c2r_1d(static_cast<int>(n), freq, time, FFTW_ESTIMATE)};
  fftw_free(time);
  fftw_free(freq);
  plans.emplace(n, pair);
  return pair;
}

}  // namespace

size_t NextPowerOfTwo(size_t n) {
  size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

RealFft::RealFft(size_t size) : size_(size) {
  if (size < 2 || (size & (size - 1)) != 0) {
    throw ArgumentError("FFT size must be a power of two >= 2");
  }
  const PlanPair plans = PlansForSize(size);
  forward_plan_ = plans.forward;
  inverse_plan_ = plans.inverse;
  time_ = fftw_alloc_real(size);
  freq_ = fftw_alloc_complex(size / 2 + 1);
}

RealFft::~RealFft() {
  fftw_free(time_);
  fftw_free(freq_);
}

Spectrum RealFft::Forward(std::span<const double> input) {
  if (input.size() > size_) throw ArgumentError("FFT input longer than size");
  std::copy(input.begin(), input.end(), time_);
  std::fill(time_ + input.size(), time_ + size_, 0.0);
  auto* freq = static_cast<fftw_complex*>(freq_);
  fftw_execute_dft_r2c(static_cast<fftw_plan>(forward_plan_), time_, freq);
  Spectrum out(num_bins());
  for (size_t k = 0; k < out.size(); ++k) out[k] = {freq[k][0], freq[k][1]};
  return out;
}

std::vector<double> RealFft::Inverse(const Spectrum& spectrum) {
  if (spectrum.size() != num_bins()) {
    throw ArgumentError("spectrum size does not match FFT size");
  }
  auto* freq = static_cast<fftw_complex*>(freq_);
  for (size_t k = 0; k < spectrum.size(); ++k) {
    freq[k][0] = spectrum[k].real();
    freq[k][1] = spectrum[k].imag();
  }
  fftw_execute_dft_c2r(static_cast<fftw_plan>(inverse_plan_), freq, time_);
  std::vector<double> out(time_, time_ + size_);
  const double scale = 1.0 / static_cast<double>(size_);
  for (double& v : out) v *= scale;
  return out;
}

}  // namespace clarity
