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

#ifndef CLARITY_AUDIO_FFT_H_
#define CLARITY_AUDIO_FFT_H_

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace clarity {

using Spectrum = std::vector<std::complex<double>>;

// Real-input FFT of a fixed power-of-two size, backed by FFTW. Plans are
// shared per size and created under a lock; Forward/Inverse are safe to call
// concurrently from different threads on different RealFft objects.
class RealFft {
 public:
  explicit RealFft(size_t size);
  ~RealFft();
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  size_t size() const { return size_; }
  size_t num_bins() const { return size_ / 2 + 1; }

  // |input| shorter than size() is zero padded.
  Spectrum Forward(std::span<const double> input);
  // Unnormalized inverse divided by size(), so Inverse(Forward(x)) == x.
  std::vector<double> Inverse(const Spectrum& spectrum);

 private:
  size_t size_;
  double* time_;
  void* freq_;
  void* forward_plan_;
  void* inverse_plan_;
};

// Smallest power of two >= n.
size_t NextPowerOfTwo(size_t n);

}  // namespace clarity

#endif  // CLARITY_AUDIO_FFT_H_
