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

#include "clarity/audio/dsp.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "clarity/audio/fft.h"
#include "clarity/common/error.h"

namespace clarity {

namespace {

// Below this many multiply-adds direct summation beats the transform.
constexpr size_t kDirectLimit = 1 << 16;

std::vector<double> DirectConvolve(std::span<const double> x,
                                   std::span<const double> h) {
  std::vector<double> y(x.size() + h.size() - 1, 0.0);
  for (size_t i = 0; i < x.size(); ++i) {
    const double xi = x[i];
    if (xi == 0.0) continue;
    for (size_t j = 0; j < h.size(); ++j) y[i + j] += xi * h[j];
  }
  return y;
}

size_t MaxLength(const std::vector<std::vector<double>>& v) {
  size_t n = 0;
  for (const auto& k : v) n = std::max(n, k.size());
  return n;
}

}  // namespace

std::vector<double> Convolve(std::span<const double> signal,
                             std::span<const double> kernel) {
  if (signal.empty() || kernel.empty()) {
    throw ArgumentError("convolve: empty signal or kernel");
  }
  if (signal.size() * kernel.size() <= kDirectLimit ||
      std::min(signal.size(), kernel.size()) <= 16) {
    return DirectConvolve(signal, kernel);
  }
  const size_t out_len = signal.size() + kernel.size() - 1;
  RealFft fft(NextPowerOfTwo(out_len));
  Spectrum xs = fft.Forward(signal);
  const Spectrum hs = fft.Forward(kernel);
  for (size_t k = 0; k < xs.size(); ++k) xs[k] *= hs[k];
  std::vector<double> y = fft.Inverse(xs);
  y.resize(out_len);
  return y;
}

SampleBuffer Convolve(const SampleBuffer& signal,
                      std::span<const double> kernel) {
  if (signal.num_channels() != 1) {
    throw ArgumentError("convolve: expected a mono signal");
  }
  return SampleBuffer::Mono(Convolve(signal[0], kernel), signal.rate());
}

std::vector<std::vector<double>> ConvolveMany(
    std::span<const double> signal,
    const std::vector<std::vector<double>>& kernels) {
  if (signal.empty()) throw ArgumentError("convolve: empty signal");
  const size_t kernel_len = MaxLength(kernels);
  if (kernel_len == 0) throw ArgumentError("convolve: empty kernel");
  const size_t out_len = signal.size() + kernel_len - 1;
  std::vector<std::vector<double>> out;
  out.reserve(kernels.size());
  if (signal.size() * kernel_len <= kDirectLimit) {
    for (const auto& k : kernels) {
      std::vector<double> y = k.empty() ? std::vector<double>(out_len, 0.0)
                                        : DirectConvolve(signal, k);
      y.resize(out_len, 0.0);
      out.push_back(std::move(y));
    }
    return out;
  }
  RealFft fft(NextPowerOfTwo(out_len));
  const Spectrum xs = fft.Forward(signal);
  for (const auto& k : kernels) {
    Spectrum ys = fft.Forward(k);
    for (size_t b = 0; b < ys.size(); ++b) ys[b] *= xs[b];
    std::vector<double> y = fft.Inverse(ys);
    y.resize(out_len);
    out.push_back(std::move(y));
  }
  return out;
}

std::vector<double> ConvolveAndSum(
    const std::vector<std::vector<double>>& signals,
    const std::vector<std::vector<double>>& kernels) {
  if (signals.size() != kernels.size() || signals.empty()) {
    throw ArgumentError("convolve: need one kernel per signal");
  }
  const size_t signal_len = signals.front().size();
  for (const auto& s : signals) {
    if (s.size() != signal_len) {
      throw ArgumentError("convolve: signals differ in length");
    }
  }
  const size_t kernel_len = MaxLength(kernels);
  if (signal_len == 0 || kernel_len == 0) {
    throw ArgumentError("convolve: empty signal or kernel");
  }
  const size_t out_len = signal_len + kernel_len - 1;
  if (signal_len * kernel_len * signals.size() <= kDirectLimit) {
    std::vector<double> acc(out_len, 0.0);
    for (size_t i = 0; i < signals.size(); ++i) {
      if (kernels[i].empty()) continue;
      const std::vector<double> y = DirectConvolve(signals[i], kernels[i]);
      for (size_t n = 0; n < y.size(); ++n) acc[n] += y[n];
    }
    return acc;
  }
  RealFft fft(NextPowerOfTwo(out_len));
  Spectrum acc(fft.num_bins(), {0.0, 0.0});
  for (size_t i = 0; i < signals.size(); ++i) {
    if (kernels[i].empty()) continue;
    const Spectrum xs = fft.Forward(signals[i]);
    const Spectrum hs = fft.Forward(kernels[i]);
    for (size_t b = 0; b < acc.size(); ++b) acc[b] += xs[b] * hs[b];
  }
  std::vector<double> y = fft.Inverse(acc);
  y.resize(out_len);
  return y;
}

std::vector<double> Rms(const SampleBuffer& signal, size_t begin, size_t end) {
  if (begin >= end) throw ArgumentError("rms: empty frame range");
  if (end > signal.num_frames()) {
    throw ArgumentError("rms: frame range exceeds signal length");
  }
  std::vector<double> out;
  out.reserve(signal.num_channels());
  for (size_t c = 0; c < signal.num_channels(); ++c) {
    out.push_back(Rms(signal[c].subspan(begin, end - begin)));
  }
  return out;
}

std::vector<double> Rms(const SampleBuffer& signal) {
  return Rms(signal, 0, signal.num_frames());
}

double Rms(std::span<const double> samples) {
  if (samples.empty()) throw ArgumentError("rms: empty frame range");
  double sum = 0.0;
  for (double v : samples) sum += v * v;
  return std::sqrt(sum / static_cast<double>(samples.size()));
}

double GainToDb(double gain) {
  if (gain <= 0.0) return -std::numeric_limits<double>::infinity();
  return 20.0 * std::log10(gain);
}

}  // namespace clarity
