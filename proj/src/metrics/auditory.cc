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

#include "clarity/metrics/auditory.h"

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "clarity/audio/biquad.h"
#include "clarity/common/error.h"

namespace clarity {

namespace {

constexpr double kMinRate = 16000.0;

// -3 dB bandwidth of an order-4 gammatone is 2 b sqrt(2^(1/4) - 1).
const double kHalfPowerFactor = 2.0 * std::sqrt(std::pow(2.0, 0.25) - 1.0);

}  // namespace

double Erb(double frequency) { return 24.7 * (4.37 * frequency / 1000.0 + 1.0); }

double ErbNumber(double frequency) {
  return 21.4 * std::log10(4.37 * frequency / 1000.0 + 1.0);
}

double ErbNumberToHz(double erb_number) {
  return (std::pow(10.0, erb_number / 21.4) - 1.0) * 1000.0 / 4.37;
}

std::vector<double> BandCenters(const AuditoryConfig& config) {
  if (config.num_bands == 0) throw ArgumentError("need at least one band");
  if (!(config.low_hz > 0.0 && config.high_hz > config.low_hz)) {
    throw ArgumentError("band span must satisfy 0 < low < high");
  }
  const double lo = ErbNumber(config.low_hz);
  const double step =
      (ErbNumber(config.high_hz) - lo) / static_cast<double>(config.num_bands);
  std::vector<double> centers;
  centers.reserve(config.num_bands);
  for (size_t k = 0; k < config.num_bands; ++k) {
    centers.push_back(
        ErbNumberToHz(lo + (static_cast<double>(k) + 0.5) * step));
  }
  return centers;
}

double GammatonePoleBandwidth(double center) {
  return 1.019 * Erb(center) / kHalfPowerFactor;
}

std::vector<std::vector<double>> GammatoneBands(const SampleBuffer& signal,
                                                const AuditoryConfig& config) {
  if (signal.num_channels() != 1) {
    throw ArgumentError("gammatone bank needs a mono signal");
  }
  const double rate = signal.rate();
  if (rate < kMinRate) {
    throw ArgumentError("gammatone bank needs rate >= 16 kHz, got " +
                        std::to_string(rate));
  }
  const std::vector<double> centers = BandCenters(config);
  const std::span<const double> x = signal[0];
  std::vector<std::vector<double>> bands;
  bands.reserve(centers.size());
  for (double fc : centers) {
    const double a =
        std::exp(-2.0 * std::numbers::pi * GammatonePoleBandwidth(fc) / rate);
    const double gain = 1.0 - a;
    const std::complex<double> step =
        std::polar(1.0, 2.0 * std::numbers::pi * fc / rate);
    std::complex<double> carrier{1.0, 0.0};
    std::complex<double> s1{}, s2{}, s3{}, s4{};
    std::vector<double> out(x.size());
    for (size_t n = 0; n < x.size(); ++n) {
      // Demodulate, low-pass with four one-pole stages, remodulate.
      const std::complex<double> u = x[n] * std::conj(carrier);
      s1 = gain * u + a * s1;
      s2 = gain * s1 + a * s2;
      s3 = gain * s2 + a * s3;
      s4 = gain * s3 + a * s4;
      out[n] = 2.0 * (s4 * carrier).real();
      carrier *= step;
      if ((n & 1023) == 1023) carrier /= std::abs(carrier);
    }
    bands.push_back(std::move(out));
  }
  return bands;
}

std::vector<double> EnvelopeDb(std::span<const double> band, double rate,
                               const AuditoryConfig& config) {
  std::vector<double> rectified(band.size());
  for (size_t n = 0; n < band.size(); ++n) {
    rectified[n] = band[n] > 0.0 ? band[n] : 0.0;
  }
  Biquad::ButterworthLowpass(config.envelope_cutoff, rate).Process(rectified);
  const double hop = rate / config.envelope_rate;
  const auto frames = static_cast<size_t>(
      std::floor(static_cast<double>(band.size()) / hop));
  std::vector<double> env(frames);
  const double floor_gain = std::pow(10.0, config.floor_db / 20.0);
  for (size_t k = 0; k < frames; ++k) {
    const auto idx = static_cast<size_t>(std::floor(static_cast<double>(k) * hop));
    const double v = rectified[idx];
    env[k] = v > floor_gain ? 20.0 * std::log10(v) : config.floor_db;
  }
  return env;
}

}  // namespace clarity
