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

#include "clarity/audio/biquad.h"

#include <cmath>
#include <complex>
#include <numbers>

#include "clarity/common/error.h"

namespace clarity {

namespace {

void CheckCutoff(double cutoff, double rate) {
  if (!(cutoff > 0.0 && cutoff < rate / 2)) {
    throw ArgumentError("cutoff must lie in (0, rate/2)");
  }
}

}  // namespace

Biquad Biquad::ButterworthLowpass(double cutoff, double rate) {
  CheckCutoff(cutoff, rate);
  const double w0 = 2.0 * std::numbers::pi * cutoff / rate;
  const double alpha = std::sin(w0) / std::sqrt(2.0);
  const double cw = std::cos(w0);
  const double a0 = 1.0 + alpha;
  return {(1.0 - cw) / 2.0 / a0, (1.0 - cw) / a0, (1.0 - cw) / 2.0 / a0,
          -2.0 * cw / a0, (1.0 - alpha) / a0};
}

Biquad Biquad::ButterworthHighpass(double cutoff, double rate) {
  CheckCutoff(cutoff, rate);
  const double w0 = 2.0 * std::numbers::pi * cutoff / rate;
  const double alpha = std::sin(w0) / std::sqrt(2.0);
  const double cw = std::cos(w0);
  const double a0 = 1.0 + alpha;
  return {(1.0 + cw) / 2.0 / a0, -(1.0 + cw) / a0, (1.0 + cw) / 2.0 / a0,
          -2.0 * cw / a0, (1.0 - alpha) / a0};
}

void Biquad::Process(std::span<double> samples) const {
  double x1 = 0.0, x2 = 0.0, y1 = 0.0, y2 = 0.0;
  for (double& v : samples) {
    const double y = b0 * v + b1 * x1 + b2 * x2 - a1 * y1 - a2 * y2;
    x2 = x1;
    x1 = v;
    y2 = y1;
    y1 = y;
    v = y;
  }
}

std::vector<double> Biquad::Filter(std::span<const double> samples) const {
  std::vector<double> out(samples.begin(), samples.end());
  Process(out);
  return out;
}

double Biquad::Magnitude(double frequency, double rate) const {
  const std::complex<double> z1 =
      std::polar(1.0, -2.0 * std::numbers::pi * frequency / rate);
  const std::complex<double> num = b0 + b1 * z1 + b2 * z1 * z1;
  const std::complex<double> den = 1.0 + a1 * z1 + a2 * z1 * z1;
  return std::abs(num / den);
}

}  // namespace clarity
