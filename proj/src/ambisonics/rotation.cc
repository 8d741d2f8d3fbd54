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

#include "clarity/ambisonics/rotation.h"

#include <array>
#include <cmath>
#include <string>
#include <utility>

#include "clarity/ambisonics/spherical_harmonics.h"
#include "clarity/common/error.h"

namespace clarity {

YawRotation::YawRotation(int order, double angle)
    : order_(order), angle_(angle), size_(0) {
  if (order < 0 || order > kMaxRotationOrder) {
    throw ArgumentError("yaw rotation supports orders 0.." +
                        std::to_string(kMaxRotationOrder) + ", got " +
                        std::to_string(order));
  }
  size_ = NumAmbiChannels(order);
  matrix_.assign(size_ * size_, 0.0);

  // cos(m a) and sin(m a) by the Chebyshev recurrence
  // f(m) = 2 cos(a) f(m-1) - f(m-2).
  std::array<double, kMaxRotationOrder + 1> cos_m{};
  std::array<double, kMaxRotationOrder + 1> sin_m{};
  cos_m[0] = 1.0;
  sin_m[0] = 0.0;
  if (order >= 1) {
    cos_m[1] = std::cos(angle);
    sin_m[1] = std::sin(angle);
  }
  for (int m = 2; m <= order; ++m) {
    cos_m[m] = 2.0 * cos_m[1] * cos_m[m - 1] - cos_m[m - 2];
    sin_m[m] = 2.0 * cos_m[1] * sin_m[m - 1] - sin_m[m - 2];
  }

  auto at = [this](size_t r, size_t c) -> double& {
    return matrix_[r * size_ + c];
  };
  for (int l = 0; l <= order; ++l) {
    at(Acn(l, 0), Acn(l, 0)) = 1.0;
    for (int m = 1; m <= l; ++m) {
      const size_t c = Acn(l, m);   // cos(m az) term
      const size_t s = Acn(l, -m);  // sin(m az) term
      // cos(m(az+a)) = cos(m az) cos(m a) - sin(m az) sin(m a)
      // sin(m(az+a)) = sin(m az) cos(m a) + cos(m az) sin(m a)
      at(c, c) = cos_m[m];
      at(c, s) = -sin_m[m];
      at(s, s) = cos_m[m];
      at(s, c) = sin_m[m];
    }
  }
}

void YawRotation::ApplyToFrame(std::span<double> frame) const {
  std::array<double, 2 * kMaxRotationOrder + 1> block{};
  for (int l = 0; l <= order_; ++l) {
    const size_t first = Acn(l, -l);
    const size_t width = static_cast<size_t>(2 * l + 1);
    for (size_t r = 0; r < width; ++r) {
      const double* row = &matrix_[(first + r) * size_ + first];
      double acc = 0.0;
      for (size_t k = 0; k < width; ++k) acc += row[k] * frame[first + k];
      block[r] = acc;
    }
    for (size_t r = 0; r < width; ++r) frame[first + r] = block[r];
  }
}

AmbiSignal ApplyRotation(const AmbiSignal& signal,
                         const YawRotation& rotation) {
  if (signal.order() != rotation.order()) {
    throw ArgumentError("rotation order " + std::to_string(rotation.order()) +
                        " does not match signal order " +
                        std::to_string(signal.order()));
  }
  AmbiSignal out = signal;
  std::vector<double> frame(signal.num_channels());
  for (size_t n = 0; n < signal.num_frames(); ++n) {
    for (size_t c = 0; c < frame.size(); ++c) frame[c] = signal[c][n];
    rotation.ApplyToFrame(frame);
    for (size_t c = 0; c < frame.size(); ++c) out[c][n] = frame[c];
  }
  return out;
}

}  // namespace clarity
