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

#ifndef CLARITY_AMBISONICS_ROTATION_H_
#define CLARITY_AMBISONICS_ROTATION_H_

#include <cstddef>
#include <vector>

#include "clarity/ambisonics/ambi_signal.h"

namespace clarity {

inline constexpr int kMaxRotationOrder = 8;

// Rotation of the sound field about the vertical axis. A source encoded at
// azimuth az ends up at az + angle. Counter-clockwise seen from above is
// positive.
class YawRotation {
 public:
  // Throws ArgumentError for orders outside [0, kMaxRotationOrder].
  YawRotation(int order, double angle);

  int order() const { return order_; }
  double angle() const { return angle_; }
  size_t size() const { return size_; }

  // Row-major (N+1)^2 x (N+1)^2 matrix, block-diagonal by degree.
  const std::vector<double>& matrix() const { return matrix_; }
  double operator()(size_t row, size_t col) const {
    return matrix_[row * size_ + col];
  }

  // Rotates one frame in place; |frame| has size() entries.
  void ApplyToFrame(std::span<double> frame) const;

 private:
  int order_;
  double angle_;
  size_t size_;
  std::vector<double> matrix_;
};

// Per-frame matrix-vector product; orders must match.
AmbiSignal ApplyRotation(const AmbiSignal& signal, const YawRotation& rotation);

}  // namespace clarity

#endif  // CLARITY_AMBISONICS_ROTATION_H_
