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

#include "clarity/ambisonics/spherical_harmonics.h"

#include <cmath>
#include <numbers>

#include "clarity/common/error.h"

namespace clarity {

int AcnDegree(size_t channel) {
  return static_cast<int>(std::sqrt(static_cast<double>(channel)));
}

std::vector<double> ShEval(int order, double azimuth, double elevation) {
  if (order < 0) throw ArgumentError("Ambisonic order must be >= 0");
  constexpr double kHalfPi = std::numbers::pi / 2;
  if (!(elevation >= -kHalfPi - 1e-12 && elevation <= kHalfPi + 1e-12)) {
    throw ArgumentError("elevation must lie in [-pi/2, pi/2]");
  }
  const double x = std::sin(elevation);
  const double s = std::cos(elevation);  // sqrt(1 - x^2), non-negative

  // Associated Legendre P_l^m(x) for m >= 0 without the Condon-Shortley phase.
  const size_t n = static_cast<size_t>(order) + 1;
  std::vector<double> legendre(n * n, 0.0);
  auto p = [&](int l, int m) -> double& {
    return legendre[static_cast<size_t>(l) * n + static_cast<size_t>(m)];
  };
  p(0, 0) = 1.0;
  for (int m = 1; m <= order; ++m) p(m, m) = (2 * m - 1) * s * p(m - 1, m - 1);
  for (int m = 0; m < order; ++m) p(m + 1, m) = x * (2 * m + 1) * p(m, m);
  for (int m = 0; m <= order; ++m) {
    for (int l = m + 2; l <= order; ++l) {
      p(l, m) = ((2 * l - 1) * x * p(l - 1, m) - (l + m - 1) * p(l - 2, m)) /
                (l - m);
    }
  }

  std::vector<double> out(NumAmbiChannels(order), 0.0);
  for (int l = 0; l <= order; ++l) {
    out[Acn(l, 0)] = p(l, 0);
    // SN3D: sqrt(2 (l-m)! / (l+m)!) for m > 0, built up incrementally.
    double ratio = 1.0;  // (l-m)! / (l+m)!
    for (int m = 1; m <= l; ++m) {
      ratio /= static_cast<double>((l + m) * (l - m + 1));
      const double norm = std::sqrt(2.0 * ratio) * p(l, m);
      out[Acn(l, m)] = norm * std::cos(m * azimuth);
      out[Acn(l, -m)] = norm * std::sin(m * azimuth);
    }
  }
  return out;
}

}  // namespace clarity
