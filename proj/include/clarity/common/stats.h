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

#ifndef CLARITY_COMMON_STATS_H_
#define CLARITY_COMMON_STATS_H_

#include <cmath>
#include <optional>
#include <span>
#include <string>

#include "clarity/common/error.h"

namespace clarity {

// Sample Pearson correlation, or nullopt when either side has zero variance
// or the inputs are shorter than two.
inline std::optional<double> TryPearson(std::span<const double> x,
                                        std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) return std::nullopt;
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (!(sxx > 0.0) || !(syy > 0.0)) return std::nullopt;
  return sxy / std::sqrt(sxx * syy);
}

// Sample Pearson correlation of two score lists (equal length, >= 3 entries,
// nonzero variance); otherwise throws StatisticsError.
inline double Pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw StatisticsError("pearson: lists differ in length (" +
                          std::to_string(x.size()) + " vs " +
                          std::to_string(y.size()) + ")");
  }
  if (x.size() < 3) throw StatisticsError("pearson: need at least 3 pairs");
  const std::optional<double> r = TryPearson(x, y);
  if (!r) throw StatisticsError("pearson: zero variance");
  return *r;
}

}  // namespace clarity

#endif  // CLARITY_COMMON_STATS_H_
