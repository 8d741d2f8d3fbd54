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

#ifndef CLARITY_AMBISONICS_SPHERICAL_HARMONICS_H_
#define CLARITY_AMBISONICS_SPHERICAL_HARMONICS_H_

#include <cstddef>
#include <vector>

#include "clarity/common/geometry.h"

namespace clarity {

// Number of channels of an order-|order| full-sphere Ambisonic signal.
constexpr size_t NumAmbiChannels(int order) {
  return static_cast<size_t>((order + 1) * (order + 1));
}

// ACN channel index for degree |l| and index |m| in [-l, l].
constexpr size_t Acn(int l, int m) { return static_cast<size_t>(l * l + l + m); }

// Degree of ACN channel |channel|.
int AcnDegree(size_t channel);

// Real spherical harmonics up to |order| in ACN order with SN3D
// normalization and no Condon-Shortley phase, so that degree 1 is
// (Y, Z, X) = (sin az cos el, sin el, cos az cos el). Throws ArgumentError for
// elevation outside [-pi/2, pi/2] or negative order.
std::vector<double> ShEval(int order, double azimuth, double elevation);
inline std::vector<double> ShEval(int order, const Direction& d) {
  return ShEval(order, d.azimuth, d.elevation);
}

}  // namespace clarity

#endif  // CLARITY_AMBISONICS_SPHERICAL_HARMONICS_H_
