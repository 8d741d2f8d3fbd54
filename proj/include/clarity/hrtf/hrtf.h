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

#ifndef CLARITY_HRTF_HRTF_H_
#define CLARITY_HRTF_HRTF_H_

#include <cstddef>
#include <filesystem>
#include <vector>

#include "clarity/common/geometry.h"

namespace clarity {

// Rigid spherical head. Left ear on +y (azimuth +pi/2), right ear on -y.
struct HeadModel {
  double radius = 0.0875;        // m
  double speed_of_sound = 343.0;  // m/s
};

struct HrtfPair {
  std::vector<double> left;
  std::vector<double> right;
};

struct HrtfEntry {
  Direction direction;
  HrtfPair filters;
};

// Direction-indexed filter pairs; every FIR has length |taps|.
struct HrtfSet {
  double rate = 0.0;
  size_t taps = 0;
  std::vector<HrtfEntry> entries;
};

// Woodworth interaural time difference in seconds for a lateral angle in
// [0, pi/2] measured from the median plane.
double WoodworthItd(double lateral_angle, const HeadModel& model);

// Coefficients of the bilinear-transformed head-shadow shelf
// H(s) = (alpha s + beta) / (s + beta), beta = 2c/a, alpha = 1 + cos(theta).
struct ShelfCoefficients {
  double b0 = 1.0;
  double b1 = 0.0;
  double a1 = 0.0;  // y[n] = b0 x[n] + b1 x[n-1] - a1 y[n-1]
};
ShelfCoefficients HeadShadowShelf(double cos_incidence, const HeadModel& model,
                                  double rate);

// Magnitude of the shelf at |frequency| Hz.
double ShelfMagnitude(const ShelfCoefficients& shelf, double frequency,
                      double rate);

// Fractional delay in samples applied to the ear whose axis makes
// cos_incidence with the arrival direction. The bulk delay is taps / 2 and the
// ear offset is -/+ ITD/2 for the near/far ear.
double EarDelaySamples(double cos_incidence, const HeadModel& model,
                       double rate, size_t taps);

// Parametric spherical-head HRIR pair. Throws ArgumentError when |taps| cannot
// hold twice the maximum ITD.
HrtfPair SynthHrtf(const Direction& direction, const HeadModel& model,
                   double rate, size_t taps);

HrtfSet BuildHrtfSet(const std::vector<Direction>& directions,
                     const HeadModel& model, double rate, size_t taps);

// Entry with the largest dot product against |direction|; ties go to the
// lowest index.
const HrtfPair& NearestFilters(const HrtfSet& set, const Direction& direction);
size_t NearestIndex(const HrtfSet& set, const Direction& direction);

// JSON: {rate, taps, entries: [{az_deg, el_deg, left: [...], right: [...]}]}
HrtfSet LoadHrtfSet(const std::filesystem::path& path);
void SaveHrtfSet(const std::filesystem::path& path, const HrtfSet& set);

}  // namespace clarity

#endif  // CLARITY_HRTF_HRTF_H_
