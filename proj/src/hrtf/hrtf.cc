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

#include "clarity/hrtf/hrtf.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <numbers>
#include <string>

#include "clarity/common/error.h"
#include "json.hpp"

namespace clarity {

namespace {

constexpr Vec3 kLeftEarAxis{0.0, 1.0, 0.0};
constexpr Vec3 kRightEarAxis{0.0, -1.0, 0.0};
constexpr int kSincHalfWidth = 4;  // 8-tap kernel

double Sinc(double t) {
  if (t == 0.0) return 1.0;
  const double x = std::numbers::pi * t;
  return std::sin(x) / x;
}

// Hann-windowed 8-tap fractional delay, normalized to unit DC gain.
std::vector<double> FractionalDelay(double delay, size_t taps) {
  std::vector<double> h(taps, 0.0);
  const auto base = static_cast<long>(std::floor(delay));
  double sum = 0.0;
  for (long n = base - kSincHalfWidth + 1; n <= base + kSincHalfWidth; ++n) {
    if (n < 0 || n >= static_cast<long>(taps)) continue;
    const double t = static_cast<double>(n) - delay;
    const double w =
        0.5 * (1.0 + std::cos(std::numbers::pi * t / kSincHalfWidth));
    h[static_cast<size_t>(n)] = Sinc(t) * w;
    sum += h[static_cast<size_t>(n)];
  }
  if (sum != 0.0) {
    for (double& v : h) v /= sum;
  }
  return h;
}

std::vector<double> EarFilter(double cos_incidence, const HeadModel& model,
                              double rate, size_t taps) {
  std::vector<double> h =
      FractionalDelay(EarDelaySamples(cos_incidence, model, rate, taps), taps);
  const ShelfCoefficients shelf = HeadShadowShelf(cos_incidence, model, rate);
  double x_prev = 0.0;
  double y_prev = 0.0;
  for (double& v : h) {
    const double y = shelf.b0 * v + shelf.b1 * x_prev - shelf.a1 * y_prev;
    x_prev = v;
    y_prev = y;
    v = y;
  }
  return h;
}

void CheckModel(const HeadModel& model) {
  if (!(model.radius > 0.0)) throw ArgumentError("head radius must be > 0");
  if (!(model.speed_of_sound > 0.0)) {
    throw ArgumentError("speed of sound must be > 0");
  }
}

}  // namespace

double WoodworthItd(double lateral_angle, const HeadModel& model) {
  const double theta = std::clamp(lateral_angle, 0.0, std::numbers::pi / 2);
  return model.radius / model.speed_of_sound * (theta + std::sin(theta));
}

ShelfCoefficients HeadShadowShelf(double cos_incidence, const HeadModel& model,
                                  double rate) {
  const double alpha = 1.0 + std::clamp(cos_incidence, -1.0, 1.0);
  const double beta = 2.0 * model.speed_of_sound / model.radius;
  const double k = 2.0 * rate;
  const double norm = k + beta;
  return {(alpha * k + beta) / norm, (beta - alpha * k) / norm,
          (beta - k) / norm};
}

double ShelfMagnitude(const ShelfCoefficients& shelf, double frequency,
                      double rate) {
  const std::complex<double> z1 =
      std::polar(1.0, -2.0 * std::numbers::pi * frequency / rate);
  return std::abs((shelf.b0 + shelf.b1 * z1) / (1.0 + shelf.a1 * z1));
}

double EarDelaySamples(double cos_incidence, const HeadModel& model,
                       double rate, size_t taps) {
  const double c = std::clamp(cos_incidence, -1.0, 1.0);
  const double lateral = std::asin(std::abs(c));
  const double half_itd = 0.5 * WoodworthItd(lateral, model) * rate;
  const double bulk = static_cast<double>(taps / 2);
  if (c > 0.0) return bulk - half_itd;
  if (c < 0.0) return bulk + half_itd;
  return bulk;
}

HrtfPair SynthHrtf(const Direction& direction, const HeadModel& model,
                   double rate, size_t taps) {
  CheckModel(model);
  if (!(rate > 0.0)) throw ArgumentError("rate must be > 0");
  const double max_itd = WoodworthItd(std::numbers::pi / 2, model);
  if (!(static_cast<double>(taps) / rate > 2.0 * max_itd)) {
    throw ArgumentError("HRTF needs more than " +
                        std::to_string(2.0 * max_itd * rate) +
                        " taps to hold the maximum ITD, got " +
                        std::to_string(taps));
  }
  const Vec3 u = direction.UnitVector();
  return {EarFilter(u.Dot(kLeftEarAxis), model, rate, taps),
          EarFilter(u.Dot(kRightEarAxis), model, rate, taps)};
}

HrtfSet BuildHrtfSet(const std::vector<Direction>& directions,
                     const HeadModel& model, double rate, size_t taps) {
  HrtfSet set{rate, taps, {}};
  set.entries.reserve(directions.size());
  for (const Direction& d : directions) {
    set.entries.push_back({d, SynthHrtf(d, model, rate, taps)});
  }
  return set;
}

size_t NearestIndex(const HrtfSet& set, const Direction& direction) {
  if (set.entries.empty()) throw ArgumentError("HRTF set is empty");
  const Vec3 q = direction.UnitVector();
  size_t best = 0;
  double best_dot = -2.0;
  for (size_t i = 0; i < set.entries.size(); ++i) {
    const double d = set.entries[i].direction.UnitVector().Dot(q);
    if (d > best_dot) {
      best_dot = d;
      best = i;
    }
  }
  return best;
}

const HrtfPair& NearestFilters(const HrtfSet& set, const Direction& direction) {
  return set.entries[NearestIndex(set, direction)].filters;
}

HrtfSet LoadHrtfSet(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
  HrtfSet set;
  try {
    set.rate = doc.at("rate").get<double>();
    set.taps = doc.at("taps").get<size_t>();
    for (const auto& e : doc.at("entries")) {
      HrtfEntry entry;
      entry.direction = {e.at("az_deg").get<double>() * std::numbers::pi / 180,
                         e.at("el_deg").get<double>() * std::numbers::pi / 180};
      entry.filters.left = e.at("left").get<std::vector<double>>();
      entry.filters.right = e.at("right").get<std::vector<double>>();
      if (entry.filters.left.size() != set.taps ||
          entry.filters.right.size() != set.taps) {
        throw FormatError(path.string() + ": entry " +
                          std::to_string(set.entries.size()) +
                          " FIR length differs from taps");
      }
      set.entries.push_back(std::move(entry));
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
  if (set.entries.empty()) throw FormatError(path.string() + ": no entries");
  return set;
}

void SaveHrtfSet(const std::filesystem::path& path, const HrtfSet& set) {
  nlohmann::json doc;
  doc["rate"] = set.rate;
  doc["taps"] = set.taps;
  doc["entries"] = nlohmann::json::array();
  for (const HrtfEntry& e : set.entries) {
    doc["entries"].push_back(
        {{"az_deg", e.direction.azimuth * 180 / std::numbers::pi},
         {"el_deg", e.direction.elevation * 180 / std::numbers::pi},
         {"left", e.filters.left},
         {"right", e.filters.right}});
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << doc.dump(1) << '\n';
}

}  // namespace clarity
