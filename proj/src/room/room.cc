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

#include "clarity/room/room.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "clarity/ambisonics/spherical_harmonics.h"
#include "clarity/audio/biquad.h"
#include "clarity/common/error.h"

namespace clarity {

double RoomSpec::Volume() const {
  return dimensions.x * dimensions.y * dimensions.z;
}

double RoomSpec::SurfaceArea() const {
  const Vec3& d = dimensions;
  return 2.0 * (d.x * d.y + d.x * d.z + d.y * d.z);
}

void RoomSpec::Validate() const {
  if (!(dimensions.x > 0.0 && dimensions.y > 0.0 && dimensions.z > 0.0)) {
    throw ArgumentError("room dimensions must all be > 0");
  }
  if (!(absorption > 0.0 && absorption <= 1.0)) {
    throw ArgumentError("absorption must lie in (0, 1]");
  }
  if (!(speed_of_sound > 0.0)) {
    throw ArgumentError("speed of sound must be > 0");
  }
}

bool RoomSpec::Contains(const Vec3& p) const {
  return p.x > 0.0 && p.x < dimensions.x && p.y > 0.0 && p.y < dimensions.y &&
         p.z > 0.0 && p.z < dimensions.z;
}

std::string DirectivityName(Directivity d) {
  return d == Directivity::kCardioid ? "cardioid" : "omni";
}

Directivity ParseDirectivity(const std::string& name) {
  if (name == "omni") return Directivity::kOmni;
  if (name == "cardioid") return Directivity::kCardioid;
  throw ArgumentError("unknown directivity '" + name +
                      "' (expected omni or cardioid)");
}

double DirectivityGain(Directivity pattern, double angle) {
  if (pattern == Directivity::kOmni) return 1.0;
  return 0.5 * (1.0 + std::cos(angle));
}

std::vector<ImageSource> EnumerateImages(const RoomSpec& room,
                                         const SourceSpec& source,
                                         const Vec3& listener,
                                         double max_distance) {
  room.Validate();
  const Vec3& dim = room.dimensions;
  const Vec3& s = source.position;
  const int nx = static_cast<int>(std::ceil(max_distance / (2 * dim.x))) + 1;
  const int ny = static_cast<int>(std::ceil(max_distance / (2 * dim.y))) + 1;
  const int nz = static_cast<int>(std::ceil(max_distance / (2 * dim.z))) + 1;
  const double max_sq = max_distance * max_distance;

  std::vector<ImageSource> images;
  for (int px = 0; px <= 1; ++px) {
    for (int ix = -nx; ix <= nx; ++ix) {
      const double x = (1 - 2 * px) * s.x + 2 * ix * dim.x;
      const double dx = x - listener.x;
      if (dx * dx > max_sq) continue;
      const int rx = std::abs(ix - px) + std::abs(ix);
      for (int py = 0; py <= 1; ++py) {
        for (int iy = -ny; iy <= ny; ++iy) {
          const double y = (1 - 2 * py) * s.y + 2 * iy * dim.y;
          const double dy = y - listener.y;
          if (dx * dx + dy * dy > max_sq) continue;
          const int ry = std::abs(iy - py) + std::abs(iy);
          for (int pz = 0; pz <= 1; ++pz) {
            for (int iz = -nz; iz <= nz; ++iz) {
              const double z = (1 - 2 * pz) * s.z + 2 * iz * dim.z;
              const double dz = z - listener.z;
              if (dx * dx + dy * dy + dz * dz > max_sq) continue;
              const int rz = std::abs(iz - pz) + std::abs(iz);
              images.push_back(
                  {{x, y, z},
                   rx + ry + rz,
                   {px ? -source.aim.x : source.aim.x,
                    py ? -source.aim.y : source.aim.y,
                    pz ? -source.aim.z : source.aim.z}});
            }
          }
        }
      }
    }
  }
  return images;
}

AmbiRir ImageSourceRir(const RoomSpec& room, const SourceSpec& source,
                       const Vec3& listener, int order, double time_limit,
                       double rate) {
  room.Validate();
  if (!(rate > 0.0)) throw ArgumentError("rate must be > 0");
  if (!room.Contains(source.position)) {
    throw ArgumentError("source must lie strictly inside the room");
  }
  if (!room.Contains(listener)) {
    throw ArgumentError("listener must lie strictly inside the room");
  }
  const double direct = (source.position - listener).Norm();
  if (!(direct > 0.0)) {
    throw ArgumentError("source and listener positions coincide");
  }
  if (!(time_limit > direct / room.speed_of_sound)) {
    throw ArgumentError("time limit does not reach the direct path");
  }
  Vec3 aim = source.aim;
  if (source.directivity == Directivity::kCardioid) {
    const double norm = aim.Norm();
    if (!(norm > 0.0)) throw ArgumentError("cardioid source needs an aim");
    aim = aim * (1.0 / norm);
  }
  SourceSpec normalized = source;
  normalized.aim = aim;

  const double max_distance = time_limit * room.speed_of_sound;
  const std::vector<ImageSource> images =
      EnumerateImages(room, normalized, listener, max_distance);
  const size_t length =
      static_cast<size_t>(std::ceil(time_limit * rate)) + 1;
  AmbiSignal response(order, length, rate);
  const double reflection = std::sqrt(1.0 - room.absorption);

  for (const ImageSource& image : images) {
    const Vec3 arrival = image.position - listener;  // listener -> image
    const double distance = arrival.Norm();
    if (!(distance > 0.0)) {
      throw ArgumentError("image source coincides with the listener");
    }
    double gain = std::pow(reflection, image.reflections) / distance;
    if (source.directivity != Directivity::kOmni) {
      // Emission direction points from the image toward the listener.
      const double cos_psi =
          std::clamp(-arrival.Dot(image.aim) / distance, -1.0, 1.0);
      gain *= DirectivityGain(source.directivity, std::acos(cos_psi));
    }
    if (gain == 0.0) continue;
    const auto sample = static_cast<size_t>(
        std::llround(distance / room.speed_of_sound * rate));
    if (sample >= length) continue;
    const std::vector<double> sh =
        ShEval(order, Direction::FromVector(arrival));
    for (size_t c = 0; c < sh.size(); ++c) response[c][sample] += gain * sh[c];
  }
  return {std::move(response), time_limit, images.size()};
}

std::vector<double> EnergyDecayCurveDb(std::span<const double> rir) {
  std::vector<double> edc(rir.size());
  double acc = 0.0;
  for (size_t i = rir.size(); i-- > 0;) {
    acc += rir[i] * rir[i];
    edc[i] = acc;
  }
  const double total = acc;
  if (!(total > 0.0)) throw ArgumentError("impulse response is silent");
  for (double& v : edc) {
    v = v > 0.0 ? 10.0 * std::log10(v / total)
                : -std::numeric_limits<double>::infinity();
  }
  return edc;
}

double SchroederRt60(std::span<const double> rir, double rate) {
  const std::vector<double> edc = EnergyDecayCurveDb(rir);
  constexpr double kStartDb = -5.0;
  constexpr double kEndDb = -35.0;
  const auto start = std::find_if(edc.begin(), edc.end(),
                                  [](double v) { return v <= kStartDb; });
  const auto end = std::find_if(edc.begin(), edc.end(),
                                [](double v) { return v <= kEndDb; });
  if (end == edc.end()) {
    throw InsufficientDecayError("decay curve never reaches -35 dB");
  }
  const auto i0 = static_cast<size_t>(start - edc.begin());
  const auto i1 = static_cast<size_t>(end - edc.begin());
  if (i1 <= i0 + 1) {
    throw InsufficientDecayError("too few samples between -5 and -35 dB");
  }
  // Least-squares slope of dB against time over [i0, i1].
  const double count = static_cast<double>(i1 - i0 + 1);
  double mean_t = 0.0;
  double mean_y = 0.0;
  for (size_t i = i0; i <= i1; ++i) {
    mean_t += static_cast<double>(i) / rate;
    mean_y += edc[i];
  }
  mean_t /= count;
  mean_y /= count;
  double sxy = 0.0;
  double sxx = 0.0;
  for (size_t i = i0; i <= i1; ++i) {
    const double dt = static_cast<double>(i) / rate - mean_t;
    sxy += dt * (edc[i] - mean_y);
    sxx += dt * dt;
  }
  const double slope = sxy / sxx;  // dB per second
  if (!(slope < 0.0)) {
    throw InsufficientDecayError("decay curve has non-negative slope");
  }
  return -60.0 / slope;
}

std::vector<double> OctaveBand(std::span<const double> signal, double center,
                               double rate) {
  const Biquad high = Biquad::ButterworthHighpass(center / std::sqrt(2.0), rate);
  const Biquad low = Biquad::ButterworthLowpass(center * std::sqrt(2.0), rate);
  std::vector<double> out(signal.begin(), signal.end());
  high.Process(out);
  high.Process(out);
  low.Process(out);
  low.Process(out);
  return out;
}

double MidFrequencyRt60(std::span<const double> rir, double rate) {
  return 0.5 * (SchroederRt60(OctaveBand(rir, 500.0, rate), rate) +
                SchroederRt60(OctaveBand(rir, 1000.0, rate), rate));
}

double SabineRt60(const RoomSpec& room) {
  return 0.161 * room.Volume() / (room.absorption * room.SurfaceArea());
}

}  // namespace clarity
