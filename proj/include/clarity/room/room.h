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

#ifndef CLARITY_ROOM_ROOM_H_
#define CLARITY_ROOM_ROOM_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "clarity/ambisonics/ambi_signal.h"
#include "clarity/common/geometry.h"

namespace clarity {

// Shoebox room with one frequency-independent absorption coefficient shared
// by all six surfaces. Corner at the origin, extents along +x, +y, +z.
struct RoomSpec {
  Vec3 dimensions{6.6, 5.8, 2.8};
  double absorption = 0.438;
  double speed_of_sound = 343.0;

  double Volume() const;
  double SurfaceArea() const;
  // Throws ArgumentError on non-positive extents or absorption outside (0, 1].
  void Validate() const;
  bool Contains(const Vec3& p) const;  // strictly inside
};

enum class Directivity { kOmni, kCardioid };

std::string DirectivityName(Directivity d);
// Throws ArgumentError for anything but "omni" / "cardioid".
Directivity ParseDirectivity(const std::string& name);

struct SourceSpec {
  Vec3 position;
  Directivity directivity = Directivity::kOmni;
  Vec3 aim{1.0, 0.0, 0.0};  // unit vector; used by cardioid only
};

// omni -> 1, cardioid -> 0.5 (1 + cos psi), psi the angle between the aim and
// the emission direction.
double DirectivityGain(Directivity pattern, double angle);

struct ImageSource {
  Vec3 position;
  int reflections = 0;
  Vec3 aim;  // source aim mirrored once per odd-reflection axis
};

// All image sources within |max_distance| of |listener| (inclusive).
std::vector<ImageSource> EnumerateImages(const RoomSpec& room,
                                         const SourceSpec& source,
                                         const Vec3& listener,
                                         double max_distance);

struct AmbiRir {
  AmbiSignal response;
  double time_limit = 0.0;
  size_t image_count = 0;
};

// Image-source room impulse response encoded at the listener in ACN/SN3D.
// Each image contributes sqrt(1 - absorption)^reflections / distance times
// the source directivity toward the listener, at sample round(d / c * rate).
// Length is ceil(time_limit * rate) + 1 samples.
AmbiRir ImageSourceRir(const RoomSpec& room, const SourceSpec& source,
                       const Vec3& listener, int order, double time_limit,
                       double rate);

// Schroeder backward integration and a least-squares line through the
// -5..-35 dB part of the decay curve, extrapolated to 60 dB. Throws
// InsufficientDecayError if the curve never reaches -35 dB and ArgumentError
// for a silent response.
double SchroederRt60(std::span<const double> rir, double rate);

// Octave band around |center| Hz: two 2nd-order Butterworth high-pass
// sections at center/sqrt(2) followed by two low-pass sections at
// center*sqrt(2).
std::vector<double> OctaveBand(std::span<const double> signal, double center,
                               double rate);

// Mid-frequency reverberation time: mean of the 500 Hz and 1 kHz octave-band
// SchroederRt60 values. Room acoustics quote this figure as "T_mid".
double MidFrequencyRt60(std::span<const double> rir, double rate);

// Energy decay curve in dB relative to total energy.
std::vector<double> EnergyDecayCurveDb(std::span<const double> rir);

// 0.161 V / (alpha S).
double SabineRt60(const RoomSpec& room);

}  // namespace clarity

#endif  // CLARITY_ROOM_ROOM_H_
