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

#ifndef CLARITY_HEARING_AID_HEARING_AID_H_
#define CLARITY_HEARING_AID_HEARING_AID_H_

#include <array>
#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

#include "clarity/audio/sample_buffer.h"

namespace clarity {

enum class Ear { kLeft = 0, kRight = 1 };

inline constexpr std::array<double, 6> kAudiogramFrequencies = {
    250.0, 500.0, 1000.0, 2000.0, 4000.0, 6000.0};

using EarLevels = std::array<double, 6>;  // dB HL at kAudiogramFrequencies

// Per-ear hearing levels in dB HL, each within [0, 120].
struct Audiogram {
  EarLevels left{};
  EarLevels right{};

  static Audiogram Flat(double level);

  const EarLevels& levels(Ear ear) const {
    return ear == Ear::kLeft ? left : right;
  }
  EarLevels& levels(Ear ear) { return ear == Ear::kLeft ? left : right; }

  // Throws ValidationError listing every out-of-range entry.
  void Validate() const;
};

// JSON {"left": {"250": dB, ..., "6000": dB}, "right": {...}}.
Audiogram LoadAudiogram(const std::filesystem::path& path);
void SaveAudiogram(const std::filesystem::path& path, const Audiogram& a);

struct GainPoint {
  double frequency = 0.0;  // Hz
  double gain_db = 0.0;
};
using GainCurve = std::vector<GainPoint>;

// NAL-R insertion gain at the six audiogram frequencies:
//   X = 0.05 (H500 + H1000 + H2000)
//   IG(f) = max(0, X + 0.31 H(f) + k(f))
GainCurve NalrGains(const Audiogram& audiogram, Ear ear);

// Per-frequency NAL-R correction k(f) in dB, aligned with
// kAudiogramFrequencies.
inline constexpr std::array<double, 6> kNalrCorrections = {-17.0, -8.0, 1.0,
                                                           -1.0,  -2.0, -2.0};

// Curve value at |frequency|: linear in (log f, dB) between points, held
// constant outside the curve's range.
double InterpolateGain(const GainCurve& curve, double frequency);

// Linear-phase FIR by frequency sampling at |taps| equally spaced bins. The
// zero-phase design is delayed by (taps - 1) / 2. |taps| must be odd and
// >= 63.
std::vector<double> DesignFir(const GainCurve& curve, size_t taps, double rate);

// |H(f)| of an FIR, in dB.
double FirMagnitudeDb(std::span<const double> fir, double frequency,
                      double rate);

inline constexpr size_t kDefaultAmplifierTaps = 127;

struct AmplifiedSignal {
  SampleBuffer ears;           // 2 channels, input length + taps - 1
  size_t clipped_samples = 0;  // samples hard-clamped to [-1, 1]
};

// Fixed amplification stage: each ear convolved with its own NAL-R FIR, then
// hard-clamped to [-1, 1].
AmplifiedSignal Amplify(const SampleBuffer& ears, const Audiogram& audiogram,
                        size_t taps = kDefaultAmplifierTaps);

}  // namespace clarity

#endif  // CLARITY_HEARING_AID_HEARING_AID_H_
