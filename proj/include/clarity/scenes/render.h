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

#ifndef CLARITY_SCENES_RENDER_H_
#define CLARITY_SCENES_RENDER_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "clarity/ambisonics/ambi_signal.h"
#include "clarity/audio/sample_buffer.h"
#include "clarity/hrtf/hrtf.h"
#include "clarity/scenes/scene.h"
#include "json.hpp"

namespace clarity {

// Half-open frame range [begin, end).
struct FrameRange {
  size_t begin = 0;
  size_t end = 0;
};

// Gain g for the summed interferer field so that the W-channel RMS ratio of
// |target| to g * interferers over |range| equals |snr_db|. Throws MixError
// when the interferers are silent over the range and ArgumentError on
// mismatched orders, rates or lengths.
double MixGain(const AmbiSignal& target,
               const std::vector<AmbiSignal>& interferers, double snr_db,
               FrameRange range);

// target + MixGain(...) * sum(interferers).
AmbiSignal MixAtSnr(const AmbiSignal& target,
                    const std::vector<AmbiSignal>& interferers, double snr_db,
                    FrameRange range);

// Block length of the time-varying rotation; blocks overlap by half.
inline constexpr double kRotationBlockSeconds = 0.01;

// Rotates the field against the listener's yaw. Each 10 ms block is rotated
// by minus the yaw at its centre and neighbouring blocks are blended with
// triangular crossfades that sum to one.
AmbiSignal ApplyTrajectory(const AmbiSignal& field,
                           const RotationTrajectory& trajectory);

// Adds seeded white noise to every channel from frame 0 with per-channel RMS
// |reference_rms| * 10^(level_db / 20). A level of -inf returns the input.
AmbiSignal AddTransducerNoise(const AmbiSignal& field, double reference_rms,
                              double level_db, uint64_t seed);

// Seeded head turn towards |target_azimuth|: starts off-target by 15..30
// degrees, begins turning within the 0.6 s before |target_onset| and settles
// within 10 degrees of the target after 0.2..0.4 s.
RotationTrajectory DefaultTrajectory(double target_azimuth, double target_onset,
                                     uint64_t seed);

// Azimuth of |point| seen from |listener| in the room frame.
double AzimuthFrom(const Vec3& listener, const Vec3& point);

struct RenderOptions {
  double rir_seconds = 0.5;
  size_t decode_grid_size = 64;
  // Interferer directivity comes from the profile unless this is set.
  bool use_scene_directivity = false;
};

// Per-component ear signals; their sum is |ears|.
struct RenderedScene {
  SampleBuffer ears;       // 2 channels, scene length
  SampleBuffer reference;  // dry target at -26 dBFS, scene length
  SampleBuffer target_ears;
  SampleBuffer interferer_ears;
  SampleBuffer noise_ears;
  double mix_gain = 1.0;
  FrameRange target_range;
  nlohmann::json record;
};

// Dry source signal of the target (utterance placed at its onset) and of
// each interferer (from its onset to the end), scene length.
SampleBuffer TargetSignal(const SceneSpec& scene);
SampleBuffer InterfererSignal(const SceneSpec& scene, size_t index);

// Full pipeline: image-source RIRs, convolution, mixing, transducer noise,
// head rotation and binaural decoding. Errors from a stage are rethrown with
// the stage named.
RenderedScene RenderScene(const SceneSpec& scene, const HrtfSet& hrtfs,
                          const FidelityProfile& profile,
                          const RenderOptions& options = {});

// HRTF set on the default decode grid.
HrtfSet DefaultHrtfSet(double rate = kDefaultSampleRate);

}  // namespace clarity

#endif  // CLARITY_SCENES_RENDER_H_
