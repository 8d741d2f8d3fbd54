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

#ifndef CLARITY_SCENES_SIGNALS_H_
#define CLARITY_SCENES_SIGNALS_H_

#include <cstddef>
#include <cstdint>
#include <string>

#include "clarity/audio/sample_buffer.h"

namespace clarity {

enum class SourceKind { kSpeech, kMusic, kNoise };

std::string SourceKindName(SourceKind kind);
// Throws ArgumentError for anything but "speech" / "music" / "noise".
SourceKind ParseSourceKind(const std::string& name);

// Level every synthetic source is scaled to, in dBFS RMS.
inline constexpr double kSourceLevelDbfs = -36.0;

// Harmonic complex on a drifting pitch contour with syllable-rate amplitude
// bursts and a fixed three-formant spectral envelope.
SampleBuffer SpeechLike(size_t num_frames, double rate, uint64_t seed);

// White noise through a seeded band-pass with a slow level wobble.
SampleBuffer FilteredNoise(size_t num_frames, double rate, uint64_t seed);

// Repeating arpeggio of decaying harmonic tones on a seeded triad.
SampleBuffer MusicArpeggio(size_t num_frames, double rate, uint64_t seed);

// Dispatches on |kind|.
SampleBuffer SynthSource(SourceKind kind, size_t num_frames, double rate,
                         uint64_t seed);

}  // namespace clarity

#endif  // CLARITY_SCENES_SIGNALS_H_
