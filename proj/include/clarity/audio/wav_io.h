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

#ifndef CLARITY_AUDIO_WAV_IO_H_
#define CLARITY_AUDIO_WAV_IO_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "clarity/audio/sample_buffer.h"

namespace clarity {

enum class WavEncoding { kPcm16, kFloat32 };

// Reads a RIFF/WAVE file holding 16-bit PCM or 32-bit IEEE float samples.
// 16-bit samples are scaled by 1/32768. When |required_rate| is set, a file
// at any other rate raises RateMismatchError; there is no resampler.
SampleBuffer ReadWav(const std::filesystem::path& path,
                     std::optional<double> required_rate = std::nullopt);

// Parses WAV bytes already in memory.
SampleBuffer DecodeWav(const std::vector<uint8_t>& bytes,
                       std::optional<double> required_rate = std::nullopt);

// Float32 output round-trips bit-exactly for values representable in float.
// Pcm16 output saturates at [-32768, 32767].
std::vector<uint8_t> EncodeWav(const SampleBuffer& buffer,
                               WavEncoding encoding = WavEncoding::kFloat32);

void WriteWav(const std::filesystem::path& path, const SampleBuffer& buffer,
              WavEncoding encoding = WavEncoding::kFloat32);

}  // namespace clarity

#endif  // CLARITY_AUDIO_WAV_IO_H_
