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

#ifndef CLARITY_AUDIO_SAMPLE_BUFFER_H_
#define CLARITY_AUDIO_SAMPLE_BUFFER_H_

#include <cstddef>
#include <span>
#include <vector>

namespace clarity {

// Default pipeline sample rate in Hz.
inline constexpr double kDefaultSampleRate = 16000.0;

// Planar multichannel audio. Every channel holds the same number of frames.
class SampleBuffer {
 public:
  SampleBuffer() = default;
  SampleBuffer(size_t num_channels, size_t num_frames, double rate);
  // Takes ownership of |channels|; throws ArgumentError on ragged input.
  SampleBuffer(std::vector<std::vector<double>> channels, double rate);

  static SampleBuffer Mono(std::vector<double> samples, double rate);

  size_t num_channels() const { return channels_.size(); }
  size_t num_frames() const {
    return channels_.empty() ? 0 : channels_.front().size();
  }
  double rate() const { return rate_; }
  bool empty() const { return num_frames() == 0; }

  std::span<double> operator[](size_t channel) { return channels_[channel]; }
  std::span<const double> operator[](size_t channel) const {
    return channels_[channel];
  }

  const std::vector<double>& channel(size_t channel) const {
    return channels_[channel];
  }
  std::vector<double>& channel(size_t channel) { return channels_[channel]; }

  // Single-channel view of |channel| as a new buffer.
  SampleBuffer ExtractChannel(size_t channel) const;

  // Resizes every channel, zero-filling new frames.
  void Resize(size_t num_frames);

  bool operator==(const SampleBuffer& other) const = default;

 private:
  std::vector<std::vector<double>> channels_;
  double rate_ = kDefaultSampleRate;
};

}  // namespace clarity

#endif  // CLARITY_AUDIO_SAMPLE_BUFFER_H_
