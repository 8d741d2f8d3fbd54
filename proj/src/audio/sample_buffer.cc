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

#include "clarity/audio/sample_buffer.h"

#include <string>
#include <utility>

#include "clarity/common/error.h"

namespace clarity {

namespace {

void CheckRate(double rate) {
  if (!(rate > 0.0)) {
    throw ArgumentError("sample rate must be positive, got " +
                        std::to_string(rate));
  }
}

}  // namespace

SampleBuffer::SampleBuffer(size_t num_channels, size_t num_frames, double rate)
    : channels_(num_channels, std::vector<double>(num_frames, 0.0)),
      rate_(rate) {
  CheckRate(rate);
  if (num_channels == 0) throw ArgumentError("buffer needs at least 1 channel");
}

SampleBuffer::SampleBuffer(std::vector<std::vector<double>> channels,
                           double rate)
    : channels_(std::move(channels)), rate_(rate) {
  CheckRate(rate);
  if (channels_.empty()) throw ArgumentError("buffer needs at least 1 channel");
  for (const auto& c : channels_) {
    if (c.size() != channels_.front().size()) {
      throw ArgumentError("all channels must have equal frame count");
    }
  }
}

SampleBuffer SampleBuffer::Mono(std::vector<double> samples, double rate) {
  std::vector<std::vector<double>> channels;
  channels.push_back(std::move(samples));
  return SampleBuffer(std::move(channels), rate);
}

SampleBuffer SampleBuffer::ExtractChannel(size_t channel) const {
  if (channel >= channels_.size()) {
    throw ArgumentError("channel index out of range");
  }
  return Mono(channels_[channel], rate_);
}

void SampleBuffer::Resize(size_t num_frames) {
  for (auto& c : channels_) c.resize(num_frames, 0.0);
}

}  // namespace clarity
