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

#include "clarity/ambisonics/ambi_signal.h"

#include <utility>
#include <vector>

#include "clarity/ambisonics/spherical_harmonics.h"
#include "clarity/common/error.h"

namespace clarity {

AmbiSignal::AmbiSignal(int order, size_t num_frames, double rate)
    : order_(order),
      buffer_(NumAmbiChannels(order < 0 ? 0 : order), num_frames, rate) {
  if (order < 0) throw ArgumentError("Ambisonic order must be >= 0");
}

AmbiSignal::AmbiSignal(int order, SampleBuffer channels)
    : order_(order), buffer_(std::move(channels)) {
  if (order < 0) throw ArgumentError("Ambisonic order must be >= 0");
  if (buffer_.num_channels() != NumAmbiChannels(order)) {
    throw ArgumentError("order " + std::to_string(order) + " needs " +
                        std::to_string(NumAmbiChannels(order)) +
                        " channels, got " +
                        std::to_string(buffer_.num_channels()));
  }
}

AmbiSignal& AmbiSignal::operator+=(const AmbiSignal& other) {
  if (other.order_ != order_ || other.num_frames() != num_frames() ||
      other.rate() != rate()) {
    throw ArgumentError("cannot add Ambisonic signals of different shape");
  }
  for (size_t c = 0; c < num_channels(); ++c) {
    auto dst = buffer_[c];
    const auto src = other.buffer_[c];
    for (size_t n = 0; n < dst.size(); ++n) dst[n] += src[n];
  }
  return *this;
}

AmbiSignal& AmbiSignal::operator*=(double gain) {
  for (size_t c = 0; c < num_channels(); ++c) {
    for (double& v : buffer_[c]) v *= gain;
  }
  return *this;
}

AmbiSignal Encode(const SampleBuffer& mono, double azimuth, double elevation,
                  int order) {
  if (mono.num_channels() != 1) {
    throw ArgumentError("encode needs a mono signal, got " +
                        std::to_string(mono.num_channels()) + " channels");
  }
  const std::vector<double> gains = ShEval(order, azimuth, elevation);
  SampleBuffer out(gains.size(), mono.num_frames(), mono.rate());
  for (size_t c = 0; c < gains.size(); ++c) {
    for (size_t n = 0; n < mono.num_frames(); ++n) {
      out[c][n] = gains[c] * mono[0][n];
    }
  }
  return AmbiSignal(order, std::move(out));
}

AmbiSignal Truncate(const AmbiSignal& signal, int new_order) {
  if (new_order < 0 || new_order > signal.order()) {
    throw ArgumentError("cannot truncate order " +
                        std::to_string(signal.order()) + " to order " +
                        std::to_string(new_order));
  }
  std::vector<std::vector<double>> channels;
  for (size_t c = 0; c < NumAmbiChannels(new_order); ++c) {
    channels.push_back(signal.buffer().channel(c));
  }
  return AmbiSignal(new_order, SampleBuffer(std::move(channels), signal.rate()));
}

}  // namespace clarity
