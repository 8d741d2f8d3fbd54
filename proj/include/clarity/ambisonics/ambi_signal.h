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

#ifndef CLARITY_AMBISONICS_AMBI_SIGNAL_H_
#define CLARITY_AMBISONICS_AMBI_SIGNAL_H_

#include <cstddef>

#include "clarity/audio/sample_buffer.h"
#include "clarity/common/geometry.h"

namespace clarity {

// Order-N ACN/SN3D sound field: (N+1)^2 equal-length channels.
class AmbiSignal {
 public:
  AmbiSignal() = default;
  // Zero field.
  AmbiSignal(int order, size_t num_frames, double rate);
  // Throws ArgumentError if the channel count is not (order+1)^2.
  AmbiSignal(int order, SampleBuffer channels);

  int order() const { return order_; }
  size_t num_channels() const { return buffer_.num_channels(); }
  size_t num_frames() const { return buffer_.num_frames(); }
  double rate() const { return buffer_.rate(); }

  const SampleBuffer& buffer() const { return buffer_; }
  SampleBuffer& buffer() { return buffer_; }

  std::span<double> operator[](size_t c) { return buffer_[c]; }
  std::span<const double> operator[](size_t c) const { return buffer_[c]; }

  // Element-wise sum; orders, rates and lengths must agree.
  AmbiSignal& operator+=(const AmbiSignal& other);
  AmbiSignal& operator*=(double gain);

  bool operator==(const AmbiSignal&) const = default;

 private:
  int order_ = 0;
  SampleBuffer buffer_;
};

// Plane-wave encode: channel c = ShEval(order, az, el)[c] * mono.
AmbiSignal Encode(const SampleBuffer& mono, double azimuth, double elevation,
                  int order);
inline AmbiSignal Encode(const SampleBuffer& mono, const Direction& d,
                         int order) {
  return Encode(mono, d.azimuth, d.elevation, order);
}

// Keeps the first (new_order+1)^2 channels.
AmbiSignal Truncate(const AmbiSignal& signal, int new_order);

}  // namespace clarity

#endif  // CLARITY_AMBISONICS_AMBI_SIGNAL_H_
