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

#ifndef CLARITY_AMBISONICS_BINAURAL_DECODER_H_
#define CLARITY_AMBISONICS_BINAURAL_DECODER_H_

#include <cstddef>
#include <vector>

#include "clarity/ambisonics/ambi_signal.h"
#include "clarity/audio/sample_buffer.h"
#include "clarity/common/geometry.h"
#include "clarity/hrtf/hrtf.h"

namespace clarity {

// Deterministic spherical Fibonacci point set with |count| directions.
std::vector<Direction> FibonacciGrid(size_t count);

inline constexpr size_t kDefaultDecodeGridSize = 64;

// Virtual-loudspeaker binaural decoder. The mode-matching decode matrix is
// the transposed pseudo-inverse of the L x (N+1)^2 matrix of ShEval rows at
// the grid directions, so re-encoding the speaker feeds reproduces the field.
// Each speaker feed is filtered by the HRTF pair nearest to its direction.
// The speaker sum is folded into one filter pair per Ambisonic channel.
class BinauralDecoder {
 public:
  // Throws ArgumentError when the grid has fewer than (N+1)^2 points.
  BinauralDecoder(int order, const HrtfSet& hrtfs,
                  const std::vector<Direction>& grid);

  int order() const { return order_; }
  // L x (N+1)^2, row-major.
  const std::vector<double>& decode_matrix() const { return decode_matrix_; }
  size_t num_speakers() const { return num_speakers_; }

  // Two-channel output of length num_frames + taps - 1.
  SampleBuffer Decode(const AmbiSignal& signal) const;

 private:
  int order_;
  size_t num_speakers_;
  size_t taps_;
  double rate_;
  std::vector<double> decode_matrix_;
  std::vector<std::vector<double>> left_filters_;   // per ACN channel
  std::vector<std::vector<double>> right_filters_;  // per ACN channel
};

SampleBuffer BinauralDecode(const AmbiSignal& signal, const HrtfSet& hrtfs,
                            const std::vector<Direction>& grid);

}  // namespace clarity

#endif  // CLARITY_AMBISONICS_BINAURAL_DECODER_H_
