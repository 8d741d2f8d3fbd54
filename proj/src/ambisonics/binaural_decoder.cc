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

#include "clarity/ambisonics/binaural_decoder.h"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <string>

#include "clarity/ambisonics/spherical_harmonics.h"
#include "clarity/audio/dsp.h"
#include "clarity/common/error.h"

namespace clarity {

std::vector<Direction> FibonacciGrid(size_t count) {
  std::vector<Direction> grid;
  grid.reserve(count);
  const double golden_angle = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (size_t i = 0; i < count; ++i) {
    const double z =
        1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(count);
    const double az = std::remainder(golden_angle * static_cast<double>(i),
                                     2.0 * std::numbers::pi);
    grid.push_back({az, std::asin(z)});
  }
  return grid;
}

BinauralDecoder::BinauralDecoder(int order, const HrtfSet& hrtfs,
                                 const std::vector<Direction>& grid)
    : order_(order), num_speakers_(grid.size()), taps_(hrtfs.taps), rate_(hrtfs.rate) {
  const size_t k = NumAmbiChannels(order);
  if (grid.size() < k) {
    throw ArgumentError("decode grid has " + std::to_string(grid.size()) +
                        " points but order " + std::to_string(order) +
                        " needs at least " + std::to_string(k));
  }
  if (hrtfs.entries.empty() || hrtfs.taps == 0) {
    throw ArgumentError("decoder needs a non-empty HRTF set");
  }

  Eigen::MatrixXd y(grid.size(), k);
  for (size_t i = 0; i < grid.size(); ++i) {
    const std::vector<double> row = ShEval(order, grid[i]);
    for (size_t c = 0; c < k; ++c) y(i, c) = row[c];
  }
  const Eigen::MatrixXd decode =
      y.completeOrthogonalDecomposition().pseudoInverse().transpose();
  if (decode.rows() != static_cast<Eigen::Index>(grid.size())) {
    throw ArgumentError("decode matrix has unexpected shape");
  }

  decode_matrix_.resize(grid.size() * k);
  left_filters_.assign(k, std::vector<double>(taps_, 0.0));
  right_filters_.assign(k, std::vector<double>(taps_, 0.0));
  for (size_t i = 0; i < grid.size(); ++i) {
    const HrtfPair& pair = NearestFilters(hrtfs, grid[i]);
    for (size_t c = 0; c < k; ++c) {
      const double g = decode(static_cast<Eigen::Index>(i),
                              static_cast<Eigen::Index>(c));
      decode_matrix_[i * k + c] = g;
      for (size_t t = 0; t < taps_; ++t) {
        left_filters_[c][t] += g * pair.left[t];
        right_filters_[c][t] += g * pair.right[t];
      }
    }
  }
}

SampleBuffer BinauralDecoder::Decode(const AmbiSignal& signal) const {
  if (signal.order() != order_) {
    throw ArgumentError("decoder built for order " + std::to_string(order_) +
                        " got order " + std::to_string(signal.order()));
  }
  if (signal.rate() != rate_) {
    throw RateMismatchError("HRTF set rate " + std::to_string(rate_) +
                            " Hz differs from field rate " +
                            std::to_string(signal.rate()) + " Hz");
  }
  if (signal.num_frames() == 0) {
    throw ArgumentError("cannot decode an empty field");
  }
  std::vector<std::vector<double>> channels;
  channels.reserve(signal.num_channels());
  for (size_t c = 0; c < signal.num_channels(); ++c) {
    channels.push_back(signal.buffer().channel(c));
  }
  std::vector<std::vector<double>> ears;
  ears.push_back(ConvolveAndSum(channels, left_filters_));
  ears.push_back(ConvolveAndSum(channels, right_filters_));
  return SampleBuffer(std::move(ears), signal.rate());
}

SampleBuffer BinauralDecode(const AmbiSignal& signal, const HrtfSet& hrtfs,
                            const std::vector<Direction>& grid) {
  return BinauralDecoder(signal.order(), hrtfs, grid).Decode(signal);
}

}  // namespace clarity
