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

#ifndef CLARITY_METRICS_METRICS_H_
#define CLARITY_METRICS_METRICS_H_

#include <cstddef>
#include <span>

#include "clarity/audio/sample_buffer.h"
#include "clarity/hearing_aid/hearing_aid.h"
#include "clarity/metrics/auditory.h"

namespace clarity {

// Surrogate scores in [0, 1]. combined is always the plain mean.
struct MetricScore {
  double haspi_like = 0.0;
  double hasqi_like = 0.0;
  double combined = 0.0;
};

struct Alignment {
  long lag = 0;              // proc[n + lag] lines up with ref[n]
  double correlation = 0.0;  // normalized cross-correlation at |lag|
  bool low_confidence = false;  // |correlation| < 0.2
};

// Lag in [-max_lag, max_lag] maximizing the normalized cross-correlation.
// Throws AlignmentError when either input is all zeros and ArgumentError
// when max_lag is not below both lengths.
Alignment Align(std::span<const double> ref, std::span<const double> proc,
                size_t max_lag);

// Hearing loss in dB at |frequency|, interpolated linearly in (log f, dB) and
// held constant outside 250..6000 Hz.
double LossAt(const EarLevels& levels, double frequency);

// Envelope-correlation intelligibility surrogate. The processed signal is
// aligned to the reference, each processed band is attenuated by the
// listener's loss at its centre, and per-band Pearson correlations of dB
// envelopes are averaged over bands with enough audible reference frames.
double IntelligibilityScore(const SampleBuffer& ref, const SampleBuffer& proc,
                            const EarLevels& loss,
                            const AuditoryConfig& config = {});

// Quality surrogate: 0.5 * envelope-correlation term + 0.5 * spectral term,
// both signals first RMS-normalized to -26 dBFS.
double QualityScore(const SampleBuffer& ref, const SampleBuffer& proc,
                    const EarLevels& loss, const AuditoryConfig& config = {});

// Spectral term of QualityScore on its own, for diagnostics.
double SpectralSimilarity(const SampleBuffer& ref, const SampleBuffer& proc,
                          const EarLevels& loss,
                          const AuditoryConfig& config = {});

// Throws ArgumentError unless both scores lie in [0, 1].
MetricScore CombinedScore(double haspi_like, double hasqi_like);

inline double BetterEar(double left, double right) {
  return left > right ? left : right;
}

// Scores both ears of |ears| against |ref| and keeps the better ear for each
// metric.
MetricScore ScoreListener(const SampleBuffer& ref, const SampleBuffer& ears,
                          const Audiogram& audiogram,
                          const AuditoryConfig& config = {});

inline constexpr double kReferenceLevelDbfs = -26.0;

// Copy scaled to |level_dbfs| RMS; silent input is returned unchanged.
SampleBuffer NormalizeRms(const SampleBuffer& signal,
                          double level_dbfs = kReferenceLevelDbfs);

}  // namespace clarity

#endif  // CLARITY_METRICS_METRICS_H_
