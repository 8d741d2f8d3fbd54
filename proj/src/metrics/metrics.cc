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

#include "clarity/metrics/metrics.h"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "clarity/audio/dsp.h"
#include "clarity/common/error.h"
#include "clarity/common/stats.h"

namespace clarity {

namespace {

constexpr double kLowConfidence = 0.2;
constexpr double kSpectralScaleDb = 30.0;

struct AlignedPair {
  SampleBuffer ref;
  SampleBuffer proc;
};

bool IsSilent(std::span<const double> x) {
  return std::all_of(x.begin(), x.end(), [](double v) { return v == 0.0; });
}

void CheckMonoPair(const SampleBuffer& ref, const SampleBuffer& proc) {
  if (ref.num_channels() != 1 || proc.num_channels() != 1) {
    throw ArgumentError("scores need mono reference and processed signals");
  }
  if (ref.rate() != proc.rate()) {
    throw RateMismatchError("reference and processed rates differ");
  }
  if (ref.empty() || proc.empty()) throw ArgumentError("empty signal");
}

AlignedPair AlignPair(const SampleBuffer& ref, const SampleBuffer& proc,
                      const AuditoryConfig& config) {
  const size_t r = ref.num_frames();
  const size_t p = proc.num_frames();
  const auto wanted =
      static_cast<size_t>(std::lround(config.max_lag_seconds * ref.rate()));
  const size_t max_lag = std::min({wanted, r - 1, p - 1});
  const long lag = Align(ref[0], proc[0], max_lag).lag;
  const long begin = std::max(0L, -lag);
  const long end = std::min(static_cast<long>(r), static_cast<long>(p) - lag);
  const double mismatch =
      std::abs(static_cast<double>(r) - static_cast<double>(p - lag));
  if (mismatch > 0.1 * static_cast<double>(r) || end <= begin) {
    throw ArgumentError(
        "processed length differs from reference by more than 10% after "
        "alignment");
  }
  const auto b = static_cast<size_t>(begin);
  const auto n = static_cast<size_t>(end - begin);
  std::vector<double> ref_out(ref[0].begin() + b, ref[0].begin() + b + n);
  std::vector<double> proc_out(proc[0].begin() + b + lag,
                               proc[0].begin() + b + lag + n);
  return {SampleBuffer::Mono(std::move(ref_out), ref.rate()),
          SampleBuffer::Mono(std::move(proc_out), proc.rate())};
}

struct BandAnalysis {
  std::vector<std::vector<double>> envelopes_db;
  std::vector<double> levels_db;  // long-term band level, floored
};

// |attenuation_db| per band is applied before the envelope and level stages.
BandAnalysis Analyze(const SampleBuffer& signal,
                     const std::vector<double>& attenuation_db,
                     const AuditoryConfig& config) {
  std::vector<std::vector<double>> bands = GammatoneBands(signal, config);
  BandAnalysis out;
  for (size_t k = 0; k < bands.size(); ++k) {
    const double g = DbToGain(-attenuation_db[k]);
    double energy = 0.0;
    for (double& v : bands[k]) {
      v *= g;
      energy += v * v;
    }
    energy /= static_cast<double>(bands[k].size());
    out.levels_db.push_back(energy > 0.0
                                ? std::max(config.floor_db,
                                           10.0 * std::log10(energy))
                                : config.floor_db);
    out.envelopes_db.push_back(EnvelopeDb(bands[k], signal.rate(), config));
  }
  return out;
}

std::vector<double> BandLoss(const EarLevels& loss,
                             const AuditoryConfig& config) {
  std::vector<double> out;
  for (double fc : BandCenters(config)) out.push_back(LossAt(loss, fc));
  return out;
}

double CorrelationTerm(const BandAnalysis& ref, const BandAnalysis& proc,
                       const AuditoryConfig& config) {
  double sum = 0.0;
  size_t included = 0;
  for (size_t k = 0; k < ref.envelopes_db.size(); ++k) {
    const std::vector<double>& re = ref.envelopes_db[k];
    const std::vector<double>& pe = proc.envelopes_db[k];
    std::vector<double> x;
    std::vector<double> y;
    for (size_t i = 0; i < std::min(re.size(), pe.size()); ++i) {
      if (re[i] > config.audibility_db) {
        x.push_back(re[i]);
        y.push_back(pe[i]);
      }
    }
    if (x.size() < config.min_frames) continue;
    ++included;
    sum += std::max(TryPearson(x, y).value_or(0.0), 0.0);
  }
  return included == 0 ? 0.0 : std::clamp(sum / included, 0.0, 1.0);
}

}  // namespace

Alignment Align(std::span<const double> ref, std::span<const double> proc,
                size_t max_lag) {
  if (max_lag >= ref.size() || max_lag >= proc.size()) {
    throw ArgumentError("max lag must be shorter than both signals");
  }
  double ref_energy = 0.0, proc_energy = 0.0;
  for (double v : ref) ref_energy += v * v;
  for (double v : proc) proc_energy += v * v;
  if (!(ref_energy > 0.0) || !(proc_energy > 0.0)) {
    throw AlignmentError("cannot align an all-zero signal");
  }
  std::vector<double> reversed(ref.rbegin(), ref.rend());
  const std::vector<double> xcorr = Convolve(proc, reversed);
  const double norm = std::sqrt(ref_energy * proc_energy);
  const long offset = static_cast<long>(ref.size()) - 1;
  Alignment best{0, -2.0, false};
  const long m = static_cast<long>(max_lag);
  for (long lag = -m; lag <= m; ++lag) {
    const double c = xcorr[static_cast<size_t>(lag + offset)] / norm;
    if (c > best.correlation ||
        (c == best.correlation && std::abs(lag) < std::abs(best.lag))) {
      best.lag = lag;
      best.correlation = c;
    }
  }
  best.low_confidence = std::abs(best.correlation) < kLowConfidence;
  return best;
}

double LossAt(const EarLevels& levels, double frequency) {
  GainCurve curve;
  for (size_t i = 0; i < levels.size(); ++i) {
    curve.push_back({kAudiogramFrequencies[i], levels[i]});
  }
  return InterpolateGain(curve, frequency);
}

double IntelligibilityScore(const SampleBuffer& ref, const SampleBuffer& proc,
                            const EarLevels& loss,
                            const AuditoryConfig& config) {
  CheckMonoPair(ref, proc);
  if (IsSilent(proc[0])) return 0.0;
  const AlignedPair pair = AlignPair(ref, proc, config);
  const BandAnalysis r =
      Analyze(pair.ref, std::vector<double>(config.num_bands, 0.0), config);
  const BandAnalysis p = Analyze(pair.proc, BandLoss(loss, config), config);
  return CorrelationTerm(r, p, config);
}

namespace {

struct QualityTerms {
  double correlation = 0.0;
  double spectral = 0.0;
};

QualityTerms ComputeQualityTerms(const SampleBuffer& ref,
                                 const SampleBuffer& proc,
                                 const EarLevels& loss,
                                 const AuditoryConfig& config) {
  const AlignedPair pair = AlignPair(ref, proc, config);
  const SampleBuffer rn = NormalizeRms(pair.ref);
  const SampleBuffer pn = NormalizeRms(pair.proc);
  const BandAnalysis r =
      Analyze(rn, std::vector<double>(config.num_bands, 0.0), config);
  const BandAnalysis p = Analyze(pn, BandLoss(loss, config), config);
  double diff = 0.0;
  for (size_t k = 0; k < r.levels_db.size(); ++k) {
    diff += std::abs(p.levels_db[k] - r.levels_db[k]);
  }
  diff /= static_cast<double>(r.levels_db.size());
  return {CorrelationTerm(r, p, config),
          1.0 - std::min(1.0, diff / kSpectralScaleDb)};
}

}  // namespace

double SpectralSimilarity(const SampleBuffer& ref, const SampleBuffer& proc,
                          const EarLevels& loss, const AuditoryConfig& config) {
  CheckMonoPair(ref, proc);
  if (IsSilent(proc[0])) return 0.0;
  return ComputeQualityTerms(ref, proc, loss, config).spectral;
}

double QualityScore(const SampleBuffer& ref, const SampleBuffer& proc,
                    const EarLevels& loss, const AuditoryConfig& config) {
  CheckMonoPair(ref, proc);
  if (IsSilent(proc[0])) return 0.0;
  const QualityTerms t = ComputeQualityTerms(ref, proc, loss, config);
  return std::clamp(0.5 * t.correlation + 0.5 * t.spectral, 0.0, 1.0);
}

MetricScore CombinedScore(double haspi_like, double hasqi_like) {
  if (!(haspi_like >= 0.0 && haspi_like <= 1.0) ||
      !(hasqi_like >= 0.0 && hasqi_like <= 1.0)) {
    throw ArgumentError("scores must lie in [0, 1]");
  }
  return {haspi_like, hasqi_like, (haspi_like + hasqi_like) / 2.0};
}

MetricScore ScoreListener(const SampleBuffer& ref, const SampleBuffer& ears,
                          const Audiogram& audiogram,
                          const AuditoryConfig& config) {
  if (ears.num_channels() != 2) {
    throw ArgumentError("listener scoring needs 2 ear channels");
  }
  double haspi[2];
  double hasqi[2];
  for (Ear ear : {Ear::kLeft, Ear::kRight}) {
    const auto i = static_cast<size_t>(ear);
    const SampleBuffer mono = ears.ExtractChannel(i);
    haspi[i] = IntelligibilityScore(ref, mono, audiogram.levels(ear), config);
    hasqi[i] = QualityScore(ref, mono, audiogram.levels(ear), config);
  }
  return CombinedScore(BetterEar(haspi[0], haspi[1]),
                       BetterEar(hasqi[0], hasqi[1]));
}

SampleBuffer NormalizeRms(const SampleBuffer& signal, double level_dbfs) {
  SampleBuffer out = signal;
  for (size_t c = 0; c < out.num_channels(); ++c) {
    const double rms = Rms(out[c]);
    if (!(rms > 0.0)) continue;
    const double g = DbToGain(level_dbfs) / rms;
    for (double& v : out[c]) v *= g;
  }
  return out;
}

}  // namespace clarity
