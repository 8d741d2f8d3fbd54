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

// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit when any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "clarity/ambisonics/rotation.h"
#include "clarity/ambisonics/spherical_harmonics.h"
#include "clarity/audio/dsp.h"
#include "clarity/common/random.h"
#include "clarity/common/stats.h"
#include "clarity/harness/baseline.h"
#include "clarity/harness/leaderboard.h"
#include "clarity/hearing_aid/hearing_aid.h"
#include "clarity/metrics/metrics.h"
#include "clarity/room/room.h"
#include "clarity/scenes/dataset.h"
#include "clarity/scenes/render.h"
#include "clarity/scenes/signals.h"
#include "test_util.h"

namespace clarity {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kRate = 16000.0;
const std::filesystem::path kTable = CLARITY_TABLE_PATH;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string Fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), format, args...);
  return buf;
}

int failures = 0;

void Run(int id, const char* title, double budget_seconds,
         const std::function<Outcome()>& check) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = check();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double elapsed = std::chrono::duration<double>(
                             std::chrono::steady_clock::now() - start)
                             .count();
  const bool in_time = elapsed < budget_seconds;
  const bool pass = o.pass && in_time;
  failures += pass ? 0 : 1;
  std::printf("%s  %2d  %s: %s [%.2f s of %.0f s%s]\n", pass ? "PASS" : "FAIL",
              id, title, o.detail.c_str(), elapsed, budget_seconds,
              in_time ? "" : ", over budget");
  std::fflush(stdout);
}

Outcome LeaderboardArithmetic() {
  const Report report =
      MakeReport(LoadLeaderboardCsv(kTable), kTable.filename().string());
  size_t eval1 = 0, eval2 = 0;
  std::string flagged;
  for (const RowCheck& c : report.checks) {
    eval1 += c.row.eval_set == "Eval1";
    eval2 += c.row.eval_set == "Eval2";
    if (c.flagged) {
      flagged += Fmt(" %s/%s stored %.3f mean %.4f;", c.row.entry.c_str(),
                     c.row.eval_set.c_str(), *c.row.ave, c.mean);
    }
  }
  return {eval1 == 10 && eval2 == 10 && report.flags == 0,
          Fmt("%zu Eval1 + %zu Eval2 rows, %zu flags", eval1, eval2,
              report.flags) +
              flagged};
}

Outcome BestEntryCorrelation() {
  const auto best = BestPerTeam(LoadLeaderboardCsv(kTable), "Eval1", false);
  const std::vector<std::pair<double, double>> expected = {
      {0.179, 0.093}, {0.286, 0.161}, {0.797, 0.414}, {0.117, 0.047},
      {0.816, 0.570}, {0.838, 0.393}, {0.729, 0.316}};
  bool same = best.size() == expected.size();
  for (size_t i = 0; same && i < best.size(); ++i) {
    same = best[i].haspi_like == expected[i].first &&
           best[i].hasqi_like == expected[i].second;
  }
  const double r = ScoreCorrelation(best);
  return {same && std::abs(r - 0.943) <= 0.005,
          Fmt("r = %.4f over %zu best-per-team pairs (target 0.943 +/- 0.005)%s",
              r, best.size(), same ? "" : ", pair list mismatch")};
}

// Shared seeded batch for the fidelity comparison and the knob ablation.
constexpr size_t kBatchSize = 16;
constexpr uint64_t kBatchSeed = 1;

struct Batch {
  std::vector<SceneSpec> scenes;
  std::vector<double> simulated;
};

std::vector<double> ScoreBatch(const std::vector<SceneSpec>& scenes,
                               const FidelityProfile& profile,
                               const HrtfSet& hrtfs) {
  std::vector<double> out(scenes.size());
  const Audiogram flat40 = Audiogram::Flat(40.0);
  ParallelFor(scenes.size(), ResolveThreadCount(0), [&](size_t i) {
    const RenderedScene r = RenderScene(scenes[i], hrtfs, profile);
    out[i] = ScoreBaseline(r.reference, r.ears, flat40).combined;
  });
  return out;
}

double Mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

const Batch* batch = nullptr;

Outcome FidelityCollapse(const HrtfSet& hrtfs) {
  static Batch b;
  for (size_t i = 0; i < kBatchSize; ++i) {
    b.scenes.push_back(
        RandomScene(RoomSpec{}, Fidelity::kSimulated, kBatchSeed, i));
  }
  b.simulated = ScoreBatch(b.scenes, FidelityProfile::Simulated(), hrtfs);
  batch = &b;
  const auto measured =
      ScoreBatch(b.scenes, FidelityProfile::MeasuredLike(), hrtfs);
  size_t lower = 0;
  for (size_t i = 0; i < kBatchSize; ++i) lower += measured[i] < b.simulated[i];
  const double fraction = static_cast<double>(lower) / kBatchSize;
  const double sim = Mean(b.simulated), meas = Mean(measured);
  return {meas < sim && fraction >= 0.8,
          Fmt("mean combined simulated %.4f, measured_like %.4f; lower in "
              "%zu/%zu scenes",
              sim, meas, lower, kBatchSize)};
}

Outcome KnobAblation(const HrtfSet& hrtfs) {
  if (batch == nullptr) return {false, "batch unavailable"};
  const FidelityProfile meas = FidelityProfile::MeasuredLike();
  const double base = Mean(batch->simulated);
  struct Knob {
    const char* name;
    FidelityProfile profile;
    bool strict;
  };
  std::vector<Knob> knobs;
  FidelityProfile p = FidelityProfile::Simulated();
  p.order = meas.order;
  knobs.push_back({"order", p, true});
  p = FidelityProfile::Simulated();
  p.transducer_noise_db = meas.transducer_noise_db;
  knobs.push_back({"noise", p, true});
  p = FidelityProfile::Simulated();
  p.interferer_directivity = meas.interferer_directivity;
  knobs.push_back({"cardioid", p, false});
  p = FidelityProfile::Simulated();
  p.absorption_scale = meas.absorption_scale;
  knobs.push_back({"absorption", p, false});

  bool pass = true;
  std::string detail = Fmt("baseline %.4f;", base);
  for (const Knob& k : knobs) {
    const double delta = Mean(ScoreBatch(batch->scenes, k.profile, hrtfs)) - base;
    const bool ok = k.strict ? delta < 0.0 : delta <= 0.0;
    pass = pass && ok;
    detail += Fmt(" %s %+.5f%s%s;", k.name, delta, k.strict ? " (<0)" : " (<=0)",
                  ok ? "" : " VIOLATED");
  }
  return {pass, detail};
}

Outcome RotationSuites() {
  Rng rng(7001);
  double worst_plane = 0.0, worst_orth = 0.0;
  for (int order = 1; order <= 6; ++order) {
    for (int i = 0; i < 100; ++i) {
      const double az = rng.Uniform(-kPi, kPi);
      const double el = std::asin(rng.Uniform(-1.0, 1.0));
      const double angle = rng.Uniform(-2 * kPi, 2 * kPi);
      const YawRotation r(order, angle);
      std::vector<double> y = ShEval(order, az, el);
      r.ApplyToFrame(y);
      const auto expected = ShEval(order, az + angle, el);
      for (size_t c = 0; c < y.size(); ++c) {
        worst_plane = std::max(worst_plane, std::abs(y[c] - expected[c]));
      }
      for (size_t a = 0; a < r.size(); ++a) {
        for (size_t b = 0; b < r.size(); ++b) {
          double dot = 0.0;
          for (size_t k = 0; k < r.size(); ++k) dot += r(a, k) * r(b, k);
          worst_orth = std::max(worst_orth, std::abs(dot - (a == b)));
        }
      }
    }
  }
  return {worst_plane <= 1e-9 && worst_orth <= 1e-9,
          Fmt("orders 1-6 x 100 draws: max plane-wave error %.2e, max "
              "|R R^T - I| %.2e (tol 1e-9)",
              worst_plane, worst_orth)};
}

Outcome RoomRt() {
  const RoomSpec room;
  const AmbiRir rir =
      ImageSourceRir(room, {{2.0, 3.0, 1.5}}, {4.5, 2.5, 1.2}, 0, 0.6, kRate);
  const double t = MidFrequencyRt60(rir.response[0], kRate);
  return {t >= 0.22 && t <= 0.32,
          Fmt("6.6x5.8x2.8 m, alpha %.3f: T30 RT60 (500 Hz/1 kHz mean) %.3f s "
              "in [0.22, 0.32]; broadband %.3f s; Sabine %.3f s",
              room.absorption, t, SchroederRt60(rir.response[0], kRate),
              SabineRt60(room))};
}

// Independent DTFT of the taps.
double DtftDb(const std::vector<double>& h, double f) {
  double re = 0.0, im = 0.0;
  for (size_t n = 0; n < h.size(); ++n) {
    re += h[n] * std::cos(2 * kPi * f * n / kRate);
    im -= h[n] * std::sin(2 * kPi * f * n / kRate);
  }
  return 10.0 * std::log10(re * re + im * im);
}

Outcome Prescription() {
  const auto flat = DesignFir(NalrGains(Audiogram::Flat(40.0), Ear::kLeft),
                              kDefaultAmplifierTaps, kRate);
  const auto zero = DesignFir(NalrGains(Audiogram::Flat(0.0), Ear::kLeft),
                              kDefaultAmplifierTaps, kRate);
  const double g40 = DtftDb(flat, 1000.0), g0 = DtftDb(zero, 1000.0);
  return {std::abs(g40 - 19.4) <= 1.0 && std::abs(g0 - 1.0) <= 1.0,
          Fmt("flat-40 at 1 kHz %.2f dB (19.4 +/- 1); zero audiogram at 1 kHz "
              "%.2f dB (1.0 +/- 1)",
              g40, g0)};
}

SampleBuffer AddNoise(const SampleBuffer& s, const SampleBuffer& noise,
                      double snr_db) {
  const double g = Rms(s[0]) / Rms(noise[0]) / DbToGain(snr_db);
  SampleBuffer out = s;
  for (size_t n = 0; n < out.num_frames(); ++n) out[0][n] += g * noise[0][n];
  return out;
}

Outcome MetricSanity() {
  const EarLevels normal{};
  const SampleBuffer s = SpeechLike(3 * 16000, kRate, 8001);
  SampleBuffer noise(1, s.num_frames(), kRate);
  Rng rng(8002);
  for (double& v : noise[0]) v = rng.Normal();

  const double id_i = IntelligibilityScore(s, s, normal);
  const double id_q = QualityScore(s, s, normal);
  const double silent =
      IntelligibilityScore(s, SampleBuffer(1, s.num_frames(), kRate), normal);

  std::string ladder;
  bool monotone = true;
  double previous = 2.0;
  for (double snr : {12.0, 6.0, 0.0, -6.0}) {
    const double v = IntelligibilityScore(s, AddNoise(s, noise, snr), normal);
    monotone = monotone && v < previous;
    previous = v;
    ladder += Fmt(" %.4f", v);
  }

  SampleBuffer noisy = AddNoise(s, noise, 3.0);
  for (double& v : noisy[0]) v *= DbToGain(20.0);
  const double base_i = IntelligibilityScore(s, noisy, normal);
  const double base_q = QualityScore(s, noisy, normal);
  double worst = 0.0;
  for (double db : {-20.0, -6.0, 6.0, 10.0, 20.0}) {
    SampleBuffer scaled = noisy;
    for (double& v : scaled[0]) v *= DbToGain(db);
    worst = std::max(worst, std::abs(IntelligibilityScore(s, scaled, normal) -
                                     base_i));
    worst = std::max(worst, std::abs(QualityScore(s, scaled, normal) - base_q));
  }
  return {id_i >= 0.99 && id_q >= 0.99 && silent == 0.0 && monotone &&
              worst <= 1e-6,
          Fmt("identity %.4f/%.4f; silence %.3f; ladder +12..-6 dB:%s%s; gain "
              "drift %.1e",
              id_i, id_q, silent, ladder.c_str(),
              monotone ? "" : " (not strictly decreasing)", worst)};
}

std::map<std::string, std::string> ReadTree(const std::filesystem::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    std::ifstream in(e.path(), std::ios::binary);
    out[e.path().filename().string()] = {std::istreambuf_iterator<char>(in), {}};
  }
  return out;
}

Outcome Determinism() {
  const auto root = test_util::TempDir("acceptance_det");
  const size_t max_threads =
      std::max<size_t>(8, std::thread::hardware_concurrency());
  std::vector<std::map<std::string, std::string>> trees;
  for (size_t threads : {size_t{1}, max_threads, max_threads}) {
    DatasetConfig config;
    config.count = 4;
    config.seed = 99;
    config.fidelity = Fidelity::kMeasuredLike;
    config.threads = threads;
    config.out_dir = root / ("run" + std::to_string(trees.size()));
    GenerateDataset(config);
    trees.push_back(ReadTree(config.out_dir));
  }
  const bool same = trees[0] == trees[1] && trees[1] == trees[2];
  return {same && trees[0].size() == 13,
          Fmt("%zu files per run, threads 1/%zu/%zu: %s", trees[0].size(),
              max_threads, max_threads,
              same ? "byte-identical" : "outputs differ")};
}

// Unfolded-mirror enumeration: along one axis the k-th image sits at
// k L + x for even k and (k + 1) L - x for odd k.
size_t LatticeCount(const Vec3& dims, const Vec3& src, const Vec3& lis,
                    double max_distance) {
  auto coord = [](int k, double length, double x) {
    return k % 2 == 0 ? k * length + x : (k + 1) * length - x;
  };
  const int kx = static_cast<int>(max_distance / dims.x) + 2;
  const int ky = static_cast<int>(max_distance / dims.y) + 2;
  const int kz = static_cast<int>(max_distance / dims.z) + 2;
  size_t count = 0;
  for (int i = -kx; i <= kx; ++i) {
    for (int j = -ky; j <= ky; ++j) {
      for (int k = -kz; k <= kz; ++k) {
        const Vec3 p{coord(i, dims.x, src.x), coord(j, dims.y, src.y),
                     coord(k, dims.z, src.z)};
        count += (p - lis).Norm() <= max_distance;
      }
    }
  }
  return count;
}

Outcome OracleEquivalence() {
  Rng rng(10001);
  double worst_conv = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> x(1 + rng.Below(4000)), h(1 + rng.Below(600));
    for (double& v : x) v = rng.Normal();
    for (double& v : h) v = rng.Normal();
    const auto fast = Convolve(x, h);
    const auto slow = test_util::DirectConvolution(x, h);
    if (fast.size() != slow.size()) return {false, "convolution length mismatch"};
    for (size_t i = 0; i < fast.size(); ++i) {
      worst_conv = std::max(worst_conv, std::abs(fast[i] - slow[i]));
    }
  }

  size_t room_mismatches = 0;
  for (int trial = 0; trial < 10; ++trial) {
    const Vec3 dims{rng.Uniform(2.0, 5.0), rng.Uniform(2.0, 5.0),
                    rng.Uniform(2.0, 3.5)};
    auto inside = [&] {
      return Vec3{rng.Uniform(0.1, 0.9) * dims.x, rng.Uniform(0.1, 0.9) * dims.y,
                  rng.Uniform(0.1, 0.9) * dims.z};
    };
    const RoomSpec room{dims, 0.3};
    const SourceSpec source{inside()};
    const Vec3 listener = inside();
    const double limit = rng.Uniform(0.02, 0.06);
    const size_t got =
        ImageSourceRir(room, source, listener, 0, limit, kRate).image_count;
    room_mismatches +=
        got != LatticeCount(dims, source.position, listener,
                            limit * room.speed_of_sound);
  }

  double worst_snr = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int order = 1 + static_cast<int>(rng.Below(3));
    const size_t frames = 2000 + rng.Below(2000);
    auto field = [&] {
      SampleBuffer mono(1, frames, kRate);
      const double scale = rng.Uniform(0.1, 2.0);
      for (double& v : mono[0]) v = scale * rng.Normal();
      return Encode(mono, rng.Uniform(-kPi, kPi), rng.Uniform(-0.5, 0.5), order);
    };
    const AmbiSignal target = field();
    std::vector<AmbiSignal> interferers;
    const size_t count = 1 + rng.Below(3);
    for (size_t k = 0; k < count; ++k) interferers.push_back(field());
    const FrameRange range{rng.Below(frames / 2), frames - rng.Below(frames / 4)};
    const double snr = rng.Uniform(-10.0, 10.0);
    const AmbiSignal mixed = MixAtSnr(target, interferers, snr, range);
    std::vector<double> residual(range.end - range.begin);
    for (size_t n = range.begin; n < range.end; ++n) {
      residual[n - range.begin] = mixed[0][n] - target[0][n];
    }
    const double achieved =
        20.0 * std::log10(
                   Rms(target[0].subspan(range.begin, range.end - range.begin)) /
                   Rms(residual));
    worst_snr = std::max(worst_snr, std::abs(achieved - snr));
  }
  return {worst_conv <= 1e-9 && room_mismatches == 0 && worst_snr <= 0.1,
          Fmt("convolution max error %.2e (1e-9); image count mismatches "
              "%zu/10; mix SNR max error %.4f dB (0.1)",
              worst_conv, room_mismatches, worst_snr)};
}

}  // namespace
}  // namespace clarity

int main() {
  using namespace clarity;
  Run(1, "Leaderboard Ave reproduction", 1, LeaderboardArithmetic);
  Run(2, "Best-entry correlation", 1, BestEntryCorrelation);
  const HrtfSet hrtfs = DefaultHrtfSet();
  Run(3, "Simulated vs measured_like collapse", 300,
      [&] { return FidelityCollapse(hrtfs); });
  Run(4, "Fidelity knob ablation", 600, [&] { return KnobAblation(hrtfs); });
  Run(5, "Rotation correctness", 10, RotationSuites);
  Run(6, "Room RT60 validation", 30, RoomRt);
  Run(7, "NAL-R prescription through FIR", 5, Prescription);
  Run(8, "Metric sanity", 60, MetricSanity);
  Run(9, "Determinism", 120, Determinism);
  Run(10, "Oracle equivalence", 60, OracleEquivalence);
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
