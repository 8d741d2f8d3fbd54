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

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <vector>

#include "clarity/ambisonics/rotation.h"
#include "clarity/ambisonics/spherical_harmonics.h"
#include "clarity/audio/dsp.h"
#include "clarity/audio/wav_io.h"
#include "clarity/common/error.h"
#include "clarity/common/random.h"
#include "clarity/scenes/dataset.h"
#include "clarity/scenes/render.h"
#include "clarity/scenes/scene.h"
#include "clarity/ambisonics/binaural_decoder.h"
#include "clarity/scenes/signals.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace clarity {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kRate = 16000.0;
constexpr double kDegree = kPi / 180.0;

AmbiSignal NoiseField(Rng& rng, int order, size_t frames, double scale = 1.0) {
  SampleBuffer mono(1, frames, kRate);
  for (double& v : mono[0]) v = scale * rng.Normal();
  return Encode(mono, rng.Uniform(-kPi, kPi), rng.Uniform(-0.5, 0.5), order);
}

double WRms(const AmbiSignal& f, FrameRange r) {
  return Rms(f[0].subspan(r.begin, r.end - r.begin));
}

SceneSpec MinimalScene() {
  SceneSpec s;
  s.id = "minimal";
  s.target = {{2.0, 3.0, 1.5}, {42, std::nullopt, false}, 0.2, 0.5};
  InterfererSpec in;
  in.kind = SourceKind::kNoise;
  in.position = {5.0, 1.5, 1.2};
  in.source.synth_seed = 7;
  s.interferers = {in};
  s.listener = {{4.5, 2.5, 1.2}, RotationTrajectory::Constant(0.0)};
  s.snr_db = 3.0;
  s.seed = 11;
  s.duration = 0.8;
  return s;
}

TEST(SignalsTest, DeterministicAndAtSourceLevel) {
  for (SourceKind kind :
       {SourceKind::kSpeech, SourceKind::kMusic, SourceKind::kNoise}) {
    const SampleBuffer a = SynthSource(kind, 16000, kRate, 5);
    EXPECT_EQ(a, SynthSource(kind, 16000, kRate, 5));
    EXPECT_NE(a, SynthSource(kind, 16000, kRate, 6));
    EXPECT_NEAR(GainToDb(Rms(a[0])), kSourceLevelDbfs, 1e-9);
  }
  EXPECT_EQ(ParseSourceKind("music"), SourceKind::kMusic);
  EXPECT_THROW(ParseSourceKind("birdsong"), ArgumentError);
}

TEST(SceneFileTest, RoundTripEchoesFields) {
  SceneSpec s = MinimalScene();
  s.interferers[0].directivity = Directivity::kCardioid;
  s.listener.trajectory = {{{0.0, 0.1}, {0.4, 0.6}}};
  const auto path = test_util::TempDir("scene") / "s.json";
  SaveScene(path, s);
  const SceneSpec back = LoadScene(path);
  EXPECT_EQ(SceneToJson(back), SceneToJson(s));
  EXPECT_EQ(back.interferers[0].directivity, Directivity::kCardioid);
  EXPECT_EQ(back.listener.trajectory.breakpoints.size(), 2u);
  EXPECT_EQ(*back.snr_db, 3.0);
}

TEST(SceneFileTest, NullSnrDisablesMixing) {
  nlohmann::json doc = SceneToJson(MinimalScene());
  doc["snr_db"] = nullptr;
  EXPECT_FALSE(SceneFromJson(doc).snr_db.has_value());
}

TEST(SceneFileTest, TooManyInterferersNamesRule) {
  nlohmann::json doc = SceneToJson(MinimalScene());
  for (int i = 0; i < 3; ++i) doc["interferers"].push_back(doc["interferers"][0]);
  try {
    SceneFromJson(doc);
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("between 1 and 3"), std::string::npos);
  }
}

TEST(SceneFileTest, ListsEveryOffendingField) {
  nlohmann::json doc = SceneToJson(MinimalScene());
  doc["target"]["position"] = {9.0, 1.0, 1.0};
  doc["listener"]["position"] = {1.0, 1.0, -1.0};
  try {
    SceneFromJson(doc);
    FAIL();
  } catch (const ValidationError& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("target.position"), std::string::npos);
    EXPECT_NE(what.find("listener.position"), std::string::npos);
  }
  doc = SceneToJson(MinimalScene());
  doc["room"].erase("absorption");
  doc["interferers"][0]["kind"] = "birdsong";
  doc["duration"] = "long";
  try {
    SceneFromJson(doc);
    FAIL();
  } catch (const ValidationError& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("room.absorption"), std::string::npos);
    EXPECT_NE(what.find("interferers[0].kind"), std::string::npos);
    EXPECT_NE(what.find("duration"), std::string::npos);
  }
}

TEST(TrajectoryTest, InterpolatesAndHolds) {
  const RotationTrajectory t{{{0.0, 0.0}, {1.0, 1.0}, {2.0, -1.0}}};
  EXPECT_EQ(t.YawAt(-1.0), 0.0);
  EXPECT_DOUBLE_EQ(t.YawAt(0.5), 0.5);
  EXPECT_DOUBLE_EQ(t.YawAt(1.5), 0.0);
  EXPECT_EQ(t.YawAt(5.0), -1.0);
  EXPECT_THROW(RotationTrajectory{}.YawAt(0.0), ArgumentError);
  EXPECT_THROW((RotationTrajectory{{{0.1, 0.0}}}.Validate()), ArgumentError);
  EXPECT_THROW((RotationTrajectory{{{0.0, 0.0}, {0.0, 1.0}}}.Validate()),
               ArgumentError);
}

TEST(FidelityProfileTest, Presets) {
  const FidelityProfile sim = FidelityProfile::Simulated();
  EXPECT_EQ(sim.order, 6);
  EXPECT_EQ(sim.interferer_directivity, Directivity::kOmni);
  EXPECT_FALSE(sim.transducer_noise_db.has_value());
  EXPECT_EQ(sim.absorption_scale, 1.0);
  const FidelityProfile m = FidelityProfile::MeasuredLike();
  EXPECT_EQ(m.order, 1);
  EXPECT_EQ(m.interferer_directivity, Directivity::kCardioid);
  EXPECT_EQ(*m.transducer_noise_db, -40.0);
  EXPECT_EQ(m.absorption_scale, 0.85);
  FidelityProfile bad = sim;
  bad.order = 7;
  EXPECT_THROW(bad.Validate(), ArgumentError);
  EXPECT_THROW(ParseFidelity("bogus"), ArgumentError);
}

TEST(MixAtSnrTest, GainExamples) {
  Rng rng(601);
  const AmbiSignal t = NoiseField(rng, 1, 4000);
  AmbiSignal i = t;
  const FrameRange all{0, 4000};
  EXPECT_NEAR(MixGain(t, {i}, 0.0, all), 1.0, 1e-12);
  EXPECT_NEAR(MixGain(t, {i}, 6.0, all), std::pow(10.0, -6.0 / 20.0), 1e-12);
  EXPECT_NEAR(MixGain(t, {i}, 6.0, all), 0.501, 0.001);
}

TEST(MixAtSnrTest, AchievedSnrWithinTenthDb) {
  Rng rng(602);
  for (int trial = 0; trial < 100; ++trial) {
    const int order = 1 + static_cast<int>(rng.Below(3));
    const size_t frames = 2000 + rng.Below(2000);
    const AmbiSignal target = NoiseField(rng, order, frames, rng.Uniform(0.1, 2));
    std::vector<AmbiSignal> interferers;
    const size_t count = 1 + rng.Below(3);
    for (size_t k = 0; k < count; ++k) {
      interferers.push_back(NoiseField(rng, order, frames, rng.Uniform(0.1, 2)));
    }
    const FrameRange range{rng.Below(frames / 2), frames - rng.Below(frames / 4)};
    const double snr = rng.Uniform(-10.0, 10.0);
    const double g = MixGain(target, interferers, snr, range);
    AmbiSignal sum = interferers[0];
    for (size_t k = 1; k < count; ++k) sum += interferers[k];
    sum *= g;
    const double achieved =
        20.0 * std::log10(WRms(target, range) / WRms(sum, range));
    EXPECT_NEAR(achieved, snr, 0.1);

    const AmbiSignal mixed = MixAtSnr(target, interferers, snr, range);
    for (size_t n = 0; n < frames; n += 97) {
      EXPECT_NEAR(mixed[0][n], target[0][n] + sum[0][n], 1e-12);
    }
  }
}

TEST(MixAtSnrTest, SilentInterferersThrow) {
  Rng rng(603);
  const AmbiSignal t = NoiseField(rng, 1, 1000);
  EXPECT_THROW(MixGain(t, {AmbiSignal(1, 1000, kRate)}, 0.0, {0, 1000}),
               MixError);
  EXPECT_THROW(MixGain(t, {AmbiSignal(2, 1000, kRate)}, 0.0, {0, 1000}),
               ArgumentError);
}

TEST(ApplyTrajectoryTest, ConstantYawMatchesSingleRotation) {
  Rng rng(604);
  const AmbiSignal field = NoiseField(rng, 4, 3000);
  const AmbiSignal same =
      ApplyTrajectory(field, RotationTrajectory::Constant(0.0));
  for (size_t c = 0; c < field.num_channels(); ++c) {
    for (size_t n = 0; n < 3000; ++n) {
      EXPECT_NEAR(same[c][n], field[c][n], 1e-9);
    }
  }
  const double theta = 0.7;
  const AmbiSignal rotated =
      ApplyTrajectory(field, RotationTrajectory::Constant(theta));
  const AmbiSignal expected = ApplyRotation(field, YawRotation(4, -theta));
  for (size_t c = 0; c < field.num_channels(); ++c) {
    for (size_t n = 0; n < 3000; ++n) {
      EXPECT_NEAR(rotated[c][n], expected[c][n], 1e-6);
    }
  }
  EXPECT_THROW(ApplyTrajectory(field, RotationTrajectory{}), ArgumentError);
}

TEST(ApplyTrajectoryTest, MovingYawBlendsNeighbouringBlocks) {
  // A plane wave from azimuth 0 under a turning listener appears at
  // azimuth -yaw; at block centres the blend is exactly one rotation.
  SampleBuffer ones(1, 1600, kRate);
  for (double& v : ones[0]) v = 1.0;
  const AmbiSignal field = Encode(ones, 0.0, 0.0, 3);
  const RotationTrajectory t{{{0.0, 0.0}, {0.1, 1.0}}};
  const AmbiSignal out = ApplyTrajectory(field, t);
  for (size_t n = 0; n < 1600; n += 80) {
    const auto y = ShEval(3, -t.YawAt(n / kRate), 0.0);
    for (size_t c = 0; c < y.size(); ++c) EXPECT_NEAR(out[c][n], y[c], 1e-9);
  }
}

TEST(TransducerNoiseTest, LevelAndDeterminism) {
  const AmbiSignal silent(2, 64000, kRate);
  const AmbiSignal off =
      AddTransducerNoise(silent, 0.1, -std::numeric_limits<double>::infinity(),
                         1);
  EXPECT_EQ(off, silent);
  const AmbiSignal a = AddTransducerNoise(silent, 0.1, 0.0, 9);
  for (size_t c = 0; c < a.num_channels(); ++c) {
    EXPECT_NEAR(Rms(a[c]), 0.1, 0.002);
  }
  EXPECT_EQ(a, AddTransducerNoise(silent, 0.1, 0.0, 9));
  const AmbiSignal quiet = AddTransducerNoise(silent, 0.1, -20.0, 9);
  EXPECT_NEAR(Rms(quiet[0]), 0.01, 0.0002);
  // Noise starts at frame 0.
  EXPECT_NE(a[0][0], 0.0);
}

TEST(DefaultTrajectoryTest, Bounds) {
  for (uint64_t seed = 0; seed < 100; ++seed) {
    const double az = 0.3 * static_cast<double>(seed % 7) - 1.0;
    const RotationTrajectory t = DefaultTrajectory(az, 0.8, seed);
    EXPECT_NO_THROW(t.Validate());
    const double offset = std::abs(t.YawAt(0.0) - az);
    EXPECT_GE(offset, 15.0 * kDegree - 1e-12);
    EXPECT_LE(offset, 30.0 * kDegree + 1e-12);
    EXPECT_LE(std::abs(t.YawAt(100.0) - az), 10.0 * kDegree + 1e-12);
    const double start = t.breakpoints.size() == 3 ? t.breakpoints[1].first : 0.0;
    EXPECT_GE(start, 0.8 - 0.6 - 1e-12);
    EXPECT_LE(start, 0.8);
    const double turn = t.breakpoints.back().first - start;
    EXPECT_GE(turn, 0.2);
    EXPECT_LE(turn, 0.4);
    EXPECT_EQ(t.breakpoints, DefaultTrajectory(az, 0.8, seed).breakpoints);
  }
}

TEST(RenderSceneTest, DegeneratePipelineIsEncodeThenDecode) {
  SceneSpec s = MinimalScene();
  s.room.absorption = 1.0;
  s.interferers[0].source.silent = true;
  s.snr_db = std::nullopt;
  const HrtfSet hrtfs = DefaultHrtfSet();
  const FidelityProfile profile = FidelityProfile::Simulated();
  const RenderedScene r = RenderScene(s, hrtfs, profile);

  // Direct path only: delayed, 1/d-scaled plane wave.
  const Vec3 d = s.target.position - s.listener.position;
  const auto delay =
      static_cast<size_t>(std::lround(d.Norm() / 343.0 * kRate));
  const SampleBuffer dry = TargetSignal(s);
  SampleBuffer arriving(1, dry.num_frames(), kRate);
  for (size_t n = delay; n < dry.num_frames(); ++n) {
    arriving[0][n] = dry[0][n - delay] / d.Norm();
  }
  const Direction doa = Direction::FromVector(d);
  const SampleBuffer expected =
      BinauralDecode(Encode(arriving, doa, 6), hrtfs, FibonacciGrid(64));
  for (size_t c = 0; c < 2; ++c) {
    for (size_t n = 0; n < r.ears.num_frames(); ++n) {
      EXPECT_NEAR(r.ears[c][n], expected[c][n], 1e-6);
    }
  }
  EXPECT_NEAR(GainToDb(Rms(r.reference[0])), -26.0, 1e-9);
}

TEST(RenderSceneTest, DeterministicAndLinear) {
  const SceneSpec s = MinimalScene();
  const HrtfSet hrtfs = DefaultHrtfSet();
  FidelityProfile profile = FidelityProfile::MeasuredLike();
  const RenderedScene a = RenderScene(s, hrtfs, profile);
  const RenderedScene b = RenderScene(s, hrtfs, profile);
  EXPECT_EQ(EncodeWav(a.ears), EncodeWav(b.ears));
  EXPECT_EQ(a.reference, b.reference);

  // Component bookkeeping sums to the mixture.
  for (size_t c = 0; c < 2; ++c) {
    for (size_t n = 0; n < a.ears.num_frames(); ++n) {
      EXPECT_NEAR(a.ears[c][n],
                  a.target_ears[c][n] + a.interferer_ears[c][n] +
                      a.noise_ears[c][n],
                  1e-12);
    }
  }

  // Target-only plus interferer-only renders equal the mixture.
  profile.transducer_noise_db = std::nullopt;
  SceneSpec mix = s;
  mix.snr_db = std::nullopt;
  SceneSpec target_only = mix;
  target_only.interferers[0].source.silent = true;
  SceneSpec interferer_only = mix;
  interferer_only.target.source.silent = true;
  const RenderedScene m = RenderScene(mix, hrtfs, profile);
  const RenderedScene t = RenderScene(target_only, hrtfs, profile);
  const RenderedScene i = RenderScene(interferer_only, hrtfs, profile);
  for (size_t c = 0; c < 2; ++c) {
    for (size_t n = 0; n < m.ears.num_frames(); ++n) {
      EXPECT_NEAR(m.ears[c][n], t.ears[c][n] + i.ears[c][n], 1e-6);
    }
  }
}

TEST(RenderSceneTest, SilentInterferersWithMixingFailAtMixStage) {
  SceneSpec s = MinimalScene();
  s.interferers[0].source.silent = true;
  try {
    RenderScene(s, DefaultHrtfSet(), FidelityProfile::Simulated());
    FAIL();
  } catch (const MixError& e) {
    EXPECT_EQ(std::string(e.what()).rfind("mix:", 0), 0u);
  }
}

double EarSnrDb(const RenderedScene& r) {
  double t = 0.0, rest = 0.0;
  for (size_t c = 0; c < 2; ++c) {
    for (size_t n = r.target_range.begin; n < r.target_range.end; ++n) {
      t += r.target_ears[c][n] * r.target_ears[c][n];
      const double o = r.interferer_ears[c][n] + r.noise_ears[c][n];
      rest += o * o;
    }
  }
  return 10.0 * std::log10(t / rest);
}

TEST(RenderSceneTest, MeasuredLikeLowersMeanEarSnr) {
  const HrtfSet hrtfs = DefaultHrtfSet();
  double sim = 0.0, meas = 0.0;
  for (size_t i = 0; i < 4; ++i) {
    const SceneSpec s = RandomScene(RoomSpec{}, Fidelity::kSimulated, 21, i);
    sim += EarSnrDb(RenderScene(s, hrtfs, FidelityProfile::Simulated()));
    meas += EarSnrDb(RenderScene(s, hrtfs, FidelityProfile::MeasuredLike()));
  }
  EXPECT_LT(meas, sim);
}

TEST(RandomSceneTest, PlacementRules) {
  const RoomSpec room;
  for (size_t i = 0; i < 50; ++i) {
    const SceneSpec s = RandomScene(room, Fidelity::kMeasuredLike, 5, i);
    EXPECT_NO_THROW(s.Validate());
    std::vector<Vec3> points = {s.listener.position, s.target.position};
    for (const auto& in : s.interferers) points.push_back(in.position);
    EXPECT_GE(s.interferers.size(), 1u);
    EXPECT_LE(s.interferers.size(), 3u);
    for (size_t a = 0; a < points.size(); ++a) {
      const Vec3& p = points[a];
      for (double margin : {p.x, p.y, p.z, room.dimensions.x - p.x,
                            room.dimensions.y - p.y, room.dimensions.z - p.z}) {
        EXPECT_GE(margin, kMinWallDistance);
      }
      for (size_t b = a + 1; b < points.size(); ++b) {
        EXPECT_GE((p - points[b]).Norm(), kMinSourceSpacing);
      }
    }
    EXPECT_GE(*s.snr_db, -6.0);
    EXPECT_LE(*s.snr_db, 6.0);
  }
}

std::string ReadFile(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

TEST(GenerateDatasetTest, DeterministicManifestAndFiles) {
  const auto root = test_util::TempDir("dataset");
  DatasetConfig config;
  config.count = 3;
  config.seed = 17;
  config.fidelity = Fidelity::kMeasuredLike;
  config.out_dir = root / "a";
  config.threads = 1;
  const auto manifest_a = GenerateDataset(config);
  config.out_dir = root / "b";
  config.threads = 3;
  const auto manifest_b = GenerateDataset(config);
  EXPECT_EQ(ReadFile(manifest_a), ReadFile(manifest_b));

  const nlohmann::json m = LoadManifest(root / "a");
  ASSERT_EQ(m.size(), 3u);
  for (const auto& rec : m) {
    EXPECT_EQ(rec["profile"]["order"], 1);
    EXPECT_EQ(rec["profile"]["transducer_noise_db"], -40.0);
    for (const char* key : {"ears_file", "reference_file", "scene_file"}) {
      const std::string name = rec[key];
      EXPECT_EQ(ReadFile(root / "a" / name), ReadFile(root / "b" / name));
    }
  }
}

TEST(GenerateDatasetTest, UnwritableDirectory) {
  const auto root = test_util::TempDir("dataset_bad");
  std::ofstream(root / "file") << "x";
  DatasetConfig config;
  config.count = 1;
  config.out_dir = root / "file" / "sub";
  EXPECT_THROW(GenerateDataset(config), IoError);
}

}  // namespace
}  // namespace clarity
