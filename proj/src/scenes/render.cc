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

#include "clarity/scenes/render.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "clarity/ambisonics/binaural_decoder.h"
#include "clarity/ambisonics/rotation.h"
#include "clarity/audio/dsp.h"
#include "clarity/audio/wav_io.h"
#include "clarity/common/error.h"
#include "clarity/common/random.h"
#include "clarity/metrics/metrics.h"
#include "clarity/room/room.h"

namespace clarity {

namespace {

constexpr double kDegree = std::numbers::pi / 180.0;
constexpr uint64_t kNoiseStream = 0x6e6f697365;  // "noise"

double WRms(const AmbiSignal& field, FrameRange range) {
  return Rms(field[0].subspan(range.begin, range.end - range.begin));
}

void CheckCompatible(const AmbiSignal& a, const AmbiSignal& b) {
  if (a.order() != b.order() || a.rate() != b.rate() ||
      a.num_frames() != b.num_frames()) {
    throw ArgumentError("fields differ in order, rate or length");
  }
}

AmbiSignal SumFields(const std::vector<AmbiSignal>& fields) {
  AmbiSignal sum = fields.front();
  for (size_t i = 1; i < fields.size(); ++i) {
    CheckCompatible(sum, fields[i]);
    sum += fields[i];
  }
  return sum;
}

// Mono dry signal of |frames| samples from |source|, or synthesized |kind|.
std::vector<double> DrySignal(const SignalSource& source, SourceKind kind,
                              size_t frames, double rate) {
  if (source.silent || frames == 0) return std::vector<double>(frames, 0.0);
  if (source.file) {
    const SampleBuffer b = ReadWav(*source.file, rate);
    std::vector<double> x = b.channel(0);
    x.resize(frames, 0.0);
    return x;
  }
  return SynthSource(kind, frames, rate, source.synth_seed).channel(0);
}

// Each channel of |rir| applied to |dry|, cut to |frames|.
AmbiSignal Spatialize(std::span<const double> dry, const AmbiRir& rir,
                      size_t frames) {
  const AmbiSignal& h = rir.response;
  std::vector<std::vector<double>> kernels;
  for (size_t c = 0; c < h.num_channels(); ++c) {
    kernels.emplace_back(h[c].begin(), h[c].end());
  }
  std::vector<std::vector<double>> channels = ConvolveMany(dry, kernels);
  for (auto& ch : channels) ch.resize(frames, 0.0);
  return AmbiSignal(h.order(), SampleBuffer(std::move(channels), h.rate()));
}

template <typename F>
auto Stage(const char* name, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ValidationError& e) {
    throw ValidationError(std::string(name) + ": " + e.what());
  } catch (const MixError& e) {
    throw MixError(std::string(name) + ": " + e.what());
  } catch (const IoError& e) {
    throw IoError(std::string(name) + ": " + e.what());
  } catch (const FormatError& e) {
    throw FormatError(std::string(name) + ": " + e.what());
  } catch (const RateMismatchError& e) {
    throw RateMismatchError(std::string(name) + ": " + e.what());
  } catch (const ArgumentError& e) {
    throw ArgumentError(std::string(name) + ": " + e.what());
  }
}

}  // namespace

double MixGain(const AmbiSignal& target,
               const std::vector<AmbiSignal>& interferers, double snr_db,
               FrameRange range) {
  if (interferers.empty()) throw MixError("no interferers to mix");
  const AmbiSignal sum = SumFields(interferers);
  CheckCompatible(target, sum);
  if (range.end > target.num_frames() || range.begin >= range.end) {
    throw ArgumentError("target-active range is empty or out of bounds");
  }
  const double t = WRms(target, range);
  const double i = WRms(sum, range);
  if (!(i > 0.0)) throw MixError("interferers are silent over the target range");
  if (!(t > 0.0)) throw MixError("target is silent over its active range");
  return t / (i * DbToGain(snr_db));
}

AmbiSignal MixAtSnr(const AmbiSignal& target,
                    const std::vector<AmbiSignal>& interferers, double snr_db,
                    FrameRange range) {
  const double g = MixGain(target, interferers, snr_db, range);
  AmbiSignal out = SumFields(interferers);
  out *= g;
  out += target;
  return out;
}

AmbiSignal ApplyTrajectory(const AmbiSignal& field,
                           const RotationTrajectory& trajectory) {
  if (trajectory.breakpoints.empty()) {
    throw ArgumentError("empty rotation trajectory");
  }
  const double rate = field.rate();
  const auto hop = static_cast<size_t>(
      std::max(1.0, std::round(0.5 * kRotationBlockSeconds * rate)));
  auto rotation = [&](size_t block) {
    const double centre = static_cast<double>(block * hop) / rate;
    return YawRotation(field.order(), -trajectory.YawAt(centre));
  };

  AmbiSignal out(field.order(), field.num_frames(), rate);
  const size_t channels = field.num_channels();
  std::vector<double> frame(channels), a(channels), b(channels);
  size_t current = 0;
  YawRotation r0 = rotation(0);
  YawRotation r1 = rotation(1);
  for (size_t n = 0; n < field.num_frames(); ++n) {
    const size_t block = n / hop;
    if (block != current) {
      r0 = block == current + 1 ? std::move(r1) : rotation(block);
      r1 = rotation(block + 1);
      current = block;
    }
    const double w = static_cast<double>(n - block * hop) / hop;
    for (size_t c = 0; c < channels; ++c) frame[c] = field[c][n];
    a = frame;
    r0.ApplyToFrame(a);
    if (w > 0.0) {
      b = frame;
      r1.ApplyToFrame(b);
      for (size_t c = 0; c < channels; ++c) {
        out[c][n] = (1.0 - w) * a[c] + w * b[c];
      }
    } else {
      for (size_t c = 0; c < channels; ++c) out[c][n] = a[c];
    }
  }
  return out;
}

AmbiSignal AddTransducerNoise(const AmbiSignal& field, double reference_rms,
                              double level_db, uint64_t seed) {
  if (std::isinf(level_db) && level_db < 0.0) return field;
  const double sigma = reference_rms * DbToGain(level_db);
  AmbiSignal out = field;
  Rng rng(seed);
  for (size_t c = 0; c < out.num_channels(); ++c) {
    for (double& v : out[c]) v += sigma * rng.Normal();
  }
  return out;
}

RotationTrajectory DefaultTrajectory(double target_azimuth,
                                     double target_onset, uint64_t seed) {
  Rng rng(seed);
  const double magnitude = rng.Uniform(15.0, 30.0) * kDegree;
  const double offset = rng.Below(2) == 0 ? magnitude : -magnitude;
  const double start = std::max(0.0, target_onset - rng.Uniform(0.0, 0.6));
  const double turn = rng.Uniform(0.2, 0.4);
  const double final_yaw = target_azimuth + rng.Uniform(-10.0, 10.0) * kDegree;
  const double initial = target_azimuth + offset;
  RotationTrajectory t;
  t.breakpoints.emplace_back(0.0, initial);
  if (start > 0.0) t.breakpoints.emplace_back(start, initial);
  t.breakpoints.emplace_back(start + turn, final_yaw);
  return t;
}

double AzimuthFrom(const Vec3& listener, const Vec3& point) {
  const Vec3 d = point - listener;
  return std::atan2(d.y, d.x);
}

SampleBuffer TargetSignal(const SceneSpec& scene) {
  const size_t frames = scene.num_frames();
  const auto onset = std::min(
      frames, static_cast<size_t>(std::llround(scene.target.onset * scene.rate)));
  const auto length = std::min(
      frames - onset,
      static_cast<size_t>(std::llround(scene.target.duration * scene.rate)));
  const std::vector<double> dry =
      DrySignal(scene.target.source, SourceKind::kSpeech, length, scene.rate);
  SampleBuffer out(1, frames, scene.rate);
  std::copy(dry.begin(), dry.end(), out[0].begin() + onset);
  return out;
}

SampleBuffer InterfererSignal(const SceneSpec& scene, size_t index) {
  const InterfererSpec& in = scene.interferers.at(index);
  const size_t frames = scene.num_frames();
  const auto onset = std::min(
      frames, static_cast<size_t>(std::llround(in.onset * scene.rate)));
  const std::vector<double> dry =
      DrySignal(in.source, in.kind, frames - onset, scene.rate);
  SampleBuffer out(1, frames, scene.rate);
  std::copy(dry.begin(), dry.end(), out[0].begin() + onset);
  return out;
}

HrtfSet DefaultHrtfSet(double rate) {
  return BuildHrtfSet(FibonacciGrid(kDefaultDecodeGridSize), HeadModel{}, rate,
                      64);
}

RenderedScene RenderScene(const SceneSpec& scene, const HrtfSet& hrtfs,
                          const FidelityProfile& profile,
                          const RenderOptions& options) {
  Stage("scene", [&] {
    scene.Validate();
    profile.Validate();
    return 0;
  });
  const size_t frames = scene.num_frames();
  const double rate = scene.rate;
  RoomSpec room = scene.room;
  room.absorption = std::min(1.0, room.absorption * profile.absorption_scale);

  RenderedScene out;
  const SampleBuffer target_dry = Stage("sources", [&] {
    return TargetSignal(scene);
  });
  std::vector<SampleBuffer> interferer_dry;
  Stage("sources", [&] {
    for (size_t i = 0; i < scene.interferers.size(); ++i) {
      interferer_dry.push_back(InterfererSignal(scene, i));
    }
    return 0;
  });

  // Room stage: one Ambisonic RIR per source.
  const AmbiSignal target_field = Stage("room", [&] {
    const SourceSpec source{scene.target.position, Directivity::kOmni, {}};
    const AmbiRir rir = ImageSourceRir(room, source, scene.listener.position,
                                       profile.order, options.rir_seconds, rate);
    return Spatialize(target_dry[0], rir, frames);
  });
  std::vector<AmbiSignal> interferer_fields;
  Stage("room", [&] {
    for (size_t i = 0; i < scene.interferers.size(); ++i) {
      const InterfererSpec& in = scene.interferers[i];
      const SourceSpec source{in.position,
                              options.use_scene_directivity
                                  ? in.directivity
                                  : profile.interferer_directivity,
                              in.aim};
      const AmbiRir rir = ImageSourceRir(room, source, scene.listener.position,
                                         profile.order, options.rir_seconds,
                                         rate);
      interferer_fields.push_back(Spatialize(interferer_dry[i][0], rir, frames));
    }
    return 0;
  });

  const auto onset = std::min(
      frames, static_cast<size_t>(std::llround(scene.target.onset * rate)));
  const auto end = std::min(
      frames,
      onset + static_cast<size_t>(std::llround(scene.target.duration * rate)));
  out.target_range = {onset, end};

  out.mix_gain = Stage("mix", [&] {
    return scene.snr_db ? MixGain(target_field, interferer_fields,
                                  *scene.snr_db, out.target_range)
                        : 1.0;
  });
  AmbiSignal interferer_field = SumFields(interferer_fields);
  interferer_field *= out.mix_gain;

  AmbiSignal noise_field(profile.order, frames, rate);
  if (profile.transducer_noise_db) {
    const double reference = WRms(target_field, out.target_range);
    noise_field = AddTransducerNoise(noise_field, reference,
                                     *profile.transducer_noise_db,
                                     MixSeed(scene.seed, kNoiseStream));
  }

  const BinauralDecoder decoder = Stage("decode", [&] {
    return BinauralDecoder(profile.order, hrtfs,
                           FibonacciGrid(options.decode_grid_size));
  });
  auto to_ears = [&](const AmbiSignal& field) {
    SampleBuffer ears = Stage("decode", [&] {
      return decoder.Decode(ApplyTrajectory(field, scene.listener.trajectory));
    });
    ears.Resize(frames);
    return ears;
  };
  out.target_ears = to_ears(target_field);
  out.interferer_ears = to_ears(interferer_field);
  out.noise_ears = profile.transducer_noise_db ? to_ears(noise_field)
                                               : SampleBuffer(2, frames, rate);
  out.ears = SampleBuffer(2, frames, rate);
  for (size_t c = 0; c < 2; ++c) {
    for (size_t n = 0; n < frames; ++n) {
      out.ears[c][n] = out.target_ears[c][n] + out.interferer_ears[c][n] +
                       out.noise_ears[c][n];
    }
  }
  out.reference = NormalizeRms(target_dry, kReferenceLevelDbfs);

  out.record = {{"id", scene.id},
                {"seed", scene.seed},
                {"fidelity", FidelityName(scene.fidelity)},
                {"profile", ProfileToJson(profile)},
                {"snr_db", scene.snr_db ? nlohmann::json(*scene.snr_db)
                                        : nlohmann::json(nullptr)},
                {"mix_gain", out.mix_gain},
                {"frames", frames},
                {"rate", rate}};
  return out;
}

}  // namespace clarity
