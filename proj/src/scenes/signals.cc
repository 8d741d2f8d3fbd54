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

#include "clarity/scenes/signals.h"

#include <cmath>
#include <numbers>
#include <vector>

#include "clarity/audio/biquad.h"
#include "clarity/audio/dsp.h"
#include "clarity/common/error.h"
#include "clarity/common/random.h"

namespace clarity {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void NormalizeTo(SampleBuffer& b, double level_dbfs) {
  const double rms = Rms(b[0]);
  if (!(rms > 0.0)) return;
  const double g = DbToGain(level_dbfs) / rms;
  for (double& v : b[0]) v *= g;
}

// Resonance gain of a formant with centre |fc| and bandwidth |bw| at |f|.
double FormantGain(double f, double fc, double bw) {
  const double x = (f - fc) / (0.5 * bw);
  return 1.0 / std::sqrt(1.0 + x * x);
}

}  // namespace

std::string SourceKindName(SourceKind kind) {
  switch (kind) {
    case SourceKind::kSpeech:
      return "speech";
    case SourceKind::kMusic:
      return "music";
    case SourceKind::kNoise:
      return "noise";
  }
  return "speech";
}

SourceKind ParseSourceKind(const std::string& name) {
  if (name == "speech") return SourceKind::kSpeech;
  if (name == "music") return SourceKind::kMusic;
  if (name == "noise") return SourceKind::kNoise;
  throw ArgumentError("unknown source kind '" + name +
                      "' (expected speech, music or noise)");
}

SampleBuffer SpeechLike(size_t num_frames, double rate, uint64_t seed) {
  Rng rng(seed);
  const double f0 = rng.Uniform(95.0, 220.0);
  const double drift_hz = rng.Uniform(0.3, 0.9);
  const double drift_phase = rng.Uniform(0.0, kTwoPi);
  const double formants[3] = {rng.Uniform(450.0, 800.0),
                              rng.Uniform(1100.0, 1900.0),
                              rng.Uniform(2300.0, 3200.0)};

  // Syllables: raised-cosine bursts of 120..300 ms separated by short gaps.
  std::vector<double> envelope(num_frames, 0.0);
  size_t pos = static_cast<size_t>(rng.Uniform(0.0, 0.05) * rate);
  while (pos < num_frames) {
    const auto len = static_cast<size_t>(rng.Uniform(0.12, 0.3) * rate);
    const double peak = rng.Uniform(0.5, 1.0);
    for (size_t i = 0; i < len && pos + i < num_frames; ++i) {
      const double w = std::sin(std::numbers::pi * i / len);
      envelope[pos + i] = peak * w * w;
    }
    pos += len + static_cast<size_t>(rng.Uniform(0.03, 0.12) * rate);
  }

  const int harmonics = static_cast<int>(0.45 * rate / f0);
  std::vector<double> weights(harmonics + 1, 0.0);
  for (int h = 1; h <= harmonics; ++h) {
    const double f = h * f0;
    double g = 0.0;
    for (double fc : formants) g += FormantGain(f, fc, 0.12 * fc + 60.0);
    weights[h] = g / std::sqrt(static_cast<double>(h));
  }

  SampleBuffer out(1, num_frames, rate);
  double phase = 0.0;
  for (size_t n = 0; n < num_frames; ++n) {
    const double t = n / rate;
    const double pitch =
        f0 * (1.0 + 0.08 * std::sin(kTwoPi * drift_hz * t + drift_phase));
    phase = std::fmod(phase + kTwoPi * pitch / rate, kTwoPi);
    if (envelope[n] == 0.0) continue;
    double v = 0.0;
    for (int h = 1; h <= harmonics; ++h) {
      if (h * pitch >= 0.45 * rate) break;
      v += weights[h] * std::sin(h * phase);
    }
    out[0][n] = envelope[n] * v;
  }
  NormalizeTo(out, kSourceLevelDbfs);
  return out;
}

SampleBuffer FilteredNoise(size_t num_frames, double rate, uint64_t seed) {
  Rng rng(seed);
  const double low = rng.Uniform(100.0, 400.0);
  const double high = rng.Uniform(2000.0, 5000.0);
  const double wobble_hz = rng.Uniform(0.2, 1.0);
  std::vector<double> x(num_frames);
  for (double& v : x) v = rng.Normal();
  x = Biquad::ButterworthHighpass(low, rate).Filter(x);
  x = Biquad::ButterworthLowpass(high, rate).Filter(x);
  for (size_t n = 0; n < num_frames; ++n) {
    x[n] *= 1.0 + 0.3 * std::sin(kTwoPi * wobble_hz * n / rate);
  }
  SampleBuffer out = SampleBuffer::Mono(std::move(x), rate);
  NormalizeTo(out, kSourceLevelDbfs);
  return out;
}

SampleBuffer MusicArpeggio(size_t num_frames, double rate, uint64_t seed) {
  Rng rng(seed);
  const double root = 220.0 * std::pow(2.0, rng.Below(12) / 12.0);
  const bool minor = rng.Below(2) == 1;
  const int steps[4] = {0, minor ? 3 : 4, 7, 12};
  const double note_seconds = rng.Uniform(0.15, 0.3);
  const auto note_len = static_cast<size_t>(note_seconds * rate);

  SampleBuffer out(1, num_frames, rate);
  for (size_t start = 0, k = 0; start < num_frames; start += note_len, ++k) {
    const double f = root * std::pow(2.0, steps[k % 4] / 12.0);
    // Notes ring for two slots so consecutive notes overlap.
    for (size_t i = 0; i < 2 * note_len && start + i < num_frames; ++i) {
      const double t = i / rate;
      const double decay = std::exp(-t / (0.6 * note_seconds));
      double v = 0.0;
      for (int h = 1; h <= 5; ++h) {
        if (h * f >= 0.45 * rate) break;
        v += std::sin(kTwoPi * h * f * t) / (h * h);
      }
      out[0][start + i] += decay * v;
    }
  }
  NormalizeTo(out, kSourceLevelDbfs);
  return out;
}

SampleBuffer SynthSource(SourceKind kind, size_t num_frames, double rate,
                         uint64_t seed) {
  switch (kind) {
    case SourceKind::kSpeech:
      return SpeechLike(num_frames, rate, seed);
    case SourceKind::kMusic:
      return MusicArpeggio(num_frames, rate, seed);
    case SourceKind::kNoise:
      return FilteredNoise(num_frames, rate, seed);
  }
  throw ArgumentError("unknown source kind");
}

}  // namespace clarity
