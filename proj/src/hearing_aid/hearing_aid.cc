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

#include "clarity/hearing_aid/hearing_aid.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <numbers>
#include <string>

#include "clarity/audio/dsp.h"
#include "clarity/common/error.h"
#include "json.hpp"

namespace clarity {

namespace {

std::string FrequencyKey(double f) {
  return std::to_string(static_cast<int>(f));
}

}  // namespace

Audiogram Audiogram::Flat(double level) {
  Audiogram a;
  a.left.fill(level);
  a.right.fill(level);
  return a;
}

void Audiogram::Validate() const {
  std::string problems;
  for (Ear ear : {Ear::kLeft, Ear::kRight}) {
    const EarLevels& l = levels(ear);
    for (size_t i = 0; i < l.size(); ++i) {
      if (!(l[i] >= 0.0 && l[i] <= 120.0)) {
        problems += std::string(ear == Ear::kLeft ? "left" : "right") + "." +
                    FrequencyKey(kAudiogramFrequencies[i]) + ": " +
                    std::to_string(l[i]) + " dB HL outside [0, 120]\n";
      }
    }
  }
  if (!problems.empty()) throw ValidationError(problems);
}

Audiogram LoadAudiogram(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
  Audiogram a;
  std::string problems;
  for (Ear ear : {Ear::kLeft, Ear::kRight}) {
    const char* name = ear == Ear::kLeft ? "left" : "right";
    if (!doc.contains(name) || !doc[name].is_object()) {
      problems += std::string(name) + ": missing ear object\n";
      continue;
    }
    for (size_t i = 0; i < kAudiogramFrequencies.size(); ++i) {
      const std::string key = FrequencyKey(kAudiogramFrequencies[i]);
      const auto& ear_doc = doc[name];
      if (!ear_doc.contains(key) || !ear_doc[key].is_number()) {
        problems += std::string(name) + "." + key + ": missing or not a number\n";
        continue;
      }
      a.levels(ear)[i] = ear_doc[key].get<double>();
    }
  }
  if (!problems.empty()) throw ValidationError(path.string() + ":\n" + problems);
  a.Validate();
  return a;
}

void SaveAudiogram(const std::filesystem::path& path, const Audiogram& a) {
  nlohmann::json doc;
  for (Ear ear : {Ear::kLeft, Ear::kRight}) {
    nlohmann::json e;
    for (size_t i = 0; i < kAudiogramFrequencies.size(); ++i) {
      e[FrequencyKey(kAudiogramFrequencies[i])] = a.levels(ear)[i];
    }
    doc[ear == Ear::kLeft ? "left" : "right"] = e;
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

GainCurve NalrGains(const Audiogram& audiogram, Ear ear) {
  audiogram.Validate();
  const EarLevels& h = audiogram.levels(ear);
  const double x = 0.05 * (h[1] + h[2] + h[3]);
  GainCurve curve;
  for (size_t i = 0; i < kAudiogramFrequencies.size(); ++i) {
    curve.push_back({kAudiogramFrequencies[i],
                     std::max(0.0, x + 0.31 * h[i] + kNalrCorrections[i])});
  }
  return curve;
}

double InterpolateGain(const GainCurve& curve, double frequency) {
  if (curve.empty()) throw ArgumentError("empty gain curve");
  if (frequency <= curve.front().frequency) return curve.front().gain_db;
  if (frequency >= curve.back().frequency) return curve.back().gain_db;
  for (size_t i = 1; i < curve.size(); ++i) {
    if (frequency <= curve[i].frequency) {
      const double lo = std::log(curve[i - 1].frequency);
      const double hi = std::log(curve[i].frequency);
      const double t = (std::log(frequency) - lo) / (hi - lo);
      return curve[i - 1].gain_db + t * (curve[i].gain_db - curve[i - 1].gain_db);
    }
  }
  return curve.back().gain_db;
}

std::vector<double> DesignFir(const GainCurve& curve, size_t taps,
                              double rate) {
  if (taps % 2 == 0) throw ArgumentError("FIR length must be odd");
  if (taps < 63) throw ArgumentError("FIR length must be at least 63");
  if (!(rate > 0.0)) throw ArgumentError("rate must be > 0");
  const size_t half = (taps - 1) / 2;
  const double n = static_cast<double>(taps);
  std::vector<double> magnitude(half + 1);
  for (size_t k = 0; k <= half; ++k) {
    const double f = static_cast<double>(k) * rate / n;
    magnitude[k] = DbToGain(InterpolateGain(curve, std::max(f, 1.0)));
  }
  // Inverse DFT of a real, even spectrum, centred at |half|.
  std::vector<double> fir(taps);
  for (size_t i = 0; i < taps; ++i) {
    const double t = static_cast<double>(i) - static_cast<double>(half);
    double acc = magnitude[0];
    for (size_t k = 1; k <= half; ++k) {
      acc += 2.0 * magnitude[k] *
             std::cos(2.0 * std::numbers::pi * static_cast<double>(k) * t / n);
    }
    fir[i] = acc / n;
  }
  // Enforce exact symmetry against rounding in the cosine sums.
  for (size_t i = 0; i < half; ++i) {
    const double avg = 0.5 * (fir[i] + fir[taps - 1 - i]);
    fir[i] = avg;
    fir[taps - 1 - i] = avg;
  }
  return fir;
}

double FirMagnitudeDb(std::span<const double> fir, double frequency,
                      double rate) {
  std::complex<double> acc{0.0, 0.0};
  const double w = -2.0 * std::numbers::pi * frequency / rate;
  for (size_t i = 0; i < fir.size(); ++i) {
    acc += fir[i] * std::polar(1.0, w * static_cast<double>(i));
  }
  return GainToDb(std::abs(acc));
}

AmplifiedSignal Amplify(const SampleBuffer& ears, const Audiogram& audiogram,
                        size_t taps) {
  if (ears.num_channels() != 2) {
    throw ArgumentError("amplify needs a 2-channel signal, got " +
                        std::to_string(ears.num_channels()));
  }
  if (ears.empty()) throw ArgumentError("amplify: empty signal");
  std::vector<std::vector<double>> out;
  size_t clipped = 0;
  for (Ear ear : {Ear::kLeft, Ear::kRight}) {
    const std::vector<double> fir =
        DesignFir(NalrGains(audiogram, ear), taps, ears.rate());
    std::vector<double> y = Convolve(ears[static_cast<size_t>(ear)], fir);
    for (double& v : y) {
      if (v > 1.0 || v < -1.0) {
        v = std::clamp(v, -1.0, 1.0);
        ++clipped;
      }
    }
    out.push_back(std::move(y));
  }
  return {SampleBuffer(std::move(out), ears.rate()), clipped};
}

}  // namespace clarity
