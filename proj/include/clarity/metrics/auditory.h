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

#ifndef CLARITY_METRICS_AUDITORY_H_
#define CLARITY_METRICS_AUDITORY_H_

#include <cstddef>
#include <span>
#include <vector>

#include "clarity/audio/sample_buffer.h"

namespace clarity {

// Auditory front end shared by both surrogate metrics.
struct AuditoryConfig {
  size_t num_bands = 32;
  double low_hz = 80.0;     // lower edge of the ERB-number span
  double high_hz = 8000.0;  // upper edge of the ERB-number span
  double envelope_rate = 256.0;
  double envelope_cutoff = 32.0;
  double floor_db = -80.0;
  double audibility_db = -60.0;
  size_t min_frames = 50;
  double max_lag_seconds = 0.1;
};

// Glasberg & Moore equivalent rectangular bandwidth, Hz.
double Erb(double frequency);
// ERB-number (Cams) and its inverse.
double ErbNumber(double frequency);
double ErbNumberToHz(double erb_number);

// Band centres: midpoints of |num_bands| equal ERB-number segments spanning
// [low_hz, high_hz]. Strictly increasing and below rate / 2 for
// rate >= 16 kHz.
std::vector<double> BandCenters(const AuditoryConfig& config);

// 4th-order gammatone filter bank built from four cascaded complex one-pole
// sections around each centre, with unit gain at the centre. The pole
// bandwidth is chosen so that the -3 dB bandwidth equals 1.019 ERB(fc).
// Throws ArgumentError for rates below 16 kHz or non-mono input.
std::vector<std::vector<double>> GammatoneBands(const SampleBuffer& signal,
                                                const AuditoryConfig& config);

// Pole bandwidth parameter b (Hz) used for the band at |center|.
double GammatonePoleBandwidth(double center);

// Half-wave rectification, 2nd-order Butterworth low-pass at
// config.envelope_cutoff, decimation to config.envelope_rate and conversion
// to dB with a floor at config.floor_db.
std::vector<double> EnvelopeDb(std::span<const double> band, double rate,
                               const AuditoryConfig& config);

}  // namespace clarity

#endif  // CLARITY_METRICS_AUDITORY_H_
