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

#ifndef CLARITY_AUDIO_BIQUAD_H_
#define CLARITY_AUDIO_BIQUAD_H_

#include <span>
#include <vector>

namespace clarity {

// Direct-form I second-order section, a0 normalized to 1.
struct Biquad {
  double b0 = 1.0;
  double b1 = 0.0;
  double b2 = 0.0;
  double a1 = 0.0;
  double a2 = 0.0;

  // Bilinear-transform Butterworth sections (Q = 1/sqrt(2)).
  static Biquad ButterworthLowpass(double cutoff, double rate);
  static Biquad ButterworthHighpass(double cutoff, double rate);

  // Filters |samples| in place from zero initial state.
  void Process(std::span<double> samples) const;
  std::vector<double> Filter(std::span<const double> samples) const;

  double Magnitude(double frequency, double rate) const;
};

}  // namespace clarity

#endif  // CLARITY_AUDIO_BIQUAD_H_
