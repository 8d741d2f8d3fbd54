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

#ifndef CLARITY_AUDIO_DSP_H_
#define CLARITY_AUDIO_DSP_H_

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "clarity/audio/sample_buffer.h"

namespace clarity {

// Full linear convolution, length n + m - 1. Short problems are summed
// directly; longer ones go through the FFT.
std::vector<double> Convolve(std::span<const double> signal,
                             std::span<const double> kernel);

// Mono SampleBuffer front end for Convolve().
SampleBuffer Convolve(const SampleBuffer& signal,
                      std::span<const double> kernel);

// Convolves one signal with several kernels, transforming the signal once.
// Every output has length signal.size() + max kernel length - 1.
std::vector<std::vector<double>> ConvolveMany(
    std::span<const double> signal,
    const std::vector<std::vector<double>>& kernels);

// sum_i signals[i] * kernels[i]; all signals share one length. Output length
// is signal length + max kernel length - 1.
std::vector<double> ConvolveAndSum(
    const std::vector<std::vector<double>>& signals,
    const std::vector<std::vector<double>>& kernels);

// Per-channel root-mean-square over frames [begin, end).
std::vector<double> Rms(const SampleBuffer& signal, size_t begin, size_t end);
std::vector<double> Rms(const SampleBuffer& signal);
double Rms(std::span<const double> samples);

inline double DbToGain(double db) { return std::pow(10.0, db / 20.0); }
double GainToDb(double gain);

}  // namespace clarity

#endif  // CLARITY_AUDIO_DSP_H_
