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

#ifndef CLARITY_HARNESS_BASELINE_H_
#define CLARITY_HARNESS_BASELINE_H_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "clarity/audio/sample_buffer.h"
#include "clarity/hearing_aid/hearing_aid.h"
#include "clarity/metrics/metrics.h"
#include "json.hpp"

namespace clarity {

inline constexpr const char* kToolVersion = "0.1.0";

// Passthrough enhancement, fixed NAL-R amplification, better-ear scoring.
MetricScore ScoreBaseline(const SampleBuffer& reference,
                          const SampleBuffer& ears, const Audiogram& audiogram);

struct SceneScore {
  std::string scene;
  MetricScore score;
};

struct RunManifest {
  std::string tool_version = kToolVersion;
  nlohmann::json seed;     // dataset seed, or null when scenes disagree
  nlohmann::json profile;  // fidelity name, or null when scenes disagree
  std::vector<SceneScore> scenes;  // sorted by scene id

  double MeanHaspi() const;
  double MeanHasqi() const;
  double MeanCombined() const;
  nlohmann::json ToJson() const;
};

// Scores every scene listed in |dataset_dir|/manifest.json. Results are
// sorted by scene id. |threads| = 0 defers to ResolveThreadCount. A missing
// or unreadable audio file raises IoError naming the scene.
RunManifest ScoreDataset(const std::filesystem::path& dataset_dir,
                         const Audiogram& audiogram, size_t threads = 0);

// Columns scene,haspi_like,hasqi_like,ave at 3 decimals; ave is the mean of
// the two rounded score columns.
void WriteScoresCsv(std::ostream& out, const std::vector<SceneScore>& scores);

}  // namespace clarity

#endif  // CLARITY_HARNESS_BASELINE_H_
