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

#include "clarity/harness/baseline.h"

#include <algorithm>
#include <ostream>

#include "clarity/audio/wav_io.h"
#include "clarity/common/error.h"
#include "clarity/harness/leaderboard.h"
#include "clarity/scenes/dataset.h"

namespace clarity {

using nlohmann::json;

MetricScore ScoreBaseline(const SampleBuffer& reference,
                          const SampleBuffer& ears,
                          const Audiogram& audiogram) {
  const SampleBuffer& enhanced = ears;
  const AmplifiedSignal amplified = Amplify(enhanced, audiogram);
  return ScoreListener(reference, amplified.ears, audiogram);
}

namespace {

double Mean(const std::vector<SceneScore>& scenes,
            double (*field)(const MetricScore&)) {
  if (scenes.empty()) return 0.0;
  double sum = 0.0;
  for (const SceneScore& s : scenes) sum += field(s.score);
  return sum / static_cast<double>(scenes.size());
}

std::string RequireString(const json& rec, const char* key, size_t index) {
  if (!rec.contains(key) || !rec[key].is_string()) {
    throw FormatError("manifest record " + std::to_string(index) +
                      ": missing '" + key + "'");
  }
  return rec[key].get<std::string>();
}

}  // namespace

double RunManifest::MeanHaspi() const {
  return Mean(scenes, [](const MetricScore& m) { return m.haspi_like; });
}
double RunManifest::MeanHasqi() const {
  return Mean(scenes, [](const MetricScore& m) { return m.hasqi_like; });
}
double RunManifest::MeanCombined() const {
  return Mean(scenes, [](const MetricScore& m) { return m.combined; });
}

json RunManifest::ToJson() const {
  json records = json::array();
  for (const SceneScore& s : scenes) {
    records.push_back({{"scene", s.scene},
                       {"haspi_like", s.score.haspi_like},
                       {"hasqi_like", s.score.hasqi_like},
                       {"combined", s.score.combined}});
  }
  return {{"tool_version", tool_version},
          {"seed", seed},
          {"profile", profile},
          {"scenes", records},
          {"aggregate",
           {{"haspi_like", MeanHaspi()},
            {"hasqi_like", MeanHasqi()},
            {"combined", MeanCombined()}}}};
}

RunManifest ScoreDataset(const std::filesystem::path& dataset_dir,
                         const Audiogram& audiogram, size_t threads) {
  audiogram.Validate();
  const json manifest = LoadManifest(dataset_dir);
  RunManifest run;
  run.scenes.resize(manifest.size());
  for (size_t i = 0; i < manifest.size(); ++i) {
    const json& rec = manifest[i];
    const json seed = rec.value("dataset_seed", json(nullptr));
    const json profile = rec.value("fidelity", json(nullptr));
    run.seed = i == 0 || run.seed == seed ? seed : json(nullptr);
    run.profile = i == 0 || run.profile == profile ? profile : json(nullptr);
  }

  ParallelFor(manifest.size(), ResolveThreadCount(threads), [&](size_t i) {
    const json& rec = manifest[i];
    const std::string id = RequireString(rec, "id", i);
    SampleBuffer ears, reference;
    try {
      ears = ReadWav(dataset_dir / RequireString(rec, "ears_file", i));
      reference = ReadWav(dataset_dir / RequireString(rec, "reference_file", i));
    } catch (const Error& e) {
      throw IoError("scene " + id + ": " + e.what());
    }
    run.scenes[i] = {id, ScoreBaseline(reference, ears, audiogram)};
  });
  std::sort(run.scenes.begin(), run.scenes.end(),
            [](const SceneScore& a, const SceneScore& b) {
              return a.scene < b.scene;
            });
  return run;
}

void WriteScoresCsv(std::ostream& out, const std::vector<SceneScore>& scores) {
  out << "scene,haspi_like,hasqi_like,ave\n";
  for (const SceneScore& s : scores) {
    const double h = RoundHalfUp(s.score.haspi_like);
    const double q = RoundHalfUp(s.score.hasqi_like);
    out << s.scene << ',' << FormatScore(h) << ',' << FormatScore(q) << ','
        << FormatScore((h + q) / 2.0) << '\n';
  }
}

}  // namespace clarity
