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

#ifndef CLARITY_SCENES_DATASET_H_
#define CLARITY_SCENES_DATASET_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>

#include "clarity/room/room.h"
#include "clarity/scenes/scene.h"
#include "json.hpp"

namespace clarity {

// Placement rules for generated scenes.
inline constexpr double kMinSourceSpacing = 1.0;  // m, between any two points
inline constexpr double kMinWallDistance = 0.5;   // m
inline constexpr double kMinSnrDb = -6.0;
inline constexpr double kMaxSnrDb = 6.0;

// One randomized scene: listener, target and 1..3 interferers placed with
// the spacing rules, SNR in [-6, 6] dB, synthetic sources and the default
// head turn. Interferers are aimed at the listener.
SceneSpec RandomScene(const RoomSpec& room, Fidelity fidelity, uint64_t seed,
                      size_t index, double rate = kDefaultSampleRate);

struct DatasetConfig {
  size_t count = 10;
  uint64_t seed = 0;
  Fidelity fidelity = Fidelity::kSimulated;
  RoomSpec room;
  double rate = kDefaultSampleRate;
  std::filesystem::path out_dir;
  // 0 reads CLARITY_BENCH_THREADS, falling back to the hardware count.
  size_t threads = 0;
};

inline constexpr const char* kManifestName = "manifest.json";

// Worker count: |requested| if nonzero, else CLARITY_BENCH_THREADS if it
// parses to a positive integer, else the hardware thread count.
size_t ResolveThreadCount(size_t requested);

// Runs |work(i)| for i in [0, count) on |threads| workers. The first
// exception thrown by any call is rethrown after all workers stop.
void ParallelFor(size_t count, size_t threads,
                 const std::function<void(size_t)>& work);

// Renders every scene, writes <id>.json, <id>_ears.wav and <id>_ref.wav
// (float WAV) plus manifest.json (array of scene records, ordered by id)
// into out_dir. Returns the manifest path. Throws IoError when out_dir cannot
// be written.
std::filesystem::path GenerateDataset(const DatasetConfig& config);

// Reads manifest.json from |dir|.
nlohmann::json LoadManifest(const std::filesystem::path& dir);

}  // namespace clarity

#endif  // CLARITY_SCENES_DATASET_H_
