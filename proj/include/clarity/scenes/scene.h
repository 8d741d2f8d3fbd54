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

#ifndef CLARITY_SCENES_SCENE_H_
#define CLARITY_SCENES_SCENE_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "clarity/common/geometry.h"
#include "clarity/room/room.h"
#include "clarity/scenes/signals.h"
#include "json.hpp"

namespace clarity {

// Piecewise-linear listener yaw over time. Yaw is the azimuth the listener
// faces, in radians.
struct RotationTrajectory {
  std::vector<std::pair<double, double>> breakpoints;  // (time s, yaw rad)

  // Yaw at |time|; the first and last yaw are held outside the breakpoints.
  // Throws ArgumentError for an empty trajectory.
  double YawAt(double time) const;
  // Throws ArgumentError unless times strictly increase from t = 0.
  void Validate() const;
  static RotationTrajectory Constant(double yaw) { return {{{0.0, yaw}}}; }
};

// Where a source's dry signal comes from. A file path wins over synthesis;
// |silent| overrides both.
struct SignalSource {
  uint64_t synth_seed = 0;
  std::optional<std::string> file;
  bool silent = false;
};

struct TargetSpec {
  Vec3 position;
  SignalSource source;
  double onset = 0.0;     // s
  double duration = 0.0;  // s of utterance
};

struct InterfererSpec {
  SourceKind kind = SourceKind::kNoise;
  Vec3 position;
  double onset = 0.0;  // s; runs to the end of the scene
  Directivity directivity = Directivity::kOmni;
  Vec3 aim{1.0, 0.0, 0.0};
  SignalSource source;
};

struct ListenerSpec {
  Vec3 position;
  RotationTrajectory trajectory;
};

enum class Fidelity { kSimulated, kMeasuredLike };

std::string FidelityName(Fidelity f);
// Throws ArgumentError naming the valid values.
Fidelity ParseFidelity(const std::string& name);

struct SceneSpec {
  std::string id = "scene";
  RoomSpec room;
  TargetSpec target;
  std::vector<InterfererSpec> interferers;
  ListenerSpec listener;
  std::optional<double> snr_db;  // nullopt leaves interferers unscaled
  Fidelity fidelity = Fidelity::kSimulated;
  uint64_t seed = 0;
  double duration = 0.0;  // s
  double rate = kDefaultSampleRate;

  size_t num_frames() const;
  // Throws ValidationError listing every violated rule, one per line.
  void Validate() const;
};

inline constexpr size_t kMaxInterferers = 3;

nlohmann::json SceneToJson(const SceneSpec& scene);
// Collects every schema problem before throwing ValidationError.
SceneSpec SceneFromJson(const nlohmann::json& doc);
SceneSpec LoadScene(const std::filesystem::path& path);
void SaveScene(const std::filesystem::path& path, const SceneSpec& scene);

// Independent knobs separating the simulated pipeline from the
// measured-like one.
struct FidelityProfile {
  std::string name = "simulated";
  int order = 6;
  Directivity interferer_directivity = Directivity::kOmni;
  std::optional<double> transducer_noise_db;  // re target W RMS; off if unset
  double absorption_scale = 1.0;

  static FidelityProfile Simulated();
  static FidelityProfile MeasuredLike();
  static FidelityProfile For(Fidelity fidelity);
  // Throws ArgumentError for orders outside 1..6 or a scale that is not > 0.
  void Validate() const;
};

nlohmann::json ProfileToJson(const FidelityProfile& profile);

}  // namespace clarity

#endif  // CLARITY_SCENES_SCENE_H_
