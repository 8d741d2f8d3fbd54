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

#include "clarity/scenes/scene.h"

#include <cmath>
#include <fstream>
#include <sstream>

#include "clarity/common/error.h"

namespace clarity {

namespace {

using nlohmann::json;

std::string Join(const std::vector<std::string>& lines) {
  std::string out;
  for (const std::string& l : lines) {
    if (!out.empty()) out += '\n';
    out += l;
  }
  return out;
}

json VecToJson(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

json SourceToJson(const SignalSource& s) {
  json j;
  if (s.silent) {
    j["silent"] = true;
  } else if (s.file) {
    j["file"] = *s.file;
  } else {
    j["synth_seed"] = s.synth_seed;
  }
  return j;
}

// Field readers append "<path>: <problem>" to |errors| instead of throwing
// so that one pass reports everything.
class Reader {
 public:
  explicit Reader(std::vector<std::string>& errors) : errors_(errors) {}

  const json* Field(const json& parent, const std::string& key,
                    const std::string& path, bool required = true) {
    if (!parent.is_object()) return nullptr;
    const auto it = parent.find(key);
    if (it == parent.end()) {
      if (required) errors_.push_back(path + ": missing");
      return nullptr;
    }
    return &*it;
  }

  std::optional<double> Number(const json& parent, const std::string& key,
                               const std::string& path, bool required = true) {
    const json* j = Field(parent, key, path, required);
    if (j == nullptr) return std::nullopt;
    if (!j->is_number()) {
      errors_.push_back(path + ": expected a number");
      return std::nullopt;
    }
    return j->get<double>();
  }

  std::optional<Vec3> Vector(const json& parent, const std::string& key,
                             const std::string& path, bool required = true) {
    const json* j = Field(parent, key, path, required);
    if (j == nullptr) return std::nullopt;
    if (!j->is_array() || j->size() != 3 || !(*j)[0].is_number() ||
        !(*j)[1].is_number() || !(*j)[2].is_number()) {
      errors_.push_back(path + ": expected [x, y, z]");
      return std::nullopt;
    }
    return Vec3{(*j)[0].get<double>(), (*j)[1].get<double>(),
                (*j)[2].get<double>()};
  }

  std::optional<std::string> String(const json& parent, const std::string& key,
                                    const std::string& path,
                                    bool required = true) {
    const json* j = Field(parent, key, path, required);
    if (j == nullptr) return std::nullopt;
    if (!j->is_string()) {
      errors_.push_back(path + ": expected a string");
      return std::nullopt;
    }
    return j->get<std::string>();
  }

  SignalSource Source(const json& parent, const std::string& path) {
    SignalSource s;
    const json* j = Field(parent, "source", path, false);
    if (j == nullptr) return s;
    if (!j->is_object()) {
      errors_.push_back(path + ": expected an object");
      return s;
    }
    if (j->contains("silent")) {
      if (!(*j)["silent"].is_boolean()) {
        errors_.push_back(path + ".silent: expected a boolean");
      } else {
        s.silent = (*j)["silent"].get<bool>();
      }
    }
    s.file = String(*j, "file", path + ".file", false);
    if (j->contains("synth_seed")) {
      if (!(*j)["synth_seed"].is_number_unsigned()) {
        errors_.push_back(path + ".synth_seed: expected a non-negative integer");
      } else {
        s.synth_seed = (*j)["synth_seed"].get<uint64_t>();
      }
    }
    return s;
  }

  void Add(std::string message) { errors_.push_back(std::move(message)); }

 private:
  std::vector<std::string>& errors_;
};

void CheckInside(const RoomSpec& room, const Vec3& p, const std::string& path,
                 std::vector<std::string>& errors) {
  if (!room.Contains(p)) errors.push_back(path + ": outside room bounds");
}

}  // namespace

double RotationTrajectory::YawAt(double time) const {
  if (breakpoints.empty()) throw ArgumentError("empty rotation trajectory");
  if (time <= breakpoints.front().first) return breakpoints.front().second;
  for (size_t i = 1; i < breakpoints.size(); ++i) {
    const auto& [t1, y1] = breakpoints[i];
    if (time <= t1) {
      const auto& [t0, y0] = breakpoints[i - 1];
      return y0 + (y1 - y0) * (time - t0) / (t1 - t0);
    }
  }
  return breakpoints.back().second;
}

void RotationTrajectory::Validate() const {
  if (breakpoints.empty()) throw ArgumentError("empty rotation trajectory");
  if (breakpoints.front().first != 0.0) {
    throw ArgumentError("rotation trajectory must start at t = 0");
  }
  for (size_t i = 1; i < breakpoints.size(); ++i) {
    if (!(breakpoints[i].first > breakpoints[i - 1].first)) {
      throw ArgumentError("rotation trajectory times must strictly increase");
    }
  }
}

std::string FidelityName(Fidelity f) {
  return f == Fidelity::kSimulated ? "simulated" : "measured_like";
}

Fidelity ParseFidelity(const std::string& name) {
  if (name == "simulated") return Fidelity::kSimulated;
  if (name == "measured_like") return Fidelity::kMeasuredLike;
  throw ArgumentError("unknown fidelity '" + name +
                      "' (valid: simulated, measured_like)");
}

size_t SceneSpec::num_frames() const {
  return static_cast<size_t>(std::llround(duration * rate));
}

void SceneSpec::Validate() const {
  std::vector<std::string> errors;
  try {
    room.Validate();
  } catch (const ArgumentError& e) {
    errors.push_back(std::string("room: ") + e.what());
  }
  if (!(rate > 0.0)) errors.push_back("rate: must be > 0");
  if (!(duration > 0.0)) errors.push_back("duration: must be > 0");
  if (interferers.empty() || interferers.size() > kMaxInterferers) {
    errors.push_back("interferers: count must be between 1 and 3 (got " +
                     std::to_string(interferers.size()) + ")");
  }
  CheckInside(room, target.position, "target.position", errors);
  CheckInside(room, listener.position, "listener.position", errors);
  if (target.position == listener.position) {
    errors.push_back("target.position: coincides with listener.position");
  }
  if (!(target.onset >= 0.0)) errors.push_back("target.onset: must be >= 0");
  if (!(target.duration > 0.0)) {
    errors.push_back("target.duration: must be > 0");
  }
  if (target.onset + target.duration > duration + 1e-9) {
    errors.push_back("target: onset + duration exceeds scene duration");
  }
  for (size_t i = 0; i < interferers.size(); ++i) {
    const InterfererSpec& in = interferers[i];
    const std::string path = "interferers[" + std::to_string(i) + "]";
    CheckInside(room, in.position, path + ".position", errors);
    if (in.position == listener.position) {
      errors.push_back(path + ".position: coincides with listener.position");
    }
    if (!(in.onset >= 0.0) || !(in.onset < duration)) {
      errors.push_back(path + ".onset: must lie in [0, duration)");
    }
    if (!(in.aim.Norm() > 0.0)) errors.push_back(path + ".aim: zero vector");
  }
  try {
    listener.trajectory.Validate();
  } catch (const ArgumentError& e) {
    errors.push_back(std::string("listener.trajectory: ") + e.what());
  }
  if (snr_db && !std::isfinite(*snr_db)) {
    errors.push_back("snr_db: must be finite or null");
  }
  if (!errors.empty()) throw ValidationError(Join(errors));
}

json SceneToJson(const SceneSpec& s) {
  json j;
  j["id"] = s.id;
  j["room"] = {{"dimensions", VecToJson(s.room.dimensions)},
               {"absorption", s.room.absorption},
               {"speed_of_sound", s.room.speed_of_sound}};
  j["target"] = {{"position", VecToJson(s.target.position)},
                 {"source", SourceToJson(s.target.source)},
                 {"onset", s.target.onset},
                 {"duration", s.target.duration}};
  j["interferers"] = json::array();
  for (const InterfererSpec& in : s.interferers) {
    j["interferers"].push_back({{"kind", SourceKindName(in.kind)},
                                {"position", VecToJson(in.position)},
                                {"onset", in.onset},
                                {"directivity", DirectivityName(in.directivity)},
                                {"aim", VecToJson(in.aim)},
                                {"source", SourceToJson(in.source)}});
  }
  json trajectory = json::array();
  for (const auto& [t, yaw] : s.listener.trajectory.breakpoints) {
    trajectory.push_back({t, yaw});
  }
  j["listener"] = {{"position", VecToJson(s.listener.position)},
                   {"trajectory", trajectory}};
  j["snr_db"] = s.snr_db ? json(*s.snr_db) : json(nullptr);
  j["fidelity"] = FidelityName(s.fidelity);
  j["seed"] = s.seed;
  j["duration"] = s.duration;
  j["rate"] = s.rate;
  return j;
}

SceneSpec SceneFromJson(const json& doc) {
  std::vector<std::string> errors;
  Reader r(errors);
  SceneSpec s;
  if (!doc.is_object()) throw ValidationError("scene: expected a JSON object");

  if (auto id = r.String(doc, "id", "id", false)) s.id = *id;
  if (const json* room = r.Field(doc, "room", "room")) {
    if (auto v = r.Vector(*room, "dimensions", "room.dimensions")) {
      s.room.dimensions = *v;
    }
    if (auto v = r.Number(*room, "absorption", "room.absorption")) {
      s.room.absorption = *v;
    }
    if (auto v = r.Number(*room, "speed_of_sound", "room.speed_of_sound",
                          false)) {
      s.room.speed_of_sound = *v;
    }
  }
  if (const json* t = r.Field(doc, "target", "target")) {
    if (auto v = r.Vector(*t, "position", "target.position")) {
      s.target.position = *v;
    }
    s.target.source = r.Source(*t, "target.source");
    if (auto v = r.Number(*t, "onset", "target.onset")) s.target.onset = *v;
    if (auto v = r.Number(*t, "duration", "target.duration")) {
      s.target.duration = *v;
    }
  }
  if (const json* list = r.Field(doc, "interferers", "interferers")) {
    if (!list->is_array()) {
      r.Add("interferers: expected an array");
    } else {
      for (size_t i = 0; i < list->size(); ++i) {
        const json& e = (*list)[i];
        const std::string path = "interferers[" + std::to_string(i) + "]";
        InterfererSpec in;
        if (auto kind = r.String(e, "kind", path + ".kind")) {
          try {
            in.kind = ParseSourceKind(*kind);
          } catch (const ArgumentError& err) {
            r.Add(path + ".kind: " + err.what());
          }
        }
        if (auto v = r.Vector(e, "position", path + ".position")) {
          in.position = *v;
        }
        if (auto v = r.Number(e, "onset", path + ".onset")) in.onset = *v;
        if (auto d = r.String(e, "directivity", path + ".directivity", false)) {
          try {
            in.directivity = ParseDirectivity(*d);
          } catch (const ArgumentError& err) {
            r.Add(path + ".directivity: " + err.what());
          }
        }
        if (auto v = r.Vector(e, "aim", path + ".aim", false)) in.aim = *v;
        in.source = r.Source(e, path + ".source");
        s.interferers.push_back(in);
      }
    }
  }
  if (const json* l = r.Field(doc, "listener", "listener")) {
    if (auto v = r.Vector(*l, "position", "listener.position")) {
      s.listener.position = *v;
    }
    if (const json* tr = r.Field(*l, "trajectory", "listener.trajectory",
                                 false)) {
      bool ok = tr->is_array();
      if (ok) {
        for (const json& bp : *tr) {
          if (!bp.is_array() || bp.size() != 2 || !bp[0].is_number() ||
              !bp[1].is_number()) {
            ok = false;
            break;
          }
          s.listener.trajectory.breakpoints.emplace_back(bp[0].get<double>(),
                                                         bp[1].get<double>());
        }
      }
      if (!ok) r.Add("listener.trajectory: expected [[time, yaw], ...]");
    } else {
      s.listener.trajectory = RotationTrajectory::Constant(0.0);
    }
  }
  if (const json* snr = r.Field(doc, "snr_db", "snr_db", false)) {
    if (snr->is_null()) {
      s.snr_db = std::nullopt;
    } else if (snr->is_number()) {
      s.snr_db = snr->get<double>();
    } else {
      r.Add("snr_db: expected a number or null");
    }
  }
  if (auto f = r.String(doc, "fidelity", "fidelity", false)) {
    try {
      s.fidelity = ParseFidelity(*f);
    } catch (const ArgumentError& e) {
      r.Add(std::string("fidelity: ") + e.what());
    }
  }
  if (const json* seed = r.Field(doc, "seed", "seed", false)) {
    if (seed->is_number_unsigned()) {
      s.seed = seed->get<uint64_t>();
    } else {
      r.Add("seed: expected a non-negative integer");
    }
  }
  if (auto v = r.Number(doc, "duration", "duration")) s.duration = *v;
  if (auto v = r.Number(doc, "rate", "rate", false)) s.rate = *v;

  if (!errors.empty()) throw ValidationError(Join(errors));
  s.Validate();
  return s;
}

SceneSpec LoadScene(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open scene file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
  return SceneFromJson(doc);
}

void SaveScene(const std::filesystem::path& path, const SceneSpec& scene) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write scene file " + path.string());
  out << SceneToJson(scene).dump(2) << '\n';
  if (!out) throw IoError("failed writing " + path.string());
}

FidelityProfile FidelityProfile::Simulated() { return {}; }

FidelityProfile FidelityProfile::MeasuredLike() {
  FidelityProfile p;
  p.name = "measured_like";
  p.order = 1;
  p.interferer_directivity = Directivity::kCardioid;
  p.transducer_noise_db = -40.0;
  p.absorption_scale = 0.85;
  return p;
}

FidelityProfile FidelityProfile::For(Fidelity fidelity) {
  return fidelity == Fidelity::kSimulated ? Simulated() : MeasuredLike();
}

void FidelityProfile::Validate() const {
  if (order < 1 || order > 6) {
    throw ArgumentError("fidelity order must lie in 1..6");
  }
  if (!(absorption_scale > 0.0)) {
    throw ArgumentError("absorption scale must be > 0");
  }
}

json ProfileToJson(const FidelityProfile& p) {
  return {{"name", p.name},
          {"order", p.order},
          {"interferer_directivity", DirectivityName(p.interferer_directivity)},
          {"transducer_noise_db", p.transducer_noise_db
                                      ? json(*p.transducer_noise_db)
                                      : json(nullptr)},
          {"absorption_scale", p.absorption_scale}};
}

}  // namespace clarity
