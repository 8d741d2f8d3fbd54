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

#include "clarity/scenes/dataset.h"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "clarity/audio/wav_io.h"
#include "clarity/common/error.h"
#include "clarity/common/random.h"
#include "clarity/scenes/render.h"

namespace clarity {

namespace {

using nlohmann::json;

constexpr double kUtteranceSeconds = 2.5;
constexpr double kTailSeconds = 0.3;

Vec3 RandomPoint(Rng& rng, const RoomSpec& room) {
  const Vec3& d = room.dimensions;
  return {rng.Uniform(kMinWallDistance, d.x - kMinWallDistance),
          rng.Uniform(kMinWallDistance, d.y - kMinWallDistance),
          rng.Uniform(std::min(1.0, d.z / 2), std::min(1.8, d.z - kMinWallDistance))};
}

// Rejection-samples |count| points pairwise at least kMinSourceSpacing apart.
std::vector<Vec3> SpacedPoints(Rng& rng, const RoomSpec& room, size_t count) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<Vec3> points;
    for (int tries = 0; points.size() < count && tries < 1000; ++tries) {
      const Vec3 p = RandomPoint(rng, room);
      const bool clear = std::all_of(points.begin(), points.end(), [&](auto& q) {
        return (p - q).Norm() >= kMinSourceSpacing;
      });
      if (clear) points.push_back(p);
    }
    if (points.size() == count) return points;
  }
  throw ArgumentError("room too small to place sources with 1 m spacing");
}

std::string SceneId(size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "scene_%04zu", index);
  return buf;
}

json PointJson(const Vec3& p) { return json::array({p.x, p.y, p.z}); }

}  // namespace

SceneSpec RandomScene(const RoomSpec& room, Fidelity fidelity, uint64_t seed,
                      size_t index, double rate) {
  room.Validate();
  const uint64_t scene_seed = MixSeed(seed, index);
  Rng rng(scene_seed);
  SceneSpec s;
  s.id = SceneId(index);
  s.room = room;
  s.fidelity = fidelity;
  s.seed = scene_seed;
  s.rate = rate;

  const size_t interferers = 1 + rng.Below(3);
  const std::vector<Vec3> points = SpacedPoints(rng, room, 2 + interferers);
  s.listener.position = points[0];
  s.target.position = points[1];
  s.target.onset = rng.Uniform(0.6, 1.0);
  s.target.duration = kUtteranceSeconds;
  s.target.source.synth_seed = rng.Next();
  s.duration = s.target.onset + kUtteranceSeconds + kTailSeconds;

  const Directivity directivity =
      FidelityProfile::For(fidelity).interferer_directivity;
  for (size_t i = 0; i < interferers; ++i) {
    InterfererSpec in;
    in.kind = static_cast<SourceKind>(rng.Below(3));
    in.position = points[2 + i];
    in.onset = rng.Uniform(0.0, s.target.onset - 0.2);
    in.directivity = directivity;
    const Vec3 to_listener = s.listener.position - in.position;
    in.aim = to_listener * (1.0 / to_listener.Norm());
    in.source.synth_seed = rng.Next();
    s.interferers.push_back(in);
  }
  s.snr_db = rng.Uniform(kMinSnrDb, kMaxSnrDb);
  s.listener.trajectory = DefaultTrajectory(
      AzimuthFrom(s.listener.position, s.target.position), s.target.onset,
      rng.Next());
  s.Validate();
  return s;
}

size_t ResolveThreadCount(size_t requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("CLARITY_BENCH_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<size_t>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void ParallelFor(size_t count, size_t threads,
                 const std::function<void(size_t)>& work) {
  threads = std::max<size_t>(1, std::min(threads, count));
  std::atomic<size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (size_t i = next++; i < count; i = next++) {
      try {
        work(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        next = count;
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
}

std::filesystem::path GenerateDataset(const DatasetConfig& config) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(config.out_dir, ec);
  if (ec) {
    throw IoError("cannot create " + config.out_dir.string() + ": " +
                  ec.message());
  }
  const FidelityProfile profile = FidelityProfile::For(config.fidelity);
  const HrtfSet hrtfs = DefaultHrtfSet(config.rate);
  std::vector<json> records(config.count);

  ParallelFor(config.count, ResolveThreadCount(config.threads), [&](size_t i) {
    const SceneSpec scene =
        RandomScene(config.room, config.fidelity, config.seed, i, config.rate);
    const RenderedScene r = RenderScene(scene, hrtfs, profile);
    const fs::path dir = config.out_dir;
    SaveScene(dir / (scene.id + ".json"), scene);
    WriteWav(dir / (scene.id + "_ears.wav"), r.ears, WavEncoding::kFloat32);
    WriteWav(dir / (scene.id + "_ref.wav"), r.reference, WavEncoding::kFloat32);

    json rec = r.record;
    rec["scene_file"] = scene.id + ".json";
    rec["ears_file"] = scene.id + "_ears.wav";
    rec["reference_file"] = scene.id + "_ref.wav";
    rec["dataset_seed"] = config.seed;
    rec["target"] = {{"position", PointJson(scene.target.position)},
                     {"onset", scene.target.onset}};
    rec["listener"] = PointJson(scene.listener.position);
    json interferers = json::array();
    for (const InterfererSpec& in : scene.interferers) {
      interferers.push_back({{"kind", SourceKindName(in.kind)},
                             {"position", PointJson(in.position)},
                             {"onset", in.onset}});
    }
    rec["interferers"] = interferers;
    records[i] = std::move(rec);
  });

  const fs::path manifest = config.out_dir / kManifestName;
  std::ofstream out(manifest);
  if (!out) throw IoError("cannot write " + manifest.string());
  out << json(records).dump(2) << '\n';
  if (!out) throw IoError("failed writing " + manifest.string());
  return manifest;
}

json LoadManifest(const std::filesystem::path& dir) {
  const auto path = dir / kManifestName;
  std::ifstream in(path);
  if (!in) throw IoError("cannot open manifest " + path.string());
  try {
    json doc = json::parse(in);
    if (!doc.is_array()) throw FormatError(path.string() + ": expected array");
    return doc;
  } catch (const json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

}  // namespace clarity
