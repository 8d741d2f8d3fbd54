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

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "clarity/audio/wav_io.h"
#include "clarity/common/error.h"
#include "clarity/common/random.h"
#include "clarity/common/stats.h"
#include "clarity/harness/baseline.h"
#include "clarity/harness/leaderboard.h"
#include "clarity/metrics/metrics.h"
#include "clarity/scenes/dataset.h"
#include "clarity/scenes/signals.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace clarity {
namespace {

const std::filesystem::path kTable = CLARITY_TABLE_PATH;
const std::string kBench = CLARITY_BENCH_PATH;

std::vector<LeaderboardRow> Parse(const std::string& text) {
  std::istringstream in(text);
  return ParseLeaderboardCsv(in, "t.csv");
}

std::string ErrorOf(const std::string& text) {
  try {
    Parse(text);
  } catch (const FormatError& e) {
    return e.what();
  }
  return "";
}

int RunBench(const std::string& args) {
  const int status =
      std::system((kBench + " " + args + " >/dev/null 2>&1").c_str());
  return WEXITSTATUS(status);
}

std::string ReadFile(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

TEST(RoundHalfUpTest, TiesGoUp) {
  EXPECT_EQ(FormatScore(0.2235), "0.224");
  EXPECT_EQ(FormatScore(0.0895), "0.090");
  EXPECT_EQ(FormatScore(0.5225), "0.523");
  EXPECT_EQ(FormatScore((0.249 + 0.154) / 2), "0.202");
  EXPECT_EQ(FormatScore(0.1234), "0.123");
  EXPECT_EQ(FormatScore(0.0), "0.000");
}

TEST(LeaderboardCsvTest, ParsesEitherLayout) {
  auto rows = Parse("entry,eval,ave,haspi_like,hasqi_like\nA,Eval1,0.5,0.6,0.4\n");
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].entry, "A");
  EXPECT_EQ(rows[0].eval_set, "Eval1");
  EXPECT_EQ(*rows[0].ave, 0.5);
  EXPECT_EQ(rows[0].line, 2u);
  rows = Parse("scene,haspi_like,hasqi_like\ns1,0.1,0.3\n\ns2,0.2,0.4\n");
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_FALSE(rows[0].ave.has_value());
  EXPECT_EQ(rows[1].line, 4u);
}

TEST(LeaderboardCsvTest, ErrorsCarryLineNumbers) {
  EXPECT_NE(ErrorOf("entry,haspi,hasqi\nA,0.1,x\n").find("t.csv:2"),
            std::string::npos);
  EXPECT_NE(ErrorOf("entry,haspi,hasqi\nA,0.1,0.2\nB,0.1\n").find("t.csv:3"),
            std::string::npos);
  EXPECT_NE(ErrorOf("entry,hasqi\nA,0.1\n").find("t.csv:1"), std::string::npos);
  EXPECT_NE(ErrorOf("").find("t.csv"), std::string::npos);
  EXPECT_NE(ErrorOf("entry,haspi,hasqi\n").find("t.csv"), std::string::npos);
}

TEST(LeaderboardCsvTest, EmptyFileNamesFile) {
  const auto path = test_util::TempDir("harness") / "empty.csv";
  std::ofstream(path).close();
  try {
    LoadLeaderboardCsv(path);
    FAIL();
  } catch (const FormatError& e) {
    EXPECT_NE(std::string(e.what()).find("empty.csv"), std::string::npos);
  }
  EXPECT_THROW(LoadLeaderboardCsv(path.parent_path() / "missing.csv"), IoError);
}

TEST(VerifyRowsTest, FlagsBeyondTolerance) {
  const auto checks = VerifyRows(Parse(
      "entry,ave,haspi,hasqi\n"
      "a,0.5225,0.729,0.316\n"  // exact mean
      "b,0.522,0.729,0.316\n"   // 0.0005 off: tolerated
      "c,0.521,0.729,0.316\n"   // 0.0015 off
      "d,0.5,0.6,0.4\n"));
  ASSERT_EQ(checks.size(), 4u);
  EXPECT_FALSE(checks[0].flagged);
  EXPECT_FALSE(checks[1].flagged);
  EXPECT_TRUE(checks[2].flagged);
  EXPECT_FALSE(checks[3].flagged);
  EXPECT_DOUBLE_EQ(checks[0].rounded, 0.523);
}

TEST(BundledTableTest, RecomputedAveValues) {
  const auto rows = LoadLeaderboardCsv(kTable);
  ASSERT_EQ(rows.size(), 20u);
  size_t eval1 = 0, eval2 = 0;
  for (const RowCheck& c : VerifyRows(rows)) {
    eval1 += c.row.eval_set == "Eval1";
    eval2 += c.row.eval_set == "Eval2";
    const double oracle =
        std::floor((c.row.haspi_like + c.row.hasqi_like) * 500.0 + 0.5 + 1e-7) /
        1000.0;
    EXPECT_NEAR(c.rounded, oracle, 1e-12) << c.row.entry;
    if (c.row.entry == "E01" && c.row.eval_set == "Eval1") {
      EXPECT_EQ(FormatScore(c.mean), "0.197");
    }
    if (c.row.entry == "E28d" && c.row.eval_set == "Eval1") {
      EXPECT_EQ(FormatScore(c.mean), "0.693");
    }
  }
  EXPECT_EQ(eval1, 10u);
  EXPECT_EQ(eval2, 10u);
}

TEST(BestPerTeamTest, PicksHighestVariant) {
  const auto rows = LoadLeaderboardCsv(kTable);
  EXPECT_EQ(TeamOf("E28d"), "E28");
  EXPECT_EQ(TeamOf("E29r"), "E29");
  EXPECT_EQ(TeamOf("E30"), "E30");
  const auto best = BestPerTeam(rows, "Eval1", false);
  std::vector<std::string> ids;
  for (const auto& r : best) ids.push_back(r.entry);
  EXPECT_EQ(ids, (std::vector<std::string>{"E02", "E09", "E14", "E23", "E28d",
                                           "E29r", "E30"}));
  EXPECT_EQ(BestPerTeam(rows, "Eval1", true).size(), 8u);
}

TEST(PearsonTest, LinearAndDegenerate) {
  const std::vector<double> x = {0.1, 0.5, 0.2, 0.9};
  std::vector<double> y, z;
  for (double v : x) {
    y.push_back(2 * v + 1);
    z.push_back(-v);
  }
  EXPECT_NEAR(Pearson(x, y), 1.0, 1e-12);
  EXPECT_NEAR(Pearson(x, z), -1.0, 1e-12);
  EXPECT_THROW(Pearson(x, std::vector<double>(4, 0.3)), StatisticsError);
  EXPECT_THROW(Pearson({x.data(), 2}, {y.data(), 2}), StatisticsError);
  EXPECT_THROW(Pearson(x, {y.data(), 3}), StatisticsError);
}

TEST(PearsonTest, TwoPassOracle) {
  Rng rng(901);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> x(12), y(12);
    for (size_t i = 0; i < x.size(); ++i) {
      x[i] = rng.Uniform(0, 1);
      y[i] = 0.3 * x[i] + rng.Uniform(0, 1);
    }
    // Covariance over the product of standard deviations, via long double.
    long double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
    const long double n = x.size();
    for (size_t i = 0; i < x.size(); ++i) {
      sx += x[i];
      sy += y[i];
      sxx += (long double)x[i] * x[i];
      syy += (long double)y[i] * y[i];
      sxy += (long double)x[i] * y[i];
    }
    const long double r = (n * sxy - sx * sy) /
                          std::sqrt((n * sxx - sx * sx) * (n * syy - sy * sy));
    EXPECT_NEAR(Pearson(x, y), static_cast<double>(r), 1e-12);
  }
}

TEST(ReportTest, OwnOutputVerifiesClean) {
  const auto rows = LoadLeaderboardCsv(kTable);
  std::ostringstream out;
  WriteLeaderboardCsv(out, rows);
  std::istringstream in(out.str());
  const Report again = MakeReport(ParseLeaderboardCsv(in, "self"), "self");
  EXPECT_EQ(again.checks.size(), rows.size());
  EXPECT_EQ(again.flags, 0u);
  std::ostringstream text;
  PrintReport(text, again);
  EXPECT_NE(text.str().find("flags: 0"), std::string::npos);
}

TEST(ScoresCsvTest, AveIsMeanOfColumns) {
  Rng rng(902);
  std::vector<SceneScore> scores;
  for (int i = 0; i < 200; ++i) {
    const double h = rng.Uniform(0, 1), q = rng.Uniform(0, 1);
    scores.push_back({"s" + std::to_string(1000 + i), CombinedScore(h, q)});
  }
  std::ostringstream out;
  WriteScoresCsv(out, scores);
  std::istringstream in(out.str());
  const auto rows = ParseLeaderboardCsv(in, "scores");
  ASSERT_EQ(rows.size(), scores.size());
  for (const RowCheck& c : VerifyRows(rows)) EXPECT_FALSE(c.flagged);
  EXPECT_EQ(out.str().substr(0, 32), "scene,haspi_like,hasqi_like,ave\n");
}

// Dataset whose ears carry the reference itself on both channels.
std::filesystem::path IdentityDataset(const std::string& tag, size_t count) {
  const auto dir = test_util::TempDir(tag);
  nlohmann::json manifest = nlohmann::json::array();
  for (size_t i = 0; i < count; ++i) {
    const std::string id = "scene_" + std::to_string(9 - i);
    const SampleBuffer ref = NormalizeRms(SpeechLike(32000, 16000.0, 50 + i));
    SampleBuffer ears(2, ref.num_frames(), ref.rate());
    for (size_t c = 0; c < 2; ++c) {
      std::copy(ref[0].begin(), ref[0].end(), ears[c].begin());
    }
    WriteWav(dir / (id + "_ref.wav"), ref);
    WriteWav(dir / (id + "_ears.wav"), ears);
    manifest.push_back({{"id", id},
                        {"ears_file", id + "_ears.wav"},
                        {"reference_file", id + "_ref.wav"},
                        {"dataset_seed", 3},
                        {"fidelity", "simulated"}});
  }
  std::ofstream(dir / kManifestName) << manifest.dump(2);
  return dir;
}

TEST(ScoreDatasetTest, IdentityScenesScoreHigh) {
  const auto dir = IdentityDataset("identity", 3);
  const RunManifest run = ScoreDataset(dir, Audiogram::Flat(0.0), 2);
  ASSERT_EQ(run.scenes.size(), 3u);
  EXPECT_EQ(run.scenes[0].scene, "scene_7");
  EXPECT_EQ(run.scenes[2].scene, "scene_9");
  for (const SceneScore& s : run.scenes) EXPECT_GE(s.score.combined, 0.99);
  EXPECT_EQ(run.seed, 3);
  EXPECT_EQ(run.profile, "simulated");

  const nlohmann::json doc = run.ToJson();
  double sum = 0;
  for (const auto& r : doc["scenes"]) sum += r["combined"].get<double>();
  EXPECT_NEAR(doc["aggregate"]["combined"].get<double>(), sum / 3, 1e-12);

  const RunManifest serial = ScoreDataset(dir, Audiogram::Flat(0.0), 1);
  EXPECT_EQ(serial.ToJson(), doc);
}

TEST(ScoreDatasetTest, MissingAudioNamesScene) {
  const auto dir = IdentityDataset("missing", 2);
  std::filesystem::remove(dir / "scene_8_ears.wav");
  try {
    ScoreDataset(dir, Audiogram::Flat(0.0), 1);
    FAIL();
  } catch (const IoError& e) {
    EXPECT_NE(std::string(e.what()).find("scene_8"), std::string::npos);
  }
}

TEST(CliTest, ExitCodes) {
  EXPECT_EQ(RunBench("report --paper-table " + kTable.string()), 0);
  EXPECT_EQ(RunBench("generate --n 2 --seed 7 --fidelity bogus --out /tmp/x"), 2);
  EXPECT_EQ(RunBench("generate --n 2"), 2);
  EXPECT_EQ(RunBench("frobnicate"), 2);
  EXPECT_EQ(RunBench("report"), 2);
  const auto dir = test_util::TempDir("cli");
  std::ofstream(dir / "empty.csv").close();
  EXPECT_EQ(RunBench("report --scores " + (dir / "empty.csv").string()), 1);
  EXPECT_EQ(RunBench("score --dataset " + dir.string() +
                     " --audiogram /nonexistent.json --out " +
                     (dir / "s.csv").string()),
            1);
}

TEST(CliTest, GenerateScoreReportRoundTrip) {
  const auto dir = test_util::TempDir("cli_run");
  const auto a = dir / "a", b = dir / "b";
  ASSERT_EQ(RunBench("generate --n 2 --seed 7 --fidelity simulated --out " +
                     a.string()),
            0);
  ASSERT_EQ(RunBench("generate --n 2 --seed 7 --fidelity simulated --out " +
                     b.string()),
            0);
  EXPECT_EQ(ReadFile(a / kManifestName), ReadFile(b / kManifestName));
  EXPECT_EQ(LoadManifest(a).size(), 2u);

  const auto audiogram = dir / "flat40.json";
  SaveAudiogram(audiogram, Audiogram::Flat(40.0));
  const auto csv = dir / "scores.csv";
  ASSERT_EQ(RunBench("score --dataset " + a.string() + " --audiogram " +
                     audiogram.string() + " --out " + csv.string()),
            0);
  const auto rows = LoadLeaderboardCsv(csv);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].entry, "scene_0000");
  for (const RowCheck& c : VerifyRows(rows)) EXPECT_FALSE(c.flagged);
  EXPECT_TRUE(std::filesystem::exists(dir / "scores.json"));
  const auto redo = dir / "redo.csv";
  EXPECT_EQ(RunBench("report --scores " + csv.string() + " --out " +
                     redo.string()),
            0);
  EXPECT_EQ(MakeReport(LoadLeaderboardCsv(redo), "redo").flags, 0u);
}

}  // namespace
}  // namespace clarity
