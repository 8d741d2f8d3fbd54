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

#ifndef CLARITY_HARNESS_LEADERBOARD_H_
#define CLARITY_HARNESS_LEADERBOARD_H_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace clarity {

// One scored entry. Score CSVs from the score command use a "scene" column
// in place of "entry" and carry no eval set.
struct LeaderboardRow {
  std::string entry;
  std::string eval_set;
  double haspi_like = 0.0;
  double hasqi_like = 0.0;
  std::optional<double> ave;  // as stored; absent if the file has no column
  size_t line = 0;            // 1-based source line
};

// Half-up rounding at |decimals|; a relative nudge absorbs binary
// representation error so that 0.2235 rounds to 0.224.
double RoundHalfUp(double value, int decimals = 3);
// RoundHalfUp then fixed 3-decimal text.
std::string FormatScore(double value);

// Header-driven CSV reader. Required columns: entry (or scene), haspi_like
// (or haspi), hasqi_like (or hasqi); optional: eval, ave. Throws FormatError
// "<name>:<line>: ..." on malformed content and for a file without rows.
std::vector<LeaderboardRow> ParseLeaderboardCsv(std::istream& in,
                                                const std::string& name);
std::vector<LeaderboardRow> LoadLeaderboardCsv(
    const std::filesystem::path& path);

// Stored Ave values further than this from the recomputed mean are flagged.
inline constexpr double kAveTolerance = 0.0005;

struct RowCheck {
  LeaderboardRow row;
  double mean = 0.0;     // (haspi + hasqi) / 2, unrounded
  double rounded = 0.0;  // RoundHalfUp(mean)
  bool flagged = false;
};

std::vector<RowCheck> VerifyRows(const std::vector<LeaderboardRow>& rows);

// Team of an entry id: the id without trailing lowercase variant letters
// (E28d -> E28).
std::string TeamOf(const std::string& entry);

inline constexpr const char* kBaselineEntry = "E01";

// Highest-Ave entry per team within |eval_set|, in first-appearance order.
// The baseline is dropped unless |include_baseline|.
std::vector<LeaderboardRow> BestPerTeam(const std::vector<LeaderboardRow>& rows,
                                        const std::string& eval_set,
                                        bool include_baseline);

// Pearson r between the haspi_like and hasqi_like columns of |rows|.
double ScoreCorrelation(const std::vector<LeaderboardRow>& rows);

// CSV with a recomputed, rounded ave column; the column layout matches the
// input kind (entry/eval or scene).
void WriteLeaderboardCsv(std::ostream& out,
                         const std::vector<LeaderboardRow>& rows);

struct CorrelationSummary {
  std::string eval_set;
  size_t teams = 0;
  std::optional<double> r;  // best entry per team, baseline excluded
  size_t teams_with_baseline = 0;
  std::optional<double> r_with_baseline;
};

struct Report {
  std::string source;
  std::vector<RowCheck> checks;
  size_t flags = 0;
  std::vector<CorrelationSummary> correlations;  // one per eval set
};

Report MakeReport(const std::vector<LeaderboardRow>& rows,
                  const std::string& source);
void PrintReport(std::ostream& out, const Report& report);

}  // namespace clarity

#endif  // CLARITY_HARNESS_LEADERBOARD_H_
