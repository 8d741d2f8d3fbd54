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

#include "clarity/harness/leaderboard.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "clarity/common/error.h"
#include "clarity/common/stats.h"

namespace clarity {

namespace {

std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) {
    const auto b = field.find_first_not_of(" \t\r");
    const auto e = field.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? "" : field.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double ParseNumber(const std::string& text, const std::string& where) {
  size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || !std::isfinite(v)) {
    throw FormatError(where + ": '" + text + "' is not a number");
  }
  return v;
}

}  // namespace

double RoundHalfUp(double value, int decimals) {
  const double scale = std::pow(10.0, decimals);
  const double scaled = value * scale;
  return std::floor(scaled + 0.5 + 1e-9 * std::max(1.0, std::abs(scaled))) /
         scale;
}

std::string FormatScore(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", RoundHalfUp(value));
  return buf;
}

std::vector<LeaderboardRow> ParseLeaderboardCsv(std::istream& in,
                                                const std::string& name) {
  std::string line;
  size_t line_no = 0;
  std::vector<std::string> header;
  while (header.empty() && std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") != std::string::npos) {
      header = SplitCsvLine(line);
    }
  }
  if (header.empty()) throw FormatError(name + ": empty CSV");

  auto column = [&](std::initializer_list<const char*> names) -> long {
    for (const char* n : names) {
      const auto it = std::find(header.begin(), header.end(), n);
      if (it != header.end()) return it - header.begin();
    }
    return -1;
  };
  const long id_col = column({"entry", "scene"});
  const long eval_col = column({"eval"});
  const long haspi_col = column({"haspi_like", "haspi"});
  const long hasqi_col = column({"hasqi_like", "hasqi"});
  const long ave_col = column({"ave"});
  const std::string header_where = name + ":" + std::to_string(line_no);
  if (id_col < 0) {
    throw FormatError(header_where + ": missing entry/scene column");
  }
  if (haspi_col < 0 || hasqi_col < 0) {
    throw FormatError(header_where + ": missing haspi_like/hasqi_like column");
  }

  std::vector<LeaderboardRow> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = name + ":" + std::to_string(line_no);
    const std::vector<std::string> f = SplitCsvLine(line);
    if (f.size() != header.size()) {
      throw FormatError(where + ": expected " + std::to_string(header.size()) +
                        " fields, found " + std::to_string(f.size()));
    }
    LeaderboardRow row;
    row.line = line_no;
    row.entry = f[id_col];
    if (row.entry.empty()) throw FormatError(where + ": empty id");
    if (eval_col >= 0) row.eval_set = f[eval_col];
    row.haspi_like = ParseNumber(f[haspi_col], where);
    row.hasqi_like = ParseNumber(f[hasqi_col], where);
    if (ave_col >= 0) row.ave = ParseNumber(f[ave_col], where);
    rows.push_back(row);
  }
  if (rows.empty()) throw FormatError(name + ": no data rows");
  return rows;
}

std::vector<LeaderboardRow> LoadLeaderboardCsv(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return ParseLeaderboardCsv(in, path.string());
}

std::vector<RowCheck> VerifyRows(const std::vector<LeaderboardRow>& rows) {
  std::vector<RowCheck> out;
  for (const LeaderboardRow& r : rows) {
    RowCheck c;
    c.row = r;
    c.mean = (r.haspi_like + r.hasqi_like) / 2.0;
    c.rounded = RoundHalfUp(c.mean);
    c.flagged = r.ave && std::abs(*r.ave - c.mean) > kAveTolerance + 1e-9;
    out.push_back(c);
  }
  return out;
}

std::string TeamOf(const std::string& entry) {
  size_t end = entry.size();
  while (end > 0 && std::islower(static_cast<unsigned char>(entry[end - 1]))) {
    --end;
  }
  return entry.substr(0, end);
}

std::vector<LeaderboardRow> BestPerTeam(const std::vector<LeaderboardRow>& rows,
                                        const std::string& eval_set,
                                        bool include_baseline) {
  std::vector<LeaderboardRow> best;
  std::map<std::string, size_t> slot;
  for (const LeaderboardRow& r : rows) {
    if (r.eval_set != eval_set) continue;
    const std::string team = TeamOf(r.entry);
    if (!include_baseline && team == kBaselineEntry) continue;
    const double ave = (r.haspi_like + r.hasqi_like) / 2.0;
    const auto it = slot.find(team);
    if (it == slot.end()) {
      slot[team] = best.size();
      best.push_back(r);
    } else {
      const LeaderboardRow& cur = best[it->second];
      if (ave > (cur.haspi_like + cur.hasqi_like) / 2.0) best[it->second] = r;
    }
  }
  return best;
}

double ScoreCorrelation(const std::vector<LeaderboardRow>& rows) {
  std::vector<double> x, y;
  for (const LeaderboardRow& r : rows) {
    x.push_back(r.haspi_like);
    y.push_back(r.hasqi_like);
  }
  return Pearson(x, y);
}

void WriteLeaderboardCsv(std::ostream& out,
                         const std::vector<LeaderboardRow>& rows) {
  const bool leaderboard = std::any_of(
      rows.begin(), rows.end(), [](auto& r) { return !r.eval_set.empty(); });
  out << (leaderboard ? "entry,eval,ave,haspi_like,hasqi_like\n"
                      : "scene,haspi_like,hasqi_like,ave\n");
  for (const LeaderboardRow& r : rows) {
    const std::string ave = FormatScore((r.haspi_like + r.hasqi_like) / 2.0);
    if (leaderboard) {
      out << r.entry << ',' << r.eval_set << ',' << ave << ','
          << FormatScore(r.haspi_like) << ',' << FormatScore(r.hasqi_like)
          << '\n';
    } else {
      out << r.entry << ',' << FormatScore(r.haspi_like) << ','
          << FormatScore(r.hasqi_like) << ',' << ave << '\n';
    }
  }
}

Report MakeReport(const std::vector<LeaderboardRow>& rows,
                  const std::string& source) {
  Report report;
  report.source = source;
  report.checks = VerifyRows(rows);
  for (const RowCheck& c : report.checks) report.flags += c.flagged ? 1 : 0;

  std::vector<std::string> eval_sets;
  for (const LeaderboardRow& r : rows) {
    if (!r.eval_set.empty() && std::find(eval_sets.begin(), eval_sets.end(),
                                         r.eval_set) == eval_sets.end()) {
      eval_sets.push_back(r.eval_set);
    }
  }
  for (const std::string& eval : eval_sets) {
    CorrelationSummary s;
    s.eval_set = eval;
    const auto teams = BestPerTeam(rows, eval, false);
    const auto all = BestPerTeam(rows, eval, true);
    s.teams = teams.size();
    s.teams_with_baseline = all.size();
    auto corr = [](const std::vector<LeaderboardRow>& best) {
      std::vector<double> x, y;
      for (const LeaderboardRow& r : best) {
        x.push_back(r.haspi_like);
        y.push_back(r.hasqi_like);
      }
      return x.size() >= 3 ? TryPearson(x, y) : std::nullopt;
    };
    s.r = corr(teams);
    if (all.size() != teams.size()) s.r_with_baseline = corr(all);
    report.correlations.push_back(s);
  }
  return report;
}

void PrintReport(std::ostream& out, const Report& report) {
  char buf[160];
  out << "== " << report.source << '\n';
  std::snprintf(buf, sizeof(buf), "%-12s %-6s %8s %8s %8s %8s  %s\n",
                "entry", "eval", "haspi", "hasqi", "stored", "ave", "status");
  out << buf;
  for (const RowCheck& c : report.checks) {
    const std::string stored = c.row.ave ? FormatScore(*c.row.ave) : "-";
    std::snprintf(buf, sizeof(buf), "%-12s %-6s %8s %8s %8s %8s  %s\n",
                  c.row.entry.c_str(), c.row.eval_set.c_str(),
                  FormatScore(c.row.haspi_like).c_str(),
                  FormatScore(c.row.hasqi_like).c_str(), stored.c_str(),
                  FormatScore(c.mean).c_str(), c.flagged ? "FLAG" : "ok");
    out << buf;
    if (c.flagged) {
      std::snprintf(buf, sizeof(buf),
                    "  line %zu: stored %.4f vs mean %.4f (|diff| %.4f)\n",
                    c.row.line, *c.row.ave, c.mean, std::abs(*c.row.ave - c.mean));
      out << buf;
    }
  }
  out << "rows: " << report.checks.size() << ", flags: " << report.flags
      << '\n';
  for (const CorrelationSummary& s : report.correlations) {
    out << "best-entry correlation " << s.eval_set << " (" << s.teams
        << " teams): ";
    if (s.r) {
      std::snprintf(buf, sizeof(buf), "%.4f", *s.r);
      out << buf;
    } else {
      out << "n/a";
    }
    if (s.r_with_baseline) {
      std::snprintf(buf, sizeof(buf), "%.4f", *s.r_with_baseline);
      out << "; with baseline " << kBaselineEntry << " ("
          << s.teams_with_baseline << " entries): " << buf;
    }
    out << '\n';
  }
}

}  // namespace clarity
