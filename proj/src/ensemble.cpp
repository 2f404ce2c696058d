#include "partsrl/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "partsrl/errors.hpp"
#include "partsrl/internal/strings.hpp"

namespace partsrl::ensemble {

void ScoreTable::Add(std::size_t sentence_id, std::size_t token_index, double score) {
  if (!(score >= 0.0 && score <= 1.0))
    throw Error("score " + internal::FormatDouble(score) + " for (" +
                std::to_string(sentence_id) + ", " + std::to_string(token_index) +
                ") lies outside [0, 1]");
  if (!rows_.emplace(Key{sentence_id, token_index}, score).second)
    throw Error("duplicate score for (" + std::to_string(sentence_id) + ", " +
                std::to_string(token_index) + ")");
}

double ScoreTable::at(const Key& key) const {
  const auto it = rows_.find(key);
  if (it == rows_.end())
    throw Error("no score for (" + std::to_string(key.first) + ", " +
                std::to_string(key.second) + ")");
  return it->second;
}

ScoreTable ReadScores(std::istream& in, std::string source) {
  ScoreTable table(std::move(source));
  std::string raw;
  std::size_t line_no = 0;
  bool header = false;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = internal::StripCr(raw);
    if (!header) {
      if (line != kScoreHeader)
        throw ParseError("line 1: expected header '" + std::string(kScoreHeader) + "'", 1);
      header = true;
      continue;
    }
    if (line.empty()) continue;
    const auto fields = internal::Split(line, '\t');
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (fields.size() != 3)
      throw ParseError(where + "expected 3 tab-separated columns", line_no);
    const auto sid = internal::ParseInt<std::size_t>(fields[0]);
    const auto tok = internal::ParseInt<std::size_t>(fields[1]);
    const auto score = internal::ParseDouble(fields[2]);
    if (!sid || !tok || !score) throw ParseError(where + "malformed row", line_no);
    try {
      table.Add(*sid, *tok, *score);
    } catch (const Error& e) {
      throw ParseError(where + e.what(), line_no);
    }
  }
  if (!header) throw ParseError("empty score file (missing header)", 0);
  return table;
}

ScoreTable ReadScoreFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  try {
    return ReadScores(in, path);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what(), e.line());
  }
}

void WriteScores(std::ostream& out, const ScoreTable& table) {
  out << kScoreHeader << '\n';
  for (const auto& [key, score] : table.rows())
    out << key.first << '\t' << key.second << '\t' << internal::FormatDouble(score) << '\n';
}

std::string WriteScoresString(const ScoreTable& table) {
  std::ostringstream out;
  WriteScores(out, table);
  return out.str();
}

namespace {

std::string DescribeKeys(const std::vector<Key>& keys) {
  std::string out;
  const std::size_t shown = std::min<std::size_t>(keys.size(), 10);
  for (std::size_t i = 0; i < shown; ++i) {
    if (i) out += ", ";
    out += "(" + std::to_string(keys[i].first) + ", " + std::to_string(keys[i].second) + ")";
  }
  if (keys.size() > shown) out += ", ... (" + std::to_string(keys.size()) + " in total)";
  return out;
}

void CheckSameKeys(const ScoreTable& a, const ScoreTable& b) {
  std::vector<Key> missing_b, missing_a;
  for (const auto& [key, s] : a.rows())
    if (!b.contains(key)) missing_b.push_back(key);
  for (const auto& [key, s] : b.rows())
    if (!a.contains(key)) missing_a.push_back(key);
  if (!missing_a.empty() || !missing_b.empty()) {
    std::string msg = "score tables cover different tokens;";
    if (!missing_a.empty()) msg += " missing from A: " + DescribeKeys(missing_a) + ";";
    if (!missing_b.empty()) msg += " missing from B: " + DescribeKeys(missing_b) + ";";
    throw Error(msg);
  }
}

void CheckCoverage(const ScoreTable& table, const std::vector<corpus::Sentence>& gold,
                   const char* name) {
  std::vector<Key> missing;
  std::size_t expected = 0;
  for (const auto& s : gold) {
    for (std::size_t i = 0; i < s.size(); ++i) {
      ++expected;
      if (!table.contains({s.sentence_id, i})) missing.emplace_back(s.sentence_id, i);
    }
  }
  if (!missing.empty())
    throw Error(std::string("scores ") + name + " miss dev tokens: " + DescribeKeys(missing));
  if (table.size() != expected)
    throw Error(std::string("scores ") + name + " contain rows outside the dev set");
}

}  // namespace

double EnsembleLoss(const ScoreTable& a, const ScoreTable& b,
                    const std::vector<corpus::Sentence>& gold, double w_a) {
  constexpr double kClip = 1e-12;
  double loss = 0.0;
  std::size_t count = 0;
  for (const auto& s : gold) {
    std::optional<std::size_t> arg1;
    for (const auto& t : s.tokens)
      if (t.func == corpus::Role::kArg1) arg1 = t.index;
    for (std::size_t i = 0; i < s.size(); ++i) {
      const Key key{s.sentence_id, i};
      double p = w_a * a.at(key) + (1.0 - w_a) * b.at(key);
      p = std::clamp(p, kClip, 1.0 - kClip);
      loss -= (arg1 == i) ? std::log(p) : std::log(1.0 - p);
      ++count;
    }
  }
  return count ? loss / static_cast<double>(count) : 0.0;
}

EnsembleWeights FitWeights(const ScoreTable& a, const ScoreTable& b,
                           const std::vector<corpus::Sentence>& gold) {
  CheckCoverage(a, gold, "A");
  CheckCoverage(b, gold, "B");
  constexpr int kSteps = 100;
  int best_step = kSteps;
  double best_loss = EnsembleLoss(a, b, gold, 1.0);
  for (int step = kSteps - 1; step >= 0; --step) {
    const double loss = EnsembleLoss(a, b, gold, step / static_cast<double>(kSteps));
    // Relative tolerance: equal scores give equal losses up to rounding.
    if (loss < best_loss - 1e-12 * std::max(1.0, std::abs(best_loss))) {
      best_loss = loss;
      best_step = step;
    }
  }
  const double w_a = best_step / static_cast<double>(kSteps);
  return {w_a, 1.0 - w_a};
}

ScoreTable Combine(const ScoreTable& a, const ScoreTable& b, const EnsembleWeights& weights) {
  if (!(weights.w_a >= 0.0 && weights.w_b >= 0.0 &&
        std::abs(weights.w_a + weights.w_b - 1.0) < 1e-9))
    throw Error("ensemble weights must be non-negative and sum to 1");
  CheckSameKeys(a, b);
  ScoreTable out("ensemble");
  for (const auto& [key, sa] : a.rows()) {
    const double sb = b.at(key);
    double s = weights.w_a * sa + weights.w_b * sb;
    // Keep the convex-hull property exact under rounding.
    s = std::clamp(s, std::min(sa, sb), std::max(sa, sb));
    out.Add(key.first, key.second, s);
  }
  return out;
}

Predictions Decode(const ScoreTable& table, const DecodeOptions& options) {
  Predictions out;
  std::map<std::size_t, std::pair<std::size_t, double>> best;
  for (const auto& [key, score] : table.rows()) {
    auto& chosen = out[key.first];
    if (options.mode == DecodeMode::kThreshold) {
      if (score >= options.tau) chosen.insert(key.second);
    } else {
      auto it = best.find(key.first);
      // Rows arrive in token order, so strict '>' keeps the lowest index.
      if (it == best.end() || score > it->second.second)
        best[key.first] = {key.second, score};
    }
  }
  for (const auto& [sid, choice] : best) out[sid] = {choice.first};
  return out;
}

std::string WeightsToJson(const EnsembleWeights& weights) {
  nlohmann::json j = {{"format", "partsrl-ensemble-weights"},
                      {"version", 1},
                      {"w_a", weights.w_a},
                      {"w_b", weights.w_b}};
  return j.dump(1) + "\n";
}

EnsembleWeights WeightsFromJson(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    if (j.at("format") != "partsrl-ensemble-weights")
      throw ParseError("not an ensemble weights file", 0);
    return {j.at("w_a").get<double>(), j.at("w_b").get<double>()};
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("ensemble weights JSON: ") + e.what(), 0);
  }
}

}  // namespace partsrl::ensemble
