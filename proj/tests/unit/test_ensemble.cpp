#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "partsrl/ensemble.hpp"
#include "partsrl/errors.hpp"

using namespace partsrl;
using ensemble::DecodeMode;
using ensemble::ScoreTable;

namespace {

std::vector<corpus::Sentence> Gold(std::mt19937_64& rng, std::size_t n) {
  std::vector<corpus::Sentence> out;
  for (std::size_t i = 0; i < n; ++i) {
    auto s = fixtures::RandomSentence(rng, i);
    out.push_back(s);
  }
  return out;
}

ScoreTable RandomScores(std::mt19937_64& rng, const std::vector<corpus::Sentence>& gold,
                        double signal) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  ScoreTable t("random");
  for (const auto& s : gold) {
    for (std::size_t i = 0; i < s.size(); ++i) {
      const double truth = s[i].func == corpus::Role::kArg1 ? 1.0 : 0.0;
      t.Add(s.sentence_id, i, signal * truth + (1.0 - signal) * u(rng));
    }
  }
  return t;
}

double NaiveLoss(const ScoreTable& a, const ScoreTable& b,
                 const std::vector<corpus::Sentence>& gold, double w) {
  double loss = 0;
  std::size_t n = 0;
  for (const auto& s : gold) {
    for (std::size_t i = 0; i < s.size(); ++i) {
      double p = w * a.at({s.sentence_id, i}) + (1 - w) * b.at({s.sentence_id, i});
      p = std::min(std::max(p, 1e-12), 1 - 1e-12);
      loss -= s[i].func == corpus::Role::kArg1 ? std::log(p) : std::log(1 - p);
      ++n;
    }
  }
  return loss / static_cast<double>(n);
}

}  // namespace

TEST_CASE("score file reading and writing") {
  std::istringstream in("sentence_id\ttoken_index\tscore\n0\t0\t0.25\n0\t1\t1\r\n\n2\t0\t0\n");
  const auto table = ensemble::ReadScores(in, "x");
  CHECK(table.size() == 3);
  CHECK(table.at({0, 0}) == 0.25);
  CHECK(table.at({0, 1}) == 1.0);
  CHECK(table.source() == "x");
  CHECK(ensemble::WriteScoresString(table) ==
        "sentence_id\ttoken_index\tscore\n0\t0\t0.25\n0\t1\t1\n2\t0\t0\n");
  CHECK_THROWS_AS(table.at({5, 5}), Error);
}

TEST_CASE("score file round trip keeps exact values") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  ScoreTable t;
  for (std::size_t s = 0; s < 30; ++s)
    for (std::size_t i = 0; i < 12; ++i) t.Add(s, i, u(rng));
  std::istringstream in(ensemble::WriteScoresString(t));
  const auto back = ensemble::ReadScores(in);
  CHECK(back == t);
}

TEST_CASE("score file errors name the line") {
  auto line_of = [](const std::string& text) -> std::size_t {
    std::istringstream in(text);
    try {
      ensemble::ReadScores(in);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 999;
  };
  CHECK(line_of("sentence_id\ttoken_index\tscore\n0\t0\t1.5\n") == 2);
  CHECK(line_of("sentence_id\ttoken_index\tscore\n0\t0\t0.5\n0\t1\t-0.1\n") == 3);
  CHECK(line_of("sentence_id\ttoken_index\tscore\n0\t0\t0.5\n0\t0\t0.5\n") == 3);
  CHECK(line_of("sentence_id\ttoken_index\tscore\n0\t0\n") == 2);
  CHECK(line_of("sentence_id\ttoken_index\tscore\n0\tx\t0.5\n") == 2);
  CHECK(line_of("sentence_id\ttoken_index\tscore\n0\t0\tnan\n") == 2);
  CHECK(line_of("id\ttok\tscore\n") == 1);
  CHECK(line_of("") == 0);
  CHECK_THROWS_AS(ensemble::ReadScoreFile("/nonexistent/scores.tsv"), Error);
}

TEST_CASE("identical views fit the largest weight") {
  std::mt19937_64 rng(22);
  const auto gold = Gold(rng, 30);
  const auto a = RandomScores(rng, gold, 0.3);
  const auto w = ensemble::FitWeights(a, a, gold);
  CHECK(w.w_a == 1.0);
  CHECK(w.w_b == 0.0);
}

TEST_CASE("fitted weight follows the informative view") {
  std::mt19937_64 rng(23);
  const auto gold = Gold(rng, 60);
  const auto good = RandomScores(rng, gold, 0.9);
  const auto noise = RandomScores(rng, gold, 0.0);
  CHECK(ensemble::FitWeights(good, noise, gold).w_a >= 0.7);
  CHECK(ensemble::FitWeights(noise, good, gold).w_a <= 0.3);
}

TEST_CASE("fitted weight is the grid minimum of a naive loss") {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 10; ++trial) {
    const auto gold = Gold(rng, 20);
    const auto a = RandomScores(rng, gold, 0.5);
    const auto b = RandomScores(rng, gold, 0.4);
    const auto w = ensemble::FitWeights(a, b, gold);
    const double got = NaiveLoss(a, b, gold, w.w_a);
    CHECK(std::abs(w.w_a + w.w_b - 1.0) < 1e-12);
    CHECK(ensemble::EnsembleLoss(a, b, gold, w.w_a) == doctest::Approx(got).epsilon(1e-12));
    for (int step = 0; step <= 100; ++step)
      CHECK(got <= NaiveLoss(a, b, gold, step / 100.0) + 1e-9);
    // Swapping the views mirrors the weight.
    const auto swapped = ensemble::FitWeights(b, a, gold);
    CHECK(std::abs(swapped.w_a - w.w_b) < 0.0100001);
  }
}

TEST_CASE("coverage mismatches are errors") {
  std::mt19937_64 rng(25);
  const auto gold = Gold(rng, 5);
  const auto a = RandomScores(rng, gold, 0.5);
  ScoreTable partial;
  partial.Add(0, 0, 0.5);
  CHECK_THROWS_AS(ensemble::FitWeights(a, partial, gold), Error);
  CHECK_THROWS_AS(ensemble::Combine(a, partial, {0.5, 0.5}), Error);
  auto extra = a;
  extra.Add(999, 0, 0.5);
  CHECK_THROWS_AS(ensemble::FitWeights(a, extra, gold), Error);
  CHECK_THROWS_AS(ensemble::Combine(a, a, {0.7, 0.7}), Error);
  CHECK_THROWS_AS(ensemble::Combine(a, a, {1.5, -0.5}), Error);
}

TEST_CASE("combination is convex and per-key") {
  ScoreTable a, b;
  a.Add(0, 0, 0.2);
  b.Add(0, 0, 0.8);
  a.Add(0, 1, 1.0);
  b.Add(0, 1, 0.0);
  const auto mid = ensemble::Combine(a, b, {0.5, 0.5});
  CHECK(mid.at({0, 0}) == doctest::Approx(0.5));
  CHECK(mid.at({0, 1}) == doctest::Approx(0.5));
  CHECK(mid.source() == "ensemble");

  std::mt19937_64 rng(26);
  const auto gold = Gold(rng, 20);
  const auto x = RandomScores(rng, gold, 0.2);
  const auto y = RandomScores(rng, gold, 0.6);
  for (double w : {0.0, 0.13, 0.5, 0.99, 1.0}) {
    const auto c = ensemble::Combine(x, y, {w, 1.0 - w});
    for (const auto& [key, s] : c.rows()) {
      CHECK(s >= std::min(x.at(key), y.at(key)));
      CHECK(s <= std::max(x.at(key), y.at(key)));
    }
  }
  CHECK(ensemble::Combine(x, y, {1.0, 0.0}).rows() == x.rows());
}

TEST_CASE("decoding") {
  ScoreTable t;
  t.Add(0, 0, 0.4);
  t.Add(0, 1, 0.7);
  t.Add(0, 2, 0.7);
  t.Add(1, 0, 0.1);
  t.Add(1, 1, 0.5);
  const auto thr = ensemble::Decode(t, {DecodeMode::kThreshold, 0.5});
  CHECK(thr.at(0) == std::set<std::size_t>{1, 2});
  CHECK(thr.at(1) == std::set<std::size_t>{1});
  const auto high = ensemble::Decode(t, {DecodeMode::kThreshold, 0.9});
  CHECK(high.at(0).empty());
  CHECK(high.count(1) == 1);
  const auto arg = ensemble::Decode(t, {DecodeMode::kArgmax, 0.5});
  CHECK(arg.at(0) == std::set<std::size_t>{1});
  CHECK(arg.at(1) == std::set<std::size_t>{1});
}

TEST_CASE("argmax ignores monotone rescaling") {
  std::mt19937_64 rng(27);
  const auto gold = Gold(rng, 40);
  const auto a = RandomScores(rng, gold, 0.3);
  ScoreTable squashed;
  for (const auto& [key, s] : a.rows()) squashed.Add(key.first, key.second, s * s);
  CHECK(ensemble::Decode(a, {DecodeMode::kArgmax}) ==
        ensemble::Decode(squashed, {DecodeMode::kArgmax}));
  const auto self = ensemble::Combine(a, a, {1.0, 0.0});
  CHECK(ensemble::Decode(self, {DecodeMode::kArgmax}) == ensemble::Decode(a, {DecodeMode::kArgmax}));
}

TEST_CASE("weights JSON") {
  const auto back = ensemble::WeightsFromJson(ensemble::WeightsToJson({0.37, 0.63}));
  CHECK(back.w_a == 0.37);
  CHECK(back.w_b == 0.63);
  CHECK_THROWS_AS(ensemble::WeightsFromJson("{}"), ParseError);
  CHECK_THROWS_AS(ensemble::WeightsFromJson("[1,"), ParseError);
}
