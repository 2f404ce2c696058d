#ifndef PARTSRL_ENSEMBLE_HPP_
#define PARTSRL_ENSEMBLE_HPP_

// Two-view ensembling over per-token ARG1 probabilities.
//
// Score files are the exchange format between scorers: a TSV with header
// "sentence_id\ttoken_index\tscore" and one row per token.

#include <cstddef>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "partsrl/corpus.hpp"

namespace partsrl::ensemble {

using Key = std::pair<std::size_t, std::size_t>;  // (sentence_id, token_index)

class ScoreTable {
 public:
  ScoreTable() = default;
  explicit ScoreTable(std::string source) : source_(std::move(source)) {}

  // Throws Error for a duplicate key or a score outside [0, 1].
  void Add(std::size_t sentence_id, std::size_t token_index, double score);

  const std::map<Key, double>& rows() const { return rows_; }
  std::size_t size() const { return rows_.size(); }
  const std::string& source() const { return source_; }
  void set_source(std::string source) { source_ = std::move(source); }
  double at(const Key& key) const;
  bool contains(const Key& key) const { return rows_.count(key) > 0; }

  friend bool operator==(const ScoreTable&, const ScoreTable&) = default;

 private:
  std::map<Key, double> rows_;
  std::string source_;
};

inline constexpr const char* kScoreHeader = "sentence_id\ttoken_index\tscore";

// Throws ParseError naming the 1-based line (the header is line 1).
ScoreTable ReadScores(std::istream& in, std::string source = "");
ScoreTable ReadScoreFile(const std::string& path);
// Rows in (sentence_id, token_index) order; scores in shortest round-trip
// decimal form.
void WriteScores(std::ostream& out, const ScoreTable& table);
std::string WriteScoresString(const ScoreTable& table);

struct EnsembleWeights {
  double w_a = 1.0;
  double w_b = 0.0;
};

// Mean binary cross-entropy of w_a * s_a + (1 - w_a) * s_b against the gold
// ARG1 indicator of every covered token.
double EnsembleLoss(const ScoreTable& a, const ScoreTable& b,
                    const std::vector<corpus::Sentence>& gold, double w_a);

// Grid search of w_a over {0.00, 0.01, ..., 1.00}; ties go to the larger
// w_a. Throws Error listing missing keys unless both tables cover exactly
// the tokens of the gold sentences.
EnsembleWeights FitWeights(const ScoreTable& a, const ScoreTable& b,
                           const std::vector<corpus::Sentence>& gold);

// Per-key convex combination, source "ensemble". Throws on coverage mismatch.
ScoreTable Combine(const ScoreTable& a, const ScoreTable& b, const EnsembleWeights& weights);

enum class DecodeMode { kThreshold, kArgmax };

struct DecodeOptions {
  DecodeMode mode = DecodeMode::kThreshold;
  double tau = 0.5;
};

using Predictions = std::map<std::size_t, std::set<std::size_t>>;

// THRESHOLD: every token with score >= tau. ARGMAX: the single best token
// per sentence, lowest index on ties. Every sentence in the table gets an
// entry, possibly empty.
Predictions Decode(const ScoreTable& table, const DecodeOptions& options);

std::string WeightsToJson(const EnsembleWeights& weights);
EnsembleWeights WeightsFromJson(const std::string& text);

}  // namespace partsrl::ensemble

#endif  // PARTSRL_ENSEMBLE_HPP_
