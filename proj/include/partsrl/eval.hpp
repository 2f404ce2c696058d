#ifndef PARTSRL_EVAL_HPP_
#define PARTSRL_EVAL_HPP_

// ARG1 scoring. A prediction matches the gold ARG1 when it is the same
// token, or when both are proper nouns (NNP*) inside the same NP chunk:
// for "Exxon Mobil Corp." any of the three name words counts.

#include <cstddef>
#include <string>
#include <vector>

#include "partsrl/corpus.hpp"
#include "partsrl/ensemble.hpp"

namespace partsrl::eval {

// Percentages in [0, 100].
struct PrfScores {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
};

// Harmonic mean, 0 when both are 0.
double F1FromPrecisionRecall(double precision, double recall);
PrfScores ScoresFromCounts(std::size_t tp, std::size_t fp, std::size_t fn);

bool MatchArg1(const corpus::Sentence& sentence, std::size_t gold_idx, std::size_t predicted_idx);

// Counts per token. In each sentence the first prediction that matches the
// gold ARG1 is a true positive; every other prediction is a false positive;
// a gold ARG1 left unmatched is a false negative. Sentences are looked up by
// sentence_id; predictions for unknown sentences are an Error.
PrfScores Prf(const ensemble::Predictions& predictions,
              const std::vector<corpus::Sentence>& gold);

struct ReportRow {
  std::string label;
  PrfScores scores;
};

// Fixed-width table: System / Prec / Rec / F1, two decimals.
std::string FormatTable(const std::vector<ReportRow>& rows, const std::string& title = "");
// "system,precision,recall,f1,tp,fp,fn" plus one line per row.
std::string FormatCsv(const std::vector<ReportRow>& rows);

}  // namespace partsrl::eval

#endif  // PARTSRL_EVAL_HPP_
