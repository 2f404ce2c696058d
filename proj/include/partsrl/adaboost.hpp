#ifndef PARTSRL_ADABOOST_HPP_
#define PARTSRL_ADABOOST_HPP_

// Discrete two-class AdaBoost over depth-limited decision trees.
//
// Each round fits a greedy tree that minimizes weighted misclassification
// with single-feature threshold splits "x[f] < t" (t at the midpoint between
// adjacent distinct training values), then
//
//   eps   = weighted error of the tree
//   alpha = shrinkage * 0.5 * ln((1 - eps) / eps)
//   w_i  <- w_i * exp(-alpha * y_i * h(x_i)),  renormalized
//
// Boosting stops after a perfect tree (eps == 0, kept with eps clamped to
// kMinError so alpha stays finite) or when no tree beats chance.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "partsrl/encoding.hpp"

namespace partsrl::boost {

inline constexpr double kMinError = 1e-10;
// Two split errors closer than this count as a tie.
inline constexpr double kTieTolerance = 1e-12;

// Row-compressed sparse matrix. Missing entries are zeros.
class SparseMatrix {
 public:
  explicit SparseMatrix(std::size_t cols = 0) : cols_(cols) {}

  static SparseMatrix FromDense(const std::vector<std::vector<double>>& rows);
  static SparseMatrix FromSparse(const std::vector<encoding::SparseVector>& rows,
                                 std::size_t cols);

  void AddRow(std::span<const std::pair<std::size_t, double>> entries);

  std::size_t rows() const { return row_start_.size() - 1; }
  std::size_t cols() const { return cols_; }
  std::span<const std::pair<std::size_t, double>> row(std::size_t r) const {
    return {entries_.data() + row_start_[r], row_start_[r + 1] - row_start_[r]};
  }
  double at(std::size_t r, std::size_t c) const;

 private:
  std::size_t cols_;
  std::vector<std::size_t> row_start_ = {0};
  std::vector<std::pair<std::size_t, double>> entries_;
};

struct TreeNode {
  // Internal nodes: feature >= 0; rows with x[feature] < threshold go left.
  int feature = -1;
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  // Leaves: +1 or -1.
  double value = 0.0;
  // Weighted-error reduction achieved by this split in its round.
  double gain = 0.0;

  bool is_leaf() const { return feature < 0; }
  friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

class DecisionTree {
 public:
  DecisionTree() = default;
  explicit DecisionTree(std::vector<TreeNode> nodes) : nodes_(std::move(nodes)) {}

  const std::vector<TreeNode>& nodes() const { return nodes_; }
  double Predict(std::span<const double> x) const;
  double Predict(std::span<const std::pair<std::size_t, double>> sparse_row) const;
  int MaxFeature() const;
  std::size_t Depth() const;

  friend bool operator==(const DecisionTree&, const DecisionTree&) = default;

 private:
  std::vector<TreeNode> nodes_;
};

struct BoostParams {
  std::size_t rounds = 200;
  std::size_t depth = 2;
  double shrinkage = 1.0;
  std::uint64_t seed = 0;
  // Start from weights inversely proportional to class frequency.
  bool balance_classes = false;
  // Split search threads; the fitted model does not depend on this.
  std::size_t threads = 1;

  friend bool operator==(const BoostParams&, const BoostParams&) = default;
};

struct BoostRound {
  DecisionTree tree;
  double alpha = 0.0;
  // Weighted training error of the tree in its round.
  double error = 0.0;
  // Mean exponential loss on the training set after this round.
  double exp_loss = 0.0;

  friend bool operator==(const BoostRound&, const BoostRound&) = default;
};

class BoostModel {
 public:
  BoostModel() = default;
  BoostModel(std::size_t width, BoostParams params, std::vector<BoostRound> rounds);

  std::size_t width() const { return width_; }
  const BoostParams& params() const { return params_; }
  const std::vector<BoostRound>& rounds() const { return rounds_; }

  // sum_t alpha_t h_t(x). Throws Error on a width mismatch.
  double Margin(std::span<const double> x) const;
  double Margin(const encoding::SparseVector& x) const;
  double Margin(std::span<const std::pair<std::size_t, double>> sparse_row) const;
  // Logistic link sigma(2 * margin), in [0, 1].
  double Score(std::span<const double> x) const;
  double Score(const encoding::SparseVector& x) const;
  double Score(std::span<const std::pair<std::size_t, double>> sparse_row) const;

  // Copy keeping only the first `rounds` rounds.
  BoostModel Truncated(std::size_t rounds) const;

  std::string ToJson() const;
  static BoostModel FromJson(std::string_view text);

  friend bool operator==(const BoostModel&, const BoostModel&) = default;

 private:
  std::size_t width_ = 0;
  BoostParams params_;
  std::vector<BoostRound> rounds_;
};

double Sigmoid(double z);

// Labels are 0/1. Throws Error when sizes disagree, fewer than two rows are
// given, only one class is present, or X holds a non-finite value.
BoostModel FitAdaBoost(const SparseMatrix& X, const std::vector<int>& labels,
                       const BoostParams& params);

// Per-column importance: sum over rounds of alpha times the error reduction
// of the splits on that column, normalized to sum to 1 (all zero when the
// model has no splits). Sorted by descending importance, then by column.
std::vector<std::pair<std::string, double>> FeatureImportances(
    const BoostModel& model, const std::vector<std::string>& names);

}  // namespace partsrl::boost

#endif  // PARTSRL_ADABOOST_HPP_
