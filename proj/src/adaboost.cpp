#include "partsrl/adaboost.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <thread>

#include "json.hpp"

#include "partsrl/errors.hpp"

namespace partsrl::boost {

// --- SparseMatrix ---------------------------------------------------------

void SparseMatrix::AddRow(std::span<const std::pair<std::size_t, double>> entries) {
  std::size_t last = 0;
  bool first = true;
  for (const auto& [col, value] : entries) {
    if (col >= cols_) throw Error("column " + std::to_string(col) + " out of range");
    if (!first && col <= last) throw Error("sparse row entries must be sorted by column");
    first = false;
    last = col;
    if (value != 0.0) entries_.emplace_back(col, value);
  }
  row_start_.push_back(entries_.size());
}

SparseMatrix SparseMatrix::FromDense(const std::vector<std::vector<double>>& rows) {
  SparseMatrix m(rows.empty() ? 0 : rows.front().size());
  std::vector<std::pair<std::size_t, double>> entries;
  for (const auto& row : rows) {
    if (row.size() != m.cols_) throw Error("dense rows have different widths");
    entries.clear();
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (row[c] != 0.0 || std::isnan(row[c])) entries.emplace_back(c, row[c]);
    }
    m.AddRow(entries);
  }
  return m;
}

SparseMatrix SparseMatrix::FromSparse(const std::vector<encoding::SparseVector>& rows,
                                      std::size_t cols) {
  SparseMatrix m(cols);
  for (const auto& row : rows) m.AddRow(row.entries);
  return m;
}

double SparseMatrix::at(std::size_t r, std::size_t c) const {
  const auto cells = row(r);
  const auto it = std::lower_bound(cells.begin(), cells.end(), c,
                                   [](const auto& e, std::size_t col) { return e.first < col; });
  return it != cells.end() && it->first == c ? it->second : 0.0;
}

// --- DecisionTree ---------------------------------------------------------

double DecisionTree::Predict(std::span<const double> x) const {
  int id = 0;
  while (!nodes_[id].is_leaf()) {
    const TreeNode& n = nodes_[id];
    id = x[static_cast<std::size_t>(n.feature)] < n.threshold ? n.left : n.right;
  }
  return nodes_[id].value;
}

double DecisionTree::Predict(std::span<const std::pair<std::size_t, double>> row) const {
  int id = 0;
  while (!nodes_[id].is_leaf()) {
    const TreeNode& n = nodes_[id];
    const auto f = static_cast<std::size_t>(n.feature);
    const auto it = std::lower_bound(row.begin(), row.end(), f,
                                     [](const auto& e, std::size_t col) { return e.first < col; });
    const double v = it != row.end() && it->first == f ? it->second : 0.0;
    id = v < n.threshold ? n.left : n.right;
  }
  return nodes_[id].value;
}

int DecisionTree::MaxFeature() const {
  int m = -1;
  for (const auto& n : nodes_) m = std::max(m, n.feature);
  return m;
}

std::size_t DecisionTree::Depth() const {
  std::vector<std::size_t> depth(nodes_.size(), 0);
  std::size_t deepest = 0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].is_leaf()) continue;
    for (int child : {nodes_[i].left, nodes_[i].right}) {
      depth[static_cast<std::size_t>(child)] = depth[i] + 1;
      deepest = std::max(deepest, depth[i] + 1);
    }
  }
  return deepest;
}

// --- Tree growing ---------------------------------------------------------

namespace {

using Column = std::vector<std::pair<double, std::uint32_t>>;

// Column-major view of the non-zero entries, each column sorted by value.
std::vector<Column> BuildColumns(const SparseMatrix& X) {
  std::vector<Column> cols(X.cols());
  for (std::size_t r = 0; r < X.rows(); ++r) {
    for (const auto& [c, v] : X.row(r)) cols[c].emplace_back(v, static_cast<std::uint32_t>(r));
  }
  for (auto& col : cols) std::sort(col.begin(), col.end());
  return cols;
}

struct Split {
  bool valid = false;
  double error = 0.0;
  double threshold = 0.0;
};

struct Group {
  double value;
  double wp;
  double wn;
  std::size_t count;
};

double Midpoint(double a, double b) {
  const double t = a + (b - a) / 2.0;
  return t > a ? t : b;
}

class TreeGrower {
 public:
  TreeGrower(const SparseMatrix& X, const std::vector<Column>& cols, const std::vector<int>& y,
             const std::vector<double>& w, std::size_t max_depth, std::size_t threads)
      : X_(X), cols_(cols), y_(y), w_(w), max_depth_(max_depth), threads_(std::max<std::size_t>(1, threads)),
        row_node_(y.size(), 0) {}

  DecisionTree Grow() {
    std::vector<std::uint32_t> rows(y_.size());
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = static_cast<std::uint32_t>(i);
    nodes_.clear();
    nodes_.emplace_back();
    GrowNode(0, rows, 0);
    return DecisionTree(nodes_);
  }

  // Leaf node of every training row after Grow().
  double PredictionFor(std::size_t row) const { return nodes_[row_node_[row]].value; }

 private:
  void GrowNode(int id, const std::vector<std::uint32_t>& rows, std::size_t depth) {
    double wp = 0.0, wn = 0.0;
    std::size_t cp = 0, cn = 0;
    for (std::uint32_t r : rows) {
      row_node_[r] = id;
      if (y_[r] > 0) {
        wp += w_[r];
        ++cp;
      } else {
        wn += w_[r];
        ++cn;
      }
    }
    nodes_[id].value = wp >= wn ? 1.0 : -1.0;
    if (depth >= max_depth_ || cp == 0 || cn == 0) return;

    const auto [feature, split] = BestSplit(id, wp, wn, rows.size());
    if (!split.valid) return;

    std::vector<std::uint32_t> left_rows, right_rows;
    for (std::uint32_t r : rows) {
      (Value(r, feature) < split.threshold ? left_rows : right_rows).push_back(r);
    }
    const int left = static_cast<int>(nodes_.size());
    nodes_.emplace_back();
    const int right = static_cast<int>(nodes_.size());
    nodes_.emplace_back();
    TreeNode& node = nodes_[id];
    node.feature = static_cast<int>(feature);
    node.threshold = split.threshold;
    node.left = left;
    node.right = right;
    node.gain = std::max(0.0, std::min(wp, wn) - split.error);
    node.value = 0.0;
    GrowNode(left, left_rows, depth + 1);
    GrowNode(right, right_rows, depth + 1);
  }

  double Value(std::uint32_t row, std::size_t feature) const { return X_.at(row, feature); }

  std::pair<std::size_t, Split> BestSplit(int node, double wp, double wn, std::size_t count) {
    const std::size_t nf = cols_.size();
    std::vector<Split> best(nf);
    auto work = [&](std::size_t begin, std::size_t end) {
      std::vector<Group> scratch;
      for (std::size_t f = begin; f < end; ++f)
        best[f] = BestSplitForFeature(f, node, wp, wn, count, scratch);
    };
    const std::size_t threads = std::min(threads_, nf);
    if (threads <= 1) {
      work(0, nf);
    } else {
      std::vector<std::thread> pool;
      const std::size_t chunk = (nf + threads - 1) / threads;
      for (std::size_t t = 0; t < threads; ++t) {
        const std::size_t begin = t * chunk;
        const std::size_t end = std::min(nf, begin + chunk);
        if (begin < end) pool.emplace_back(work, begin, end);
      }
      for (auto& th : pool) th.join();
    }
    // Sequential reduction: lowest feature index wins ties.
    std::size_t chosen = 0;
    Split result;
    for (std::size_t f = 0; f < nf; ++f) {
      if (!best[f].valid) continue;
      if (!result.valid || best[f].error < result.error - kTieTolerance) {
        result = best[f];
        chosen = f;
      }
    }
    return {chosen, result};
  }

  Split BestSplitForFeature(std::size_t f, int node, double wp, double wn, std::size_t count,
                            std::vector<Group>& groups) const {
    groups.clear();
    double nz_wp = 0.0, nz_wn = 0.0;
    std::size_t nz_count = 0;
    std::size_t zero_at = 0;  // groups with value < 0 come first
    for (const auto& [v, r] : cols_[f]) {
      if (row_node_[r] != node) continue;
      if (groups.empty() || groups.back().value != v) groups.push_back({v, 0.0, 0.0, 0});
      Group& g = groups.back();
      if (y_[r] > 0) {
        g.wp += w_[r];
        nz_wp += w_[r];
      } else {
        g.wn += w_[r];
        nz_wn += w_[r];
      }
      ++g.count;
      ++nz_count;
      if (v < 0.0) zero_at = groups.size();
    }
    if (nz_count < count) {
      groups.insert(groups.begin() + static_cast<std::ptrdiff_t>(zero_at),
                    Group{0.0, std::max(0.0, wp - nz_wp), std::max(0.0, wn - nz_wn),
                          count - nz_count});
    }
    Split best;
    double lp = 0.0, ln = 0.0;
    for (std::size_t k = 0; k + 1 < groups.size(); ++k) {
      lp += groups[k].wp;
      ln += groups[k].wn;
      const double rp = std::max(0.0, wp - lp);
      const double rn = std::max(0.0, wn - ln);
      const double error = std::min(lp, ln) + std::min(rp, rn);
      if (!best.valid || error < best.error - kTieTolerance) {
        best.valid = true;
        best.error = error;
        best.threshold = Midpoint(groups[k].value, groups[k + 1].value);
      }
    }
    return best;
  }

  const SparseMatrix& X_;
  const std::vector<Column>& cols_;
  const std::vector<int>& y_;
  const std::vector<double>& w_;
  std::size_t max_depth_;
  std::size_t threads_;
  std::vector<int> row_node_;
  std::vector<TreeNode> nodes_;
};

}  // namespace

// --- BoostModel -----------------------------------------------------------

double Sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

BoostModel::BoostModel(std::size_t width, BoostParams params, std::vector<BoostRound> rounds)
    : width_(width), params_(params), rounds_(std::move(rounds)) {
  for (const auto& r : rounds_) {
    if (!std::isfinite(r.alpha)) throw Error("boosting round has a non-finite weight");
    if (r.tree.MaxFeature() >= static_cast<int>(width_))
      throw Error("boosting round tests a feature beyond the model width");
  }
}

double BoostModel::Margin(std::span<const double> x) const {
  if (x.size() != width_)
    throw Error("input width " + std::to_string(x.size()) + " does not match model width " +
                std::to_string(width_));
  double m = 0.0;
  for (const auto& r : rounds_) m += r.alpha * r.tree.Predict(x);
  return m;
}

double BoostModel::Margin(const encoding::SparseVector& x) const {
  if (x.width != width_)
    throw Error("input width " + std::to_string(x.width) + " does not match model width " +
                std::to_string(width_));
  return Margin(std::span<const std::pair<std::size_t, double>>(x.entries));
}

double BoostModel::Margin(std::span<const std::pair<std::size_t, double>> row) const {
  double m = 0.0;
  for (const auto& r : rounds_) m += r.alpha * r.tree.Predict(row);
  return m;
}

double BoostModel::Score(std::span<const double> x) const { return Sigmoid(2.0 * Margin(x)); }
double BoostModel::Score(const encoding::SparseVector& x) const {
  return Sigmoid(2.0 * Margin(x));
}
double BoostModel::Score(std::span<const std::pair<std::size_t, double>> row) const {
  return Sigmoid(2.0 * Margin(row));
}

BoostModel BoostModel::Truncated(std::size_t rounds) const {
  BoostModel m = *this;
  if (m.rounds_.size() > rounds) m.rounds_.resize(rounds);
  m.params_.rounds = rounds;
  return m;
}

std::string BoostModel::ToJson() const {
  nlohmann::json j;
  j["format"] = "partsrl-adaboost";
  j["version"] = 1;
  j["width"] = width_;
  j["params"] = {{"rounds", params_.rounds},
                 {"depth", params_.depth},
                 {"shrinkage", params_.shrinkage},
                 {"seed", params_.seed},
                 {"balance_classes", params_.balance_classes}};
  auto& rounds = j["rounds"] = nlohmann::json::array();
  for (const auto& r : rounds_) {
    nlohmann::json nodes = nlohmann::json::array();
    for (const auto& n : r.tree.nodes()) {
      if (n.is_leaf()) {
        nodes.push_back({{"value", n.value}});
      } else {
        nodes.push_back({{"feature", n.feature},
                         {"threshold", n.threshold},
                         {"left", n.left},
                         {"right", n.right},
                         {"gain", n.gain}});
      }
    }
    rounds.push_back(
        {{"alpha", r.alpha}, {"error", r.error}, {"exp_loss", r.exp_loss}, {"tree", nodes}});
  }
  return j.dump(1);
}

BoostModel BoostModel::FromJson(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("model JSON: ") + e.what(), 0);
  }
  try {
    if (j.at("format") != "partsrl-adaboost" || j.at("version") != 1)
      throw ParseError("model JSON: not a partsrl-adaboost version 1 model", 0);
    BoostParams params;
    const auto& p = j.at("params");
    params.rounds = p.at("rounds").get<std::size_t>();
    params.depth = p.at("depth").get<std::size_t>();
    params.shrinkage = p.at("shrinkage").get<double>();
    params.seed = p.at("seed").get<std::uint64_t>();
    params.balance_classes = p.at("balance_classes").get<bool>();
    std::vector<BoostRound> rounds;
    for (const auto& r : j.at("rounds")) {
      std::vector<TreeNode> nodes;
      for (const auto& n : r.at("tree")) {
        TreeNode node;
        if (n.contains("feature")) {
          node.feature = n.at("feature").get<int>();
          node.threshold = n.at("threshold").get<double>();
          node.left = n.at("left").get<int>();
          node.right = n.at("right").get<int>();
          node.gain = n.at("gain").get<double>();
        } else {
          node.value = n.at("value").get<double>();
        }
        nodes.push_back(node);
      }
      const int count = static_cast<int>(nodes.size());
      for (const auto& node : nodes) {
        if (!node.is_leaf() && (node.left <= 0 || node.right <= 0 || node.left >= count ||
                                node.right >= count))
          throw ParseError("model JSON: tree child index out of range", 0);
      }
      rounds.push_back({DecisionTree(std::move(nodes)), r.at("alpha").get<double>(),
                        r.at("error").get<double>(), r.at("exp_loss").get<double>()});
    }
    return BoostModel(j.at("width").get<std::size_t>(), params, std::move(rounds));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("model JSON: ") + e.what(), 0);
  }
}

// --- Fitting --------------------------------------------------------------

BoostModel FitAdaBoost(const SparseMatrix& X, const std::vector<int>& labels,
                       const BoostParams& params) {
  const std::size_t n = X.rows();
  if (labels.size() != n)
    throw Error("have " + std::to_string(n) + " rows but " + std::to_string(labels.size()) +
                " labels");
  if (n < 2) throw Error("need at least two training rows");
  if (params.depth == 0) throw Error("tree depth must be at least 1");
  if (!(params.shrinkage > 0.0 && params.shrinkage <= 1.0))
    throw Error("shrinkage must lie in (0, 1]");
  std::vector<int> y(n);
  std::size_t positives = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (labels[i] != 0 && labels[i] != 1) throw Error("labels must be 0 or 1");
    y[i] = labels[i] == 1 ? 1 : -1;
    positives += labels[i] == 1;
    for (const auto& [c, v] : X.row(i)) {
      if (!std::isfinite(v))
        throw Error("non-finite feature value at row " + std::to_string(i) + ", column " +
                    std::to_string(c));
    }
  }
  if (positives == 0 || positives == n) throw Error("training labels contain a single class");

  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = params.balance_classes
               ? 0.5 / static_cast<double>(y[i] > 0 ? positives : n - positives)
               : 1.0 / static_cast<double>(n);
  }
  const std::vector<double> initial = w;

  const std::vector<Column> cols = BuildColumns(X);
  std::vector<double> margin(n, 0.0);
  std::vector<BoostRound> rounds;
  for (std::size_t t = 0; t < params.rounds; ++t) {
    TreeGrower grower(X, cols, y, w, params.depth, params.threads);
    DecisionTree tree = grower.Grow();
    std::vector<double> h(n);
    double error = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      h[i] = grower.PredictionFor(i);
      if (h[i] != static_cast<double>(y[i])) error += w[i];
    }
    if (error >= 0.5 - kTieTolerance) break;
    const double clamped = std::max(error, kMinError);
    const double alpha = params.shrinkage * 0.5 * std::log((1.0 - clamped) / clamped);

    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      w[i] *= std::exp(-alpha * y[i] * h[i]);
      total += w[i];
    }
    for (double& wi : w) wi /= total;

    double loss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      margin[i] += alpha * h[i];
      loss += initial[i] * std::exp(-y[i] * margin[i]);
    }
    rounds.push_back({std::move(tree), alpha, error, loss});
    if (error <= 0.0) break;
  }
  return BoostModel(X.cols(), params, std::move(rounds));
}

std::vector<std::pair<std::string, double>> FeatureImportances(
    const BoostModel& model, const std::vector<std::string>& names) {
  if (names.size() != model.width())
    throw Error("got " + std::to_string(names.size()) + " feature names for a model of width " +
                std::to_string(model.width()));
  std::vector<double> raw(model.width(), 0.0);
  for (const auto& r : model.rounds()) {
    for (const auto& node : r.tree.nodes()) {
      if (!node.is_leaf()) raw[static_cast<std::size_t>(node.feature)] += r.alpha * node.gain;
    }
  }
  double total = 0.0;
  for (double v : raw) total += v;
  std::vector<std::size_t> order(raw.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return raw[a] > raw[b]; });
  std::vector<std::pair<std::string, double>> out;
  out.reserve(order.size());
  for (std::size_t i : order) out.emplace_back(names[i], total > 0.0 ? raw[i] / total : 0.0);
  return out;
}

}  // namespace partsrl::boost
