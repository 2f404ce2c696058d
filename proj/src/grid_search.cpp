#include "partsrl/grid_search.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <tuple>

#include "partsrl/errors.hpp"
#include "partsrl/internal/strings.hpp"

namespace partsrl::pipeline {

void ValidateGrid(const GridSpec& spec) {
  if (spec.rounds.empty() || spec.depths.empty() || spec.shrinkages.empty())
    throw Error("grid lists must not be empty");
  for (auto r : spec.rounds)
    if (r == 0) throw Error("grid rounds must be positive");
  for (auto d : spec.depths)
    if (d == 0) throw Error("grid depths must be positive");
  for (auto s : spec.shrinkages)
    if (!(s > 0.0 && s <= 1.0)) throw Error("grid shrinkage must lie in (0, 1]");
}

std::vector<std::size_t> ParseSizeList(const std::string& text) {
  std::vector<std::size_t> out;
  for (auto field : internal::Split(text, ',')) {
    field = internal::Trim(field);
    const auto v = internal::ParseInt<std::size_t>(field);
    if (!v) throw Error("not a non-negative integer: '" + std::string(field) + "'");
    out.push_back(*v);
  }
  return out;
}

std::vector<double> ParseDoubleList(const std::string& text) {
  std::vector<double> out;
  for (auto field : internal::Split(text, ',')) {
    field = internal::Trim(field);
    const auto v = internal::ParseDouble(field);
    if (!v) throw Error("not a number: '" + std::string(field) + "'");
    out.push_back(*v);
  }
  return out;
}

GridResult GridSearch(const Document& train, const Document& dev, const TrainOptions& base,
                      const GridSpec& spec, const embed::VectorStore* store,
                      const ensemble::DecodeOptions& decode) {
  ValidateGrid(spec);
  if (dev.sentences.empty()) throw Error("grid search needs a non-empty dev set");
  if (std::none_of(dev.instances.begin(), dev.instances.end(),
                   [](const corpus::Instance& inst) { return inst.arg1_index.has_value(); }))
    throw Error("grid search needs a labeled dev set");

  auto rounds = spec.rounds;
  auto depths = spec.depths;
  auto shrinkages = spec.shrinkages;
  std::sort(rounds.begin(), rounds.end());
  rounds.erase(std::unique(rounds.begin(), rounds.end()), rounds.end());
  std::sort(depths.begin(), depths.end());
  depths.erase(std::unique(depths.begin(), depths.end()), depths.end());
  std::sort(shrinkages.begin(), shrinkages.end(), std::greater<>());
  shrinkages.erase(std::unique(shrinkages.begin(), shrinkages.end()), shrinkages.end());

  const TrainingData data = PrepareTraining(train, base.features, base.encoding, store);
  const System shell(data.features, data.vocab, data.profile, data.uses_trees,
                     boost::BoostModel(data.vocab.width(), base.boost, {}));

  struct Candidate {
    GridRow row;
    boost::BoostModel model;
  };
  std::vector<Candidate> candidates;
  for (auto depth : depths) {
    for (auto shrinkage : shrinkages) {
      boost::BoostParams params = base.boost;
      params.rounds = rounds.back();
      params.depth = depth;
      params.shrinkage = shrinkage;
      const boost::BoostModel full = boost::FitAdaBoost(data.X, data.labels, params);
      for (auto r : rounds) {
        boost::BoostModel model = full.Truncated(r);
        const System system = shell.WithModel(model);
        const auto predictions = ensemble::Decode(system.Score(dev, store), decode);
        candidates.push_back(
            {GridRow{r, depth, shrinkage, eval::Prf(predictions, dev.sentences)}, std::move(model)});
      }
    }
  }
  std::stable_sort(candidates.begin(), candidates.end(), [](const auto& a, const auto& b) {
    return std::make_tuple(a.row.rounds, a.row.depth, -a.row.shrinkage) <
           std::make_tuple(b.row.rounds, b.row.depth, -b.row.shrinkage);
  });

  GridResult result;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    result.rows.push_back(candidates[i].row);
    if (i > 0 && candidates[i].row.dev.f1 > candidates[result.best_row].row.dev.f1 + 1e-9)
      result.best_row = i;
  }
  result.best = shell.WithModel(candidates[result.best_row].model);
  return result;
}

std::string FormatGrid(const GridResult& result) {
  std::ostringstream out;
  out << "rounds  depth  shrinkage     Prec      Rec       F1\n";
  char line[128];
  for (std::size_t i = 0; i < result.rows.size(); ++i) {
    const GridRow& r = result.rows[i];
    std::snprintf(line, sizeof line, "%6zu  %5zu  %9.4g  %7.2f  %7.2f  %7.2f%s\n", r.rounds,
                  r.depth, r.shrinkage, r.dev.precision, r.dev.recall, r.dev.f1,
                  i == result.best_row ? "  *" : "");
    out << line;
  }
  return out.str();
}

}  // namespace partsrl::pipeline
