#ifndef PARTSRL_GRID_SEARCH_HPP_
#define PARTSRL_GRID_SEARCH_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "partsrl/ensemble.hpp"
#include "partsrl/eval.hpp"
#include "partsrl/pipeline.hpp"

namespace partsrl::pipeline {

struct GridSpec {
  std::vector<std::size_t> rounds = {50, 100, 200};
  std::vector<std::size_t> depths = {1, 2, 3};
  std::vector<double> shrinkages = {0.5, 1.0};
};

// Throws Error for empty lists, zero rounds or depth, or shrinkage outside
// (0, 1].
void ValidateGrid(const GridSpec& spec);

// "50,100,200" style lists.
std::vector<std::size_t> ParseSizeList(const std::string& text);
std::vector<double> ParseDoubleList(const std::string& text);

struct GridRow {
  std::size_t rounds = 0;
  std::size_t depth = 0;
  double shrinkage = 0.0;
  eval::PrfScores dev;
};

struct GridResult {
  System best;
  std::size_t best_row = 0;
  // Ordered by rounds, then depth, then descending shrinkage.
  std::vector<GridRow> rows;
};

// Trains one model per (rounds, depth, shrinkage) combination and keeps the
// best dev F1. Equal F1 goes to fewer rounds, then smaller depth, then larger
// shrinkage. Round counts share one fit per (depth, shrinkage) pair, since a
// boosted model's first n rounds are exactly the model trained for n rounds.
// Throws Error when the dev document is empty or has no gold ARG1.
GridResult GridSearch(const Document& train, const Document& dev, const TrainOptions& base,
                      const GridSpec& spec, const embed::VectorStore* store,
                      const ensemble::DecodeOptions& decode);

std::string FormatGrid(const GridResult& result);

}  // namespace partsrl::pipeline

#endif  // PARTSRL_GRID_SEARCH_HPP_
