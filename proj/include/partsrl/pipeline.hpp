#ifndef PARTSRL_PIPELINE_HPP_
#define PARTSRL_PIPELINE_HPP_

// End-to-end ARG1 scorer: per-token feature records, vocabulary encoding and
// a boosted classifier, trained and applied on whole documents.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "partsrl/adaboost.hpp"
#include "partsrl/corpus.hpp"
#include "partsrl/embeddings.hpp"
#include "partsrl/encoding.hpp"
#include "partsrl/ensemble.hpp"
#include "partsrl/features.hpp"
#include "partsrl/parse_tree.hpp"

namespace partsrl::pipeline {

// Sentences with their instances and, optionally, trees aligned to them.
struct Document {
  std::vector<corpus::Sentence> sentences;
  std::vector<corpus::Instance> instances;
  std::vector<tree::ParseTree> trees;

  bool has_trees() const { return !trees.empty(); }
  std::size_t token_count() const;
};

// Validates every sentence, drops empty elements from the trees and aligns
// them. `trees` may be empty; otherwise it must have one tree per sentence.
Document MakeDocument(std::vector<corpus::Sentence> sentences,
                      std::vector<tree::ParseTree> trees = {});
Document LoadDocument(const std::string& conll_path, const std::string& trees_path = "");

struct FeatureConfig {
  features::Task task = features::Task::kPercent;
  std::vector<features::Group> groups = features::AllGroups();
};

// Embedding inputs; both must be set for embedding features to appear.
struct EmbeddingInputs {
  const embed::VectorStore* store = nullptr;
  const embed::AverageProfile* profile = nullptr;
  bool enabled() const { return store != nullptr && profile != nullptr; }
};

// One record per token of sentence `s`. Tree-path flags need trees,
// embedding features need `embeddings`; both are skipped otherwise.
std::vector<features::FeatureRecord> SentenceRecords(const Document& doc, std::size_t s,
                                                     const FeatureConfig& config,
                                                     const EmbeddingInputs& embeddings);

// 1 for the gold ARG1 token, 0 elsewhere.
std::vector<int> SentenceLabels(const Document& doc, std::size_t s);

struct TrainOptions {
  FeatureConfig features;
  encoding::Mode encoding = encoding::Mode::kOneHot;
  boost::BoostParams boost;
};

// Encoded training matrix with everything needed to rebuild the features.
struct TrainingData {
  FeatureConfig features;
  encoding::Vocabulary vocab;
  std::optional<embed::AverageProfile> profile;
  bool uses_trees = false;
  boost::SparseMatrix X;
  std::vector<int> labels;
};

// Fits the embedding profile (when a vector store is given and an embedding
// group is enabled), builds the vocabulary and encodes every token.
TrainingData PrepareTraining(const Document& train, const FeatureConfig& features,
                             encoding::Mode mode, const embed::VectorStore* store);

class System {
 public:
  System() = default;
  System(FeatureConfig features, encoding::Vocabulary vocab,
         std::optional<embed::AverageProfile> profile, bool uses_trees,
         boost::BoostModel model);

  const FeatureConfig& features() const { return features_; }
  const encoding::Vocabulary& vocab() const { return vocab_; }
  const std::optional<embed::AverageProfile>& profile() const { return profile_; }
  bool uses_trees() const { return uses_trees_; }
  const boost::BoostModel& model() const { return model_; }
  bool uses_embeddings() const { return profile_.has_value(); }

  // Same system with another boosted model over the same columns.
  System WithModel(boost::BoostModel model) const;

  // Throws Error when the document lacks trees or `store` is missing but
  // the system was trained with them.
  std::vector<features::FeatureRecord> Records(const Document& doc, std::size_t s,
                                               const embed::VectorStore* store) const;
  ensemble::ScoreTable Score(const Document& doc, const embed::VectorStore* store) const;

  std::string ToJson() const;
  static System FromJson(std::string_view text);

 private:
  void CheckInputs(const Document& doc, const embed::VectorStore* store) const;

  FeatureConfig features_;
  encoding::Vocabulary vocab_;
  std::optional<embed::AverageProfile> profile_;
  bool uses_trees_ = false;
  boost::BoostModel model_;
};

System Train(const Document& train, const TrainOptions& options,
             const embed::VectorStore* store);

System LoadSystem(const std::string& path);
void SaveSystem(const System& system, const std::string& path);

}  // namespace partsrl::pipeline

#endif  // PARTSRL_PIPELINE_HPP_
