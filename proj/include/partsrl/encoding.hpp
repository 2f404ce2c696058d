#ifndef PARTSRL_ENCODING_HPP_
#define PARTSRL_ENCODING_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "partsrl/features.hpp"

namespace partsrl::encoding {

enum class Mode { kOrdinal, kOneHot };

std::string_view ModeName(Mode mode);
Mode ParseMode(std::string_view name);

inline constexpr std::string_view kUnknown = "<UNK>";

// Non-zero entries of an encoded vector, sorted by index.
struct SparseVector {
  std::vector<std::pair<std::size_t, double>> entries;
  std::size_t width = 0;

  std::vector<double> ToDense() const;
};

// Category ids per categorical feature, learned from training records. Id 0
// is reserved for categories never seen in training.
class Vocabulary {
 public:
  struct Categorical {
    std::string name;
    // categories[0] is kUnknown.
    std::vector<std::string> categories;
    std::unordered_map<std::string, std::size_t> ids;
  };

  Mode mode() const { return mode_; }
  const std::vector<Categorical>& categorical() const { return categorical_; }
  const std::vector<std::string>& numeric() const { return numeric_; }

  // ONEHOT: sum over categorical features of (1 + categories) plus the
  // numeric count. ORDINAL: one column per feature.
  std::size_t width() const;
  // 0 for unseen categories.
  std::size_t CategoryId(std::size_t feature, std::string_view category) const;
  // Column names: "pos_0=NN", "pos_0=<UNK>" (one-hot) or "pos_0" (ordinal);
  // numeric features keep their own names.
  std::vector<std::string> ColumnNames() const;

  // Versioned text format, TAB-separated:
  //   partsrl-vocabulary 1
  //   mode <ordinal|onehot>
  //   cat <name> <category 1> <category 2> ...
  //   num <name>
  std::string Serialize() const;
  static Vocabulary Deserialize(std::string_view text);

  friend Vocabulary BuildVocab(const std::vector<features::FeatureRecord>&, Mode);

 private:
  Mode mode_ = Mode::kOneHot;
  std::vector<Categorical> categorical_;
  std::vector<std::string> numeric_;
};

// Assigns ids in first-seen order over the record stream. Throws Error for
// an empty list or when a record's feature names differ from the first
// record's (naming the record's position).
Vocabulary BuildVocab(const std::vector<features::FeatureRecord>& records, Mode mode);

std::vector<double> Vectorize(const features::FeatureRecord& record, const Vocabulary& vocab);
SparseVector VectorizeSparse(const features::FeatureRecord& record, const Vocabulary& vocab);

}  // namespace partsrl::encoding

#endif  // PARTSRL_ENCODING_HPP_
