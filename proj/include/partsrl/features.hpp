#ifndef PARTSRL_FEATURES_HPP_
#define PARTSRL_FEATURES_HPP_

#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "partsrl/corpus.hpp"
#include "partsrl/parse_tree.hpp"

namespace partsrl::features {

inline constexpr std::string_view kPad = "<PAD>";

// Categorical and numeric features of one candidate token. Both maps are
// name-ordered, and a name may appear in only one of them.
class FeatureRecord {
 public:
  void SetCategorical(const std::string& name, std::string value);
  void SetNumeric(const std::string& name, double value);
  // Name-disjoint union; throws Error on a name clash.
  void Merge(const FeatureRecord& other);

  const std::map<std::string, std::string>& categorical() const { return categorical_; }
  const std::map<std::string, double>& numeric() const { return numeric_; }
  std::size_t size() const { return categorical_.size() + numeric_.size(); }
  bool empty() const { return size() == 0; }

  // "name=value" lines, all features sorted by name.
  std::string Dump() const;

  friend bool operator==(const FeatureRecord&, const FeatureRecord&) = default;

 private:
  std::map<std::string, std::string> categorical_;
  std::map<std::string, double> numeric_;
};

enum class Task { kPercent, kPartitive };

std::string_view TaskName(Task task);
Task ParseTask(std::string_view name);

// word/pos/bio at offsets -2..+2, named "word_-1", "pos_0", "bio_+2", ...
FeatureRecord WindowFeatures(const corpus::Sentence& sentence, std::size_t idx);

// Signed offset of the candidate from the anchor; negative means the
// candidate comes first.
inline long TokenDistance(std::size_t idx, std::size_t anchor) {
  return static_cast<long>(idx) - static_cast<long>(anchor);
}

// Token distances to the predicate and to the first support verb. When the
// sentence has no support verb, dist_sup is 0 and sup_present is "no".
FeatureRecord DistanceFeatures(const corpus::Instance& instance, std::size_t idx);

// Path-heuristic 1: collapses the chunk tags between two tokens into a
// directional phrase path, e.g. "right_NP_PP_of_NP_NOUN". Throws Error when
// from_idx == to_idx.
std::string CollapseBioPath(const corpus::Sentence& sentence, std::size_t from_idx,
                            std::size_t to_idx);

// NN* -> NOUN, VB* -> VERB, anything else unchanged.
std::string CoarsePos(std::string_view pos);

// Type-1 path features: the collapsed BIO path from the predicate and from
// the first support verb to the candidate ("<SELF>" for the anchor itself,
// "<NONE>" when there is no support verb).
FeatureRecord BioPathFeatures(const corpus::Sentence& sentence,
                              const corpus::Instance& instance, std::size_t idx);

enum class PathId { kPath1, kPath2, kPath3 };
enum class Anchor { kSupport, kPredicate };
enum class Direction { kBefore, kAfter };

struct PathPattern {
  PathId id;
  Anchor anchor;
  Direction direction;
  std::vector<std::string> up_labels;
  std::vector<std::string> down_labels;
};

// PATH1 ↑VP↑S↓NP (support, preceding ARG1), PATH2 ↑VP↓NP (support,
// following ARG1), PATH3 ↑NP↓NP (predicate with no support, preceding ARG1).
const std::array<PathPattern, 3>& PathPatterns();

// Path-heuristic 2 presence flags, in PATH1..PATH3 order. The tree must be
// aligned with the sentence the instance came from.
std::array<bool, 3> Type2PathFlags(const tree::ParseTree& tree,
                                   const corpus::Instance& instance, std::size_t idx);

FeatureRecord Type2PathFeatures(const tree::ParseTree& tree,
                                const corpus::Instance& instance, std::size_t idx);

// Known NomBank predicate classes, plus OTHER for anything else.
const std::vector<std::string>& KnownFrameClasses();

// One "class_X" = "1"/"0" feature per known class for the partitive task;
// empty for the percent task, where every instance shares one predicate.
FeatureRecord PredicateClassFeatures(const corpus::Instance& instance, Task task);

// Feature groups used for ablation masks.
enum class Group { kWindow, kDistance, kPath, kBasicEmbed, kSlashEmbed, kClass };

std::string_view GroupName(Group group);
const std::vector<Group>& AllGroups();
// Accepts the individual names plus "embed" (both embedding groups). Throws
// Error for unknown names.
std::vector<Group> ParseGroupName(std::string_view name);
// The group a feature name belongs to; throws Error for unknown prefixes.
Group GroupOf(std::string_view feature_name);

// Keeps only features whose group is enabled.
FeatureRecord FilterGroups(const FeatureRecord& record, const std::vector<Group>& enabled);

}  // namespace partsrl::features

#endif  // PARTSRL_FEATURES_HPP_
