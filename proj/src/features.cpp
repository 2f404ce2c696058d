#include "partsrl/features.hpp"

#include <algorithm>
#include <sstream>

#include "partsrl/errors.hpp"
#include "partsrl/internal/strings.hpp"

namespace partsrl::features {

void FeatureRecord::SetCategorical(const std::string& name, std::string value) {
  if (numeric_.count(name)) throw Error("feature '" + name + "' is already numeric");
  categorical_[name] = std::move(value);
}

void FeatureRecord::SetNumeric(const std::string& name, double value) {
  if (categorical_.count(name)) throw Error("feature '" + name + "' is already categorical");
  numeric_[name] = value;
}

void FeatureRecord::Merge(const FeatureRecord& other) {
  for (const auto& [name, value] : other.categorical_) {
    if (categorical_.count(name) || numeric_.count(name))
      throw Error("duplicate feature name '" + name + "'");
    categorical_.emplace(name, value);
  }
  for (const auto& [name, value] : other.numeric_) {
    if (categorical_.count(name) || numeric_.count(name))
      throw Error("duplicate feature name '" + name + "'");
    numeric_.emplace(name, value);
  }
}

std::string FeatureRecord::Dump() const {
  std::map<std::string, std::string> all(categorical_.begin(), categorical_.end());
  for (const auto& [name, value] : numeric_) all.emplace(name, internal::FormatDouble(value));
  std::string out;
  for (const auto& [name, value] : all) out += name + "=" + value + "\n";
  return out;
}

std::string_view TaskName(Task task) {
  return task == Task::kPercent ? "percent" : "partitive";
}

Task ParseTask(std::string_view name) {
  if (name == "percent" || name == "%") return Task::kPercent;
  if (name == "partitive") return Task::kPartitive;
  throw Error("unknown task '" + std::string(name) + "' (expected percent or partitive)");
}

FeatureRecord WindowFeatures(const corpus::Sentence& sentence, std::size_t idx) {
  FeatureRecord record;
  for (int offset = -2; offset <= 2; ++offset) {
    const std::string suffix =
        offset > 0 ? "+" + std::to_string(offset) : std::to_string(offset);
    const long pos = static_cast<long>(idx) + offset;
    const bool inside = pos >= 0 && pos < static_cast<long>(sentence.size());
    const corpus::Token* tok = inside ? &sentence[static_cast<std::size_t>(pos)] : nullptr;
    record.SetCategorical("word_" + suffix, tok ? tok->word : std::string(kPad));
    record.SetCategorical("pos_" + suffix, tok ? tok->pos : std::string(kPad));
    record.SetCategorical("bio_" + suffix, tok ? tok->bio : std::string(kPad));
  }
  return record;
}

FeatureRecord DistanceFeatures(const corpus::Instance& instance, std::size_t idx) {
  FeatureRecord record;
  record.SetNumeric("dist_pred",
                    static_cast<double>(TokenDistance(idx, instance.predicate_index)));
  if (instance.support_indices.empty()) {
    record.SetNumeric("dist_sup", 0.0);
    record.SetCategorical("sup_present", "no");
  } else {
    record.SetNumeric(
        "dist_sup", static_cast<double>(TokenDistance(idx, instance.support_indices.front())));
    record.SetCategorical("sup_present", "yes");
  }
  return record;
}

std::string CoarsePos(std::string_view pos) {
  if (pos.substr(0, 2) == "NN") return "NOUN";
  if (pos.substr(0, 2) == "VB") return "VERB";
  return std::string(pos);
}

std::string CollapseBioPath(const corpus::Sentence& sentence, std::size_t from_idx,
                            std::size_t to_idx) {
  if (from_idx == to_idx) throw Error("no BIO path from a token to itself");
  if (from_idx >= sentence.size() || to_idx >= sentence.size())
    throw Error("BIO path endpoint out of range");
  std::vector<std::string> parts;
  parts.emplace_back(to_idx > from_idx ? "right" : "left");
  const std::size_t lo = std::min(from_idx, to_idx);
  const std::size_t hi = std::max(from_idx, to_idx);
  std::size_t i = lo;
  while (i <= hi) {
    const corpus::Token& tok = sentence[i];
    if (tok.bio == "O") {
      parts.push_back("O-" + internal::ToLower(tok.word));
      ++i;
      continue;
    }
    const std::string_view label = corpus::ChunkLabel(tok.bio);
    const std::string inside = "I-" + std::string(label);
    std::size_t j = i + 1;
    while (j <= hi && sentence[j].bio == inside) ++j;
    parts.emplace_back(label);
    if (label == "PP") {
      // The chunk may start before the span.
      std::size_t head = i;
      while (head > 0 && sentence[head].bio[0] == 'I') --head;
      parts.push_back(internal::ToLower(sentence[head].word));
    }
    i = j;
  }
  parts.push_back(CoarsePos(sentence[to_idx].pos));
  return internal::Join(parts, "_");
}

FeatureRecord BioPathFeatures(const corpus::Sentence& sentence,
                              const corpus::Instance& instance, std::size_t idx) {
  FeatureRecord record;
  record.SetCategorical("bio_path_pred",
                        idx == instance.predicate_index
                            ? "<SELF>"
                            : CollapseBioPath(sentence, instance.predicate_index, idx));
  if (instance.support_indices.empty()) {
    record.SetCategorical("bio_path_sup", "<NONE>");
  } else {
    const std::size_t sup = instance.support_indices.front();
    record.SetCategorical("bio_path_sup",
                          idx == sup ? "<SELF>" : CollapseBioPath(sentence, sup, idx));
  }
  return record;
}

const std::array<PathPattern, 3>& PathPatterns() {
  static const std::array<PathPattern, 3> kPatterns = {{
      {PathId::kPath1, Anchor::kSupport, Direction::kBefore, {"VP", "S"}, {"NP"}},
      {PathId::kPath2, Anchor::kSupport, Direction::kAfter, {"VP"}, {"NP"}},
      {PathId::kPath3, Anchor::kPredicate, Direction::kBefore, {"NP"}, {"NP"}},
  }};
  return kPatterns;
}

std::array<bool, 3> Type2PathFlags(const tree::ParseTree& tree,
                                   const corpus::Instance& instance, std::size_t idx) {
  std::array<bool, 3> flags{false, false, false};
  const bool has_support = !instance.support_indices.empty();
  for (std::size_t k = 0; k < flags.size(); ++k) {
    const PathPattern& pattern = PathPatterns()[k];
    std::size_t anchor = 0;
    if (pattern.anchor == Anchor::kSupport) {
      if (!has_support) continue;
      anchor = instance.support_indices.front();
    } else {
      if (has_support) continue;
      anchor = instance.predicate_index;
    }
    const bool before = idx < anchor;
    const bool after = idx > anchor;
    if ((pattern.direction == Direction::kBefore && !before) ||
        (pattern.direction == Direction::kAfter && !after))
      continue;
    const tree::TreePath path = tree::ComputeTreePath(tree, anchor, idx);
    flags[k] = path.up_labels == pattern.up_labels && path.down_labels == pattern.down_labels;
  }
  return flags;
}

FeatureRecord Type2PathFeatures(const tree::ParseTree& tree,
                                const corpus::Instance& instance, std::size_t idx) {
  const auto flags = Type2PathFlags(tree, instance, idx);
  FeatureRecord record;
  record.SetCategorical("tree_path1", flags[0] ? "1" : "0");
  record.SetCategorical("tree_path2", flags[1] ? "1" : "0");
  record.SetCategorical("tree_path3", flags[2] ? "1" : "0");
  return record;
}

const std::vector<std::string>& KnownFrameClasses() {
  static const std::vector<std::string> kClasses = {
      "GROUP",      "MERONYM",     "PART",     "QUANT",           "SHARE",
      "BOOK-CHAPTER", "BORDER",    "CONTAINER", "DIVISION",       "ENVIRONMENT",
      "INSTANCE-OF-SET", "NOM",    "NOMADJ",   "PART-OF-BODY-FURNITURE-ETC",
      "WORK-OF-ART", "OTHER"};
  return kClasses;
}

FeatureRecord PredicateClassFeatures(const corpus::Instance& instance, Task task) {
  FeatureRecord record;
  if (task == Task::kPercent) return record;
  const auto& known = KnownFrameClasses();
  bool other = false;
  for (const auto& cls : instance.frame_classes) {
    if (std::find(known.begin(), known.end(), cls) == known.end()) other = true;
  }
  for (const auto& cls : known) {
    const bool present = cls == "OTHER" ? other : instance.frame_classes.count(cls) > 0;
    record.SetCategorical("class_" + cls, present ? "1" : "0");
  }
  return record;
}

std::string_view GroupName(Group group) {
  switch (group) {
    case Group::kWindow: return "window";
    case Group::kDistance: return "distance";
    case Group::kPath: return "path";
    case Group::kBasicEmbed: return "basic-embed";
    case Group::kSlashEmbed: return "slash-embed";
    case Group::kClass: return "class";
  }
  return "";
}

const std::vector<Group>& AllGroups() {
  static const std::vector<Group> kGroups = {Group::kWindow,     Group::kDistance,
                                             Group::kPath,       Group::kBasicEmbed,
                                             Group::kSlashEmbed, Group::kClass};
  return kGroups;
}

std::vector<Group> ParseGroupName(std::string_view name) {
  if (name == "embed") return {Group::kBasicEmbed, Group::kSlashEmbed};
  for (Group g : AllGroups()) {
    if (GroupName(g) == name) return {g};
  }
  throw Error("unknown feature group '" + std::string(name) +
              "' (known: window, distance, path, embed, basic-embed, slash-embed, class)");
}

Group GroupOf(std::string_view name) {
  auto starts = [&](std::string_view prefix) { return name.substr(0, prefix.size()) == prefix; };
  auto ends = [&](std::string_view suffix) {
    return name.size() >= suffix.size() && name.substr(name.size() - suffix.size()) == suffix;
  };
  if (starts("bio_path_") || starts("tree_path")) return Group::kPath;
  if (starts("word_") || starts("pos_") || starts("bio_")) return Group::kWindow;
  if (starts("dist_") || name == "sup_present") return Group::kDistance;
  if (starts("emb_") && ends("_normal")) return Group::kBasicEmbed;
  if (starts("emb_") && ends("_slash")) return Group::kSlashEmbed;
  if (starts("class_")) return Group::kClass;
  throw Error("feature '" + std::string(name) + "' belongs to no known group");
}

FeatureRecord FilterGroups(const FeatureRecord& record, const std::vector<Group>& enabled) {
  auto keep = [&](const std::string& name) {
    return std::find(enabled.begin(), enabled.end(), GroupOf(name)) != enabled.end();
  };
  FeatureRecord out;
  for (const auto& [name, value] : record.categorical())
    if (keep(name)) out.SetCategorical(name, value);
  for (const auto& [name, value] : record.numeric())
    if (keep(name)) out.SetNumeric(name, value);
  return out;
}

}  // namespace partsrl::features
