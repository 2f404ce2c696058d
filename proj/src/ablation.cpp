#include "partsrl/ablation.hpp"

#include <algorithm>

#include "partsrl/errors.hpp"
#include "partsrl/internal/strings.hpp"

namespace partsrl::eval {

namespace {

using features::Group;

std::vector<Group> AllBut(std::initializer_list<Group> removed) {
  std::vector<Group> out;
  for (auto g : features::AllGroups())
    if (std::find(removed.begin(), removed.end(), g) == removed.end()) out.push_back(g);
  return out;
}

}  // namespace

std::vector<FeatureMask> StandardMasks() {
  return {
      {"All", features::AllGroups()},
      {"N-gram Only", {Group::kWindow}},
      {"All but Path", AllBut({Group::kPath, Group::kDistance})},
      {"All but Embed", AllBut({Group::kBasicEmbed, Group::kSlashEmbed})},
      {"All but Basic Embed", AllBut({Group::kBasicEmbed})},
      {"All but Slash Embed", AllBut({Group::kSlashEmbed})},
  };
}

FeatureMask ParseMask(std::string_view text) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos || eq == 0)
    throw Error("mask '" + std::string(text) + "' is not of the form LABEL=group,...");
  FeatureMask mask{std::string(text.substr(0, eq)), {}};
  std::vector<Group> listed;
  int removals = 0, keeps = 0;
  for (auto item : internal::Split(text.substr(eq + 1), ',')) {
    if (item.empty()) continue;
    if (item.front() == '-') {
      ++removals;
      item.remove_prefix(1);
    } else {
      ++keeps;
    }
    for (auto g : features::ParseGroupName(item)) listed.push_back(g);
  }
  if (removals && keeps)
    throw Error("mask '" + mask.label + "' mixes kept and removed groups");
  if (removals) {
    for (auto g : features::AllGroups())
      if (std::find(listed.begin(), listed.end(), g) == listed.end()) mask.groups.push_back(g);
  } else {
    for (auto g : features::AllGroups())
      if (std::find(listed.begin(), listed.end(), g) != listed.end()) mask.groups.push_back(g);
  }
  return mask;
}

std::vector<ReportRow> AblationReport(const std::vector<FeatureMask>& masks,
                                      const pipeline::Document& train,
                                      const pipeline::Document& dev,
                                      const pipeline::TrainOptions& options,
                                      const embed::VectorStore* store,
                                      const ensemble::DecodeOptions& decode) {
  if (masks.empty()) throw Error("ablation needs at least one feature mask");
  std::vector<ReportRow> rows;
  for (const auto& mask : masks) {
    pipeline::TrainOptions run = options;
    run.features.groups = mask.groups;
    const pipeline::System system = pipeline::Train(train, run, store);
    const auto predictions = ensemble::Decode(system.Score(dev, store), decode);
    rows.push_back({mask.label, Prf(predictions, dev.sentences)});
  }
  return rows;
}

}  // namespace partsrl::eval
