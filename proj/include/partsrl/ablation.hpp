#ifndef PARTSRL_ABLATION_HPP_
#define PARTSRL_ABLATION_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "partsrl/ensemble.hpp"
#include "partsrl/eval.hpp"
#include "partsrl/features.hpp"
#include "partsrl/pipeline.hpp"

namespace partsrl::eval {

struct FeatureMask {
  std::string label;
  std::vector<features::Group> groups;
};

// The six standard rows: All, N-gram Only, All but Path, All but Embed,
// All but Basic Embed, All but Slash Embed. Token distance belongs to the
// path family, so "All but Path" drops it too; "N-gram Only" keeps just the
// word/POS/chunk window.
std::vector<FeatureMask> StandardMasks();

// "Label=window,path" keeps the listed groups; "Label=-path,-distance" drops
// them from the full set. Throws Error for unknown groups or mixed forms.
FeatureMask ParseMask(std::string_view text);

// Trains and scores one system per mask with the same hyperparameters and
// seed. Throws Error for an empty mask list.
std::vector<ReportRow> AblationReport(const std::vector<FeatureMask>& masks,
                                      const pipeline::Document& train,
                                      const pipeline::Document& dev,
                                      const pipeline::TrainOptions& options,
                                      const embed::VectorStore* store,
                                      const ensemble::DecodeOptions& decode);

}  // namespace partsrl::eval

#endif  // PARTSRL_ABLATION_HPP_
