#ifndef PARTSRL_SYNTH_HPP_
#define PARTSRL_SYNTH_HPP_

// Seeded synthetic corpus: annotated sentences with matching parse trees
// built from a handful of templates ("The price rose 5 percent .",
// "They increased the cost 7 percent .", "12 % of the revenue fell ."),
// optionally wrapped in distractor clauses. ARG1 is always recoverable from
// the tree path or chunk path to the predicate or support verb.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "partsrl/corpus.hpp"
#include "partsrl/embeddings.hpp"
#include "partsrl/features.hpp"
#include "partsrl/parse_tree.hpp"

namespace partsrl::synth {

struct Options {
  std::size_t sentences = 600;
  std::uint64_t seed = 1;
  features::Task task = features::Task::kPercent;
};

struct Corpus {
  std::vector<corpus::Sentence> sentences;
  std::vector<tree::ParseTree> trees;
};

Corpus Generate(const Options& options);

// One tree per line.
void WriteTrees(std::ostream& out, const std::vector<tree::ParseTree>& trees);

// Vectors for every word the generator can emit (lowercased). Words of the
// same kind (measured nouns, bystander nouns, verbs, ...) share a random
// center plus per-word noise.
std::vector<std::pair<std::string, embed::Vector>> LexiconVectors(std::uint64_t seed,
                                                                  std::size_t dimension);
// "count dim" header, then "word v1 ... vd" lines.
void WriteVectors(std::ostream& out,
                  const std::vector<std::pair<std::string, embed::Vector>>& vectors);
embed::VectorStore MakeStore(const std::vector<std::pair<std::string, embed::Vector>>& vectors,
                             std::size_t dimension);

}  // namespace partsrl::synth

#endif  // PARTSRL_SYNTH_HPP_
