#ifndef PARTSRL_PARSE_TREE_HPP_
#define PARTSRL_PARSE_TREE_HPP_

// Bracketed constituency trees, e.g.
//
//   (S (NP (DT The) (NN price)) (VP (VBD rose) (NP (CD five) (NN percent))))
//
// A preterminal "(NN price)" is stored as a single leaf node carrying both
// the POS label and the word. Nodes live in one arena vector; node 0 is the
// root.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "partsrl/corpus.hpp"

namespace partsrl::tree {

using NodeId = std::size_t;
inline constexpr NodeId kNoParent = static_cast<NodeId>(-1);

struct Node {
  std::string label;
  std::vector<NodeId> children;
  NodeId parent = kNoParent;
  // Leaves only.
  std::string leaf_word;
  std::optional<std::size_t> leaf_index;

  bool is_leaf() const { return children.empty(); }
};

class ParseTree {
 public:
  ParseTree() = default;

  const Node& node(NodeId id) const { return nodes_.at(id); }
  const Node& root() const { return nodes_.at(0); }
  std::size_t node_count() const { return nodes_.size(); }
  // Leaf node ids in left-to-right order.
  const std::vector<NodeId>& leaves() const { return leaves_; }
  std::size_t leaf_count() const { return leaves_.size(); }
  bool aligned() const;

  // Canonical single-line rendering; ParseBracketed(ToString()) == *this.
  std::string ToString() const;

  // Structural equality (labels, words, shape, leaf indices).
  friend bool operator==(const ParseTree& a, const ParseTree& b);

 private:
  friend class TreeBuilder;
  friend ParseTree AlignLeaves(ParseTree, const corpus::Sentence&);
  friend ParseTree RemoveEmptyElements(const ParseTree&);

  std::vector<Node> nodes_;
  std::vector<NodeId> leaves_;
};

// Throws ParseError (line() == 0) naming the character offset of the fault.
// A PTB-style unlabeled wrapper "( (S ...) )" is unwrapped to its child.
ParseTree ParseBracketed(std::string_view text);

// Drops -NONE- preterminals (traces, empty complementizers) and any
// constituent left without children. Throws if nothing remains.
ParseTree RemoveEmptyElements(const ParseTree& tree);

// Assigns leaf_index 0..n-1 left to right after checking that the leaves
// spell the sentence. PTB bracket escapes (-LRB- for "(" and so on) match
// their literal counterparts. Throws AlignmentError.
ParseTree AlignLeaves(ParseTree tree, const corpus::Sentence& sentence);

// Reads one tree per line, or one per blank-line-separated block when a tree
// spans several lines. Trees are delimited by balanced parentheses.
std::vector<ParseTree> ReadTrees(std::istream& in);
std::vector<ParseTree> ReadTreeFile(const std::string& path);

// Label used for path matching: functional tags and indices are cut at the
// first '-' or '=' after the first character ("NP-SBJ-1" -> "NP").
std::string BareLabel(std::string_view label);

struct TreePath {
  // From the source leaf's parent up to and including the lowest common
  // ancestor.
  std::vector<std::string> up_labels;
  // From the LCA's child on the target side down to the target's parent.
  std::vector<std::string> down_labels;

  friend bool operator==(const TreePath&, const TreePath&) = default;
};

// Path between two leaves, addressed by left-to-right leaf ordinal. Leaves
// (POS preterminals) never appear in the label lists. Throws Error when an
// ordinal is out of range.
TreePath ComputeTreePath(const ParseTree& tree, std::size_t source, std::size_t target);

// Arrow rendering, e.g. "↑VP↑S↓NP".
std::string PathToString(const TreePath& path);

}  // namespace partsrl::tree

#endif  // PARTSRL_PARSE_TREE_HPP_
