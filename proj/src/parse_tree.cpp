#include "partsrl/parse_tree.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <istream>
#include <sstream>

#include "partsrl/errors.hpp"
#include "partsrl/internal/strings.hpp"

namespace partsrl::tree {

class TreeBuilder {
 public:
  explicit TreeBuilder(std::string_view text) : text_(text) {}

  ParseTree Build() {
    SkipSpace();
    if (pos_ >= text_.size()) Fail("empty input");
    if (text_[pos_] != '(') Fail("expected '('");
    ParseNode(kNoParent);
    SkipSpace();
    if (pos_ < text_.size()) Fail("trailing text after the closing parenthesis");
    Unwrap();
    for (NodeId id = 0; id < tree_.nodes_.size(); ++id) {
      if (tree_.nodes_[id].is_leaf()) tree_.leaves_.push_back(id);
    }
    return std::move(tree_);
  }

 private:
  [[noreturn]] void Fail(const std::string& why) const {
    throw ParseError("tree parse error at offset " + std::to_string(pos_) + ": " + why, 0);
  }

  void SkipSpace() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  std::string_view Atom() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != '(' && text_[pos_] != ')' &&
           !std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    return text_.substr(start, pos_ - start);
  }

  // Precondition: text_[pos_] == '('. Nodes are created in pre-order so that
  // leaves come out left to right.
  NodeId ParseNode(NodeId parent) {
    const std::size_t open = pos_;
    ++pos_;
    const NodeId id = tree_.nodes_.size();
    tree_.nodes_.push_back(Node{});
    tree_.nodes_[id].parent = parent;

    SkipSpace();
    if (pos_ >= text_.size()) Fail("unbalanced parentheses: '(' at offset " +
                                   std::to_string(open) + " is never closed");
    if (text_[pos_] == ')') Fail("empty constituent");
    if (text_[pos_] != '(') tree_.nodes_[id].label = std::string(Atom());
    else if (parent != kNoParent) Fail("constituent without a label");

    std::vector<std::string_view> words;
    while (true) {
      SkipSpace();
      if (pos_ >= text_.size())
        Fail("unbalanced parentheses: '(' at offset " + std::to_string(open) +
             " is never closed");
      const char c = text_[pos_];
      if (c == ')') {
        ++pos_;
        break;
      }
      if (c == '(') {
        if (!words.empty()) Fail("word mixed with constituents");
        const NodeId child = ParseNode(id);
        tree_.nodes_[id].children.push_back(child);
      } else {
        if (!tree_.nodes_[id].children.empty()) Fail("word mixed with constituents");
        words.push_back(Atom());
      }
    }
    Node& node = tree_.nodes_[id];
    if (!words.empty()) {
      if (words.size() > 1) Fail("preterminal '" + node.label + "' has several words");
      node.leaf_word = std::string(words.front());
    } else if (node.children.empty()) {
      Fail("empty constituent '" + node.label + "'");
    }
    return id;
  }

  // "( (S ...) )" -> "(S ...)".
  void Unwrap() {
    while (tree_.nodes_[0].label.empty()) {
      if (tree_.nodes_[0].children.size() != 1)
        throw ParseError("tree parse error: unlabeled root with several children", 0);
      const NodeId keep = tree_.nodes_[0].children.front();
      ParseTree rebuilt;
      std::function<void(NodeId, NodeId)> copy = [&](NodeId src, NodeId parent) {
        const NodeId dst = rebuilt.nodes_.size();
        rebuilt.nodes_.push_back(tree_.nodes_[src]);
        rebuilt.nodes_[dst].parent = parent;
        rebuilt.nodes_[dst].children.clear();
        if (parent != kNoParent) rebuilt.nodes_[parent].children.push_back(dst);
        for (NodeId child : tree_.nodes_[src].children) copy(child, dst);
      };
      copy(keep, kNoParent);
      tree_ = std::move(rebuilt);
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  ParseTree tree_;
};

bool ParseTree::aligned() const {
  return !leaves_.empty() &&
         std::all_of(leaves_.begin(), leaves_.end(),
                     [this](NodeId id) { return nodes_[id].leaf_index.has_value(); });
}

std::string ParseTree::ToString() const {
  if (nodes_.empty()) return {};
  std::string out;
  std::function<void(NodeId)> emit = [&](NodeId id) {
    const Node& n = nodes_[id];
    out.push_back('(');
    out.append(n.label);
    if (n.is_leaf()) {
      out.push_back(' ');
      out.append(n.leaf_word);
    }
    for (NodeId child : n.children) {
      out.push_back(' ');
      emit(child);
    }
    out.push_back(')');
  };
  emit(0);
  return out;
}

bool operator==(const ParseTree& a, const ParseTree& b) {
  if (a.nodes_.size() != b.nodes_.size()) return false;
  for (std::size_t i = 0; i < a.nodes_.size(); ++i) {
    const Node& x = a.nodes_[i];
    const Node& y = b.nodes_[i];
    if (x.label != y.label || x.children != y.children || x.parent != y.parent ||
        x.leaf_word != y.leaf_word || x.leaf_index != y.leaf_index)
      return false;
  }
  return true;
}

ParseTree ParseBracketed(std::string_view text) { return TreeBuilder(text).Build(); }

ParseTree RemoveEmptyElements(const ParseTree& tree) {
  // Post-order: a subtree survives when it has a surviving leaf.
  std::vector<bool> keep(tree.nodes_.size(), false);
  std::function<bool(NodeId)> mark = [&](NodeId id) {
    const Node& n = tree.nodes_[id];
    bool any = false;
    if (n.is_leaf()) {
      any = n.label != "-NONE-";
    } else {
      for (NodeId child : n.children) any = mark(child) || any;
    }
    keep[id] = any;
    return any;
  };
  if (tree.nodes_.empty() || !mark(0))
    throw ValidationError("tree has no overt words after removing empty elements");

  ParseTree out;
  std::function<void(NodeId, NodeId)> copy = [&](NodeId src, NodeId parent) {
    const NodeId dst = out.nodes_.size();
    out.nodes_.push_back(tree.nodes_[src]);
    out.nodes_[dst].parent = parent;
    out.nodes_[dst].children.clear();
    if (parent != kNoParent) out.nodes_[parent].children.push_back(dst);
    for (NodeId child : tree.nodes_[src].children) {
      if (keep[child]) copy(child, dst);
    }
  };
  copy(0, kNoParent);
  for (NodeId id = 0; id < out.nodes_.size(); ++id) {
    if (out.nodes_[id].is_leaf()) out.leaves_.push_back(id);
  }
  return out;
}

namespace {

std::string_view Unescape(std::string_view word) {
  if (word == "-LRB-") return "(";
  if (word == "-RRB-") return ")";
  if (word == "-LCB-") return "{";
  if (word == "-RCB-") return "}";
  if (word == "-LSB-") return "[";
  if (word == "-RSB-") return "]";
  return word;
}

}  // namespace

ParseTree AlignLeaves(ParseTree tree, const corpus::Sentence& sentence) {
  if (tree.leaves_.size() != sentence.size())
    throw AlignmentError("sentence " + std::to_string(sentence.sentence_id) + ": tree has " +
                         std::to_string(tree.leaves_.size()) + " leaves but sentence has " +
                         std::to_string(sentence.size()) + " tokens");
  for (std::size_t k = 0; k < tree.leaves_.size(); ++k) {
    Node& leaf = tree.nodes_[tree.leaves_[k]];
    const std::string& word = sentence[k].word;
    if (leaf.leaf_word != word && Unescape(leaf.leaf_word) != Unescape(word))
      throw AlignmentError("sentence " + std::to_string(sentence.sentence_id) +
                           ": word mismatch at position " + std::to_string(k) + ": tree '" +
                           leaf.leaf_word + "' vs sentence '" + word + "'");
    leaf.leaf_index = k;
  }
  return tree;
}

std::vector<ParseTree> ReadTrees(std::istream& in) {
  std::vector<ParseTree> trees;
  std::string buffer;
  int depth = 0;
  std::string line;
  std::size_t line_no = 0;
  std::size_t start_line = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (buffer.empty() && internal::IsBlank(line)) continue;
    if (buffer.empty()) start_line = line_no;
    for (char c : line) {
      if (c == '(') ++depth;
      else if (c == ')') --depth;
    }
    buffer.append(line);
    buffer.push_back(' ');
    if (depth < 0)
      throw ParseError("line " + std::to_string(line_no) + ": unbalanced ')'", line_no);
    if (depth == 0) {
      try {
        trees.push_back(ParseBracketed(buffer));
      } catch (const ParseError& e) {
        throw ParseError("tree starting at line " + std::to_string(start_line) + ": " +
                             e.what(),
                         start_line);
      }
      buffer.clear();
    }
  }
  if (!buffer.empty())
    throw ParseError("tree starting at line " + std::to_string(start_line) +
                         " is not closed at end of input",
                     start_line);
  return trees;
}

std::vector<ParseTree> ReadTreeFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  try {
    return ReadTrees(in);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what(), e.line());
  }
}

std::string BareLabel(std::string_view label) {
  const std::size_t cut = label.find_first_of("-=", 1);
  return std::string(label.substr(0, cut));
}

TreePath ComputeTreePath(const ParseTree& tree, std::size_t source, std::size_t target) {
  const std::size_t n = tree.leaf_count();
  if (source >= n || target >= n)
    throw Error("tree path: leaf ordinal out of range (" + std::to_string(source) + ", " +
                std::to_string(target) + ") for " + std::to_string(n) + " leaves");
  TreePath path;
  if (source == target) return path;

  auto ancestors = [&](std::size_t ordinal) {
    std::vector<NodeId> chain;
    for (NodeId id = tree.node(tree.leaves()[ordinal]).parent; id != kNoParent;
         id = tree.node(id).parent)
      chain.push_back(id);
    return chain;
  };
  const std::vector<NodeId> up = ancestors(source);
  const std::vector<NodeId> down = ancestors(target);

  // Both chains end at the root; walk back from the root while they agree.
  std::size_t i = up.size();
  std::size_t j = down.size();
  while (i > 0 && j > 0 && up[i - 1] == down[j - 1]) {
    --i;
    --j;
  }
  // up[i] is the LCA; down[0..j) lies strictly below it on the target side.
  for (std::size_t k = 0; k <= i && k < up.size(); ++k)
    path.up_labels.push_back(BareLabel(tree.node(up[k]).label));
  for (std::size_t k = j; k > 0; --k)
    path.down_labels.push_back(BareLabel(tree.node(down[k - 1]).label));
  return path;
}

std::string PathToString(const TreePath& path) {
  std::string out;
  for (const auto& label : path.up_labels) out += "↑" + label;
  for (const auto& label : path.down_labels) out += "↓" + label;
  return out;
}

}  // namespace partsrl::tree
