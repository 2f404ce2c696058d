#ifndef PARTSRL_CORPUS_HPP_
#define PARTSRL_CORPUS_HPP_

// Reader and writer for the extended CoNLL-2000 format used for partitive
// noun annotation. One token per line with six TAB-separated columns:
//
//   WORD  POS  BIO  #  FUNC  FRAME
//
// Blank lines separate sentences. FUNC is one of ARG1, SUP, PRED or empty;
// FRAME holds the predicate's classes, "/"-joined when there are several.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace partsrl::corpus {

enum class Role { kNone, kArg1, kSupport, kPredicate };

std::string_view RoleName(Role role);
// Returns std::nullopt for anything that is not a known FUNC value.
std::optional<Role> ParseRole(std::string_view text);

struct Token {
  std::string word;
  std::string pos;
  std::string bio;
  std::size_t index = 0;
  Role func = Role::kNone;
  std::string frame;

  friend bool operator==(const Token&, const Token&) = default;
};

struct Sentence {
  std::vector<Token> tokens;
  std::size_t sentence_id = 0;

  std::size_t size() const { return tokens.size(); }
  const Token& operator[](std::size_t i) const { return tokens[i]; }

  friend bool operator==(const Sentence&, const Sentence&) = default;
};

// The labeled view of one sentence: where the predicate, its support verbs
// and (when annotated) its ARG1 sit.
struct Instance {
  std::size_t sentence_id = 0;
  std::size_t predicate_index = 0;
  std::vector<std::size_t> support_indices;
  std::optional<std::size_t> arg1_index;
  std::set<std::string> frame_classes;

  friend bool operator==(const Instance&, const Instance&) = default;
};

// True when `tag` is "O" or "B-X"/"I-X" with X a run of uppercase letters.
bool IsWellFormedBio(std::string_view tag);
// Chunk label of a B-/I- tag ("NP" for "I-NP"); empty for "O".
std::string_view ChunkLabel(std::string_view tag);

// Checks every Token/Sentence invariant. Throws ValidationError naming the
// sentence and, where relevant, the token.
void Validate(const Sentence& sentence);

// Parses a whole stream. Throws ParseError (with line number) for lines that
// do not have exactly six columns or carry a non-numeric/misnumbered #
// column, and ValidationError for chunk-tag or role violations.
std::vector<Sentence> ParseConll(std::istream& in);
std::vector<Sentence> ParseConllString(std::string_view text);
std::vector<Sentence> ReadConllFile(const std::string& path);

// Canonical serialization: TAB-separated, one blank line between sentences,
// no trailing blank line.
void WriteConll(std::ostream& out, const std::vector<Sentence>& sentences);
std::string WriteConllString(const std::vector<Sentence>& sentences);

// Collects PRED/SUP/ARG1 positions and the predicate's frame classes.
Instance ExtractInstance(const Sentence& sentence);

std::vector<std::string> SplitFrameClasses(std::string_view frame);

}  // namespace partsrl::corpus

#endif  // PARTSRL_CORPUS_HPP_
