#include "partsrl/corpus.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "partsrl/errors.hpp"
#include "partsrl/internal/strings.hpp"

namespace partsrl::corpus {

namespace {

constexpr std::size_t kColumns = 6;

std::string SentenceTag(const Sentence& s) {
  return "sentence " + std::to_string(s.sentence_id);
}

// Validates and appends a finished block of token lines.
void FinishSentence(std::vector<Token>& pending, std::vector<Sentence>& out) {
  if (pending.empty()) return;
  Sentence sentence;
  sentence.tokens = std::move(pending);
  sentence.sentence_id = out.size();
  pending.clear();
  Validate(sentence);
  out.push_back(std::move(sentence));
}

}  // namespace

std::string_view RoleName(Role role) {
  switch (role) {
    case Role::kArg1: return "ARG1";
    case Role::kSupport: return "SUP";
    case Role::kPredicate: return "PRED";
    case Role::kNone: break;
  }
  return "";
}

std::optional<Role> ParseRole(std::string_view text) {
  if (text.empty()) return Role::kNone;
  if (text == "ARG1") return Role::kArg1;
  if (text == "SUP") return Role::kSupport;
  if (text == "PRED") return Role::kPredicate;
  return std::nullopt;
}

bool IsWellFormedBio(std::string_view tag) {
  if (tag == "O") return true;
  if (tag.size() < 3 || (tag[0] != 'B' && tag[0] != 'I') || tag[1] != '-')
    return false;
  for (std::size_t i = 2; i < tag.size(); ++i) {
    if (tag[i] < 'A' || tag[i] > 'Z') return false;
  }
  return true;
}

std::string_view ChunkLabel(std::string_view tag) {
  if (tag.size() < 3) return {};
  return tag.substr(2);
}

void Validate(const Sentence& sentence) {
  if (sentence.tokens.empty())
    throw ValidationError(SentenceTag(sentence) + ": empty sentence");
  std::size_t predicates = 0;
  std::size_t arg1s = 0;
  for (std::size_t i = 0; i < sentence.size(); ++i) {
    const Token& tok = sentence[i];
    const std::string where =
        SentenceTag(sentence) + ", token " + std::to_string(i);
    if (tok.index != i)
      throw ValidationError(where + ": token number " + std::to_string(tok.index) +
                            " out of sequence");
    if (tok.word.empty()) throw ValidationError(where + ": empty word");
    if (!IsWellFormedBio(tok.bio))
      throw ValidationError(where + ": malformed chunk tag '" + tok.bio + "'");
    if (tok.bio[0] == 'I') {
      const bool continues =
          i > 0 && sentence[i - 1].bio != "O" &&
          ChunkLabel(sentence[i - 1].bio) == ChunkLabel(tok.bio);
      if (!continues)
        throw ValidationError(where + ": '" + tok.bio +
                              "' does not continue a chunk of the same type");
    }
    if (tok.func == Role::kPredicate) ++predicates;
    if (tok.func == Role::kArg1) ++arg1s;
  }
  if (predicates != 1)
    throw ValidationError(SentenceTag(sentence) + ": expected exactly one PRED token, found " +
                          std::to_string(predicates));
  if (arg1s > 1)
    throw ValidationError(SentenceTag(sentence) + ": more than one ARG1 token (" +
                          std::to_string(arg1s) + ")");
}

std::vector<Sentence> ParseConll(std::istream& in) {
  std::vector<Sentence> sentences;
  std::vector<Token> pending;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = internal::StripCr(raw);
    if (internal::IsBlank(line)) {
      FinishSentence(pending, sentences);
      continue;
    }
    const auto fields = internal::Split(line, '\t');
    if (fields.size() != kColumns)
      throw ParseError("line " + std::to_string(line_no) + ": expected " +
                           std::to_string(kColumns) + " tab-separated columns, found " +
                           std::to_string(fields.size()),
                       line_no);
    const auto number = internal::ParseInt<std::size_t>(fields[3]);
    if (!number)
      throw ParseError("line " + std::to_string(line_no) + ": token number '" +
                           std::string(fields[3]) + "' is not a non-negative integer",
                       line_no);
    const auto role = ParseRole(fields[4]);
    if (!role)
      throw ParseError("line " + std::to_string(line_no) + ": unknown role label '" +
                           std::string(fields[4]) + "'",
                       line_no);
    if (*number != pending.size())
      throw ParseError("line " + std::to_string(line_no) + ": token number " +
                           std::to_string(*number) + " but expected " +
                           std::to_string(pending.size()),
                       line_no);
    Token tok;
    tok.word = std::string(fields[0]);
    tok.pos = std::string(fields[1]);
    tok.bio = std::string(fields[2]);
    tok.index = *number;
    tok.func = *role;
    tok.frame = std::string(fields[5]);
    pending.push_back(std::move(tok));
  }
  FinishSentence(pending, sentences);
  return sentences;
}

std::vector<Sentence> ParseConllString(std::string_view text) {
  std::istringstream in{std::string(text)};
  return ParseConll(in);
}

std::vector<Sentence> ReadConllFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  try {
    return ParseConll(in);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what(), e.line());
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

void WriteConll(std::ostream& out, const std::vector<Sentence>& sentences) {
  bool first = true;
  for (const Sentence& sentence : sentences) {
    if (!first) out << '\n';
    first = false;
    for (const Token& tok : sentence.tokens) {
      out << tok.word << '\t' << tok.pos << '\t' << tok.bio << '\t' << tok.index
          << '\t' << RoleName(tok.func) << '\t' << tok.frame << '\n';
    }
  }
}

std::string WriteConllString(const std::vector<Sentence>& sentences) {
  std::ostringstream out;
  WriteConll(out, sentences);
  return out.str();
}

std::vector<std::string> SplitFrameClasses(std::string_view frame) {
  std::vector<std::string> classes;
  if (frame.empty()) return classes;
  for (std::string_view part : internal::Split(frame, '/')) {
    if (!part.empty()) classes.emplace_back(part);
  }
  return classes;
}

Instance ExtractInstance(const Sentence& sentence) {
  Instance inst;
  inst.sentence_id = sentence.sentence_id;
  for (const Token& tok : sentence.tokens) {
    switch (tok.func) {
      case Role::kPredicate: {
        inst.predicate_index = tok.index;
        for (auto& cls : SplitFrameClasses(tok.frame)) inst.frame_classes.insert(cls);
        break;
      }
      case Role::kSupport: inst.support_indices.push_back(tok.index); break;
      case Role::kArg1: inst.arg1_index = tok.index; break;
      case Role::kNone: break;
    }
  }
  return inst;
}

}  // namespace partsrl::corpus
