#ifndef PARTSRL_TESTS_FIXTURES_HPP_
#define PARTSRL_TESTS_FIXTURES_HPP_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "partsrl/corpus.hpp"

namespace fixtures {

// "Output in August rose 5 percent ." with its annotation.
inline const char* kFigureConll =
    "Output\tNN\tB-NP\t0\tARG1\t\n"
    "in\tIN\tB-PP\t1\t\t\n"
    "August\tNNP\tB-NP\t2\t\t\n"
    "rose\tVBD\tO\t3\tSUP\t\n"
    "5\tCD\tB-NP\t4\t\t\n"
    "percent\tNN\tI-NP\t5\tPRED\tQUANT\n"
    ".\t.\tO\t6\t\t\n";

inline const char* kRoseTree =
    "(S (NP (DT The) (NN price)) (VP (VBD rose) (NP (CD five) (NN percent))))";
inline const char* kIncreasedTree =
    "(S (NP (PRP They)) (VP (VBD increased) (NP (DT the) (NN price)) (NP (CD five) (NN "
    "percent))))";

struct Row {
  std::string word, pos, bio;
  partsrl::corpus::Role func = partsrl::corpus::Role::kNone;
  std::string frame;
};

inline partsrl::corpus::Sentence MakeSentence(const std::vector<Row>& rows,
                                              std::size_t sentence_id = 0) {
  partsrl::corpus::Sentence s;
  s.sentence_id = sentence_id;
  for (const auto& r : rows) {
    partsrl::corpus::Token t;
    t.word = r.word;
    t.pos = r.pos;
    t.bio = r.bio;
    t.index = s.tokens.size();
    t.func = r.func;
    t.frame = r.frame;
    s.tokens.push_back(t);
  }
  return s;
}

inline partsrl::corpus::Sentence FigureSentence() {
  using partsrl::corpus::Role;
  return MakeSentence({{"Output", "NN", "B-NP", Role::kArg1, ""},
                       {"in", "IN", "B-PP"},
                       {"August", "NNP", "B-NP"},
                       {"rose", "VBD", "O", Role::kSupport, ""},
                       {"5", "CD", "B-NP"},
                       {"percent", "NN", "I-NP", Role::kPredicate, "QUANT"},
                       {".", ".", "O"}});
}

inline partsrl::corpus::Sentence RoseSentence() {
  using partsrl::corpus::Role;
  return MakeSentence({{"The", "DT", "B-NP"},
                       {"price", "NN", "I-NP", Role::kArg1, ""},
                       {"rose", "VBD", "O", Role::kSupport, ""},
                       {"five", "CD", "B-NP"},
                       {"percent", "NN", "I-NP", Role::kPredicate, "QUANT"}});
}

inline partsrl::corpus::Sentence IncreasedSentence() {
  using partsrl::corpus::Role;
  return MakeSentence({{"They", "PRP", "B-NP"},
                       {"increased", "VBD", "O", Role::kSupport, ""},
                       {"the", "DT", "B-NP"},
                       {"price", "NN", "I-NP", Role::kArg1, ""},
                       {"five", "CD", "B-NP"},
                       {"percent", "NN", "I-NP", Role::kPredicate, "QUANT"}});
}

// A random sentence satisfying every corpus invariant: well-formed chunk
// runs, exactly one PRED, at most one ARG1, any number of SUP tokens.
inline partsrl::corpus::Sentence RandomSentence(std::mt19937_64& rng, std::size_t sentence_id) {
  using partsrl::corpus::Role;
  static const std::vector<std::string> kWords = {"price", "rose", "5",     "%",   "of",
                                                  "the",   "Exxon", "Mobil", "Corp.", ",",
                                                  "said",  "a",     "group", "ünï"};
  static const std::vector<std::string> kPos = {"NN", "NNP", "VBD", "IN", "DT", "CD", ","};
  static const std::vector<std::string> kChunks = {"NP", "PP", "VP", "ADJP"};
  static const std::vector<std::string> kFrames = {"QUANT", "GROUP", "QUANT/NOM", "",
                                                   "PART"};
  const std::size_t n = 1 + rng() % 12;
  std::vector<Row> rows(n);
  std::string chunk;
  for (std::size_t i = 0; i < n; ++i) {
    rows[i].word = kWords[rng() % kWords.size()];
    rows[i].pos = kPos[rng() % kPos.size()];
    const auto r = rng() % 3;
    if (r == 0 || (r == 1 && chunk.empty())) {
      rows[i].bio = "O";
      chunk.clear();
    } else if (r == 1) {
      rows[i].bio = "I-" + chunk;
    } else {
      chunk = kChunks[rng() % kChunks.size()];
      rows[i].bio = "B-" + chunk;
    }
  }
  const std::size_t pred = rng() % n;
  rows[pred].func = Role::kPredicate;
  rows[pred].frame = kFrames[rng() % kFrames.size()];
  if (n > 1 && rng() % 4 != 0) {
    std::size_t arg1 = rng() % n;
    if (arg1 != pred) rows[arg1].func = Role::kArg1;
  }
  for (std::size_t i = 0; i < n; ++i)
    if (rows[i].func == Role::kNone && rng() % 6 == 0) rows[i].func = Role::kSupport;
  return MakeSentence(rows, sentence_id);
}

}  // namespace fixtures

#endif  // PARTSRL_TESTS_FIXTURES_HPP_
