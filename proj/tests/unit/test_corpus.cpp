#include <random>
#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "partsrl/corpus.hpp"
#include "partsrl/errors.hpp"

using namespace partsrl;
using corpus::Role;

TEST_CASE("figure sentence parses into seven tokens") {
  const auto sentences = corpus::ParseConllString(fixtures::kFigureConll);
  REQUIRE(sentences.size() == 1);
  const auto& s = sentences[0];
  CHECK(s.size() == 7);
  CHECK(s.sentence_id == 0);
  CHECK(s[0].word == "Output");
  CHECK(s[0].func == Role::kArg1);
  CHECK(s[2].pos == "NNP");
  CHECK(s[3].func == Role::kSupport);
  CHECK(s[5].func == Role::kPredicate);
  CHECK(s[5].frame == "QUANT");
  CHECK(s[6].bio == "O");
  CHECK(s == fixtures::FigureSentence());
}

TEST_CASE("figure sentence instance") {
  const auto inst = corpus::ExtractInstance(fixtures::FigureSentence());
  CHECK(inst.predicate_index == 5);
  CHECK(inst.support_indices == std::vector<std::size_t>{3});
  REQUIRE(inst.arg1_index.has_value());
  CHECK(*inst.arg1_index == 0);
  CHECK(inst.frame_classes == std::set<std::string>{"QUANT"});
}

TEST_CASE("empty input gives no sentences and empty output") {
  CHECK(corpus::ParseConllString("").empty());
  CHECK(corpus::ParseConllString("\n\n").empty());
  CHECK(corpus::WriteConllString({}).empty());
}

TEST_CASE("single-token sentence with no ARG1") {
  const std::string text = "X\tNN\tB-NP\t0\tPRED\tQUANT\n";
  const auto sentences = corpus::ParseConllString(text);
  REQUIRE(sentences.size() == 1);
  const auto inst = corpus::ExtractInstance(sentences[0]);
  CHECK(inst.predicate_index == 0);
  CHECK_FALSE(inst.arg1_index.has_value());
  CHECK(inst.support_indices.empty());
  CHECK(corpus::WriteConllString(sentences) == text);
}

TEST_CASE("multi-class frames split on slash") {
  auto s = fixtures::FigureSentence();
  s.tokens[5].frame = "QUANT/NOM";
  CHECK(corpus::ExtractInstance(s).frame_classes == std::set<std::string>{"QUANT", "NOM"});
  CHECK(corpus::SplitFrameClasses("") == std::vector<std::string>{});
}

TEST_CASE("writer emits tab-separated lines without a trailing blank line") {
  const std::string out = corpus::WriteConllString({fixtures::FigureSentence()});
  CHECK(out == fixtures::kFigureConll);
  const std::string two =
      corpus::WriteConllString({fixtures::FigureSentence(), fixtures::FigureSentence()});
  CHECK(two == std::string(fixtures::kFigureConll) + "\n" + fixtures::kFigureConll);
}

TEST_CASE("sentence ids follow file order") {
  const std::string text = std::string(fixtures::kFigureConll) + "\n\n\n" +
                           fixtures::kFigureConll + "\n";
  const auto sentences = corpus::ParseConllString(text);
  REQUIRE(sentences.size() == 2);
  CHECK(sentences[0].sentence_id == 0);
  CHECK(sentences[1].sentence_id == 1);
}

TEST_CASE("CRLF input canonicalizes") {
  std::string crlf;
  for (char c : std::string(fixtures::kFigureConll)) {
    if (c == '\n') crlf += '\r';
    crlf += c;
  }
  const auto sentences = corpus::ParseConllString(crlf);
  CHECK(corpus::WriteConllString(sentences) == fixtures::kFigureConll);
}

TEST_CASE("wrong column count reports the line") {
  const std::string text = "Output\tNN\tB-NP\t0\tARG1\t\nin\tIN\tB-PP\t1\t\n";
  try {
    corpus::ParseConllString(text);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("misnumbered token column is a parse error") {
  CHECK_THROWS_AS(corpus::ParseConllString("a\tNN\tB-NP\t1\tPRED\t\n"), ParseError);
  CHECK_THROWS_AS(corpus::ParseConllString("a\tNN\tB-NP\tx\tPRED\t\n"), ParseError);
}

TEST_CASE("unknown role label is a parse error") {
  CHECK_THROWS_AS(corpus::ParseConllString("a\tNN\tB-NP\t0\tARG0\t\n"), ParseError);
}

TEST_CASE("chunk grammar violations") {
  CHECK_THROWS_AS(corpus::ParseConllString("a\tNN\tI-NP\t0\tPRED\t\n"), ValidationError);
  CHECK_THROWS_AS(corpus::ParseConllString("a\tNN\tB-PP\t0\t\t\nb\tNN\tI-NP\t1\tPRED\t\n"),
                  ValidationError);
  CHECK_THROWS_AS(corpus::ParseConllString("a\tNN\tB-np\t0\tPRED\t\n"), ValidationError);
  CHECK_THROWS_AS(corpus::ParseConllString("a\tNN\tX\t0\tPRED\t\n"), ValidationError);
  CHECK_NOTHROW(corpus::ParseConllString("a\tNN\tB-NP\t0\t\t\nb\tNN\tI-NP\t1\tPRED\t\n"));
}

TEST_CASE("predicate and ARG1 counts") {
  CHECK_THROWS_AS(corpus::ParseConllString("a\tNN\tO\t0\t\t\n"), ValidationError);
  CHECK_THROWS_AS(corpus::ParseConllString("a\tNN\tO\t0\tPRED\t\nb\tNN\tO\t1\tPRED\t\n"),
                  ValidationError);
  CHECK_THROWS_AS(corpus::ParseConllString("a\tNN\tO\t0\tPRED\t\nb\tNN\tO\t1\tARG1\t\n"
                                           "c\tNN\tO\t2\tARG1\t\n"),
                  ValidationError);
  try {
    corpus::ParseConllString(std::string(fixtures::kFigureConll) + "\na\tNN\tO\t0\t\t\n");
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("sentence 1") != std::string::npos);
  }
}

TEST_CASE("BIO tag grammar") {
  CHECK(corpus::IsWellFormedBio("O"));
  CHECK(corpus::IsWellFormedBio("B-NP"));
  CHECK(corpus::IsWellFormedBio("I-ADJP"));
  CHECK_FALSE(corpus::IsWellFormedBio("B-"));
  CHECK_FALSE(corpus::IsWellFormedBio("E-NP"));
  CHECK_FALSE(corpus::IsWellFormedBio("B-N1"));
  CHECK_FALSE(corpus::IsWellFormedBio(""));
  CHECK(corpus::ChunkLabel("I-PP") == "PP");
  CHECK(corpus::ChunkLabel("O").empty());
}

TEST_CASE("round trip over random valid sentences") {
  std::mt19937_64 rng(20240611);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<corpus::Sentence> sentences;
    for (std::size_t i = 0; i < 100; ++i) sentences.push_back(fixtures::RandomSentence(rng, i));
    for (const auto& s : sentences) CHECK_NOTHROW(corpus::Validate(s));
    const std::string text = corpus::WriteConllString(sentences);
    const auto parsed = corpus::ParseConllString(text);
    CHECK(parsed == sentences);
    CHECK(corpus::WriteConllString(parsed) == text);
    for (const auto& s : parsed) CHECK(corpus::ExtractInstance(s) == corpus::ExtractInstance(s));
  }
}

TEST_CASE("instance indices point at their roles") {
  std::mt19937_64 rng(7);
  for (std::size_t i = 0; i < 200; ++i) {
    const auto s = fixtures::RandomSentence(rng, i);
    const auto inst = corpus::ExtractInstance(s);
    CHECK(inst.sentence_id == i);
    CHECK(s[inst.predicate_index].func == Role::kPredicate);
    for (auto sup : inst.support_indices) CHECK(s[sup].func == Role::kSupport);
    if (inst.arg1_index) CHECK(s[*inst.arg1_index].func == Role::kArg1);
  }
}

TEST_CASE("missing file is an error") {
  CHECK_THROWS_AS(corpus::ReadConllFile("/nonexistent/file.conll"), Error);
}
