#include <random>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "partsrl/errors.hpp"
#include "partsrl/features.hpp"
#include "partsrl/parse_tree.hpp"

using namespace partsrl;
using corpus::Role;
using features::FeatureRecord;

namespace {

corpus::Sentence PieSentence() {
  return fixtures::MakeSentence({{"20", "CD", "B-NP"},
                                 {"%", "NN", "I-NP", Role::kPredicate, "QUANT"},
                                 {"of", "IN", "B-PP"},
                                 {"the", "DT", "B-NP"},
                                 {"pie", "NN", "I-NP", Role::kArg1, ""}});
}

// Independent rendering of a chunk path: label every token with the start
// of its chunk, keep the first token of each distinct chunk in the span.
std::string OracleBioPath(const corpus::Sentence& s, std::size_t from, std::size_t to) {
  std::vector<std::size_t> chunk_start(s.size());
  for (std::size_t i = 0; i < s.size(); ++i)
    chunk_start[i] = (s[i].bio[0] == 'I') ? chunk_start[i - 1] : i;
  std::string out = to > from ? "right" : "left";
  const std::size_t lo = std::min(from, to), hi = std::max(from, to);
  std::size_t last = static_cast<std::size_t>(-1);
  for (std::size_t i = lo; i <= hi; ++i) {
    if (s[i].bio == "O") {
      std::string w = s[i].word;
      for (auto& c : w) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      out += "_O-" + w;
      last = static_cast<std::size_t>(-1);
      continue;
    }
    if (chunk_start[i] == last) continue;
    last = chunk_start[i];
    const std::string label = s[i].bio.substr(2);
    out += "_" + label;
    if (label == "PP") {
      std::string w = s[chunk_start[i]].word;
      for (auto& c : w) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      out += "_" + w;
    }
  }
  const std::string& pos = s[to].pos;
  if (pos.rfind("NN", 0) == 0) return out + "_NOUN";
  if (pos.rfind("VB", 0) == 0) return out + "_VERB";
  return out + "_" + pos;
}

}  // namespace

TEST_CASE("feature records keep names unique across maps") {
  FeatureRecord r;
  r.SetCategorical("a", "x");
  r.SetNumeric("b", 1.5);
  CHECK_THROWS_AS(r.SetNumeric("a", 1.0), Error);
  CHECK_THROWS_AS(r.SetCategorical("b", "y"), Error);
  FeatureRecord other;
  other.SetCategorical("b", "z");
  CHECK_THROWS_AS(r.Merge(other), Error);
  FeatureRecord extra;
  extra.SetNumeric("c", -2.0);
  r.Merge(extra);
  CHECK(r.size() == 3);
  CHECK(r.Dump() == "a=x\nb=1.5\nc=-2\n");
}

TEST_CASE("window features on the figure sentence") {
  const auto s = fixtures::FigureSentence();
  const auto w0 = features::WindowFeatures(s, 0);
  CHECK(w0.categorical().size() == 15);
  CHECK(w0.categorical().at("word_0") == "Output");
  CHECK(w0.categorical().at("pos_0") == "NN");
  CHECK(w0.categorical().at("bio_0") == "B-NP");
  CHECK(w0.categorical().at("word_-1") == "<PAD>");
  CHECK(w0.categorical().at("word_-2") == "<PAD>");
  CHECK(w0.categorical().at("word_+1") == "in");
  CHECK(w0.categorical().at("word_+2") == "August");

  const auto w5 = features::WindowFeatures(s, 5);
  CHECK(w5.categorical().at("word_-1") == "5");
  CHECK(w5.categorical().at("pos_-1") == "CD");
  CHECK(w5.categorical().at("word_+1") == ".");
  CHECK(w5.categorical().at("word_+2") == "<PAD>");
}

TEST_CASE("window padding count") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const auto s = fixtures::RandomSentence(rng, 0);
    const long n = static_cast<long>(s.size());
    for (std::size_t idx = 0; idx < s.size(); ++idx) {
      const auto rec = features::WindowFeatures(s, idx);
      CHECK(rec.categorical().size() == 15);
      CHECK(rec.numeric().empty());
      const long i = static_cast<long>(idx);
      const long expected = std::max(0L, 2 - i) + std::max(0L, i + 3 - n);
      for (const char* family : {"word_", "pos_", "bio_"}) {
        long pads = 0;
        for (const auto& [name, value] : rec.categorical())
          if (name.rfind(family, 0) == 0 && value == "<PAD>") ++pads;
        CHECK(pads == expected);
      }
    }
  }
  const auto one = fixtures::MakeSentence({{"x", "NN", "B-NP", Role::kPredicate, ""}});
  const auto rec = features::WindowFeatures(one, 0);
  for (const auto& [name, value] : rec.categorical()) {
    if (name.back() == '0') continue;
    CHECK(value == "<PAD>");
  }
}

TEST_CASE("token distance") {
  CHECK(features::TokenDistance(0, 5) == -5);
  CHECK(features::TokenDistance(3, 3) == 0);
  CHECK(features::TokenDistance(4, 1) == 3);

  const auto inst = corpus::ExtractInstance(fixtures::FigureSentence());
  const auto d = features::DistanceFeatures(inst, 0);
  CHECK(d.numeric().at("dist_pred") == -5.0);
  CHECK(d.numeric().at("dist_sup") == -3.0);
  CHECK(d.categorical().at("sup_present") == "yes");

  const auto pie = corpus::ExtractInstance(PieSentence());
  const auto dp = features::DistanceFeatures(pie, 4);
  CHECK(dp.numeric().at("dist_pred") == 3.0);
  CHECK(dp.numeric().at("dist_sup") == 0.0);
  CHECK(dp.categorical().at("sup_present") == "no");
}

TEST_CASE("collapsed chunk paths") {
  CHECK(features::CollapseBioPath(PieSentence(), 1, 4) == "right_NP_PP_of_NP_NOUN");
  CHECK(features::CollapseBioPath(PieSentence(), 4, 1) == "left_NP_PP_of_NP_NOUN");
  CHECK(features::CollapseBioPath(PieSentence(), 0, 1) == "right_NP_NOUN");
  CHECK(features::CollapseBioPath(PieSentence(), 1, 0) == "left_NP_CD");
  CHECK(features::CollapseBioPath(fixtures::FigureSentence(), 5, 0) ==
        "left_NP_PP_in_NP_O-rose_NP_NOUN");
  CHECK(features::CollapseBioPath(fixtures::FigureSentence(), 5, 3) == "left_O-rose_NP_VERB");
  CHECK_THROWS_AS(features::CollapseBioPath(PieSentence(), 2, 2), Error);
}

TEST_CASE("PP head is the chunk's first word even when the span starts inside it") {
  const auto s = fixtures::MakeSentence({{"Because", "IN", "B-PP"},
                                         {"of", "IN", "I-PP"},
                                         {"rain", "NN", "B-NP", Role::kPredicate, ""}});
  CHECK(features::CollapseBioPath(s, 2, 1) == "left_PP_because_NP_IN");
}

TEST_CASE("collapsed paths agree with an independent walk") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const auto s = fixtures::RandomSentence(rng, 0);
    for (std::size_t a = 0; a < s.size(); ++a) {
      for (std::size_t b = 0; b < s.size(); ++b) {
        if (a == b) continue;
        const std::string path = features::CollapseBioPath(s, a, b);
        CHECK(path == OracleBioPath(s, a, b));
        CHECK((path.rfind("right_", 0) == 0) == (b > a));
      }
    }
  }
}

TEST_CASE("single-chunk spans collapse to one label") {
  const auto s = fixtures::MakeSentence({{"the", "DT", "B-NP"},
                                         {"big", "JJ", "I-NP"},
                                         {"prize", "NN", "I-NP", Role::kPredicate, ""}});
  CHECK(features::CollapseBioPath(s, 0, 2) == "right_NP_NOUN");
  CHECK(features::CollapseBioPath(s, 2, 1) == "left_NP_JJ");
}

TEST_CASE("chunk path features around the anchors") {
  const auto s = fixtures::FigureSentence();
  const auto inst = corpus::ExtractInstance(s);
  const auto at_pred = features::BioPathFeatures(s, inst, 5);
  CHECK(at_pred.categorical().at("bio_path_pred") == "<SELF>");
  // The span includes the support verb itself, an O token.
  CHECK(at_pred.categorical().at("bio_path_sup") == "right_O-rose_NP_NOUN");
  const auto at_sup = features::BioPathFeatures(s, inst, 3);
  CHECK(at_sup.categorical().at("bio_path_sup") == "<SELF>");
  const auto pie = PieSentence();
  CHECK(features::BioPathFeatures(pie, corpus::ExtractInstance(pie), 4)
            .categorical()
            .at("bio_path_sup") == "<NONE>");
}

TEST_CASE("path patterns") {
  const auto& p = features::PathPatterns();
  CHECK(p[0].anchor == features::Anchor::kSupport);
  CHECK(p[0].direction == features::Direction::kBefore);
  CHECK(p[0].up_labels == std::vector<std::string>{"VP", "S"});
  CHECK(p[0].down_labels == std::vector<std::string>{"NP"});
  CHECK(p[1].direction == features::Direction::kAfter);
  CHECK(p[1].up_labels == std::vector<std::string>{"VP"});
  CHECK(p[2].anchor == features::Anchor::kPredicate);
  CHECK(p[2].up_labels == std::vector<std::string>{"NP"});
}

TEST_CASE("tree path flags on the worked trees") {
  using Flags = std::array<bool, 3>;
  const auto rose_s = fixtures::RoseSentence();
  const auto rose = tree::AlignLeaves(tree::ParseBracketed(fixtures::kRoseTree), rose_s);
  const auto rose_i = corpus::ExtractInstance(rose_s);
  CHECK(features::Type2PathFlags(rose, rose_i, 1) == Flags{true, false, false});
  // Patterns see labels only: every word of the subject NP shares its path,
  // and the object NP after the verb matches the post-verbal pattern.
  CHECK(features::Type2PathFlags(rose, rose_i, 0) == Flags{true, false, false});
  CHECK(features::Type2PathFlags(rose, rose_i, 2) == Flags{false, false, false});
  CHECK(features::Type2PathFlags(rose, rose_i, 4) == Flags{false, true, false});

  const auto inc_s = fixtures::IncreasedSentence();
  const auto inc = tree::AlignLeaves(tree::ParseBracketed(fixtures::kIncreasedTree), inc_s);
  const auto inc_i = corpus::ExtractInstance(inc_s);
  CHECK(features::Type2PathFlags(inc, inc_i, 3) == Flags{false, true, false});
  // "They" precedes the verb with up [VP, S], down [NP].
  CHECK(features::Type2PathFlags(inc, inc_i, 0) == Flags{true, false, false});

  const auto ind_s = fixtures::MakeSentence({{"the", "DT", "B-NP"},
                                             {"industry", "NN", "I-NP", Role::kArg1, ""},
                                             {"leaders", "NN", "I-NP", Role::kPredicate, "GROUP"}});
  const auto ind =
      tree::AlignLeaves(tree::ParseBracketed("(NP (NP (DT the) (NN industry)) (NN leaders))"), ind_s);
  const auto ind_i = corpus::ExtractInstance(ind_s);
  CHECK(features::Type2PathFlags(ind, ind_i, 1) == Flags{false, false, true});
  const auto rec = features::Type2PathFeatures(ind, ind_i, 1);
  CHECK(rec.categorical().at("tree_path3") == "1");
  CHECK(rec.categorical().at("tree_path1") == "0");
}

TEST_CASE("at most one tree path flag fires") {
  std::mt19937_64 rng(3);
  const std::vector<std::string> phrases = {"S", "NP", "VP", "NP", "VP"};
  for (int trial = 0; trial < 300; ++trial) {
    // Random tree over n leaves built bottom-up by merging neighbours.
    const std::size_t n = 2 + rng() % 6;
    std::vector<std::string> parts;
    std::vector<fixtures::Row> rows;
    for (std::size_t i = 0; i < n; ++i) {
      parts.push_back("(NN w" + std::to_string(i) + ")");
      rows.push_back({"w" + std::to_string(i), "NN", "O"});
    }
    while (parts.size() > 1) {
      const std::size_t at = rng() % (parts.size() - 1);
      const std::size_t width = std::min<std::size_t>(1 + rng() % 3, parts.size() - at);
      std::string merged = "(" + phrases[rng() % phrases.size()];
      for (std::size_t k = 0; k < width; ++k) merged += " " + parts[at + k];
      merged += ")";
      parts.erase(parts.begin() + at, parts.begin() + at + width);
      parts.insert(parts.begin() + at, merged);
    }
    const std::size_t pred = rng() % n;
    rows[pred].func = Role::kPredicate;
    if (rng() % 2) {
      const std::size_t sup = rng() % n;
      if (sup != pred) rows[sup].func = Role::kSupport;
    }
    const auto s = fixtures::MakeSentence(rows);
    const auto t = tree::AlignLeaves(tree::ParseBracketed(parts[0]), s);
    const auto inst = corpus::ExtractInstance(s);
    for (std::size_t idx = 0; idx < n; ++idx) {
      const auto f = features::Type2PathFlags(t, inst, idx);
      CHECK(int(f[0]) + int(f[1]) + int(f[2]) <= 1);
    }
  }
}

TEST_CASE("predicate class features") {
  corpus::Instance inst;
  inst.frame_classes = {"QUANT"};
  const auto rec = features::PredicateClassFeatures(inst, features::Task::kPartitive);
  CHECK(rec.categorical().size() == features::KnownFrameClasses().size());
  for (const auto& [name, value] : rec.categorical())
    CHECK(value == (name == "class_QUANT" ? "1" : "0"));
  CHECK(features::PredicateClassFeatures(inst, features::Task::kPercent).empty());

  inst.frame_classes = {"GROUP", "NOM"};
  const auto two = features::PredicateClassFeatures(inst, features::Task::kPartitive);
  CHECK(two.categorical().at("class_GROUP") == "1");
  CHECK(two.categorical().at("class_NOM") == "1");
  CHECK(two.categorical().at("class_QUANT") == "0");
  CHECK(two.categorical().at("class_OTHER") == "0");

  inst.frame_classes = {"MYSTERY"};
  CHECK(features::PredicateClassFeatures(inst, features::Task::kPartitive)
            .categorical()
            .at("class_OTHER") == "1");
}

TEST_CASE("frame class inventory is known") {
  const auto& known = features::KnownFrameClasses();
  for (const char* cls : {"GROUP", "MERONYM", "PART", "QUANT", "SHARE", "BOOK-CHAPTER"})
    CHECK(std::find(known.begin(), known.end(), cls) != known.end());
}

TEST_CASE("feature groups") {
  using features::Group;
  CHECK(features::GroupOf("word_-1") == Group::kWindow);
  CHECK(features::GroupOf("pos_+2") == Group::kWindow);
  CHECK(features::GroupOf("bio_0") == Group::kWindow);
  CHECK(features::GroupOf("bio_path_pred") == Group::kPath);
  CHECK(features::GroupOf("tree_path2") == Group::kPath);
  CHECK(features::GroupOf("dist_sup") == Group::kDistance);
  CHECK(features::GroupOf("sup_present") == Group::kDistance);
  CHECK(features::GroupOf("emb_head_normal") == Group::kBasicEmbed);
  CHECK(features::GroupOf("emb_fwd3_slash") == Group::kSlashEmbed);
  CHECK(features::GroupOf("class_QUANT") == Group::kClass);
  CHECK_THROWS_AS(features::GroupOf("mystery"), Error);

  CHECK(features::ParseGroupName("embed") ==
        std::vector<Group>{Group::kBasicEmbed, Group::kSlashEmbed});
  CHECK(features::ParseGroupName("basic-embed") == std::vector<Group>{Group::kBasicEmbed});
  CHECK_THROWS_AS(features::ParseGroupName("syntax"), Error);
  for (auto g : features::AllGroups())
    CHECK(features::ParseGroupName(features::GroupName(g)) == std::vector<Group>{g});

  const auto s = fixtures::FigureSentence();
  const auto inst = corpus::ExtractInstance(s);
  FeatureRecord all = features::WindowFeatures(s, 0);
  all.Merge(features::DistanceFeatures(inst, 0));
  all.Merge(features::BioPathFeatures(s, inst, 0));
  const auto window_only = features::FilterGroups(all, {Group::kWindow});
  CHECK(window_only.size() == 15);
  const auto no_window = features::FilterGroups(all, {Group::kDistance, Group::kPath});
  CHECK(no_window.size() == all.size() - 15);
  CHECK(features::FilterGroups(all, features::AllGroups()) == all);
}

TEST_CASE("tasks") {
  CHECK(features::ParseTask("percent") == features::Task::kPercent);
  CHECK(features::ParseTask("partitive") == features::Task::kPartitive);
  CHECK_THROWS_AS(features::ParseTask("other"), Error);
}
