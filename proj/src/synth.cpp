#include "partsrl/synth.hpp"

#include <array>
#include <cctype>
#include <ostream>
#include <random>
#include <string_view>

#include "partsrl/internal/strings.hpp"

namespace partsrl::synth {

namespace {

using corpus::Role;
using Rng = std::mt19937_64;

constexpr std::array<std::string_view, 20> kMeasured = {
    "price",  "index",  "output",   "revenue",    "profit",  "sales",   "volume",
    "rate",   "cost",   "demand",   "supply",     "income",  "spending", "production",
    "exports", "earnings", "value", "yield",      "debt",    "inventory"};
constexpr std::array<std::string_view, 6> kAdjectives = {"overall", "average", "total",
                                                         "annual",  "net",     "quarterly"};
constexpr std::array<std::string_view, 10> kIntransitive = {
    "rose", "fell", "climbed", "dropped", "jumped", "slipped", "gained", "declined", "grew",
    "eased"};
constexpr std::array<std::string_view, 6> kTransitive = {"increased", "raised", "cut",
                                                         "lowered",   "boosted", "reduced"};
constexpr std::array<std::string_view, 6> kFirms = {"company", "government", "bank",
                                                    "firm",    "agency",     "utility"};
constexpr std::array<std::string_view, 5> kSpeakers = {"analysts", "officials", "traders",
                                                       "economists", "executives"};
constexpr std::array<std::string_view, 4> kReport = {"said", "reported", "noted", "estimated"};
constexpr std::array<std::string_view, 12> kMonths = {
    "January", "February", "March",     "April",   "May",      "June",
    "July",    "August",   "September", "October", "November", "December"};

struct PartitivePred {
  std::string_view word;
  std::string_view frame;
};
constexpr std::array<PartitivePred, 9> kOfPreds = {{{"group", "GROUP"},
                                                    {"set", "GROUP"},
                                                    {"part", "PART"},
                                                    {"portion", "PART"},
                                                    {"half", "PART/QUANT"},
                                                    {"number", "QUANT"},
                                                    {"amount", "QUANT"},
                                                    {"share", "SHARE"},
                                                    {"majority", "SHARE"}}};
constexpr std::array<std::string_view, 6> kMembers = {"students", "workers", "voters",
                                                      "investors", "drivers", "members"};
constexpr std::array<std::string_view, 6> kWholes = {"car",   "truck",   "house",
                                                     "boat",  "machine", "building"};
constexpr std::array<std::string_view, 6> kParts = {"roof", "door", "wheel",
                                                    "engine", "top", "window"};
constexpr std::array<std::string_view, 5> kEvents = {"arrived", "left", "collapsed", "waited",
                                                     "failed"};
constexpr std::array<std::string_view, 3> kStakes = {"stake", "interest", "share"};
constexpr std::array<std::string_view, 3> kAcquire = {"bought", "took", "sold"};

template <typename Array>
std::string_view Pick(Rng& rng, const Array& items) {
  return items[rng() % items.size()];
}

bool Coin(Rng& rng, unsigned percent) { return rng() % 100 < percent; }

std::string Capitalize(std::string_view word) {
  std::string out(word);
  if (!out.empty()) out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
  return out;
}

// Emits tokens and the bracketed tree side by side.
class Builder {
 public:
  void Open(std::string_view label) {
    tree_ += "(";
    tree_ += label;
  }
  void Close() { tree_ += ")"; }
  void Leaf(std::string_view pos, std::string_view word, std::string_view bio,
            Role role = Role::kNone, std::string_view frame = "") {
    std::string surface(word);
    if (tokens_.empty()) surface = Capitalize(word);
    tree_ += " (";
    tree_ += pos;
    tree_ += " ";
    tree_ += surface;
    tree_ += ")";
    corpus::Token tok;
    tok.word = std::move(surface);
    tok.pos = std::string(pos);
    tok.bio = std::string(bio);
    tok.index = tokens_.size();
    tok.func = role;
    tok.frame = std::string(frame);
    tokens_.push_back(std::move(tok));
  }
  // A plain noun phrase: optional determiner and adjective, then the head.
  void SimpleNp(Rng& rng, std::string_view head, std::string_view pos, Role role,
                bool determiner = true) {
    Open("NP");
    bool first = true;
    if (determiner) {
      Leaf("DT", "the", "B-NP");
      first = false;
    }
    if (Coin(rng, 30)) {
      Leaf("JJ", Pick(rng, kAdjectives), first ? "B-NP" : "I-NP");
      first = false;
    }
    Leaf(pos, head, first ? "B-NP" : "I-NP", role);
    Close();
  }
  void PercentNp(Rng& rng) {
    Open("NP");
    Leaf("CD", std::to_string(1 + rng() % 60), "B-NP");
    Leaf("NN", Coin(rng, 50) ? "percent" : "%", "I-NP", Role::kPredicate, "QUANT");
    Close();
  }

  const std::string& tree() const { return tree_; }
  std::vector<corpus::Token>& tokens() { return tokens_; }

 private:
  std::string tree_;
  std::vector<corpus::Token> tokens_;
};

// Clause bodies: children of an S node.

// "The price rose 5 percent": support verb after ARG1.
void RoseClause(Builder& b, Rng& rng) {
  b.SimpleNp(rng, Pick(rng, kMeasured), "NN", Role::kArg1);
  b.Open("VP");
  b.Leaf("VBD", Pick(rng, kIntransitive), "O", Role::kSupport);
  b.PercentNp(rng);
  b.Close();
}

// "They increased the price 5 percent": support verb before ARG1.
void IncreasedClause(Builder& b, Rng& rng) {
  if (Coin(rng, 50)) {
    b.Open("NP");
    b.Leaf("PRP", Coin(rng, 50) ? "they" : "it", "B-NP");
    b.Close();
  } else {
    b.SimpleNp(rng, Pick(rng, kFirms), "NN", Role::kNone);
  }
  b.Open("VP");
  b.Leaf("VBD", Pick(rng, kTransitive), "O", Role::kSupport);
  b.SimpleNp(rng, Pick(rng, kMeasured), "NN", Role::kArg1);
  b.PercentNp(rng);
  b.Close();
}

// "5 % of the price fell": no support verb, ARG1 in the of-phrase.
void OfClause(Builder& b, Rng& rng) {
  b.Open("NP");
  b.PercentNp(rng);
  b.Open("PP");
  b.Leaf("IN", "of", "B-PP");
  b.SimpleNp(rng, Pick(rng, kMeasured), "NN", Role::kArg1);
  b.Close();
  b.Close();
  b.Open("VP");
  b.Leaf("VBD", Pick(rng, kIntransitive), "O");
  b.Close();
}

// "A group of students arrived".
void GroupOfClause(Builder& b, Rng& rng) {
  const auto& pred = kOfPreds[rng() % kOfPreds.size()];
  b.Open("NP");
  b.Open("NP");
  b.Leaf("DT", "a", "B-NP");
  b.Leaf("NN", pred.word, "I-NP", Role::kPredicate, pred.frame);
  b.Close();
  b.Open("PP");
  b.Leaf("IN", "of", "B-PP");
  b.SimpleNp(rng, Pick(rng, kMembers), "NNS", Role::kArg1, Coin(rng, 50));
  b.Close();
  b.Close();
  b.Open("VP");
  b.Leaf("VBD", Pick(rng, kEvents), "O");
  b.Close();
}

// "The car roof collapsed": the whole is a prenominal modifier.
void CompoundClause(Builder& b, Rng& rng) {
  b.Open("NP");
  b.Open("NP");
  b.Leaf("DT", "the", "B-NP");
  b.Leaf("NN", Pick(rng, kWholes), "I-NP", Role::kArg1);
  b.Close();
  b.Leaf("NN", Pick(rng, kParts), "I-NP", Role::kPredicate, "MERONYM");
  b.Close();
  b.Open("VP");
  b.Leaf("VBD", Pick(rng, kEvents), "O");
  b.Close();
}

// "The bank bought a stake in the company".
void StakeClause(Builder& b, Rng& rng) {
  b.SimpleNp(rng, Pick(rng, kFirms), "NN", Role::kNone);
  b.Open("VP");
  b.Leaf("VBD", Pick(rng, kAcquire), "O", Role::kSupport);
  b.Open("NP");
  b.Open("NP");
  b.Leaf("DT", "a", "B-NP");
  b.Leaf("NN", Pick(rng, kStakes), "I-NP", Role::kPredicate, "SHARE");
  b.Close();
  b.Open("PP");
  b.Leaf("IN", "in", "B-PP");
  b.SimpleNp(rng, Pick(rng, kFirms), "NN", Role::kArg1);
  b.Close();
  b.Close();
  b.Close();
}

using Clause = void (*)(Builder&, Rng&);

void Wrap(Builder& b, Rng& rng, Clause clause) {
  b.Open("S");
  switch (rng() % 4) {
    case 0:
      clause(b, rng);
      break;
    case 1:  // "In August , ..."
      b.Open("PP");
      b.Leaf("IN", "in", "B-PP");
      b.Open("NP");
      b.Leaf("NNP", Pick(rng, kMonths), "B-NP");
      b.Close();
      b.Close();
      b.Leaf(",", ",", "O");
      clause(b, rng);
      break;
    case 2:  // "... , analysts said"
      b.Open("S");
      clause(b, rng);
      b.Close();
      b.Leaf(",", ",", "O");
      b.Open("NP");
      b.Leaf("NNS", Pick(rng, kSpeakers), "B-NP");
      b.Close();
      b.Open("VP");
      b.Leaf("VBD", Pick(rng, kReport), "O");
      b.Close();
      break;
    default:  // "The agency said ..."
      b.SimpleNp(rng, Pick(rng, kFirms), "NN", Role::kNone);
      b.Open("VP");
      b.Leaf("VBD", Pick(rng, kReport), "O");
      b.Open("SBAR");
      b.Open("S");
      clause(b, rng);
      b.Close();
      b.Close();
      b.Close();
      break;
  }
  b.Leaf(".", ".", "O");
  b.Close();
}

}  // namespace

Corpus Generate(const Options& options) {
  static constexpr std::array<Clause, 3> kPercentClauses = {RoseClause, IncreasedClause,
                                                            OfClause};
  static constexpr std::array<Clause, 3> kPartitiveClauses = {GroupOfClause, CompoundClause,
                                                              StakeClause};
  const auto& clauses =
      options.task == features::Task::kPercent ? kPercentClauses : kPartitiveClauses;
  Rng rng(options.seed);
  Corpus out;
  for (std::size_t i = 0; i < options.sentences; ++i) {
    Builder b;
    Wrap(b, rng, clauses[rng() % clauses.size()]);
    corpus::Sentence sentence;
    sentence.tokens = std::move(b.tokens());
    sentence.sentence_id = i;
    corpus::Validate(sentence);
    out.trees.push_back(tree::AlignLeaves(tree::ParseBracketed(b.tree()), sentence));
    out.sentences.push_back(std::move(sentence));
  }
  return out;
}

void WriteTrees(std::ostream& out, const std::vector<tree::ParseTree>& trees) {
  for (const auto& t : trees) out << t.ToString() << '\n';
}

std::vector<std::pair<std::string, embed::Vector>> LexiconVectors(std::uint64_t seed,
                                                                  std::size_t dimension) {
  Rng rng(seed);
  auto uniform = [&rng] {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0;
  };
  std::vector<std::pair<std::string, embed::Vector>> out;
  auto add_group = [&](auto words) {
    embed::Vector center(dimension);
    for (auto& c : center) c = uniform();
    for (std::string_view w : words) {
      embed::Vector v = center;
      for (auto& x : v) x += 0.3 * uniform();
      out.emplace_back(internal::ToLower(w), std::move(v));
    }
  };
  add_group(kMeasured);
  add_group(kAdjectives);
  add_group(kIntransitive);
  add_group(kTransitive);
  add_group(kFirms);
  add_group(kSpeakers);
  add_group(kReport);
  add_group(kMonths);
  std::vector<std::string_view> of_preds;
  for (const auto& p : kOfPreds) of_preds.push_back(p.word);
  add_group(of_preds);
  add_group(kMembers);
  add_group(kWholes);
  add_group(kParts);
  add_group(kEvents);
  add_group(std::array<std::string_view, 2>{"stake", "interest"});
  add_group(kAcquire);
  add_group(std::array<std::string_view, 5>{"the", "a", "they", "it", "of"});
  add_group(std::array<std::string_view, 2>{"percent", "%"});
  add_group(std::array<std::string_view, 3>{"in", ",", "."});
  std::vector<std::string> numbers;
  for (int n = 1; n <= 60; ++n) numbers.push_back(std::to_string(n));
  add_group(numbers);
  return out;
}

void WriteVectors(std::ostream& out,
                  const std::vector<std::pair<std::string, embed::Vector>>& vectors) {
  const std::size_t dim = vectors.empty() ? 0 : vectors.front().second.size();
  out << vectors.size() << ' ' << dim << '\n';
  for (const auto& [word, vec] : vectors) {
    out << word;
    for (double x : vec) out << ' ' << internal::FormatDouble(x);
    out << '\n';
  }
}

embed::VectorStore MakeStore(const std::vector<std::pair<std::string, embed::Vector>>& vectors,
                             std::size_t dimension) {
  embed::VectorStore store(dimension);
  for (const auto& [word, vec] : vectors) store.Add(word, vec);
  return store;
}

}  // namespace partsrl::synth
