#ifndef PARTSRL_EMBEDDINGS_HPP_
#define PARTSRL_EMBEDDINGS_HPP_

// Embedding-similarity features. For a candidate token we build five n-grams
// (backward trigram and bigram, the head word, forward bigram and trigram)
// and embed each one two ways: NORMAL is the mean vector of the n-gram's
// words, SLASH is the mean vector of every other word in the sentence. Each
// of the ten embeddings is compared, by cosine similarity, with the average
// of the same embedding over the gold ARG1s of the training corpus.

#include <array>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "partsrl/corpus.hpp"
#include "partsrl/features.hpp"

namespace partsrl::embed {

using Vector = std::vector<double>;

class VectorStore {
 public:
  explicit VectorStore(std::size_t dimension) : dimension_(dimension) {}

  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return table_.size(); }
  // Throws Error if the vector has the wrong dimension.
  void Add(std::string word, Vector vec);
  // Exact match first, then the lowercased word; nullptr when absent.
  const Vector* Find(std::string_view word) const;

 private:
  std::size_t dimension_;
  std::unordered_map<std::string, Vector> table_;
};

// Text format: "word v1 ... vd" per line, optionally preceded by a
// "count dim" header line. Throws ParseError (with line number) for a
// dimension mismatch or a bad number, Error for an empty input.
VectorStore LoadVectors(std::istream& in);
VectorStore LoadVectorFile(const std::string& path);

enum class NgramKind { kBack3, kBack2, kHead, kFwd2, kFwd3 };
enum class Mode { kNormal, kSlash };

inline constexpr std::array<NgramKind, 5> kNgramKinds = {
    NgramKind::kBack3, NgramKind::kBack2, NgramKind::kHead, NgramKind::kFwd2,
    NgramKind::kFwd3};
inline constexpr std::array<Mode, 2> kModes = {Mode::kNormal, Mode::kSlash};

std::string_view NgramName(NgramKind kind);
std::string_view ModeName(Mode mode);
// "emb_back3_normal" and friends.
std::string FeatureName(NgramKind kind, Mode mode);

// Half-open token range [begin, end) within a sentence.
struct TokenSpan {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  bool contains(std::size_t i) const { return i >= begin && i < end; }
  friend bool operator==(const TokenSpan&, const TokenSpan&) = default;
};

// The five n-grams in kNgramKinds order, clipped at sentence boundaries.
std::array<TokenSpan, 5> CandidateNgrams(const corpus::Sentence& sentence, std::size_t idx);
std::vector<std::string> SpanWords(const corpus::Sentence& sentence, TokenSpan span);

// NORMAL: mean of the span's known word vectors. SLASH: mean of the known
// vectors of all tokens outside the span. Zero vector if nothing is known.
Vector EmbedSpan(const corpus::Sentence& sentence, TokenSpan span, Mode mode,
                 const VectorStore& store);

double Cosine(const Vector& a, const Vector& b);
bool IsZero(const Vector& v);

class AverageProfile {
 public:
  AverageProfile() = default;
  explicit AverageProfile(std::size_t dimension);

  std::size_t dimension() const { return dimension_; }
  const Vector& average(NgramKind kind, Mode mode) const { return slots_[Slot(kind, mode)].first; }
  std::size_t count(NgramKind kind, Mode mode) const { return slots_[Slot(kind, mode)].second; }
  void Set(NgramKind kind, Mode mode, Vector average, std::size_t count);

  // Versioned text format:
  //   partsrl-average-profile 1
  //   dimension <d>
  //   <feature name> <count> <v1> ... <vd>     (ten lines)
  std::string Serialize() const;
  static AverageProfile Deserialize(std::string_view text);

  friend bool operator==(const AverageProfile&, const AverageProfile&) = default;

 private:
  static std::size_t Slot(NgramKind kind, Mode mode) {
    return static_cast<std::size_t>(kind) * 2 + static_cast<std::size_t>(mode);
  }

  std::size_t dimension_ = 0;
  std::array<std::pair<Vector, std::size_t>, 10> slots_;
};

struct LabeledSentence {
  const corpus::Sentence* sentence;
  const corpus::Instance* instance;
};

// Averages each of the ten embeddings over the gold ARG1 tokens. Zero
// embeddings (all words unknown) are left out of both sum and count. Throws
// Error for an empty training list or an instance without ARG1.
AverageProfile FitAverages(const std::vector<LabeledSentence>& training,
                           const VectorStore& store);

// Ten numeric features, cosine(candidate embedding, profile average).
features::FeatureRecord CosineFeatures(const corpus::Sentence& sentence, std::size_t idx,
                                       const AverageProfile& profile,
                                       const VectorStore& store);

}  // namespace partsrl::embed

#endif  // PARTSRL_EMBEDDINGS_HPP_
