#include "partsrl/embeddings.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include "partsrl/errors.hpp"
#include "partsrl/internal/strings.hpp"

namespace partsrl::embed {

void VectorStore::Add(std::string word, Vector vec) {
  if (vec.size() != dimension_)
    throw Error("vector for '" + word + "' has dimension " + std::to_string(vec.size()) +
                ", expected " + std::to_string(dimension_));
  table_.insert_or_assign(std::move(word), std::move(vec));
}

const Vector* VectorStore::Find(std::string_view word) const {
  if (auto it = table_.find(std::string(word)); it != table_.end()) return &it->second;
  if (auto it = table_.find(internal::ToLower(word)); it != table_.end()) return &it->second;
  return nullptr;
}

VectorStore LoadVectors(std::istream& in) {
  std::string raw;
  std::size_t line_no = 0;
  std::size_t dimension = 0;
  std::vector<std::pair<std::string, Vector>> rows;
  bool first = true;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto fields = internal::SplitWhitespace(raw);
    if (fields.empty()) continue;
    if (first) {
      first = false;
      if (fields.size() == 2) {
        const auto count = internal::ParseInt<std::size_t>(fields[0]);
        const auto dim = internal::ParseInt<std::size_t>(fields[1]);
        if (count && dim) {
          if (*dim == 0) throw ParseError("line 1: dimension must be positive", 1);
          dimension = *dim;
          continue;
        }
      }
    }
    const std::size_t values = fields.size() - 1;
    if (values == 0)
      throw ParseError("line " + std::to_string(line_no) + ": word without a vector", line_no);
    if (dimension == 0) dimension = values;
    if (values != dimension)
      throw ParseError("line " + std::to_string(line_no) + ": expected " +
                           std::to_string(dimension) + " values, found " +
                           std::to_string(values),
                       line_no);
    Vector vec(dimension);
    for (std::size_t k = 0; k < dimension; ++k) {
      const auto v = internal::ParseDouble(fields[k + 1]);
      if (!v || !std::isfinite(*v))
        throw ParseError("line " + std::to_string(line_no) + ": bad number '" +
                             std::string(fields[k + 1]) + "'",
                         line_no);
      vec[k] = *v;
    }
    rows.emplace_back(std::string(fields[0]), std::move(vec));
  }
  if (rows.empty()) throw Error("vector file contains no vectors");
  VectorStore store(dimension);
  for (auto& [word, vec] : rows) store.Add(std::move(word), std::move(vec));
  return store;
}

VectorStore LoadVectorFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  try {
    return LoadVectors(in);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what(), e.line());
  } catch (const Error& e) {
    throw Error(path + ": " + e.what());
  }
}

std::string_view NgramName(NgramKind kind) {
  switch (kind) {
    case NgramKind::kBack3: return "back3";
    case NgramKind::kBack2: return "back2";
    case NgramKind::kHead: return "head";
    case NgramKind::kFwd2: return "fwd2";
    case NgramKind::kFwd3: return "fwd3";
  }
  return "";
}

std::string_view ModeName(Mode mode) { return mode == Mode::kNormal ? "normal" : "slash"; }

std::string FeatureName(NgramKind kind, Mode mode) {
  return "emb_" + std::string(NgramName(kind)) + "_" + std::string(ModeName(mode));
}

std::array<TokenSpan, 5> CandidateNgrams(const corpus::Sentence& sentence, std::size_t idx) {
  const std::size_t n = sentence.size();
  auto back = [&](std::size_t len) { return TokenSpan{idx + 1 >= len ? idx + 1 - len : 0, idx + 1}; };
  auto fwd = [&](std::size_t len) { return TokenSpan{idx, std::min(n, idx + len)}; };
  return {back(3), back(2), TokenSpan{idx, idx + 1}, fwd(2), fwd(3)};
}

std::vector<std::string> SpanWords(const corpus::Sentence& sentence, TokenSpan span) {
  std::vector<std::string> words;
  for (std::size_t i = span.begin; i < span.end; ++i) words.push_back(sentence[i].word);
  return words;
}

Vector EmbedSpan(const corpus::Sentence& sentence, TokenSpan span, Mode mode,
                 const VectorStore& store) {
  Vector sum(store.dimension(), 0.0);
  std::size_t found = 0;
  for (std::size_t i = 0; i < sentence.size(); ++i) {
    if (span.contains(i) != (mode == Mode::kNormal)) continue;
    const Vector* vec = store.Find(sentence[i].word);
    if (!vec) continue;
    for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += (*vec)[k];
    ++found;
  }
  if (found > 0) {
    for (double& v : sum) v /= static_cast<double>(found);
  }
  return sum;
}

bool IsZero(const Vector& v) {
  for (double x : v) {
    if (x != 0.0) return false;
  }
  return true;
}

double Cosine(const Vector& a, const Vector& b) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    dot += a[k] * b[k];
    na += a[k] * a[k];
    nb += b[k] * b[k];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  const double c = dot / (std::sqrt(na) * std::sqrt(nb));
  return std::clamp(c, -1.0, 1.0);
}

AverageProfile::AverageProfile(std::size_t dimension) : dimension_(dimension) {
  for (auto& slot : slots_) slot = {Vector(dimension, 0.0), 0};
}

void AverageProfile::Set(NgramKind kind, Mode mode, Vector average, std::size_t count) {
  if (average.size() != dimension_) throw Error("average has the wrong dimension");
  slots_[Slot(kind, mode)] = {std::move(average), count};
}

std::string AverageProfile::Serialize() const {
  std::ostringstream out;
  out << "partsrl-average-profile 1\n";
  out << "dimension " << dimension_ << "\n";
  for (NgramKind kind : kNgramKinds) {
    for (Mode mode : kModes) {
      out << FeatureName(kind, mode) << ' ' << count(kind, mode);
      for (double v : average(kind, mode)) out << ' ' << internal::FormatDouble(v);
      out << '\n';
    }
  }
  return out.str();
}

AverageProfile AverageProfile::Deserialize(std::string_view text) {
  const auto lines = internal::Split(text, '\n');
  auto bad = [](const std::string& why) { return ParseError("average profile: " + why, 0); };
  if (lines.size() < 12 || lines[0] != "partsrl-average-profile 1")
    throw bad("missing 'partsrl-average-profile 1' header");
  const auto dim_fields = internal::SplitWhitespace(lines[1]);
  if (dim_fields.size() != 2 || dim_fields[0] != "dimension") throw bad("missing dimension");
  const auto dim = internal::ParseInt<std::size_t>(dim_fields[1]);
  if (!dim) throw bad("bad dimension");
  AverageProfile profile(*dim);
  std::size_t line = 2;
  for (NgramKind kind : kNgramKinds) {
    for (Mode mode : kModes) {
      const auto fields = internal::SplitWhitespace(lines[line++]);
      if (fields.size() != *dim + 2 || fields[0] != FeatureName(kind, mode))
        throw bad("expected a line for " + FeatureName(kind, mode));
      const auto count = internal::ParseInt<std::size_t>(fields[1]);
      if (!count) throw bad("bad count for " + FeatureName(kind, mode));
      Vector avg(*dim);
      for (std::size_t k = 0; k < *dim; ++k) {
        const auto v = internal::ParseDouble(fields[k + 2]);
        if (!v) throw bad("bad number in " + FeatureName(kind, mode));
        avg[k] = *v;
      }
      profile.Set(kind, mode, std::move(avg), *count);
    }
  }
  return profile;
}

AverageProfile FitAverages(const std::vector<LabeledSentence>& training,
                           const VectorStore& store) {
  if (training.empty()) throw Error("cannot fit embedding averages on an empty training set");
  const std::size_t dim = store.dimension();
  std::array<Vector, 10> sums;
  std::array<std::size_t, 10> counts{};
  for (auto& s : sums) s.assign(dim, 0.0);

  for (const LabeledSentence& item : training) {
    if (!item.instance->arg1_index)
      throw Error("training sentence " + std::to_string(item.sentence->sentence_id) +
                  " has no ARG1");
    const std::size_t idx = *item.instance->arg1_index;
    const auto spans = CandidateNgrams(*item.sentence, idx);
    std::size_t slot = 0;
    for (std::size_t g = 0; g < spans.size(); ++g) {
      for (Mode mode : kModes) {
        const Vector emb = EmbedSpan(*item.sentence, spans[g], mode, store);
        if (!IsZero(emb)) {
          for (std::size_t k = 0; k < dim; ++k) sums[slot][k] += emb[k];
          ++counts[slot];
        }
        ++slot;
      }
    }
  }

  AverageProfile profile(dim);
  std::size_t slot = 0;
  for (NgramKind kind : kNgramKinds) {
    for (Mode mode : kModes) {
      Vector avg = sums[slot];
      if (counts[slot] > 0) {
        for (double& v : avg) v /= static_cast<double>(counts[slot]);
      }
      profile.Set(kind, mode, std::move(avg), counts[slot]);
      ++slot;
    }
  }
  return profile;
}

features::FeatureRecord CosineFeatures(const corpus::Sentence& sentence, std::size_t idx,
                                       const AverageProfile& profile,
                                       const VectorStore& store) {
  features::FeatureRecord record;
  const auto spans = CandidateNgrams(sentence, idx);
  for (std::size_t g = 0; g < spans.size(); ++g) {
    for (Mode mode : kModes) {
      const NgramKind kind = kNgramKinds[g];
      const Vector emb = EmbedSpan(sentence, spans[g], mode, store);
      record.SetNumeric(FeatureName(kind, mode), Cosine(emb, profile.average(kind, mode)));
    }
  }
  return record;
}

}  // namespace partsrl::embed
