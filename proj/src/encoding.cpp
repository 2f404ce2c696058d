#include "partsrl/encoding.hpp"

#include <sstream>

#include "partsrl/errors.hpp"
#include "partsrl/internal/strings.hpp"

namespace partsrl::encoding {

std::string_view ModeName(Mode mode) { return mode == Mode::kOneHot ? "onehot" : "ordinal"; }

Mode ParseMode(std::string_view name) {
  if (name == "onehot" || name == "one-hot") return Mode::kOneHot;
  if (name == "ordinal") return Mode::kOrdinal;
  throw Error("unknown encoding '" + std::string(name) + "' (expected onehot or ordinal)");
}

std::vector<double> SparseVector::ToDense() const {
  std::vector<double> dense(width, 0.0);
  for (const auto& [index, value] : entries) dense[index] = value;
  return dense;
}

std::size_t Vocabulary::width() const {
  if (mode_ == Mode::kOrdinal) return categorical_.size() + numeric_.size();
  std::size_t w = numeric_.size();
  for (const auto& c : categorical_) w += c.categories.size();
  return w;
}

std::size_t Vocabulary::CategoryId(std::size_t feature, std::string_view category) const {
  const auto& ids = categorical_[feature].ids;
  const auto it = ids.find(std::string(category));
  return it == ids.end() ? 0 : it->second;
}

std::vector<std::string> Vocabulary::ColumnNames() const {
  std::vector<std::string> names;
  for (const auto& c : categorical_) {
    if (mode_ == Mode::kOrdinal) {
      names.push_back(c.name);
    } else {
      for (const auto& cat : c.categories) names.push_back(c.name + "=" + cat);
    }
  }
  for (const auto& n : numeric_) names.push_back(n);
  return names;
}

std::string Vocabulary::Serialize() const {
  std::ostringstream out;
  out << "partsrl-vocabulary 1\n";
  out << "mode\t" << ModeName(mode_) << "\n";
  for (const auto& c : categorical_) {
    out << "cat\t" << c.name;
    for (std::size_t i = 1; i < c.categories.size(); ++i) out << '\t' << c.categories[i];
    out << '\n';
  }
  for (const auto& n : numeric_) out << "num\t" << n << '\n';
  return out.str();
}

Vocabulary Vocabulary::Deserialize(std::string_view text) {
  const auto lines = internal::Split(text, '\n');
  auto bad = [](const std::string& why) { return ParseError("vocabulary: " + why, 0); };
  if (lines.size() < 2 || lines[0] != "partsrl-vocabulary 1")
    throw bad("missing 'partsrl-vocabulary 1' header");
  const auto mode_fields = internal::Split(lines[1], '\t');
  if (mode_fields.size() != 2 || mode_fields[0] != "mode") throw bad("missing mode line");
  Vocabulary vocab;
  vocab.mode_ = ParseMode(mode_fields[1]);
  for (std::size_t i = 2; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto fields = internal::Split(lines[i], '\t');
    if (fields[0] == "cat" && fields.size() >= 2) {
      Categorical c;
      c.name = std::string(fields[1]);
      c.categories.emplace_back(kUnknown);
      for (std::size_t k = 2; k < fields.size(); ++k) {
        c.ids.emplace(std::string(fields[k]), c.categories.size());
        c.categories.emplace_back(fields[k]);
      }
      vocab.categorical_.push_back(std::move(c));
    } else if (fields[0] == "num" && fields.size() == 2) {
      vocab.numeric_.emplace_back(fields[1]);
    } else {
      throw bad("bad line " + std::to_string(i + 1));
    }
  }
  return vocab;
}

namespace {

std::vector<std::string> NameSet(const features::FeatureRecord& r) {
  std::vector<std::string> names;
  for (const auto& [name, value] : r.categorical()) names.push_back("c:" + name);
  for (const auto& [name, value] : r.numeric()) names.push_back("n:" + name);
  return names;
}

}  // namespace

Vocabulary BuildVocab(const std::vector<features::FeatureRecord>& records, Mode mode) {
  if (records.empty()) throw Error("cannot build a vocabulary from zero records");
  Vocabulary vocab;
  vocab.mode_ = mode;
  const auto reference = NameSet(records.front());
  for (const auto& [name, value] : records.front().categorical()) {
    Vocabulary::Categorical c;
    c.name = name;
    c.categories.emplace_back(kUnknown);
    vocab.categorical_.push_back(std::move(c));
  }
  for (const auto& [name, value] : records.front().numeric()) vocab.numeric_.push_back(name);

  for (std::size_t r = 0; r < records.size(); ++r) {
    if (r > 0 && NameSet(records[r]) != reference)
      throw Error("record " + std::to_string(r) +
                  " has a different feature-name set from record 0");
    std::size_t f = 0;
    for (const auto& [name, value] : records[r].categorical()) {
      auto& c = vocab.categorical_[f++];
      if (c.ids.emplace(value, c.categories.size()).second) c.categories.push_back(value);
    }
  }
  return vocab;
}

SparseVector VectorizeSparse(const features::FeatureRecord& record, const Vocabulary& vocab) {
  SparseVector out;
  out.width = vocab.width();
  const auto& cats = vocab.categorical();
  if (record.categorical().size() != cats.size() ||
      record.numeric().size() != vocab.numeric().size())
    throw Error("record does not match the vocabulary's feature set");
  std::size_t column = 0;
  std::size_t f = 0;
  for (const auto& [name, value] : record.categorical()) {
    if (name != cats[f].name)
      throw Error("record feature '" + name + "' is not in the vocabulary");
    const std::size_t id = vocab.CategoryId(f, value);
    if (vocab.mode() == Mode::kOrdinal) {
      if (id != 0) out.entries.emplace_back(column, static_cast<double>(id));
      ++column;
    } else {
      out.entries.emplace_back(column + id, 1.0);
      column += cats[f].categories.size();
    }
    ++f;
  }
  std::size_t n = 0;
  for (const auto& [name, value] : record.numeric()) {
    if (name != vocab.numeric()[n++])
      throw Error("record feature '" + name + "' is not in the vocabulary");
    if (value != 0.0) out.entries.emplace_back(column, value);
    ++column;
  }
  return out;
}

std::vector<double> Vectorize(const features::FeatureRecord& record, const Vocabulary& vocab) {
  return VectorizeSparse(record, vocab).ToDense();
}

}  // namespace partsrl::encoding
