#include "partsrl/eval.hpp"

#include <cstdio>
#include <map>
#include <sstream>

#include "partsrl/errors.hpp"

namespace partsrl::eval {

double F1FromPrecisionRecall(double precision, double recall) {
  if (precision + recall <= 0.0) return 0.0;
  return 2.0 * precision * recall / (precision + recall);
}

PrfScores ScoresFromCounts(std::size_t tp, std::size_t fp, std::size_t fn) {
  PrfScores s;
  s.tp = tp;
  s.fp = fp;
  s.fn = fn;
  s.precision = tp + fp > 0 ? 100.0 * static_cast<double>(tp) / static_cast<double>(tp + fp) : 0.0;
  s.recall = tp + fn > 0 ? 100.0 * static_cast<double>(tp) / static_cast<double>(tp + fn) : 0.0;
  s.f1 = F1FromPrecisionRecall(s.precision, s.recall);
  return s;
}

namespace {

// Start of the NP chunk containing token i, or npos when i is outside one.
std::size_t NpChunkStart(const corpus::Sentence& sentence, std::size_t i) {
  const std::string& bio = sentence[i].bio;
  if (bio != "B-NP" && bio != "I-NP") return std::string::npos;
  while (i > 0 && sentence[i].bio == "I-NP") --i;
  return i;
}

bool IsProperNoun(const corpus::Token& tok) { return tok.pos.rfind("NNP", 0) == 0; }

}  // namespace

bool MatchArg1(const corpus::Sentence& sentence, std::size_t gold_idx,
               std::size_t predicted_idx) {
  if (gold_idx == predicted_idx) return true;
  if (gold_idx >= sentence.size() || predicted_idx >= sentence.size()) return false;
  if (!IsProperNoun(sentence[gold_idx]) || !IsProperNoun(sentence[predicted_idx])) return false;
  const std::size_t chunk = NpChunkStart(sentence, gold_idx);
  return chunk != std::string::npos && chunk == NpChunkStart(sentence, predicted_idx);
}

PrfScores Prf(const ensemble::Predictions& predictions,
              const std::vector<corpus::Sentence>& gold) {
  std::map<std::size_t, const corpus::Sentence*> by_id;
  for (const auto& s : gold) by_id[s.sentence_id] = &s;
  for (const auto& [sid, tokens] : predictions) {
    if (!by_id.count(sid))
      throw Error("prediction for unknown sentence " + std::to_string(sid));
  }

  std::size_t tp = 0, fp = 0, fn = 0;
  for (const auto& [sid, sentence] : by_id) {
    const corpus::Instance inst = corpus::ExtractInstance(*sentence);
    const auto it = predictions.find(sid);
    bool matched = false;
    if (it != predictions.end()) {
      for (std::size_t token : it->second) {
        if (!matched && inst.arg1_index && MatchArg1(*sentence, *inst.arg1_index, token)) {
          matched = true;
          ++tp;
        } else {
          ++fp;
        }
      }
    }
    if (inst.arg1_index && !matched) ++fn;
  }
  return ScoresFromCounts(tp, fp, fn);
}

std::string FormatTable(const std::vector<ReportRow>& rows, const std::string& title) {
  std::size_t width = 6;
  for (const auto& r : rows) width = std::max(width, r.label.size());
  std::ostringstream out;
  if (!title.empty()) out << title << '\n';
  char line[256];
  std::snprintf(line, sizeof line, "%-*s  %7s  %7s  %7s\n", static_cast<int>(width), "System",
                "Prec", "Rec", "F1");
  out << line;
  out << std::string(width + 27, '-') << '\n';
  for (const auto& r : rows) {
    std::snprintf(line, sizeof line, "%-*s  %7.2f  %7.2f  %7.2f\n", static_cast<int>(width),
                  r.label.c_str(), r.scores.precision, r.scores.recall, r.scores.f1);
    out << line;
  }
  return out.str();
}

std::string FormatCsv(const std::vector<ReportRow>& rows) {
  std::ostringstream out;
  out << "system,precision,recall,f1,tp,fp,fn\n";
  char line[256];
  for (const auto& r : rows) {
    std::snprintf(line, sizeof line, "%.4f,%.4f,%.4f,%zu,%zu,%zu\n", r.scores.precision,
                  r.scores.recall, r.scores.f1, r.scores.tp, r.scores.fp, r.scores.fn);
    out << '"' << r.label << "\"," << line;
  }
  return out.str();
}

}  // namespace partsrl::eval
