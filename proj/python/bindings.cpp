#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "partsrl/adaboost.hpp"
#include "partsrl/corpus.hpp"
#include "partsrl/embeddings.hpp"
#include "partsrl/ensemble.hpp"
#include "partsrl/errors.hpp"
#include "partsrl/eval.hpp"
#include "partsrl/features.hpp"
#include "partsrl/parse_tree.hpp"
#include "partsrl/pipeline.hpp"
#include "partsrl/synth.hpp"

namespace py = pybind11;
using namespace partsrl;

namespace {

// Score tables cross the boundary as {(sentence_id, token_index): score}.
using ScoreDict = std::map<std::pair<std::size_t, std::size_t>, double>;

ScoreDict ToDict(const ensemble::ScoreTable& table) { return table.rows(); }

ensemble::ScoreTable FromDict(const ScoreDict& rows, const std::string& source) {
  ensemble::ScoreTable table(source);
  for (const auto& [key, score] : rows) table.Add(key.first, key.second, score);
  return table;
}

std::map<std::string, std::string> RecordDict(const features::FeatureRecord& rec) {
  std::map<std::string, std::string> out = rec.categorical();
  for (const auto& [name, value] : rec.numeric()) {
    std::ostringstream s;
    s << value;
    out[name] = s.str();
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_partsrl, m) {
  m.doc() = "ARG1 identification for partitive and percent noun predicates";

  py::register_exception<Error>(m, "Error", PyExc_ValueError);

  py::enum_<corpus::Role>(m, "Role")
      .value("NONE", corpus::Role::kNone)
      .value("ARG1", corpus::Role::kArg1)
      .value("SUP", corpus::Role::kSupport)
      .value("PRED", corpus::Role::kPredicate);

  py::class_<corpus::Token>(m, "Token")
      .def_readonly("word", &corpus::Token::word)
      .def_readonly("pos", &corpus::Token::pos)
      .def_readonly("bio", &corpus::Token::bio)
      .def_readonly("index", &corpus::Token::index)
      .def_readonly("func", &corpus::Token::func)
      .def_readonly("frame", &corpus::Token::frame)
      .def("__repr__", [](const corpus::Token& t) { return "<Token " + t.word + ">"; });

  py::class_<corpus::Sentence>(m, "Sentence")
      .def_readonly("tokens", &corpus::Sentence::tokens)
      .def_readonly("sentence_id", &corpus::Sentence::sentence_id)
      .def("__len__", &corpus::Sentence::size)
      .def("words", [](const corpus::Sentence& s) {
        std::vector<std::string> out;
        for (const auto& t : s.tokens) out.push_back(t.word);
        return out;
      });

  py::class_<corpus::Instance>(m, "Instance")
      .def_readonly("sentence_id", &corpus::Instance::sentence_id)
      .def_readonly("predicate_index", &corpus::Instance::predicate_index)
      .def_readonly("support_indices", &corpus::Instance::support_indices)
      .def_readonly("arg1_index", &corpus::Instance::arg1_index)
      .def_readonly("frame_classes", &corpus::Instance::frame_classes);

  m.def("parse_conll", &corpus::ParseConllString, py::arg("text"));
  m.def("write_conll", &corpus::WriteConllString, py::arg("sentences"));
  m.def("extract_instance", &corpus::ExtractInstance, py::arg("sentence"));

  m.def("parse_tree_string",
        [](const std::string& text) { return tree::ParseBracketed(text).ToString(); },
        py::arg("text"), "Parse a bracketed tree and return its canonical form.");
  m.def(
      "tree_path",
      [](const std::string& text, std::size_t source, std::size_t target) {
        const auto path = tree::ComputeTreePath(tree::ParseBracketed(text), source, target);
        return py::make_tuple(path.up_labels, path.down_labels, tree::PathToString(path));
      },
      py::arg("tree"), py::arg("source"), py::arg("target"),
      "(up labels, down labels, arrow string) between two leaves.");
  m.def(
      "type2_path_flags",
      [](const std::string& text, const corpus::Sentence& sentence, std::size_t idx) {
        const auto aligned =
            tree::AlignLeaves(tree::RemoveEmptyElements(tree::ParseBracketed(text)), sentence);
        return features::Type2PathFlags(aligned, corpus::ExtractInstance(sentence), idx);
      },
      py::arg("tree"), py::arg("sentence"), py::arg("idx"));
  m.def("collapse_bio_path", &features::CollapseBioPath, py::arg("sentence"),
        py::arg("from_idx"), py::arg("to_idx"));
  m.def(
      "candidate_ngrams",
      [](const corpus::Sentence& sentence, std::size_t idx) {
        std::vector<std::vector<std::string>> out;
        for (const auto& span : embed::CandidateNgrams(sentence, idx))
          out.push_back(embed::SpanWords(sentence, span));
        return out;
      },
      py::arg("sentence"), py::arg("idx"));

  m.def("f1", &eval::F1FromPrecisionRecall, py::arg("precision"), py::arg("recall"));
  m.def("match_arg1", &eval::MatchArg1, py::arg("sentence"), py::arg("gold_idx"),
        py::arg("predicted_idx"));
  m.def(
      "prf",
      [](const ScoreDict& scores, const std::vector<corpus::Sentence>& gold,
         const std::string& mode, double tau) {
        ensemble::DecodeOptions opts;
        opts.mode = mode == "argmax" ? ensemble::DecodeMode::kArgmax
                                     : ensemble::DecodeMode::kThreshold;
        opts.tau = tau;
        const auto s = eval::Prf(ensemble::Decode(FromDict(scores, ""), opts), gold);
        py::dict d;
        d["precision"] = s.precision;
        d["recall"] = s.recall;
        d["f1"] = s.f1;
        d["tp"] = s.tp;
        d["fp"] = s.fp;
        d["fn"] = s.fn;
        return d;
      },
      py::arg("scores"), py::arg("gold"), py::arg("mode") = "threshold", py::arg("tau") = 0.5);

  m.def(
      "read_scores",
      [](const std::string& text) {
        std::istringstream in(text);
        return ToDict(ensemble::ReadScores(in));
      },
      py::arg("text"));
  m.def(
      "write_scores",
      [](const ScoreDict& rows) { return ensemble::WriteScoresString(FromDict(rows, "")); },
      py::arg("scores"));
  m.def(
      "fit_weights",
      [](const ScoreDict& a, const ScoreDict& b, const std::vector<corpus::Sentence>& gold) {
        const auto w = ensemble::FitWeights(FromDict(a, "a"), FromDict(b, "b"), gold);
        return py::make_tuple(w.w_a, w.w_b);
      },
      py::arg("scores_a"), py::arg("scores_b"), py::arg("gold"));
  m.def(
      "combine",
      [](const ScoreDict& a, const ScoreDict& b, double w_a) {
        return ToDict(ensemble::Combine(FromDict(a, "a"), FromDict(b, "b"), {w_a, 1.0 - w_a}));
      },
      py::arg("scores_a"), py::arg("scores_b"), py::arg("w_a"));

  m.def(
      "synth",
      [](std::size_t sentences, std::uint64_t seed, const std::string& task) {
        synth::Options opts;
        opts.sentences = sentences;
        opts.seed = seed;
        opts.task = features::ParseTask(task);
        const auto corpus = synth::Generate(opts);
        std::ostringstream trees;
        synth::WriteTrees(trees, corpus.trees);
        return py::make_tuple(corpus::WriteConllString(corpus.sentences), trees.str());
      },
      py::arg("sentences") = 600, py::arg("seed") = 1, py::arg("task") = "percent",
      "Returns (conll text, tree text).");

  py::class_<pipeline::System>(m, "System")
      .def_static(
          "train",
          [](const std::string& conll, const std::string& trees, const std::string& task,
             const std::string& encoding, std::size_t rounds, std::size_t depth,
             double shrinkage, std::uint64_t seed) {
            std::vector<tree::ParseTree> parsed;
            if (!trees.empty()) {
              std::istringstream in(trees);
              parsed = tree::ReadTrees(in);
            }
            const auto doc = pipeline::MakeDocument(corpus::ParseConllString(conll), parsed);
            pipeline::TrainOptions opts;
            opts.features.task = features::ParseTask(task);
            opts.encoding = encoding::ParseMode(encoding);
            opts.boost.rounds = rounds;
            opts.boost.depth = depth;
            opts.boost.shrinkage = shrinkage;
            opts.boost.seed = seed;
            return pipeline::Train(doc, opts, nullptr);
          },
          py::arg("conll"), py::arg("trees") = "", py::arg("task") = "percent",
          py::arg("encoding") = "onehot", py::arg("rounds") = 200, py::arg("depth") = 2,
          py::arg("shrinkage") = 1.0, py::arg("seed") = 0)
      .def(
          "score",
          [](const pipeline::System& self, const std::string& conll, const std::string& trees) {
            std::vector<tree::ParseTree> parsed;
            if (!trees.empty()) {
              std::istringstream in(trees);
              parsed = tree::ReadTrees(in);
            }
            const auto doc = pipeline::MakeDocument(corpus::ParseConllString(conll), parsed);
            return ToDict(self.Score(doc, nullptr));
          },
          py::arg("conll"), py::arg("trees") = "")
      .def(
          "features",
          [](const pipeline::System& self, const std::string& conll, const std::string& trees,
             std::size_t sentence) {
            std::vector<tree::ParseTree> parsed;
            if (!trees.empty()) {
              std::istringstream in(trees);
              parsed = tree::ReadTrees(in);
            }
            const auto doc = pipeline::MakeDocument(corpus::ParseConllString(conll), parsed);
            std::vector<std::map<std::string, std::string>> out;
            for (const auto& rec : self.Records(doc, sentence, nullptr))
              out.push_back(RecordDict(rec));
            return out;
          },
          py::arg("conll"), py::arg("trees") = "", py::arg("sentence") = 0)
      .def("importances",
           [](const pipeline::System& self) {
             return boost::FeatureImportances(self.model(), self.vocab().ColumnNames());
           })
      .def_property_readonly("rounds",
                             [](const pipeline::System& self) {
                               return self.model().rounds().size();
                             })
      .def("to_json", &pipeline::System::ToJson)
      .def_static("from_json", [](const std::string& text) {
        return pipeline::System::FromJson(text);
      });
}
