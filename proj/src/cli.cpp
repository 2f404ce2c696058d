#include "partsrl/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "partsrl/ablation.hpp"
#include "partsrl/adaboost.hpp"
#include "partsrl/corpus.hpp"
#include "partsrl/embeddings.hpp"
#include "partsrl/encoding.hpp"
#include "partsrl/ensemble.hpp"
#include "partsrl/errors.hpp"
#include "partsrl/eval.hpp"
#include "partsrl/features.hpp"
#include "partsrl/grid_search.hpp"
#include "partsrl/internal/strings.hpp"
#include "partsrl/pipeline.hpp"
#include "partsrl/synth.hpp"

namespace partsrl::cli {

namespace {

struct Config {
  std::string task = "percent";
  std::string encoding = "onehot";
  std::string groups = "all";
  std::string conll, trees, vectors;
  std::string dev_conll, dev_trees;
  std::string gold;
  std::string model;
  std::vector<std::string> scores;
  std::vector<std::string> labels;
  std::string scores_a, scores_b, weights;
  std::string out, report;
  std::string format = "table";
  std::string mode = "threshold";
  double tau = 0.5;
  std::uint64_t seed = 0;
  std::size_t rounds = 200;
  std::size_t depth = 2;
  double shrinkage = 1.0;
  std::size_t threads = 1;
  bool balance = false;
  std::string grid_rounds = "50,100,200";
  std::string grid_depths = "1,2,3";
  std::string grid_shrinkages = "0.5,1";
  std::vector<std::string> masks;
  std::size_t top = 15;
  std::size_t sentences = 600;
  std::size_t dimension = 16;
};

// Writes to `path`, or to `fallback` when path is empty.
void Emit(const std::string& path, const std::string& text, std::ostream& fallback) {
  if (path.empty()) {
    fallback << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error("cannot write " + path);
  file << text;
  if (!file) throw Error("failed writing " + path);
}

std::string ReadText(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

std::vector<features::Group> ParseGroups(const std::string& text) {
  if (text == "all") return features::AllGroups();
  std::vector<features::Group> picked;
  for (auto name : internal::Split(text, ',')) {
    for (auto g : features::ParseGroupName(name)) picked.push_back(g);
  }
  std::vector<features::Group> out;
  for (auto g : features::AllGroups())
    if (std::find(picked.begin(), picked.end(), g) != picked.end()) out.push_back(g);
  return out;
}

pipeline::TrainOptions MakeTrainOptions(const Config& c) {
  pipeline::TrainOptions opts;
  opts.features.task = features::ParseTask(c.task);
  opts.features.groups = ParseGroups(c.groups);
  opts.encoding = encoding::ParseMode(c.encoding);
  opts.boost.rounds = c.rounds;
  opts.boost.depth = c.depth;
  opts.boost.shrinkage = c.shrinkage;
  opts.boost.seed = c.seed;
  opts.boost.threads = c.threads;
  opts.boost.balance_classes = c.balance;
  return opts;
}

ensemble::DecodeOptions MakeDecode(const Config& c) {
  ensemble::DecodeOptions d;
  d.mode = c.mode == "argmax" ? ensemble::DecodeMode::kArgmax : ensemble::DecodeMode::kThreshold;
  d.tau = c.tau;
  return d;
}

std::optional<embed::VectorStore> MaybeVectors(const std::string& path) {
  if (path.empty()) return std::nullopt;
  return embed::LoadVectorFile(path);
}

const embed::VectorStore* Ptr(const std::optional<embed::VectorStore>& store) {
  return store ? &*store : nullptr;
}

std::string FormatRows(const std::vector<eval::ReportRow>& rows, const std::string& format,
                       const std::string& title) {
  return format == "csv" ? eval::FormatCsv(rows) : eval::FormatTable(rows, title);
}

// Subcommand bodies.

int DoValidate(const Config& c, std::ostream& out) {
  const auto doc = pipeline::LoadDocument(c.conll, c.trees);
  std::size_t with_arg1 = 0;
  for (const auto& inst : doc.instances) with_arg1 += inst.arg1_index.has_value();
  out << c.conll << ": " << doc.sentences.size() << " sentences, " << doc.token_count()
      << " tokens, " << with_arg1 << " with ARG1";
  if (doc.has_trees()) out << ", " << doc.trees.size() << " aligned trees";
  out << "\n";
  return kExitOk;
}

int DoFeaturize(const Config& c, std::ostream& out) {
  const auto doc = pipeline::LoadDocument(c.conll, c.trees);
  const auto store = MaybeVectors(c.vectors);
  std::optional<pipeline::System> system;
  if (!c.model.empty()) system = pipeline::LoadSystem(c.model);
  pipeline::FeatureConfig config;
  config.task = features::ParseTask(c.task);
  config.groups = ParseGroups(c.groups);
  std::ostringstream text;
  for (std::size_t s = 0; s < doc.sentences.size(); ++s) {
    const auto records = system ? system->Records(doc, s, Ptr(store))
                                : pipeline::SentenceRecords(doc, s, config, {});
    for (std::size_t i = 0; i < records.size(); ++i) {
      text << "# sentence " << doc.sentences[s].sentence_id << " token " << i << " "
           << doc.sentences[s][i].word << "\n"
           << records[i].Dump() << "\n";
    }
  }
  Emit(c.out, text.str(), out);
  return kExitOk;
}

int DoTrain(const Config& c, std::ostream& out) {
  const auto doc = pipeline::LoadDocument(c.conll, c.trees);
  const auto store = MaybeVectors(c.vectors);
  const auto system = pipeline::Train(doc, MakeTrainOptions(c), Ptr(store));
  pipeline::SaveSystem(system, c.out);
  out << "trained " << system.model().rounds().size() << " rounds over "
      << system.vocab().width() << " columns; wrote " << c.out << "\n";
  return kExitOk;
}

int DoPredict(const Config& c, std::ostream& out) {
  const auto system = pipeline::LoadSystem(c.model);
  const auto doc = pipeline::LoadDocument(c.conll, c.trees);
  const auto store = MaybeVectors(c.vectors);
  Emit(c.out, ensemble::WriteScoresString(system.Score(doc, Ptr(store))), out);
  return kExitOk;
}

int DoGridSearch(const Config& c, std::ostream& out) {
  const auto train = pipeline::LoadDocument(c.conll, c.trees);
  const auto dev = pipeline::LoadDocument(c.dev_conll, c.dev_trees);
  const auto store = MaybeVectors(c.vectors);
  pipeline::GridSpec spec;
  spec.rounds = pipeline::ParseSizeList(c.grid_rounds);
  spec.depths = pipeline::ParseSizeList(c.grid_depths);
  spec.shrinkages = pipeline::ParseDoubleList(c.grid_shrinkages);
  const auto result =
      pipeline::GridSearch(train, dev, MakeTrainOptions(c), spec, Ptr(store), MakeDecode(c));
  pipeline::SaveSystem(result.best, c.out);
  Emit(c.report, pipeline::FormatGrid(result), out);
  return kExitOk;
}

int DoEnsembleFit(const Config& c, std::ostream& out) {
  const auto a = ensemble::ReadScoreFile(c.scores_a);
  const auto b = ensemble::ReadScoreFile(c.scores_b);
  const auto gold = corpus::ReadConllFile(c.gold);
  const auto weights = ensemble::FitWeights(a, b, gold);
  Emit(c.out, ensemble::WeightsToJson(weights), out);
  if (!c.out.empty())
    out << "w_a=" << internal::FormatDouble(weights.w_a)
        << " w_b=" << internal::FormatDouble(weights.w_b) << " dev log-loss="
        << internal::FormatDouble(ensemble::EnsembleLoss(a, b, gold, weights.w_a)) << "\n";
  return kExitOk;
}

int DoEnsembleApply(const Config& c, std::ostream& out) {
  const auto a = ensemble::ReadScoreFile(c.scores_a);
  const auto b = ensemble::ReadScoreFile(c.scores_b);
  const auto weights = ensemble::WeightsFromJson(ReadText(c.weights));
  Emit(c.out, ensemble::WriteScoresString(ensemble::Combine(a, b, weights)), out);
  return kExitOk;
}

int DoEvaluate(const Config& c, std::ostream& out) {
  const auto gold = corpus::ReadConllFile(c.gold);
  if (!c.labels.empty() && c.labels.size() != c.scores.size())
    throw CLI::ValidationError("--label", "give one label per --scores file");
  std::vector<eval::ReportRow> rows;
  for (std::size_t i = 0; i < c.scores.size(); ++i) {
    const auto table = ensemble::ReadScoreFile(c.scores[i]);
    const auto predictions = ensemble::Decode(table, MakeDecode(c));
    rows.push_back({c.labels.empty() ? c.scores[i] : c.labels[i], eval::Prf(predictions, gold)});
  }
  Emit(c.report, FormatRows(rows, c.format, ""), out);
  return kExitOk;
}

int DoAblate(const Config& c, std::ostream& out) {
  const auto train = pipeline::LoadDocument(c.conll, c.trees);
  const auto dev = pipeline::LoadDocument(c.dev_conll, c.dev_trees);
  const auto store = MaybeVectors(c.vectors);
  std::vector<eval::FeatureMask> masks;
  if (c.masks.empty()) {
    masks = eval::StandardMasks();
  } else {
    for (const auto& m : c.masks) masks.push_back(eval::ParseMask(m));
  }
  const auto rows =
      eval::AblationReport(masks, train, dev, MakeTrainOptions(c), Ptr(store), MakeDecode(c));
  Emit(c.report, FormatRows(rows, c.format, "Feature ablation (dev)"), out);
  return kExitOk;
}

int DoImportances(const Config& c, std::ostream& out) {
  const auto system = pipeline::LoadSystem(c.model);
  const auto ranked = boost::FeatureImportances(system.model(), system.vocab().ColumnNames());
  std::ostringstream text;
  text << "rank\tfeature\timportance\n";
  for (std::size_t i = 0; i < ranked.size() && i < c.top; ++i)
    text << i + 1 << '\t' << ranked[i].first << '\t' << internal::FormatDouble(ranked[i].second)
         << '\n';
  Emit(c.report, text.str(), out);
  return kExitOk;
}

int DoSynth(const Config& c, std::ostream& out) {
  synth::Options opts;
  opts.sentences = c.sentences;
  opts.seed = c.seed;
  opts.task = features::ParseTask(c.task);
  const auto corpus = synth::Generate(opts);
  Emit(c.conll, corpus::WriteConllString(corpus.sentences), out);
  if (!c.trees.empty()) {
    std::ostringstream trees;
    synth::WriteTrees(trees, corpus.trees);
    Emit(c.trees, trees.str(), out);
  }
  if (!c.vectors.empty()) {
    std::ostringstream vectors;
    synth::WriteVectors(vectors, synth::LexiconVectors(c.seed, c.dimension));
    Emit(c.vectors, vectors.str(), out);
  }
  return kExitOk;
}

// Option helpers shared by several subcommands.

void AddTaskOptions(CLI::App* sub, Config& c) {
  sub->add_option("--task", c.task, "percent or partitive")
      ->check(CLI::IsMember({"percent", "partitive"}))
      ->capture_default_str();
  sub->add_option("--groups", c.groups, "comma-separated feature groups, or 'all'")
      ->capture_default_str();
}

void AddBoostOptions(CLI::App* sub, Config& c) {
  sub->add_option("--encoding", c.encoding, "onehot or ordinal")
      ->check(CLI::IsMember({"onehot", "ordinal"}))
      ->capture_default_str();
  sub->add_option("--rounds", c.rounds, "boosting rounds")->capture_default_str();
  sub->add_option("--depth", c.depth, "weak learner depth")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_option("--shrinkage", c.shrinkage, "learning rate in (0, 1]")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  sub->add_option("--seed", c.seed, "random seed")->capture_default_str();
  sub->add_option("--threads", c.threads, "split search threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_flag("--balance-classes", c.balance, "inverse class-frequency initial weights");
}

void AddDecodeOptions(CLI::App* sub, Config& c) {
  sub->add_option("--mode", c.mode, "threshold or argmax")
      ->check(CLI::IsMember({"threshold", "argmax"}))
      ->capture_default_str();
  sub->add_option("--tau", c.tau, "decision threshold")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
}

void AddInput(CLI::App* sub, const std::string& flag, std::string& target,
              const std::string& help, bool required) {
  auto* opt = sub->add_option(flag, target, help)->check(CLI::ExistingFile);
  if (required) opt->required();
}

void AddFormat(CLI::App* sub, Config& c) {
  sub->add_option("--format", c.format, "table or csv")
      ->check(CLI::IsMember({"table", "csv"}))
      ->capture_default_str();
  sub->add_option("--report", c.report, "report path (default: stdout)");
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config c;
  CLI::App app{"ARG1 identification for partitive and percent nouns", "partsrl"};
  app.set_config("--config", "", "INI/TOML file with [subcommand] sections")
      ->envname("SRL_CONFIG");
  app.require_subcommand(1);
  app.set_version_flag("--version", "partsrl 0.1.0");
  app.allow_windows_style_options(false);

  auto* validate = app.add_subcommand("validate", "check a CoNLL file (and trees)");
  AddInput(validate, "--conll", c.conll, "annotated sentences", true);
  AddInput(validate, "--trees", c.trees, "bracketed trees, one per sentence", false);

  auto* featurize = app.add_subcommand("featurize", "dump per-token feature records");
  AddInput(featurize, "--conll", c.conll, "annotated sentences", true);
  AddInput(featurize, "--trees", c.trees, "bracketed trees", false);
  AddInput(featurize, "--vectors", c.vectors, "word vectors", false);
  AddInput(featurize, "--model", c.model, "use this model's feature configuration", false);
  AddTaskOptions(featurize, c);
  featurize->add_option("--out", c.out, "output path (default: stdout)");

  auto* train = app.add_subcommand("train", "train a boosted ARG1 scorer");
  AddInput(train, "--conll", c.conll, "training sentences", true);
  AddInput(train, "--trees", c.trees, "training trees", false);
  AddInput(train, "--vectors", c.vectors, "word vectors", false);
  AddTaskOptions(train, c);
  AddBoostOptions(train, c);
  train->add_option("--out", c.out, "model path")->required();

  auto* predict = app.add_subcommand("predict", "write per-token scores");
  AddInput(predict, "--model", c.model, "trained model", true);
  AddInput(predict, "--conll", c.conll, "sentences to score", true);
  AddInput(predict, "--trees", c.trees, "trees", false);
  AddInput(predict, "--vectors", c.vectors, "word vectors", false);
  predict->add_option("--out", c.out, "score file (default: stdout)");

  auto* grid = app.add_subcommand("gridsearch", "tune rounds, depth and shrinkage on dev F1");
  AddInput(grid, "--conll", c.conll, "training sentences", true);
  AddInput(grid, "--trees", c.trees, "training trees", false);
  AddInput(grid, "--dev-conll", c.dev_conll, "dev sentences", true);
  AddInput(grid, "--dev-trees", c.dev_trees, "dev trees", false);
  AddInput(grid, "--vectors", c.vectors, "word vectors", false);
  AddTaskOptions(grid, c);
  AddBoostOptions(grid, c);
  AddDecodeOptions(grid, c);
  grid->add_option("--grid-rounds", c.grid_rounds, "comma list")->capture_default_str();
  grid->add_option("--grid-depths", c.grid_depths, "comma list")->capture_default_str();
  grid->add_option("--grid-shrinkages", c.grid_shrinkages, "comma list")->capture_default_str();
  grid->add_option("--out", c.out, "best model path")->required();
  grid->add_option("--report", c.report, "grid table path (default: stdout)");

  auto* efit = app.add_subcommand("ensemble-fit", "fit two-view ensemble weights on dev");
  AddInput(efit, "--scores-a", c.scores_a, "view A scores", true);
  AddInput(efit, "--scores-b", c.scores_b, "view B scores", true);
  AddInput(efit, "--gold", c.gold, "dev sentences", true);
  efit->add_option("--out", c.out, "weights path (default: stdout)");

  auto* eapply = app.add_subcommand("ensemble-apply", "combine two score files");
  AddInput(eapply, "--scores-a", c.scores_a, "view A scores", true);
  AddInput(eapply, "--scores-b", c.scores_b, "view B scores", true);
  AddInput(eapply, "--weights", c.weights, "weights from ensemble-fit", true);
  eapply->add_option("--out", c.out, "score file (default: stdout)");

  auto* evaluate = app.add_subcommand("evaluate", "precision, recall and F1 of score files");
  AddInput(evaluate, "--gold", c.gold, "gold sentences", true);
  evaluate->add_option("--scores", c.scores, "score files (repeatable)")
      ->required()
      ->check(CLI::ExistingFile);
  evaluate->add_option("--label", c.labels, "row label per score file (repeatable)");
  AddDecodeOptions(evaluate, c);
  AddFormat(evaluate, c);

  auto* ablate = app.add_subcommand("ablate", "feature-group ablation table");
  AddInput(ablate, "--conll", c.conll, "training sentences", true);
  AddInput(ablate, "--trees", c.trees, "training trees", false);
  AddInput(ablate, "--dev-conll", c.dev_conll, "dev sentences", true);
  AddInput(ablate, "--dev-trees", c.dev_trees, "dev trees", false);
  AddInput(ablate, "--vectors", c.vectors, "word vectors", false);
  AddTaskOptions(ablate, c);
  AddBoostOptions(ablate, c);
  AddDecodeOptions(ablate, c);
  ablate->add_option("--mask", c.masks,
                     "LABEL=group,... or LABEL=-group,... (repeatable; default: standard six)");
  AddFormat(ablate, c);

  auto* importances = app.add_subcommand("importances", "rank model columns by importance");
  AddInput(importances, "--model", c.model, "trained model", true);
  importances->add_option("--top", c.top, "rows to print")->capture_default_str();
  importances->add_option("--report", c.report, "output path (default: stdout)");

  auto* synth_cmd = app.add_subcommand("synth", "generate a seeded synthetic corpus");
  synth_cmd->add_option("--sentences", c.sentences, "sentence count")->capture_default_str();
  synth_cmd->add_option("--seed", c.seed, "random seed")->capture_default_str();
  synth_cmd->add_option("--task", c.task, "percent or partitive")
      ->check(CLI::IsMember({"percent", "partitive"}))
      ->capture_default_str();
  synth_cmd->add_option("--conll", c.conll, "output CoNLL path (default: stdout)");
  synth_cmd->add_option("--trees", c.trees, "output tree path");
  synth_cmd->add_option("--vectors", c.vectors, "output vector path");
  synth_cmd->add_option("--dimension", c.dimension, "vector dimension")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << app.version() << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*validate) return DoValidate(c, out);
    if (*featurize) return DoFeaturize(c, out);
    if (*train) return DoTrain(c, out);
    if (*predict) return DoPredict(c, out);
    if (*grid) return DoGridSearch(c, out);
    if (*efit) return DoEnsembleFit(c, out);
    if (*eapply) return DoEnsembleApply(c, out);
    if (*evaluate) return DoEvaluate(c, out);
    if (*ablate) return DoAblate(c, out);
    if (*importances) return DoImportances(c, out);
    if (*synth_cmd) return DoSynth(c, out);
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitDataError;
  }
  return kExitUsage;
}

int Main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return Run(args, std::cout, std::cerr);
}

}  // namespace partsrl::cli
