#include "partsrl/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <utility>

#include "json.hpp"

#include "partsrl/errors.hpp"

namespace partsrl::pipeline {

std::size_t Document::token_count() const {
  std::size_t n = 0;
  for (const auto& s : sentences) n += s.size();
  return n;
}

Document MakeDocument(std::vector<corpus::Sentence> sentences,
                      std::vector<tree::ParseTree> trees) {
  Document doc;
  if (!trees.empty() && trees.size() != sentences.size())
    throw AlignmentError(std::to_string(trees.size()) + " trees for " +
                         std::to_string(sentences.size()) + " sentences");
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    corpus::Validate(sentences[i]);
    doc.instances.push_back(corpus::ExtractInstance(sentences[i]));
    if (!trees.empty()) {
      try {
        doc.trees.push_back(
            tree::AlignLeaves(tree::RemoveEmptyElements(trees[i]), sentences[i]));
      } catch (const AlignmentError& e) {
        throw AlignmentError("tree " + std::to_string(i + 1) + ": " + e.what());
      }
    }
  }
  doc.sentences = std::move(sentences);
  return doc;
}

Document LoadDocument(const std::string& conll_path, const std::string& trees_path) {
  auto sentences = corpus::ReadConllFile(conll_path);
  std::vector<tree::ParseTree> trees;
  if (!trees_path.empty()) trees = tree::ReadTreeFile(trees_path);
  try {
    return MakeDocument(std::move(sentences), std::move(trees));
  } catch (const AlignmentError& e) {
    throw AlignmentError(trees_path + ": " + e.what());
  }
}

namespace {

bool Enabled(const FeatureConfig& config, features::Group group) {
  return std::find(config.groups.begin(), config.groups.end(), group) != config.groups.end();
}

bool WantsEmbeddings(const FeatureConfig& config) {
  return Enabled(config, features::Group::kBasicEmbed) ||
         Enabled(config, features::Group::kSlashEmbed);
}

}  // namespace

std::vector<features::FeatureRecord> SentenceRecords(const Document& doc, std::size_t s,
                                                     const FeatureConfig& config,
                                                     const EmbeddingInputs& embeddings) {
  const corpus::Sentence& sentence = doc.sentences.at(s);
  const corpus::Instance& instance = doc.instances.at(s);
  const features::FeatureRecord classes =
      features::PredicateClassFeatures(instance, config.task);
  std::vector<features::FeatureRecord> out;
  out.reserve(sentence.size());
  for (std::size_t i = 0; i < sentence.size(); ++i) {
    features::FeatureRecord rec = features::WindowFeatures(sentence, i);
    rec.Merge(features::DistanceFeatures(instance, i));
    rec.Merge(features::BioPathFeatures(sentence, instance, i));
    if (doc.has_trees()) rec.Merge(features::Type2PathFeatures(doc.trees[s], instance, i));
    rec.Merge(classes);
    if (embeddings.enabled())
      rec.Merge(embed::CosineFeatures(sentence, i, *embeddings.profile, *embeddings.store));
    out.push_back(features::FilterGroups(rec, config.groups));
  }
  return out;
}

std::vector<int> SentenceLabels(const Document& doc, std::size_t s) {
  std::vector<int> labels(doc.sentences.at(s).size(), 0);
  if (const auto& arg1 = doc.instances.at(s).arg1_index) labels[*arg1] = 1;
  return labels;
}

TrainingData PrepareTraining(const Document& train, const FeatureConfig& features,
                             encoding::Mode mode, const embed::VectorStore* store) {
  if (train.sentences.empty()) throw Error("empty training document");
  TrainingData data;
  data.features = features;
  data.uses_trees = train.has_trees();

  if (store != nullptr && WantsEmbeddings(features)) {
    std::vector<embed::LabeledSentence> labeled;
    for (std::size_t s = 0; s < train.sentences.size(); ++s)
      if (train.instances[s].arg1_index)
        labeled.push_back({&train.sentences[s], &train.instances[s]});
    data.profile = embed::FitAverages(labeled, *store);
  }
  const EmbeddingInputs embeddings{data.profile ? store : nullptr,
                                   data.profile ? &*data.profile : nullptr};

  std::vector<features::FeatureRecord> records;
  records.reserve(train.token_count());
  for (std::size_t s = 0; s < train.sentences.size(); ++s) {
    auto recs = SentenceRecords(train, s, features, embeddings);
    std::move(recs.begin(), recs.end(), std::back_inserter(records));
    const auto labels = SentenceLabels(train, s);
    data.labels.insert(data.labels.end(), labels.begin(), labels.end());
  }
  data.vocab = encoding::BuildVocab(records, mode);
  data.X = boost::SparseMatrix(data.vocab.width());
  for (const auto& rec : records) data.X.AddRow(encoding::VectorizeSparse(rec, data.vocab).entries);
  return data;
}

System::System(FeatureConfig features, encoding::Vocabulary vocab,
               std::optional<embed::AverageProfile> profile, bool uses_trees,
               boost::BoostModel model)
    : features_(std::move(features)),
      vocab_(std::move(vocab)),
      profile_(std::move(profile)),
      uses_trees_(uses_trees),
      model_(std::move(model)) {
  if (model_.width() != vocab_.width())
    throw Error("model width " + std::to_string(model_.width()) +
                " does not match vocabulary width " + std::to_string(vocab_.width()));
}

System System::WithModel(boost::BoostModel model) const {
  return System(features_, vocab_, profile_, uses_trees_, std::move(model));
}

void System::CheckInputs(const Document& doc, const embed::VectorStore* store) const {
  if (uses_trees_ && !doc.has_trees())
    throw Error("model was trained with parse trees; supply trees for this input");
  if (!uses_trees_ && doc.has_trees())
    throw Error("model was trained without parse trees; do not supply trees");
  if (profile_ && store == nullptr)
    throw Error("model was trained with embedding features; supply vectors");
  if (profile_ && store->dimension() != profile_->dimension())
    throw Error("vector dimension " + std::to_string(store->dimension()) +
                " does not match the model's " + std::to_string(profile_->dimension()));
}

std::vector<features::FeatureRecord> System::Records(const Document& doc, std::size_t s,
                                                     const embed::VectorStore* store) const {
  CheckInputs(doc, store);
  const EmbeddingInputs embeddings{profile_ ? store : nullptr, profile_ ? &*profile_ : nullptr};
  return SentenceRecords(doc, s, features_, embeddings);
}

ensemble::ScoreTable System::Score(const Document& doc, const embed::VectorStore* store) const {
  CheckInputs(doc, store);
  ensemble::ScoreTable table("features");
  for (std::size_t s = 0; s < doc.sentences.size(); ++s) {
    const auto records = Records(doc, s, store);
    for (std::size_t i = 0; i < records.size(); ++i)
      table.Add(doc.sentences[s].sentence_id, i,
                model_.Score(encoding::VectorizeSparse(records[i], vocab_)));
  }
  return table;
}

std::string System::ToJson() const {
  nlohmann::json j;
  j["format"] = "partsrl-system";
  j["version"] = 1;
  j["task"] = features::TaskName(features_.task);
  auto groups = nlohmann::json::array();
  for (auto g : features_.groups) groups.push_back(features::GroupName(g));
  j["groups"] = groups;
  j["uses_trees"] = uses_trees_;
  j["vocabulary"] = vocab_.Serialize();
  j["profile"] = profile_ ? nlohmann::json(profile_->Serialize()) : nlohmann::json(nullptr);
  j["model"] = nlohmann::json::parse(model_.ToJson());
  return j.dump(1) + "\n";
}

System System::FromJson(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("model JSON: ") + e.what(), 0);
  }
  try {
    if (j.at("format") != "partsrl-system") throw ParseError("not a partsrl model file", 0);
    if (j.at("version") != 1)
      throw ParseError("unsupported model version " + j.at("version").dump(), 0);
    FeatureConfig config;
    config.task = features::ParseTask(j.at("task").get<std::string>());
    config.groups.clear();
    for (const auto& g : j.at("groups")) {
      for (auto group : features::ParseGroupName(g.get<std::string>()))
        config.groups.push_back(group);
    }
    std::optional<embed::AverageProfile> profile;
    if (!j.at("profile").is_null())
      profile = embed::AverageProfile::Deserialize(j.at("profile").get<std::string>());
    return System(std::move(config),
                  encoding::Vocabulary::Deserialize(j.at("vocabulary").get<std::string>()),
                  std::move(profile), j.at("uses_trees").get<bool>(),
                  boost::BoostModel::FromJson(j.at("model").dump()));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("model JSON: ") + e.what(), 0);
  }
}

System Train(const Document& train, const TrainOptions& options,
             const embed::VectorStore* store) {
  TrainingData data = PrepareTraining(train, options.features, options.encoding, store);
  boost::BoostModel model = boost::FitAdaBoost(data.X, data.labels, options.boost);
  return System(std::move(data.features), std::move(data.vocab), std::move(data.profile),
                data.uses_trees, std::move(model));
}

System LoadSystem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return System::FromJson(text.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what(), e.line());
  }
}

void SaveSystem(const System& system, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << system.ToJson();
  if (!out) throw Error("failed writing " + path);
}

}  // namespace partsrl::pipeline
