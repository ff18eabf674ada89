// Copyright 2026 The tgtriage Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tgtriage/experiment.h"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <sstream>
#include <thread>

#include "tgtriage/error.h"
#include "tgtriage/files.h"

namespace tgtriage::pipeline {
namespace {

constexpr const char *kModelSections[] = {"models.fnn", "models.lstm",
                                          "models.svm"};

std::string Fmt(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

models::TrainConfig ReadTrainConfig(const ConfigFile &file,
                                    const std::string &section) {
  models::TrainConfig c;
  c.epochs = static_cast<int>(file.GetInt(section, "epochs", c.epochs));
  c.batch_size =
      static_cast<int>(file.GetInt(section, "batch_size", c.batch_size));
  c.dropout_rate = file.GetDouble(section, "dropout", c.dropout_rate);
  c.adam.learning_rate =
      file.GetDouble(section, "learning_rate", c.adam.learning_rate);
  c.adam.beta1 = file.GetDouble(section, "beta1", c.adam.beta1);
  c.adam.beta2 = file.GetDouble(section, "beta2", c.adam.beta2);
  c.adam.epsilon = file.GetDouble(section, "epsilon", c.adam.epsilon);
  c.svm_lambda = file.GetDouble(section, "lambda", c.svm_lambda);
  return c;
}

struct PreparedSplit {
  std::uint64_t seed = 0;
  textvec::TfidfModel vectorizer;
  models::Dataset train;
  models::Dataset test;
  std::size_t train_messages = 0;
  std::size_t test_messages = 0;
};

PreparedSplit Prepare(const corpus::LabeledDataset &data,
                      const ExperimentConfig &config, std::uint64_t seed) {
  corpus::SplitSpec spec = config.split;
  spec.seed = seed;
  corpus::Split split = corpus::SplitDataset(data, spec);
  const std::vector<std::string> train_docs = split.train.Contents();
  textvec::TfidfModel vectorizer =
      textvec::TfidfModel::Fit(train_docs, config.tokenizer);
  models::Dataset train = Vectorize(vectorizer, split.train);
  models::Dataset test = Vectorize(vectorizer, split.test);
  PreparedSplit out{seed, std::move(vectorizer), std::move(train),
                    std::move(test), split.train.size(), split.test.size()};
  return out;
}

TrialRecord RunTrial(const ModelSetting &setting, int trial, std::uint64_t seed,
                     const PreparedSplit &split) {
  TrialRecord record;
  record.model = setting.kind;
  record.trial = trial;
  record.seed = seed;
  record.split_seed = split.seed;
  models::TrainConfig train = setting.train;
  train.seed = seed;
  try {
    const models::Classifier model = models::Train(
        setting.kind, split.train, train, &split.test, &record.trace);
    std::vector<int> predicted;
    predicted.reserve(split.test.size());
    for (const models::Prediction &p :
         models::PredictAll(model, split.test.inputs)) {
      predicted.push_back(p.label);
    }
    record.report = metrics::Evaluate(predicted, split.test.labels);
  } catch (const TrainingError &e) {
    throw TrainingError(std::string(models::ToString(setting.kind)) +
                            " trial " + std::to_string(trial) + ": " + e.what(),
                        e.epoch(), e.batch());
  }
  return record;
}

}  // namespace

ExperimentConfig ExperimentConfig::Defaults() {
  ExperimentConfig c;
  for (models::ModelKind k : {models::ModelKind::kFnn, models::ModelKind::kLstm,
                              models::ModelKind::kSvm}) {
    c.models.push_back({k, models::TrainConfig{}});
  }
  return c;
}

ExperimentConfig ExperimentConfig::FromConfig(
    const ConfigFile &file, const std::filesystem::path &base_dir) {
  ExperimentConfig c;
  auto resolve = [&](const std::string &p) {
    std::filesystem::path path(p);
    return path.is_absolute() ? path : base_dir / path;
  };

  for (const std::string &p : file.GetList("dataset", "paths")) {
    c.dataset_paths.push_back(resolve(p));
  }
  if (file.GetBool("dataset", "synthetic", false)) {
    SyntheticCorpusSpec s;
    const std::string sec = "dataset.synthetic";
    s.politics_docs = file.GetUint(sec, "politics_docs", s.politics_docs);
    s.cyber_docs = file.GetUint(sec, "cyber_docs", s.cyber_docs);
    s.politics_vocab = file.GetUint(sec, "politics_vocab", s.politics_vocab);
    s.cyber_vocab = file.GetUint(sec, "cyber_vocab", s.cyber_vocab);
    s.overlap = file.GetDouble(sec, "overlap", s.overlap);
    s.min_tokens = file.GetUint(sec, "min_tokens", s.min_tokens);
    s.max_tokens = file.GetUint(sec, "max_tokens", s.max_tokens);
    s.zipf_exponent = file.GetDouble(sec, "zipf_exponent", s.zipf_exponent);
    s.seed = file.GetUint(sec, "seed", s.seed);
    c.synthetic = s;
  }

  c.split.train_fraction =
      file.GetDouble("split", "train_fraction", c.split.train_fraction);
  c.split.seed = file.GetUint("split", "seed", c.split.seed);
  c.tokenizer.lowercase =
      file.GetBool("tokenizer", "lowercase", c.tokenizer.lowercase);
  c.tokenizer.min_token_length = static_cast<int>(file.GetInt(
      "tokenizer", "min_token_length", c.tokenizer.min_token_length));

  std::vector<std::string> names = file.GetList("models", "list");
  if (names.empty()) names = {"fnn", "lstm", "svm"};
  for (const std::string &name : names) {
    const models::ModelKind kind = models::ParseModelKind(name);
    c.models.push_back({kind, ReadTrainConfig(file, "models." + name)});
  }
  // Sections of models not in the list are still read so typos there are
  // reported rather than silently ignored.
  for (const char *sec : kModelSections) ReadTrainConfig(file, sec);

  c.trials = static_cast<int>(file.GetInt("experiment", "trials", c.trials));
  c.base_seed = file.GetUint("experiment", "base_seed", c.base_seed);
  c.resplit_per_trial =
      file.GetBool("experiment", "resplit_per_trial", c.resplit_per_trial);
  c.threads = static_cast<int>(file.GetInt("experiment", "threads", c.threads));
  if (auto dir = file.Get("output", "dir")) c.output_dir = resolve(*dir);

  const std::vector<std::string> unused = file.UnusedKeys();
  if (!unused.empty()) {
    std::string list;
    for (const std::string &k : unused) list += (list.empty() ? "" : ", ") + k;
    throw UsageError("config: unknown keys: " + list);
  }
  c.Validate();
  return c;
}

void ExperimentConfig::Validate() const {
  if (dataset_paths.empty() && !synthetic) {
    throw UsageError("experiment needs dataset paths or a synthetic corpus");
  }
  if (synthetic) synthetic->Validate();
  if (!(split.train_fraction > 0.0 && split.train_fraction < 1.0)) {
    throw UsageError("split.train_fraction must lie in (0, 1)");
  }
  if (tokenizer.min_token_length < 1) {
    throw UsageError("tokenizer.min_token_length must be >= 1");
  }
  if (models.empty()) throw UsageError("experiment needs at least one model");
  for (const ModelSetting &m : models) m.train.Validate();
  if (trials < 1) throw UsageError("experiment.trials must be >= 1");
  if (threads < 1) throw UsageError("experiment.threads must be >= 1");
}

nlohmann::json ExperimentConfig::ToJson() const {
  nlohmann::json paths = nlohmann::json::array();
  for (const auto &p : dataset_paths) paths.push_back(p.generic_string());
  nlohmann::json model_list = nlohmann::json::array();
  for (const ModelSetting &m : models) {
    nlohmann::json train = m.train.ToJson();
    train.erase("seed");
    model_list.push_back(
        {{"kind", std::string(models::ToString(m.kind))}, {"train", train}});
  }
  nlohmann::json j = {
      {"dataset_paths", paths},
      {"split",
       {{"train_fraction", split.train_fraction}, {"seed", split.seed}}},
      {"tokenizer",
       {{"lowercase", tokenizer.lowercase},
        {"min_token_length", tokenizer.min_token_length}}},
      {"models", model_list},
      {"trials", trials},
      {"base_seed", base_seed},
      {"resplit_per_trial", resplit_per_trial}};
  j["synthetic"] = synthetic ? synthetic->ToJson() : nlohmann::json();
  return j;
}

nlohmann::json TrialRecord::ToJson() const {
  return {{"model", std::string(models::ToString(model))},
          {"trial", trial},
          {"seed", seed},
          {"split_seed", split_seed},
          {"metrics", report.ToJson()},
          {"train_loss", trace.train_loss},
          {"eval_loss", trace.eval_loss}};
}

TrialRecord TrialRecord::FromJson(const nlohmann::json &json) {
  try {
    TrialRecord r;
    r.model = models::ParseModelKind(json.at("model").get<std::string>());
    r.trial = json.at("trial").get<int>();
    r.seed = json.at("seed").get<std::uint64_t>();
    r.split_seed = json.at("split_seed").get<std::uint64_t>();
    r.report = metrics::EvalReport::FromJson(json.at("metrics"));
    r.trace.train_loss = json.at("train_loss").get<std::vector<double>>();
    r.trace.eval_loss = json.at("eval_loss").get<std::vector<double>>();
    return r;
  } catch (const nlohmann::json::exception &e) {
    throw FormatError(std::string("trial record: ") + e.what());
  }
}

std::vector<BestTrial> SelectBest(std::span<const TrialRecord> trials) {
  std::vector<BestTrial> best;
  for (const TrialRecord &t : trials) {
    auto it = std::find_if(best.begin(), best.end(),
                           [&](const BestTrial &b) { return b.model == t.model; });
    BestTrial candidate{t.model, t.trial, t.seed, t.report};
    if (it == best.end()) {
      best.push_back(candidate);
    } else if (t.report.accuracy > it->report.accuracy ||
               (t.report.accuracy == it->report.accuracy && t.seed < it->seed)) {
      *it = candidate;
    }
  }
  return best;
}

nlohmann::json ExperimentReport::ToJson() const {
  nlohmann::json trial_list = nlohmann::json::array();
  for (const TrialRecord &t : trials) trial_list.push_back(t.ToJson());
  nlohmann::json best_list = nlohmann::json::array();
  std::vector<metrics::NamedReport> named;
  for (const BestTrial &b : best) {
    best_list.push_back({{"model", std::string(models::ToString(b.model))},
                         {"trial", b.trial},
                         {"seed", b.seed},
                         {"metrics", b.report.ToJson()}});
    named.emplace_back(std::string(models::ToString(b.model)), b.report);
  }
  return {{"format", "tgtriage.experiment"},
          {"version", std::string(Version())},
          {"config", config},
          {"assumptions", AssumptionLog()},
          {"dataset",
           {{"messages", dataset.messages},
            {"politics", dataset.politics},
            {"cyber", dataset.cyber},
            {"train", dataset.train},
            {"test", dataset.test},
            {"vocabulary", dataset.vocabulary}}},
          {"trials", trial_list},
          {"best", best_list},
          {"comparison", metrics::ComparisonJson(named)}};
}

std::string ExperimentReport::ToMarkdown() const {
  std::ostringstream out;
  out << "# Experiment report\n\n";
  out << "tgtriage " << Version() << "\n\n";
  out << "## Dataset\n\n";
  out << "- messages: " << dataset.messages << " (politics " << dataset.politics
      << ", cyber " << dataset.cyber << ")\n";
  out << "- split: " << dataset.train << " train / " << dataset.test
      << " test\n";
  out << "- vocabulary: " << dataset.vocabulary << " terms\n\n";

  out << "## Best trial per model\n\n";
  std::vector<metrics::NamedReport> named;
  for (const BestTrial &b : best) {
    named.emplace_back(std::string(models::ToString(b.model)), b.report);
  }
  out << metrics::RenderMarkdownTable(named) << "\n";
  for (const BestTrial &b : best) {
    out << "- " << models::ToString(b.model) << ": trial " << b.trial
        << ", seed " << b.seed << "\n";
  }

  out << "\n## Trials\n\n";
  out << "| model | trial | seed | split seed | accuracy | final train loss |\n";
  out << "|---|---|---|---|---|---|\n";
  for (const TrialRecord &t : trials) {
    out << "| " << models::ToString(t.model) << " | " << t.trial << " | "
        << t.seed << " | " << t.split_seed << " | "
        << Fmt(t.report.accuracy, 2) << " | "
        << (t.trace.train_loss.empty() ? "-" : Fmt(t.trace.train_loss.back()))
        << " |\n";
  }

  out << "\n## Assumptions\n\n";
  for (const std::string &a : AssumptionLog()) out << "- " << a << "\n";
  return out.str();
}

std::vector<std::string> AssumptionLog() {
  return {
      "Trial t trains every model with seed base_seed + t. The train/test "
      "split is shared by all trials unless resplit_per_trial is set, in "
      "which case trial t splits with split.seed + t.",
      "The reported model is the trial with the highest test accuracy; ties "
      "go to the lowest seed. The per-epoch test loss is recorded but never "
      "used to pick parameters.",
      "The TF-IDF vocabulary and idf weights are fitted on the training "
      "split only.",
      "RMSE, RAE, RSE and R2 are computed on hard 0/1 predictions, so RMSE "
      "equals sqrt(1 - accuracy).",
      "The LSTM reads each message as one timestep with zero initial state.",
      "The SVM is trained with Pegasos and predicts with the average of its "
      "iterates. Its bias is regularized as an extra constant feature.",
      "A synthetic corpus, when used, only exercises the pipeline; its "
      "accuracies say nothing about real channel data."};
}

corpus::LabeledDataset LoadExperimentData(const ExperimentConfig &config) {
  std::vector<corpus::LabeledDataset> parts;
  for (const auto &path : config.dataset_paths) {
    parts.push_back(corpus::LoadLabeledCsv(ReadFile(path)));
  }
  if (config.synthetic) {
    parts.push_back(GenerateSyntheticCorpus(*config.synthetic));
  }
  if (parts.size() == 1) return std::move(parts.front());
  return corpus::Merge(parts);
}

models::Dataset Vectorize(const textvec::TfidfModel &vectorizer,
                          const corpus::LabeledDataset &data) {
  models::Dataset out;
  out.dim = vectorizer.dim();
  out.inputs = vectorizer.TransformAll(data.Contents());
  out.labels = data.Labels();
  return out;
}

ExperimentReport RunExperiment(const ExperimentConfig &config) {
  config.Validate();
  const corpus::LabeledDataset data = LoadExperimentData(config);

  std::vector<PreparedSplit> splits;
  const int split_count = config.resplit_per_trial ? config.trials : 1;
  for (int t = 0; t < split_count; ++t) {
    splits.push_back(Prepare(data, config,
                             config.split.seed + static_cast<std::uint64_t>(t)));
  }

  ExperimentReport report;
  report.config = config.ToJson();
  report.dataset.messages = data.size();
  report.dataset.politics = data.class_counts()[0];
  report.dataset.cyber = data.class_counts()[1];
  report.dataset.train = splits.front().train_messages;
  report.dataset.test = splits.front().test_messages;
  report.dataset.vocabulary = splits.front().vectorizer.dim();

  // Jobs are ordered model-major; every job owns its slot so the log does
  // not depend on scheduling.
  const std::size_t jobs = config.models.size() * config.trials;
  std::vector<TrialRecord> records(jobs);
  std::vector<std::exception_ptr> failures(jobs);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t j = next++; j < jobs; j = next++) {
      const ModelSetting &setting = config.models[j / config.trials];
      const int trial = static_cast<int>(j % config.trials);
      const PreparedSplit &split =
          splits[config.resplit_per_trial ? trial : 0];
      try {
        records[j] = RunTrial(setting, trial,
                              config.base_seed + static_cast<std::uint64_t>(trial),
                              split);
      } catch (...) {
        failures[j] = std::current_exception();
      }
    }
  };
  const std::size_t n_threads =
      std::min<std::size_t>(static_cast<std::size_t>(config.threads), jobs);
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t k = 0; k < n_threads; ++k) pool.emplace_back(worker);
    for (std::thread &t : pool) t.join();
  }
  for (const std::exception_ptr &f : failures) {
    if (f) std::rethrow_exception(f);
  }

  report.trials = std::move(records);
  report.best = SelectBest(report.trials);
  return report;
}

void WriteExperimentReport(const ExperimentReport &report,
                           const std::filesystem::path &output_dir) {
  WriteFileAtomic(output_dir / "report.json", report.ToJson().dump(2) + "\n");
  WriteFileAtomic(output_dir / "report.md", report.ToMarkdown());
}

}  // namespace tgtriage::pipeline
