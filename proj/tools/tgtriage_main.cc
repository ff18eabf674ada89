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

// tgtriage command-line tool. Every subcommand reads an optional INI config
// (--config) whose values are overridden by --set section.key=value and
// then by the subcommand's own flags. Results go to stdout as JSON; --json
// and --markdown write them to files as well.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#if __has_include(<CLI11.hpp>)
#include <CLI11.hpp>
#else
#include <CLI/CLI.hpp>
#endif
#include <nlohmann/json.hpp>

#include "tgtriage/analysis.h"
#include "tgtriage/config.h"
#include "tgtriage/corpus.h"
#include "tgtriage/entities.h"
#include "tgtriage/error.h"
#include "tgtriage/experiment.h"
#include "tgtriage/files.h"
#include "tgtriage/metrics.h"
#include "tgtriage/models.h"
#include "tgtriage/sentiment.h"
#include "tgtriage/synthetic.h"
#include "tgtriage/textvec.h"

namespace fs = std::filesystem;
using tgtriage::pipeline::ConfigFile;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitNumerical = 4;

struct Invocation {
  std::string config_path;
  std::vector<std::string> overrides;  // from --set, then from flags
  std::vector<std::string> flag_overrides;
  std::string json_path;
  std::string markdown_path;
};

std::string Absolute(const std::string &path) {
  return fs::absolute(path).lexically_normal().string();
}

void AddCommon(CLI::App *sub, Invocation &inv) {
  sub->add_option("--config", inv.config_path, "INI configuration file");
  sub->add_option("--set", inv.overrides,
                  "Override a config value (section.key=value)");
  sub->add_option("--json", inv.json_path, "Also write the JSON result here");
  sub->add_option("--markdown", inv.markdown_path,
                  "Write a markdown rendering here");
}

void BindValue(CLI::App *sub, Invocation &inv, const std::string &flag,
               const std::string &key, const std::string &help) {
  sub->add_option_function<std::string>(
      flag,
      [&inv, key](const std::string &v) {
        inv.flag_overrides.push_back(key + "=" + v);
      },
      help);
}

void BindPath(CLI::App *sub, Invocation &inv, const std::string &flag,
              const std::string &key, const std::string &help) {
  sub->add_option_function<std::string>(
      flag,
      [&inv, key](const std::string &v) {
        inv.flag_overrides.push_back(key + "=" + Absolute(v));
      },
      help);
}

void BindPaths(CLI::App *sub, Invocation &inv, const std::string &flag,
               const std::string &key, const std::string &help) {
  sub->add_option_function<std::vector<std::string>>(
      flag,
      [&inv, key](const std::vector<std::string> &vs) {
        std::string joined;
        for (const std::string &v : vs) {
          joined += (joined.empty() ? "" : ",") + Absolute(v);
        }
        inv.flag_overrides.push_back(key + "=" + joined);
      },
      help);
}

void BindFlag(CLI::App *sub, Invocation &inv, const std::string &flag,
              const std::string &key, const std::string &help) {
  sub->add_flag_callback(
      flag, [&inv, key] { inv.flag_overrides.push_back(key + "=true"); }, help);
}

// Config values that name files resolve against the config file's
// directory; flag values were made absolute when parsed.
class Settings {
 public:
  explicit Settings(const Invocation &inv) {
    if (!inv.config_path.empty()) {
      file_ = ConfigFile::Load(inv.config_path);
      base_ = fs::absolute(inv.config_path).parent_path();
    } else {
      base_ = fs::current_path();
    }
    for (const std::string &o : inv.overrides) file_.ApplyOverride(o);
    for (const std::string &o : inv.flag_overrides) file_.ApplyOverride(o);
  }

  ConfigFile &file() { return file_; }
  const fs::path &base() const { return base_; }

  std::string Path(const std::string &section, const std::string &key) {
    auto v = file_.Get(section, key);
    if (!v || v->empty()) return {};
    fs::path p(*v);
    return (p.is_absolute() ? p : base_ / p).string();
  }

  std::string RequirePath(const std::string &section, const std::string &key,
                          const std::string &flag) {
    std::string p = Path(section, key);
    if (p.empty()) {
      throw tgtriage::UsageError("missing " + flag + " (or " + section + "." +
                                 key + " in the config)");
    }
    return p;
  }

  std::vector<std::string> Paths(const std::string &section,
                                 const std::string &key) {
    std::vector<std::string> out;
    for (const std::string &v : file_.GetList(section, key)) {
      fs::path p(v);
      out.push_back((p.is_absolute() ? p : base_ / p).string());
    }
    return out;
  }

  // Rejects keys in the sections this command owns that nobody read.
  void CheckUnused(const std::vector<std::string> &sections) const {
    std::string unknown;
    for (const std::string &key : file_.UnusedKeys()) {
      for (const std::string &s : sections) {
        if (key.rfind(s + ".", 0) == 0 &&
            key.find('.', s.size() + 1) == std::string::npos) {
          unknown += (unknown.empty() ? "" : ", ") + key;
        }
      }
    }
    if (!unknown.empty()) {
      throw tgtriage::UsageError("unknown config keys: " + unknown);
    }
  }

 private:
  ConfigFile file_;
  fs::path base_;
};

void Emit(const Invocation &inv, const nlohmann::json &result,
          const std::string &markdown) {
  const std::string text = result.dump(2) + "\n";
  std::cout << text;
  if (!inv.json_path.empty()) tgtriage::WriteFileAtomic(inv.json_path, text);
  if (!inv.markdown_path.empty()) {
    tgtriage::WriteFileAtomic(inv.markdown_path, markdown);
  }
}

tgtriage::corpus::LabeledDataset LoadLabeled(const std::string &path) {
  return tgtriage::corpus::LoadLabeledCsv(tgtriage::ReadFile(path));
}

tgtriage::models::TrainConfig ReadTrainConfig(ConfigFile &cfg,
                                              const std::string &section) {
  tgtriage::models::TrainConfig c;
  c.epochs = static_cast<int>(cfg.GetInt(section, "epochs", c.epochs));
  c.batch_size =
      static_cast<int>(cfg.GetInt(section, "batch_size", c.batch_size));
  c.dropout_rate = cfg.GetDouble(section, "dropout", c.dropout_rate);
  c.adam.learning_rate =
      cfg.GetDouble(section, "learning_rate", c.adam.learning_rate);
  c.adam.beta1 = cfg.GetDouble(section, "beta1", c.adam.beta1);
  c.adam.beta2 = cfg.GetDouble(section, "beta2", c.adam.beta2);
  c.adam.epsilon = cfg.GetDouble(section, "epsilon", c.adam.epsilon);
  c.svm_lambda = cfg.GetDouble(section, "lambda", c.svm_lambda);
  c.seed = cfg.GetUint(section, "seed", c.seed);
  c.Validate();
  return c;
}

tgtriage::textvec::TokenizerConfig ReadTokenizer(ConfigFile &cfg) {
  tgtriage::textvec::TokenizerConfig t;
  t.lowercase = cfg.GetBool("tokenizer", "lowercase", t.lowercase);
  t.min_token_length = static_cast<int>(
      cfg.GetInt("tokenizer", "min_token_length", t.min_token_length));
  if (t.min_token_length < 1) {
    throw tgtriage::UsageError("tokenizer.min_token_length must be >= 1");
  }
  return t;
}

std::string Fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

// ---------------------------------------------------------------------------

void RunIngest(const Invocation &inv) {
  Settings s(inv);
  const std::vector<std::string> exports = s.Paths("ingest", "export");
  if (exports.empty()) throw tgtriage::UsageError("missing --export");
  const std::string out = s.RequirePath("ingest", "out", "--out");
  const auto label_value = s.file().Get("ingest", "label");
  s.CheckUnused({"ingest"});

  std::vector<tgtriage::corpus::Message> messages;
  std::map<std::string, std::size_t> per_group;
  for (const std::string &path : exports) {
    for (auto &m : tgtriage::corpus::ParseTelegramExport(
             tgtriage::ReadFile(path))) {
      if (label_value && !label_value->empty()) {
        if (*label_value == "0") {
          m.label = tgtriage::corpus::Label::kPolitics;
        } else if (*label_value == "1") {
          m.label = tgtriage::corpus::Label::kCyber;
        } else {
          throw tgtriage::UsageError("--label must be 0 or 1");
        }
      }
      ++per_group[m.group];
      messages.push_back(std::move(m));
    }
  }
  tgtriage::WriteFileAtomic(out, tgtriage::corpus::ToCsv(messages));

  nlohmann::json result = {{"command", "ingest"},
                           {"out", out},
                           {"messages", messages.size()},
                           {"groups", per_group}};
  std::string md = "# Ingest\n\n" + std::to_string(messages.size()) +
                   " messages written to " + out + "\n\n";
  for (const auto &[group, n] : per_group) {
    md += "- " + group + ": " + std::to_string(n) + "\n";
  }
  Emit(inv, result, md);
}

void RunSplit(const Invocation &inv) {
  Settings s(inv);
  const std::string data = s.RequirePath("split", "data", "--data");
  tgtriage::corpus::SplitSpec spec;
  spec.seed = s.file().GetUint("split", "seed", spec.seed);
  spec.train_fraction =
      s.file().GetDouble("split", "train_fraction", spec.train_fraction);
  std::string out_dir = s.Path("split", "out_dir");
  if (out_dir.empty()) out_dir = fs::current_path().string();
  s.CheckUnused({"split"});
  if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0)) {
    throw tgtriage::UsageError("--frac must lie in (0, 1)");
  }

  const auto split = tgtriage::corpus::SplitDataset(LoadLabeled(data), spec);
  const fs::path train_path = fs::path(out_dir) / "train.csv";
  const fs::path test_path = fs::path(out_dir) / "test.csv";
  tgtriage::WriteFileAtomic(train_path, tgtriage::corpus::ToCsv(split.train));
  tgtriage::WriteFileAtomic(test_path, tgtriage::corpus::ToCsv(split.test));

  nlohmann::json result = {{"command", "split"},
                           {"seed", spec.seed},
                           {"train_fraction", spec.train_fraction},
                           {"train", {{"path", train_path.string()},
                                      {"messages", split.train.size()}}},
                           {"test", {{"path", test_path.string()},
                                     {"messages", split.test.size()}}}};
  std::string md = "# Split\n\n- seed: " + std::to_string(spec.seed) +
                   "\n- train: " + std::to_string(split.train.size()) + " (" +
                   train_path.string() + ")\n- test: " +
                   std::to_string(split.test.size()) + " (" +
                   test_path.string() + ")\n";
  Emit(inv, result, md);
}

void RunTrain(const Invocation &raw) {
  // Hyperparameter flags are bound as models.?.<key>; the model name is
  // only known once the config and flags are merged.
  const std::string kind_name =
      Settings(raw).file().GetString("train", "model", "");
  if (kind_name.empty()) throw tgtriage::UsageError("missing --model");
  Invocation inv = raw;
  for (std::string &o : inv.flag_overrides) {
    if (o.rfind("models.?.", 0) == 0) o.replace(7, 1, kind_name);
  }
  Settings s(inv);
  s.file().GetString("train", "model", "");  // marks the key as used
  const auto kind = tgtriage::models::ParseModelKind(kind_name);
  const std::string data = s.RequirePath("train", "data", "--data");
  const std::string out = s.RequirePath("train", "out", "--out");
  const std::string eval_path = s.Path("train", "eval");
  const std::string section = "models." + kind_name;
  const auto config = ReadTrainConfig(s.file(), section);
  const auto tokenizer = ReadTokenizer(s.file());
  s.CheckUnused({"train", section, "tokenizer"});

  const auto dataset = LoadLabeled(data);
  const std::vector<std::string> docs = dataset.Contents();
  auto vectorizer = tgtriage::textvec::TfidfModel::Fit(docs, tokenizer);
  const auto train = tgtriage::pipeline::Vectorize(vectorizer, dataset);
  std::optional<tgtriage::models::Dataset> eval;
  if (!eval_path.empty()) {
    eval = tgtriage::pipeline::Vectorize(vectorizer, LoadLabeled(eval_path));
  }
  tgtriage::models::TrainTrace trace;
  tgtriage::models::Checkpoint ckpt{
      tgtriage::models::Train(kind, train, config, eval ? &*eval : nullptr,
                              &trace),
      config, std::move(vectorizer)};
  tgtriage::WriteFileAtomic(out, tgtriage::models::ToJson(ckpt).dump() + "\n");

  nlohmann::json result = {{"command", "train"},
                           {"model", kind_name},
                           {"checkpoint", out},
                           {"messages", dataset.size()},
                           {"input_dim", train.dim},
                           {"config", config.ToJson()},
                           {"train_loss", trace.train_loss},
                           {"eval_loss", trace.eval_loss}};
  std::string md = "# Train " + kind_name + "\n\n- messages: " +
                   std::to_string(dataset.size()) +
                   "\n- vocabulary: " + std::to_string(train.dim) +
                   "\n- checkpoint: " + out + "\n\n| epoch | train loss |" +
                   (trace.eval_loss.empty() ? "" : " eval loss |") + "\n|---|---|" +
                   (trace.eval_loss.empty() ? "" : "---|") + "\n";
  for (std::size_t e = 0; e < trace.train_loss.size(); ++e) {
    md += "| " + std::to_string(e + 1) + " | " + Fmt(trace.train_loss[e]) +
          " |" + (trace.eval_loss.empty() ? "" : " " + Fmt(trace.eval_loss[e]) + " |") +
          "\n";
  }
  Emit(inv, result, md);
}

std::vector<int> ReadPredictions(const std::string &path) {
  std::vector<int> out;
  const std::string text = tgtriage::ReadFile(path);
  std::size_t line_no = 0, pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    std::string line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) {
      line.pop_back();
    }
    if (line.empty()) continue;
    if (line != "0" && line != "1") {
      throw tgtriage::FormatError(path + ": line " + std::to_string(line_no) +
                                  ": prediction must be 0 or 1");
    }
    out.push_back(line == "1");
  }
  return out;
}

void RunEvaluate(const Invocation &inv) {
  Settings s(inv);
  const std::string data = s.RequirePath("evaluate", "data", "--data");
  const std::string model_path = s.Path("evaluate", "model");
  const std::string predictions_path = s.Path("evaluate", "predictions");
  const std::string name = s.file().GetString("evaluate", "name", "");
  s.CheckUnused({"evaluate"});
  if (model_path.empty() == predictions_path.empty()) {
    throw tgtriage::UsageError("give exactly one of --model or --predictions");
  }

  const auto dataset = LoadLabeled(data);
  std::vector<int> predicted;
  std::string model_name = name;
  if (!predictions_path.empty()) {
    predicted = ReadPredictions(predictions_path);
    if (model_name.empty()) model_name = "predictions";
  } else {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(tgtriage::ReadFile(model_path));
    } catch (const nlohmann::json::parse_error &e) {
      throw tgtriage::ParseError(model_path + ": " + e.what(), e.byte);
    }
    const auto ckpt = tgtriage::models::CheckpointFromJson(j);
    if (!ckpt.vectorizer) {
      throw tgtriage::FormatError(model_path + ": checkpoint has no vectorizer");
    }
    const auto test = tgtriage::pipeline::Vectorize(*ckpt.vectorizer, dataset);
    for (const auto &p : tgtriage::models::PredictAll(ckpt.model, test.inputs)) {
      predicted.push_back(p.label);
    }
    if (model_name.empty()) {
      model_name = std::string(
          tgtriage::models::ToString(tgtriage::models::KindOf(ckpt.model)));
    }
  }
  if (predicted.size() != dataset.size()) {
    throw tgtriage::DataError(
        "prediction count " + std::to_string(predicted.size()) +
        " does not match truth count " + std::to_string(dataset.size()));
  }
  const auto labels = dataset.Labels();
  const auto report = tgtriage::metrics::Evaluate(predicted, labels);
  nlohmann::json result = {{"command", "evaluate"},
                           {"model", model_name},
                           {"metrics", report.ToJson()}};
  const std::vector<tgtriage::metrics::NamedReport> named = {
      {model_name, report}};
  Emit(inv, result,
       "# Evaluation\n\n" + tgtriage::metrics::RenderMarkdownTable(named));
}

void RunAnalyze(const Invocation &inv) {
  Settings s(inv);
  const std::string data = s.Path("analyze", "data");
  const std::string export_path = s.Path("analyze", "export");
  bool want_sentiment = s.file().GetBool("analyze", "sentiment", false);
  bool want_entities = s.file().GetBool("analyze", "entities", false);
  std::string lexicon_path = s.Path("analyze", "lexicon");
  std::string gazetteer_path = s.Path("analyze", "gazetteer");
  std::string dates_path = s.Path("analyze", "date_terms");
  s.CheckUnused({"analyze"});
  if (data.empty() == export_path.empty()) {
    throw tgtriage::UsageError("give exactly one of --data or --export");
  }
  if (!want_sentiment && !want_entities) want_sentiment = want_entities = true;

  const std::vector<tgtriage::corpus::Message> messages =
      data.empty()
          ? tgtriage::corpus::ParseTelegramExport(tgtriage::ReadFile(export_path))
          : tgtriage::corpus::LoadMessageCsv(tgtriage::ReadFile(data));

  std::optional<tgtriage::sentiment::SentimentLexicon> lexicon;
  std::optional<tgtriage::entities::Gazetteer> gazetteer;
  if (want_sentiment) {
    if (lexicon_path.empty()) {
      lexicon_path = (tgtriage::DataDir() / "vader_lexicon.tsv").string();
    }
    lexicon = tgtriage::sentiment::SentimentLexicon::Load(lexicon_path);
  }
  if (want_entities) {
    if (gazetteer_path.empty()) {
      gazetteer_path = (tgtriage::DataDir() / "gazetteer.tsv").string();
    }
    if (dates_path.empty()) {
      dates_path = (tgtriage::DataDir() / "date_terms.txt").string();
    }
    gazetteer = tgtriage::entities::Gazetteer::Load(gazetteer_path);
    gazetteer->LoadDateTerms(dates_path);
  }
  const auto analyses = tgtriage::pipeline::Analyze(
      messages, lexicon ? &*lexicon : nullptr, gazetteer ? &*gazetteer : nullptr);
  Emit(inv,
       {{"command", "analyze"},
        {"messages", tgtriage::pipeline::AnalysisJson(analyses)}},
       tgtriage::pipeline::AnalysisMarkdown(messages, analyses));
}

nlohmann::json LoadJson(const std::string &path) {
  try {
    return nlohmann::json::parse(tgtriage::ReadFile(path));
  } catch (const nlohmann::json::parse_error &e) {
    throw tgtriage::ParseError(path + ": " + e.what(), e.byte);
  }
}

void RunReport(const Invocation &inv) {
  Settings s(inv);
  const std::string experiment = s.Path("report", "experiment");
  const std::vector<std::string> evals = s.file().GetList("report", "eval");
  s.CheckUnused({"report"});
  if (experiment.empty() == evals.empty()) {
    throw tgtriage::UsageError("give either --experiment or --eval entries");
  }

  std::vector<tgtriage::metrics::NamedReport> named;
  nlohmann::json result = {{"command", "report"}};
  if (!experiment.empty()) {
    // Best-of-N is recomputed from the trial log.
    const nlohmann::json j = LoadJson(experiment);
    std::vector<tgtriage::pipeline::TrialRecord> trials;
    try {
      for (const auto &t : j.at("trials")) {
        trials.push_back(tgtriage::pipeline::TrialRecord::FromJson(t));
      }
    } catch (const nlohmann::json::exception &e) {
      throw tgtriage::FormatError(experiment + ": " + e.what());
    }
    nlohmann::json best = nlohmann::json::array();
    for (const auto &b : tgtriage::pipeline::SelectBest(trials)) {
      const std::string model(tgtriage::models::ToString(b.model));
      named.emplace_back(model, b.report);
      best.push_back({{"model", model}, {"trial", b.trial}, {"seed", b.seed}});
    }
    result["best"] = best;
  } else {
    for (const std::string &entry : evals) {
      const std::size_t eq = entry.find('=');
      if (eq == std::string::npos || eq == 0) {
        throw tgtriage::UsageError("--eval takes NAME=FILE, got '" + entry + "'");
      }
      fs::path p(entry.substr(eq + 1));
      if (!p.is_absolute()) p = s.base() / p;
      const nlohmann::json j = LoadJson(p.string());
      try {
        named.emplace_back(entry.substr(0, eq),
                           tgtriage::metrics::EvalReport::FromJson(
                               j.contains("metrics") ? j.at("metrics") : j));
      } catch (const nlohmann::json::exception &e) {
        throw tgtriage::FormatError(p.string() + ": " + e.what());
      }
    }
  }
  result["comparison"] = tgtriage::metrics::ComparisonJson(named);
  Emit(inv, result,
       "# Model comparison\n\n" + tgtriage::metrics::RenderMarkdownTable(named));
}

void RunExperiment(const Invocation &inv) {
  Settings s(inv);
  auto config =
      tgtriage::pipeline::ExperimentConfig::FromConfig(s.file(), s.base());
  if (config.output_dir.empty()) config.output_dir = fs::current_path();
  const auto report = tgtriage::pipeline::RunExperiment(config);
  tgtriage::pipeline::WriteExperimentReport(report, config.output_dir);

  nlohmann::json full = report.ToJson();
  nlohmann::json result = {{"command", "experiment"},
                           {"output_dir", config.output_dir.string()},
                           {"best", full["best"]},
                           {"comparison", full["comparison"]}};
  Emit(inv, result, report.ToMarkdown());
}

void RunGenerate(const Invocation &inv) {
  Settings s(inv);
  const std::string out = s.RequirePath("generate", "out", "--out");
  tgtriage::pipeline::SyntheticCorpusSpec spec;
  ConfigFile &f = s.file();
  const std::string sec = "dataset.synthetic";
  spec.politics_docs = f.GetUint(sec, "politics_docs", spec.politics_docs);
  spec.cyber_docs = f.GetUint(sec, "cyber_docs", spec.cyber_docs);
  spec.politics_vocab = f.GetUint(sec, "politics_vocab", spec.politics_vocab);
  spec.cyber_vocab = f.GetUint(sec, "cyber_vocab", spec.cyber_vocab);
  spec.overlap = f.GetDouble(sec, "overlap", spec.overlap);
  spec.min_tokens = f.GetUint(sec, "min_tokens", spec.min_tokens);
  spec.max_tokens = f.GetUint(sec, "max_tokens", spec.max_tokens);
  spec.zipf_exponent = f.GetDouble(sec, "zipf_exponent", spec.zipf_exponent);
  spec.seed = f.GetUint(sec, "seed", spec.seed);
  s.CheckUnused({"generate", sec});

  const auto dataset = tgtriage::pipeline::GenerateSyntheticCorpus(spec);
  tgtriage::WriteFileAtomic(out, tgtriage::corpus::ToCsv(dataset));
  nlohmann::json result = {{"command", "generate"},
                           {"out", out},
                           {"spec", spec.ToJson()},
                           {"messages", dataset.size()}};
  Emit(inv, result,
       "# Synthetic corpus\n\n" + std::to_string(dataset.size()) +
           " messages written to " + out + "\n");
}

int ReportError(const char *kind, const std::exception &e, int code,
                nlohmann::json extra = nlohmann::json::object()) {
  extra["error"] = kind;
  extra["message"] = e.what();
  extra["exit_code"] = code;
  std::cerr << extra.dump() << "\n";
  return code;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Telegram message triage: corpora, classifiers and analysis"};
  app.set_version_flag("--version", std::string(tgtriage::Version()));
  app.require_subcommand(1);

  std::map<std::string, Invocation> inv;
  std::map<std::string, void (*)(const Invocation &)> handlers;

  auto add = [&](const std::string &name, const std::string &help,
                 void (*handler)(const Invocation &)) {
    CLI::App *sub = app.add_subcommand(name, help);
    AddCommon(sub, inv[name]);
    handlers[name] = handler;
    return sub;
  };

  {
    CLI::App *sub = add("ingest", "Convert channel exports to CSV", RunIngest);
    Invocation &i = inv["ingest"];
    BindPaths(sub, i, "--export", "ingest.export", "Channel export JSON file(s)");
    BindPath(sub, i, "--out", "ingest.out", "Output CSV");
    BindValue(sub, i, "--label", "ingest.label", "Label every message 0 or 1");
  }
  {
    CLI::App *sub = add("split", "Shuffle and split a labeled CSV", RunSplit);
    Invocation &i = inv["split"];
    BindPath(sub, i, "--data", "split.data", "Labeled CSV");
    BindValue(sub, i, "--seed", "split.seed", "Shuffle seed");
    BindValue(sub, i, "--frac", "split.train_fraction", "Training fraction");
    BindPath(sub, i, "--out-dir", "split.out_dir",
             "Directory for train.csv and test.csv");
  }
  {
    CLI::App *sub = add("train", "Fit TF-IDF and train one model", RunTrain);
    Invocation &i = inv["train"];
    BindValue(sub, i, "--model", "train.model", "fnn, lstm or svm");
    BindPath(sub, i, "--data", "train.data", "Labeled training CSV");
    BindPath(sub, i, "--out", "train.out", "Checkpoint JSON");
    BindPath(sub, i, "--eval", "train.eval",
             "Labeled CSV for the per-epoch evaluation loss");
    BindValue(sub, i, "--epochs", "models.?.epochs", "Epochs");
    BindValue(sub, i, "--batch-size", "models.?.batch_size", "Batch size");
    BindValue(sub, i, "--dropout", "models.?.dropout", "Dropout rate");
    BindValue(sub, i, "--learning-rate", "models.?.learning_rate",
              "Adam learning rate");
    BindValue(sub, i, "--lambda", "models.?.lambda", "SVM regularization");
    BindValue(sub, i, "--seed", "models.?.seed", "Training seed");
  }
  {
    CLI::App *sub = add("evaluate", "Score a checkpoint or predictions", RunEvaluate);
    Invocation &i = inv["evaluate"];
    BindPath(sub, i, "--model", "evaluate.model", "Checkpoint JSON");
    BindPath(sub, i, "--data", "evaluate.data", "Labeled CSV");
    BindPath(sub, i, "--predictions", "evaluate.predictions",
             "File with one 0/1 prediction per line");
    BindValue(sub, i, "--name", "evaluate.name", "Model name in the report");
  }
  {
    CLI::App *sub = add("analyze", "Sentiment and entities per message", RunAnalyze);
    Invocation &i = inv["analyze"];
    BindPath(sub, i, "--data", "analyze.data", "Message CSV (class optional)");
    BindPath(sub, i, "--export", "analyze.export", "Channel export JSON");
    BindFlag(sub, i, "--sentiment", "analyze.sentiment", "Score sentiment");
    BindFlag(sub, i, "--entities", "analyze.entities", "Recognize entities");
    BindPath(sub, i, "--lexicon", "analyze.lexicon", "Sentiment lexicon TSV");
    BindPath(sub, i, "--gazetteer", "analyze.gazetteer", "Gazetteer TSV");
    BindPath(sub, i, "--date-terms", "analyze.date_terms", "Date word list");
  }
  {
    CLI::App *sub = add("report", "Render a model comparison table", RunReport);
    Invocation &i = inv["report"];
    BindPath(sub, i, "--experiment", "report.experiment",
             "Experiment report.json (best trials are recomputed)");
    sub->add_option_function<std::vector<std::string>>(
        "--eval",
        [&i](const std::vector<std::string> &vs) {
          std::string joined;
          for (const std::string &v : vs) {
            const std::size_t eq = v.find('=');
            const std::string entry =
                eq == std::string::npos
                    ? v
                    : v.substr(0, eq + 1) + Absolute(v.substr(eq + 1));
            joined += (joined.empty() ? "" : ",") + entry;
          }
          i.flag_overrides.push_back("report.eval=" + joined);
        },
        "NAME=evaluate.json, repeatable");
  }
  {
    CLI::App *sub = add("experiment", "Run the best-of-N model comparison",
                        RunExperiment);
    Invocation &i = inv["experiment"];
    BindPath(sub, i, "--out-dir", "output.dir", "Report directory");
    BindValue(sub, i, "--threads", "experiment.threads", "Worker threads");
    BindValue(sub, i, "--trials", "experiment.trials", "Trials per model");
  }
  {
    CLI::App *sub = add("generate", "Write a synthetic labeled corpus", RunGenerate);
    Invocation &i = inv["generate"];
    BindPath(sub, i, "--out", "generate.out", "Output CSV");
    BindValue(sub, i, "--seed", "dataset.synthetic.seed", "Generator seed");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    handlers.at(name)(inv.at(name));
  } catch (const tgtriage::UsageError &e) {
    return ReportError("usage", e, kExitUsage);
  } catch (const tgtriage::TrainingError &e) {
    return ReportError("training", e, kExitNumerical,
                       {{"epoch", e.epoch()}, {"batch", e.batch()}});
  } catch (const tgtriage::NumericalError &e) {
    return ReportError("numerical", e, kExitNumerical);
  } catch (const tgtriage::ParseError &e) {
    return ReportError("parse", e, kExitData, {{"offset", e.offset()}});
  } catch (const tgtriage::SchemaError &e) {
    return ReportError("schema", e, kExitData,
                       {{"field", e.field()}, {"record", e.record()}});
  } catch (const tgtriage::LabeledDataError &e) {
    return ReportError("labeled_data", e, kExitData, {{"row", e.row()}});
  } catch (const tgtriage::DataError &e) {
    return ReportError("data", e, kExitData);
  } catch (const std::exception &e) {
    return ReportError("internal", e, kExitData);
  }
  return kExitOk;
}
