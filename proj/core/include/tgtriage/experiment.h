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

#ifndef TGTRIAGE_EXPERIMENT_H_
#define TGTRIAGE_EXPERIMENT_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tgtriage/config.h"
#include "tgtriage/corpus.h"
#include "tgtriage/metrics.h"
#include "tgtriage/models.h"
#include "tgtriage/synthetic.h"
#include "tgtriage/textvec.h"

namespace tgtriage::pipeline {

struct ModelSetting {
  models::ModelKind kind;
  models::TrainConfig train;
};

// Everything a run depends on. Trial t of every model trains with seed
// base_seed + t on the same split unless resplit_per_trial is set, in
// which case the split seed also advances by t.
struct ExperimentConfig {
  std::vector<std::filesystem::path> dataset_paths;
  std::optional<SyntheticCorpusSpec> synthetic;
  corpus::SplitSpec split;
  textvec::TokenizerConfig tokenizer;
  std::vector<ModelSetting> models;
  int trials = 10;
  std::uint64_t base_seed = 0;
  bool resplit_per_trial = false;
  int threads = 1;
  std::filesystem::path output_dir;

  // Defaults: all three models with the standard TrainConfig.
  static ExperimentConfig Defaults();

  // Reads [dataset], [split], [models], [models.fnn|lstm|svm],
  // [experiment] and [output]. Relative paths resolve against base_dir.
  // Throws UsageError on bad values or unknown keys.
  static ExperimentConfig FromConfig(const ConfigFile &file,
                                     const std::filesystem::path &base_dir);

  void Validate() const;
  nlohmann::json ToJson() const;
};

struct TrialRecord {
  models::ModelKind model;
  int trial = 0;
  std::uint64_t seed = 0;
  std::uint64_t split_seed = 0;
  metrics::EvalReport report;
  models::TrainTrace trace;

  nlohmann::json ToJson() const;
  static TrialRecord FromJson(const nlohmann::json &json);
};

struct BestTrial {
  models::ModelKind model;
  int trial = 0;
  std::uint64_t seed = 0;
  metrics::EvalReport report;
};

// Highest accuracy per model; ties go to the lowest seed. Models appear in
// the order they first occur in the log.
std::vector<BestTrial> SelectBest(std::span<const TrialRecord> trials);

struct DatasetSummary {
  std::size_t messages = 0;
  std::size_t politics = 0;
  std::size_t cyber = 0;
  std::size_t train = 0;
  std::size_t test = 0;
  std::size_t vocabulary = 0;
};

struct ExperimentReport {
  nlohmann::json config;
  DatasetSummary dataset;
  std::vector<TrialRecord> trials;
  std::vector<BestTrial> best;

  nlohmann::json ToJson() const;
  std::string ToMarkdown() const;
};

// Statements about interpretation choices embedded in every report.
std::vector<std::string> AssumptionLog();

// Loads or generates the corpus, splits it, and runs every trial. Throws
// TrainingError (with model and trial in the message) if a trial fails.
ExperimentReport RunExperiment(const ExperimentConfig &config);

// Writes report.json and report.md into config.output_dir atomically.
void WriteExperimentReport(const ExperimentReport &report,
                           const std::filesystem::path &output_dir);

// Loads the dataset an experiment would use.
corpus::LabeledDataset LoadExperimentData(const ExperimentConfig &config);

// Vectorizes a labeled dataset with an already fitted vectorizer.
models::Dataset Vectorize(const textvec::TfidfModel &vectorizer,
                          const corpus::LabeledDataset &data);

}  // namespace tgtriage::pipeline

#endif  // TGTRIAGE_EXPERIMENT_H_
