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

#include <algorithm>
#include <cmath>

#include "model_internal.h"
#include "tgtriage/error.h"
#include "tgtriage/models.h"

namespace tgtriage::models {

std::string_view ToString(ModelKind kind) {
  switch (kind) {
    case ModelKind::kFnn:
      return "fnn";
    case ModelKind::kLstm:
      return "lstm";
    case ModelKind::kSvm:
      return "svm";
  }
  return "unknown";
}

ModelKind ParseModelKind(std::string_view name) {
  if (name == "fnn") return ModelKind::kFnn;
  if (name == "lstm") return ModelKind::kLstm;
  if (name == "svm") return ModelKind::kSvm;
  throw UsageError("unknown model kind '" + std::string(name) +
                   "' (expected fnn, lstm or svm)");
}

void TrainConfig::Validate() const {
  if (epochs < 1) throw UsageError("train: epochs must be >= 1");
  if (batch_size < 1) throw UsageError("train: batch_size must be >= 1");
  if (!(dropout_rate >= 0.0 && dropout_rate < 1.0)) {
    throw UsageError("train: dropout_rate must lie in [0, 1)");
  }
  if (!(svm_lambda > 0.0)) throw UsageError("train: svm lambda must be > 0");
  if (!(adam.learning_rate > 0.0)) {
    throw UsageError("train: learning_rate must be > 0");
  }
  if (!(adam.beta1 >= 0.0 && adam.beta1 < 1.0) ||
      !(adam.beta2 >= 0.0 && adam.beta2 < 1.0)) {
    throw UsageError("train: adam betas must lie in [0, 1)");
  }
  if (!(adam.epsilon > 0.0)) throw UsageError("train: epsilon must be > 0");
}

nlohmann::json TrainConfig::ToJson() const {
  return {{"epochs", epochs},
          {"batch_size", batch_size},
          {"dropout_rate", dropout_rate},
          {"seed", seed},
          {"learning_rate", adam.learning_rate},
          {"beta1", adam.beta1},
          {"beta2", adam.beta2},
          {"epsilon", adam.epsilon},
          {"svm_lambda", svm_lambda}};
}

TrainConfig TrainConfig::FromJson(const nlohmann::json &json) {
  TrainConfig c;
  c.epochs = json.at("epochs").get<int>();
  c.batch_size = json.at("batch_size").get<int>();
  c.dropout_rate = json.at("dropout_rate").get<double>();
  c.seed = json.at("seed").get<std::uint64_t>();
  c.adam.learning_rate = json.at("learning_rate").get<double>();
  c.adam.beta1 = json.at("beta1").get<double>();
  c.adam.beta2 = json.at("beta2").get<double>();
  c.adam.epsilon = json.at("epsilon").get<double>();
  c.svm_lambda = json.at("svm_lambda").get<double>();
  return c;
}

void Dataset::Validate() const {
  if (inputs.empty()) throw DataError("dataset: no examples");
  if (inputs.size() != labels.size()) {
    throw DataError("dataset: " + std::to_string(inputs.size()) +
                    " inputs but " + std::to_string(labels.size()) +
                    " labels");
  }
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (inputs[i].dim != dim) {
      throw DimensionError("dataset: example " + std::to_string(i) +
                           " has dim " + std::to_string(inputs[i].dim) +
                           ", expected " + std::to_string(dim));
    }
    if (labels[i] != 0 && labels[i] != 1) {
      throw DataError("dataset: label of example " + std::to_string(i) +
                      " is not 0 or 1");
    }
  }
}

DropoutMask SampleDropoutMask(std::size_t first_units,
                              std::size_t second_units, double rate,
                              numerics::Prng &rng) {
  DropoutMask mask;
  if (rate <= 0.0) return mask;
  const double keep_scale = 1.0 / (1.0 - rate);
  mask.first.resize(first_units);
  mask.second.resize(second_units);
  for (double &m : mask.first) m = rng.Uniform() < rate ? 0.0 : keep_scale;
  for (double &m : mask.second) m = rng.Uniform() < rate ? 0.0 : keep_scale;
  return mask;
}

double BinaryCrossEntropy(double p, int label) {
  const double clipped =
      std::clamp(p, kProbabilityClip, 1.0 - kProbabilityClip);
  return label == 1 ? -std::log(clipped) : -std::log(1.0 - clipped);
}

namespace internal {

double BceGradient(double p, int label) {
  if (p < kProbabilityClip || p > 1.0 - kProbabilityClip) return 0.0;
  return p - static_cast<double>(label);
}

void GlorotUniform(Matrix &m, std::size_t fan_in, std::size_t fan_out,
                   numerics::Prng &rng) {
  const double limit =
      std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
  for (double &v : m.data()) v = rng.Uniform(-limit, limit);
}

void DenseForward(const Matrix &w, const Matrix &b,
                  std::span<const double> input, std::vector<double> &out) {
  out.assign(w.rows(), 0.0);
  for (std::size_t r = 0; r < w.rows(); ++r) {
    auto row = w.row(r);
    double sum = b(r, 0);
    for (std::size_t c = 0; c < row.size(); ++c) sum += row[c] * input[c];
    out[r] = sum;
  }
}

void SparseForward(const Matrix &w, const Matrix &b, const SparseVector &x,
                   std::vector<double> &out) {
  out.assign(w.rows(), 0.0);
  for (std::size_t r = 0; r < w.rows(); ++r) {
    double sum = b(r, 0);
    for (const auto &[index, value] : x.entries) sum += w(r, index) * value;
    out[r] = sum;
  }
}

void ApplyMask(std::span<const double> mask, std::span<const double> in,
               std::vector<double> &out) {
  out.assign(in.begin(), in.end());
  if (mask.empty()) return;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= mask[i];
}

void CheckInputDim(std::size_t expected, const SparseVector &x) {
  if (x.dim != expected) {
    throw DimensionError("model expects input dim " +
                         std::to_string(expected) + ", got " +
                         std::to_string(x.dim));
  }
}

}  // namespace internal

ModelKind KindOf(const Classifier &model) {
  switch (model.index()) {
    case 0:
      return ModelKind::kFnn;
    case 1:
      return ModelKind::kLstm;
    default:
      return ModelKind::kSvm;
  }
}

std::size_t InputDim(const Classifier &model) {
  return std::visit([](const auto &p) { return p.input_dim(); }, model);
}

double DecisionThreshold(ModelKind kind) {
  return kind == ModelKind::kSvm ? 0.0 : 0.5;
}

Prediction Predict(const Classifier &model, const SparseVector &x) {
  Prediction out;
  if (const auto *fnn = std::get_if<FnnParams>(&model)) {
    out.score = FnnForward(*fnn, x);
  } else if (const auto *lstm = std::get_if<LstmParams>(&model)) {
    out.score = LstmForward(*lstm, x);
  } else {
    const auto &svm = std::get<SvmParams>(model);
    internal::CheckInputDim(svm.w.size(), x);
    out.score = x.Dot(svm.w) + svm.b;
  }
  out.label = out.score >= DecisionThreshold(KindOf(model)) ? 1 : 0;
  return out;
}

std::vector<Prediction> PredictAll(const Classifier &model,
                                   std::span<const SparseVector> inputs) {
  std::vector<Prediction> out;
  out.reserve(inputs.size());
  for (const SparseVector &x : inputs) out.push_back(Predict(model, x));
  return out;
}

Classifier Train(ModelKind kind, const Dataset &train,
                 const TrainConfig &config, const Dataset *eval,
                 TrainTrace *trace) {
  switch (kind) {
    case ModelKind::kFnn: {
      auto result = TrainFnn(train, config, eval);
      if (trace) *trace = std::move(result.trace);
      return std::move(result.params);
    }
    case ModelKind::kLstm: {
      auto result = TrainLstm(train, config, eval);
      if (trace) *trace = std::move(result.trace);
      return std::move(result.params);
    }
    case ModelKind::kSvm: {
      auto result = TrainSvm(train, config, eval);
      if (trace) *trace = std::move(result.trace);
      return std::move(result.params);
    }
  }
  throw UsageError("train: unknown model kind");
}

}  // namespace tgtriage::models
