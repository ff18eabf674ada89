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

#ifndef TGTRIAGE_MODELS_H_
#define TGTRIAGE_MODELS_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "tgtriage/numerics.h"
#include "tgtriage/textvec.h"

namespace tgtriage::models {

using numerics::Matrix;
using textvec::SparseVector;

inline constexpr std::size_t kFirstDenseUnits = 128;
inline constexpr std::size_t kLstmUnits = 128;
inline constexpr std::size_t kSecondDenseUnits = 64;

// Probabilities are clipped to [kProbabilityClip, 1 - kProbabilityClip]
// before taking logs.
inline constexpr double kProbabilityClip = 1e-7;

enum class ModelKind { kFnn, kLstm, kSvm };

std::string_view ToString(ModelKind kind);
// Accepts "fnn", "lstm", "svm". Throws UsageError otherwise.
ModelKind ParseModelKind(std::string_view name);

struct TrainConfig {
  int epochs = 10;
  int batch_size = 32;
  double dropout_rate = 0.5;
  std::uint64_t seed = 0;
  numerics::AdamConfig adam;
  double svm_lambda = 1e-4;

  // Throws UsageError on out-of-range values.
  void Validate() const;

  nlohmann::json ToJson() const;
  static TrainConfig FromJson(const nlohmann::json &json);

  bool operator==(const TrainConfig &) const = default;
};

// Vectorized inputs with 0/1 labels.
struct Dataset {
  std::size_t dim = 0;
  std::vector<SparseVector> inputs;
  std::vector<int> labels;

  std::size_t size() const { return inputs.size(); }
  // Throws DataError on inconsistent sizes, dims or labels.
  void Validate() const;
};

struct TensorRef {
  std::string_view name;
  Matrix *value;
};
struct ConstTensorRef {
  std::string_view name;
  const Matrix *value;
};

// Feed-forward network: 128 ReLU -> dropout -> 64 ReLU -> dropout -> sigmoid.
// Biases are column vectors; b3 is 1 x 1.
struct FnnParams {
  Matrix w1, b1, w2, b2, w3, b3;

  static FnnParams Zeros(std::size_t input_dim);
  static FnnParams GlorotInit(std::size_t input_dim, numerics::Prng &rng);

  std::size_t input_dim() const { return w1.cols(); }
  std::vector<TensorRef> Tensors();
  std::vector<ConstTensorRef> Tensors() const;
  bool operator==(const FnnParams &) const = default;
};

// Single-timestep LSTM (zero initial hidden and cell state) followed by the
// same 64-unit ReLU head and sigmoid output as the FNN.
struct LstmParams {
  Matrix wi, wf, wo, wg;  // kLstmUnits x V
  Matrix ui, uf, uo, ug;  // kLstmUnits x kLstmUnits
  Matrix bi, bf, bo, bg;  // kLstmUnits x 1
  Matrix w2, b2, w3, b3;

  static LstmParams Zeros(std::size_t input_dim);
  static LstmParams GlorotInit(std::size_t input_dim, numerics::Prng &rng);

  std::size_t input_dim() const { return wi.cols(); }
  std::vector<TensorRef> Tensors();
  std::vector<ConstTensorRef> Tensors() const;
  bool operator==(const LstmParams &) const = default;
};

// Primal linear SVM. Decision value is w.x + b.
struct SvmParams {
  std::vector<double> w;
  double b = 0.0;
  double lambda = 1e-4;

  std::size_t input_dim() const { return w.size(); }
  bool operator==(const SvmParams &) const = default;
};

// Inverted-dropout multipliers. Each entry is 0 or 1 / (1 - rate); an
// empty vector means the layer is not dropped.
struct DropoutMask {
  std::vector<double> first;
  std::vector<double> second;
};

DropoutMask SampleDropoutMask(std::size_t first_units,
                              std::size_t second_units, double rate,
                              numerics::Prng &rng);

// A mini-batch. masks is either empty (no dropout) or one per input.
struct Batch {
  std::vector<const SparseVector *> inputs;
  std::vector<int> labels;
  std::vector<DropoutMask> masks;

  std::size_t size() const { return inputs.size(); }
};

struct FnnCache {
  std::vector<double> z1, h1, a1;  // a1 = h1 after dropout
  std::vector<double> z2, h2, a2;
  double z3 = 0.0;
  double p = 0.0;
};

struct LstmCache {
  std::vector<double> i, f, o, g;  // gate activations
  std::vector<double> c, tanh_c, h, a1;
  std::vector<double> z2, h2, a2;
  double z3 = 0.0;
  double p = 0.0;
};

// Forward passes. mask == nullptr runs in inference mode.
double FnnForward(const FnnParams &params, const SparseVector &x,
                  const DropoutMask *mask = nullptr, FnnCache *cache = nullptr);
double LstmForward(const LstmParams &params, const SparseVector &x,
                   const DropoutMask *mask = nullptr,
                   LstmCache *cache = nullptr);

// Clipped binary cross-entropy for one prediction.
double BinaryCrossEntropy(double p, int label);

template <typename Params>
struct LossAndGradients {
  double loss = 0.0;
  Params gradients;
};

// Mean BCE over the batch and its gradient by backpropagation, using the
// batch's dropout masks. Throws NumericalError on a non-finite loss.
LossAndGradients<FnnParams> FnnLossAndGradients(const FnnParams &params,
                                                const Batch &batch);
LossAndGradients<LstmParams> LstmLossAndGradients(const LstmParams &params,
                                                  const Batch &batch);

// lambda/2 |w|^2 + mean hinge(1 - y (w.x + b)), with y in {-1, +1}.
double SvmObjective(const SvmParams &params, const Dataset &data);

struct TrainTrace {
  std::vector<double> train_loss;  // per epoch, mean over batches
  std::vector<double> eval_loss;   // per epoch; empty without eval data
};

template <typename Params>
struct Trained {
  Params params;
  TrainTrace trace;
};

// Mini-batch training with a seeded reshuffle each epoch. The eval set, if
// given, only feeds eval_loss. Throws TrainingError when the loss stops
// being finite.
Trained<FnnParams> TrainFnn(const Dataset &train, const TrainConfig &config,
                            const Dataset *eval = nullptr);
Trained<LstmParams> TrainLstm(const Dataset &train, const TrainConfig &config,
                              const Dataset *eval = nullptr);
// Pegasos: step size 1 / (lambda t), hinge subgradient on each mini-batch,
// projection onto the 1 / sqrt(lambda) ball. Returns the running average
// of the iterates; the trace records its full objective after each epoch.
Trained<SvmParams> TrainSvm(const Dataset &train, const TrainConfig &config,
                            const Dataset *eval = nullptr);

using Classifier = std::variant<FnnParams, LstmParams, SvmParams>;

ModelKind KindOf(const Classifier &model);
std::size_t InputDim(const Classifier &model);

struct Prediction {
  double score = 0.0;
  int label = 0;
};

// 0.5 for the probabilistic models, 0 for the SVM margin.
double DecisionThreshold(ModelKind kind);

// label = score >= threshold. Throws DimensionError if x.dim differs from
// the model's input dimension.
Prediction Predict(const Classifier &model, const SparseVector &x);
std::vector<Prediction> PredictAll(const Classifier &model,
                                   std::span<const SparseVector> inputs);

// Trains the requested kind. Used by the CLI and experiment runner.
Classifier Train(ModelKind kind, const Dataset &train,
                 const TrainConfig &config, const Dataset *eval = nullptr,
                 TrainTrace *trace = nullptr);

// Model file: kind, input dim, training config, optional vectorizer and
// every parameter tensor with its shape.
struct Checkpoint {
  Classifier model;
  TrainConfig config;
  std::optional<textvec::TfidfModel> vectorizer;
};

nlohmann::json ToJson(const Checkpoint &checkpoint);
// Throws SchemaError / DimensionError on a malformed file.
Checkpoint CheckpointFromJson(const nlohmann::json &json);

}  // namespace tgtriage::models

#endif  // TGTRIAGE_MODELS_H_
