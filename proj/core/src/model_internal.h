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

#ifndef TGTRIAGE_CORE_SRC_MODEL_INTERNAL_H_
#define TGTRIAGE_CORE_SRC_MODEL_INTERNAL_H_

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>
#include <span>
#include <string>
#include <vector>

#include "tgtriage/error.h"
#include "tgtriage/models.h"

namespace tgtriage::models::internal {

// d(clipped BCE)/d(logit). Zero where the probability is clipped.
double BceGradient(double p, int label);

void GlorotUniform(Matrix &m, std::size_t fan_in, std::size_t fan_out,
                   numerics::Prng &rng);

// out = w * input + b for a dense input.
void DenseForward(const Matrix &w, const Matrix &b,
                  std::span<const double> input, std::vector<double> &out);
// out = w * x + b, touching only the columns present in x.
void SparseForward(const Matrix &w, const Matrix &b, const SparseVector &x,
                   std::vector<double> &out);
void ApplyMask(std::span<const double> mask, std::span<const double> in,
               std::vector<double> &out);
void CheckInputDim(std::size_t expected, const SparseVector &x);

inline void CheckFinite(double loss, int epoch, int batch) {
  if (!std::isfinite(loss)) {
    throw TrainingError("training diverged: non-finite loss at epoch " +
                            std::to_string(epoch) + ", batch " +
                            std::to_string(batch),
                        epoch, batch);
  }
}

// Mini-batch loop shared by the two networks: seeded reshuffle per epoch,
// fresh dropout masks per example, one Adam step per tensor per batch.
template <typename Params, typename LossFn, typename ForwardFn>
Trained<Params> TrainNetwork(Params params, const Dataset &train,
                             const TrainConfig &config, const Dataset *eval,
                             std::size_t first_units,
                             std::size_t second_units, numerics::Prng &rng,
                             LossFn loss_and_gradients, ForwardFn forward) {
  std::vector<numerics::AdamState> states;
  for (const ConstTensorRef &t : std::as_const(params).Tensors()) {
    states.emplace_back(t.value->size());
  }

  Trained<Params> result;
  std::vector<std::size_t> order(train.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  const std::size_t batch_size = static_cast<std::size_t>(config.batch_size);

  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    numerics::Shuffle(std::span<std::size_t>(order), rng);
    double loss_sum = 0.0;
    int batches = 0;
    for (std::size_t start = 0; start < order.size(); start += batch_size) {
      const std::size_t end = std::min(order.size(), start + batch_size);
      Batch batch;
      for (std::size_t k = start; k < end; ++k) {
        batch.inputs.push_back(&train.inputs[order[k]]);
        batch.labels.push_back(train.labels[order[k]]);
        if (config.dropout_rate > 0.0) {
          batch.masks.push_back(SampleDropoutMask(
              first_units, second_units, config.dropout_rate, rng));
        }
      }
      ++batches;
      LossAndGradients<Params> step;
      try {
        step = loss_and_gradients(params, batch);
      } catch (const NumericalError &) {
        CheckFinite(std::nan(""), epoch, batches);
      }
      CheckFinite(step.loss, epoch, batches);
      loss_sum += step.loss;

      auto tensors = params.Tensors();
      auto grads = std::as_const(step.gradients).Tensors();
      for (std::size_t i = 0; i < tensors.size(); ++i) {
        numerics::AdamStep(*tensors[i].value, *grads[i].value, states[i],
                           config.adam);
      }
    }
    result.trace.train_loss.push_back(loss_sum / batches);
    if (eval != nullptr) {
      double sum = 0.0;
      for (std::size_t i = 0; i < eval->size(); ++i) {
        sum += BinaryCrossEntropy(forward(params, eval->inputs[i]),
                                  eval->labels[i]);
      }
      result.trace.eval_loss.push_back(sum / static_cast<double>(eval->size()));
    }
  }
  result.params = std::move(params);
  return result;
}

}  // namespace tgtriage::models::internal

#endif  // TGTRIAGE_CORE_SRC_MODEL_INTERNAL_H_
