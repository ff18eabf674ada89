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

#include <cmath>
#include <numeric>

#include "model_internal.h"
#include "tgtriage/error.h"
#include "tgtriage/models.h"

namespace tgtriage::models {

double SvmObjective(const SvmParams &params, const Dataset &data) {
  double norm2 = params.b * params.b;
  for (double w : params.w) norm2 += w * w;
  double hinge = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double y = data.labels[i] == 1 ? 1.0 : -1.0;
    const double margin = y * (data.inputs[i].Dot(params.w) + params.b);
    hinge += std::max(0.0, 1.0 - margin);
  }
  return 0.5 * params.lambda * norm2 + hinge / static_cast<double>(data.size());
}

// The bias is treated as the weight of a constant feature, so it shares
// the regularizer and the projection with w.
Trained<SvmParams> TrainSvm(const Dataset &train, const TrainConfig &config,
                            const Dataset *eval) {
  config.Validate();
  train.Validate();
  if (eval) eval->Validate();

  Trained<SvmParams> result;
  SvmParams &p = result.params;
  p.lambda = config.svm_lambda;
  p.w.assign(train.dim, 0.0);
  p.b = 0.0;

  numerics::Prng rng(config.seed);
  std::vector<std::size_t> order(train.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  const std::size_t batch_size = static_cast<std::size_t>(config.batch_size);
  const double radius = 1.0 / std::sqrt(p.lambda);
  std::int64_t t = 0;
  std::vector<double> step(train.dim);
  // Running mean of the iterates; this is what the model returns.
  std::vector<double> mean_w(train.dim, 0.0);
  double mean_b = 0.0;

  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    numerics::Shuffle(std::span<std::size_t>(order), rng);
    int batch_index = 0;
    for (std::size_t start = 0; start < order.size(); start += batch_size) {
      ++batch_index;
      const std::size_t end = std::min(order.size(), start + batch_size);
      ++t;
      const double eta = 1.0 / (p.lambda * static_cast<double>(t));
      const double inv_batch = 1.0 / static_cast<double>(end - start);

      // Violators are found at the pre-update iterate.
      std::fill(step.begin(), step.end(), 0.0);
      double bias_step = 0.0;
      for (std::size_t k = start; k < end; ++k) {
        const std::size_t i = order[k];
        const double y = train.labels[i] == 1 ? 1.0 : -1.0;
        const double margin = y * (train.inputs[i].Dot(p.w) + p.b);
        if (margin < 1.0) {
          for (const auto &[index, value] : train.inputs[i].entries) {
            step[index] += y * value;
          }
          bias_step += y;
        }
      }
      const double shrink = 1.0 - eta * p.lambda;
      double norm2 = 0.0;
      for (std::size_t j = 0; j < p.w.size(); ++j) {
        p.w[j] = shrink * p.w[j] + eta * inv_batch * step[j];
        norm2 += p.w[j] * p.w[j];
      }
      p.b = shrink * p.b + eta * inv_batch * bias_step;
      norm2 += p.b * p.b;
      if (norm2 > radius * radius) {
        const double scale = radius / std::sqrt(norm2);
        for (double &w : p.w) w *= scale;
        p.b *= scale;
      }
      if (!std::isfinite(p.b) || !std::isfinite(norm2)) {
        internal::CheckFinite(std::nan(""), epoch, batch_index);
      }
      const double weight = 1.0 / static_cast<double>(t);
      for (std::size_t j = 0; j < p.w.size(); ++j) {
        mean_w[j] += weight * (p.w[j] - mean_w[j]);
      }
      mean_b += weight * (p.b - mean_b);
    }
    SvmParams averaged = p;
    averaged.w = mean_w;
    averaged.b = mean_b;
    const double objective = SvmObjective(averaged, train);
    internal::CheckFinite(objective, epoch, batch_index);
    result.trace.train_loss.push_back(objective);
    if (eval) result.trace.eval_loss.push_back(SvmObjective(averaged, *eval));
  }
  p.w = std::move(mean_w);
  p.b = mean_b;
  return result;
}

}  // namespace tgtriage::models
