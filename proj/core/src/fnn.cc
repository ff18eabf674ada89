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

#include "model_internal.h"
#include "tgtriage/error.h"
#include "tgtriage/models.h"

namespace tgtriage::models {

using internal::ApplyMask;
using internal::DenseForward;
using internal::SparseForward;

FnnParams FnnParams::Zeros(std::size_t input_dim) {
  FnnParams p;
  p.w1 = Matrix(kFirstDenseUnits, input_dim);
  p.b1 = Matrix(kFirstDenseUnits, 1);
  p.w2 = Matrix(kSecondDenseUnits, kFirstDenseUnits);
  p.b2 = Matrix(kSecondDenseUnits, 1);
  p.w3 = Matrix(1, kSecondDenseUnits);
  p.b3 = Matrix(1, 1);
  return p;
}

FnnParams FnnParams::GlorotInit(std::size_t input_dim, numerics::Prng &rng) {
  FnnParams p = Zeros(input_dim);
  internal::GlorotUniform(p.w1, input_dim, kFirstDenseUnits, rng);
  internal::GlorotUniform(p.w2, kFirstDenseUnits, kSecondDenseUnits, rng);
  internal::GlorotUniform(p.w3, kSecondDenseUnits, 1, rng);
  return p;
}

std::vector<TensorRef> FnnParams::Tensors() {
  return {{"w1", &w1}, {"b1", &b1}, {"w2", &w2},
          {"b2", &b2}, {"w3", &w3}, {"b3", &b3}};
}

std::vector<ConstTensorRef> FnnParams::Tensors() const {
  return {{"w1", &w1}, {"b1", &b1}, {"w2", &w2},
          {"b2", &b2}, {"w3", &w3}, {"b3", &b3}};
}

double FnnForward(const FnnParams &params, const SparseVector &x,
                  const DropoutMask *mask, FnnCache *cache) {
  internal::CheckInputDim(params.input_dim(), x);
  FnnCache local;
  FnnCache &c = cache ? *cache : local;
  static const std::vector<double> kNoMask;
  const auto &mask1 = mask ? mask->first : kNoMask;
  const auto &mask2 = mask ? mask->second : kNoMask;

  SparseForward(params.w1, params.b1, x, c.z1);
  c.h1.resize(c.z1.size());
  for (std::size_t i = 0; i < c.z1.size(); ++i) c.h1[i] = std::max(0.0, c.z1[i]);
  ApplyMask(mask1, c.h1, c.a1);

  DenseForward(params.w2, params.b2, c.a1, c.z2);
  c.h2.resize(c.z2.size());
  for (std::size_t i = 0; i < c.z2.size(); ++i) c.h2[i] = std::max(0.0, c.z2[i]);
  ApplyMask(mask2, c.h2, c.a2);

  c.z3 = params.b3(0, 0);
  for (std::size_t i = 0; i < c.a2.size(); ++i) c.z3 += params.w3(0, i) * c.a2[i];
  c.p = numerics::Sigmoid(c.z3);
  return c.p;
}

LossAndGradients<FnnParams> FnnLossAndGradients(const FnnParams &params,
                                                const Batch &batch) {
  if (batch.size() == 0) throw DataError("fnn: empty batch");
  if (!batch.masks.empty() && batch.masks.size() != batch.size()) {
    throw DimensionError("fnn: one dropout mask per example required");
  }
  LossAndGradients<FnnParams> out;
  out.gradients = FnnParams::Zeros(params.input_dim());
  FnnParams &g = out.gradients;
  const double scale = 1.0 / static_cast<double>(batch.size());

  FnnCache c;
  std::vector<double> dz2(kSecondDenseUnits), da1(kFirstDenseUnits);
  for (std::size_t s = 0; s < batch.size(); ++s) {
    const SparseVector &x = *batch.inputs[s];
    const int y = batch.labels[s];
    if (y != 0 && y != 1) throw DataError("fnn: label must be 0 or 1");
    const DropoutMask *mask = batch.masks.empty() ? nullptr : &batch.masks[s];
    const double p = FnnForward(params, x, mask, &c);
    out.loss += BinaryCrossEntropy(p, y) * scale;

    const double dz3 = internal::BceGradient(p, y) * scale;
    g.b3(0, 0) += dz3;
    for (std::size_t j = 0; j < kSecondDenseUnits; ++j) {
      g.w3(0, j) += dz3 * c.a2[j];
      double d = params.w3(0, j) * dz3;
      if (mask && !mask->second.empty()) d *= mask->second[j];
      dz2[j] = c.z2[j] > 0.0 ? d : 0.0;
    }

    std::fill(da1.begin(), da1.end(), 0.0);
    for (std::size_t j = 0; j < kSecondDenseUnits; ++j) {
      const double d = dz2[j];
      if (d == 0.0) continue;
      g.b2(j, 0) += d;
      auto grow = g.w2.row(j);
      auto prow = params.w2.row(j);
      for (std::size_t k = 0; k < kFirstDenseUnits; ++k) {
        grow[k] += d * c.a1[k];
        da1[k] += prow[k] * d;
      }
    }

    for (std::size_t k = 0; k < kFirstDenseUnits; ++k) {
      double d = da1[k];
      if (mask && !mask->first.empty()) d *= mask->first[k];
      if (c.z1[k] <= 0.0 || d == 0.0) continue;
      g.b1(k, 0) += d;
      for (const auto &[index, value] : x.entries) g.w1(k, index) += d * value;
    }
  }
  if (!std::isfinite(out.loss)) {
    throw NumericalError("fnn: non-finite loss");
  }
  return out;
}

Trained<FnnParams> TrainFnn(const Dataset &train, const TrainConfig &config,
                            const Dataset *eval) {
  config.Validate();
  train.Validate();
  if (eval) eval->Validate();
  numerics::Prng rng(config.seed);
  FnnParams init = FnnParams::GlorotInit(train.dim, rng);
  return internal::TrainNetwork(
      std::move(init), train, config, eval, kFirstDenseUnits,
      kSecondDenseUnits, rng, FnnLossAndGradients,
      [](const FnnParams &p, const SparseVector &x) { return FnnForward(p, x); });
}

}  // namespace tgtriage::models
