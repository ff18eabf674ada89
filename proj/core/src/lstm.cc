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

#include "model_internal.h"
#include "tgtriage/error.h"
#include "tgtriage/models.h"

namespace tgtriage::models {

using internal::ApplyMask;
using internal::DenseForward;
using internal::SparseForward;

LstmParams LstmParams::Zeros(std::size_t input_dim) {
  LstmParams p;
  for (Matrix *w : {&p.wi, &p.wf, &p.wo, &p.wg}) {
    *w = Matrix(kLstmUnits, input_dim);
  }
  for (Matrix *u : {&p.ui, &p.uf, &p.uo, &p.ug}) {
    *u = Matrix(kLstmUnits, kLstmUnits);
  }
  for (Matrix *b : {&p.bi, &p.bf, &p.bo, &p.bg}) *b = Matrix(kLstmUnits, 1);
  p.w2 = Matrix(kSecondDenseUnits, kLstmUnits);
  p.b2 = Matrix(kSecondDenseUnits, 1);
  p.w3 = Matrix(1, kSecondDenseUnits);
  p.b3 = Matrix(1, 1);
  return p;
}

// Gate kernels share one fan (input_dim, 4 * units) as if stored as a single
// fused matrix; the forget bias starts at 1.
LstmParams LstmParams::GlorotInit(std::size_t input_dim, numerics::Prng &rng) {
  LstmParams p = Zeros(input_dim);
  for (Matrix *w : {&p.wi, &p.wf, &p.wo, &p.wg}) {
    internal::GlorotUniform(*w, input_dim, 4 * kLstmUnits, rng);
  }
  for (Matrix *u : {&p.ui, &p.uf, &p.uo, &p.ug}) {
    internal::GlorotUniform(*u, kLstmUnits, 4 * kLstmUnits, rng);
  }
  p.bf.Fill(1.0);
  internal::GlorotUniform(p.w2, kLstmUnits, kSecondDenseUnits, rng);
  internal::GlorotUniform(p.w3, kSecondDenseUnits, 1, rng);
  return p;
}

std::vector<TensorRef> LstmParams::Tensors() {
  return {{"wi", &wi}, {"wf", &wf}, {"wo", &wo}, {"wg", &wg},
          {"ui", &ui}, {"uf", &uf}, {"uo", &uo}, {"ug", &ug},
          {"bi", &bi}, {"bf", &bf}, {"bo", &bo}, {"bg", &bg},
          {"w2", &w2}, {"b2", &b2}, {"w3", &w3}, {"b3", &b3}};
}

std::vector<ConstTensorRef> LstmParams::Tensors() const {
  return {{"wi", &wi}, {"wf", &wf}, {"wo", &wo}, {"wg", &wg},
          {"ui", &ui}, {"uf", &uf}, {"uo", &uo}, {"ug", &ug},
          {"bi", &bi}, {"bf", &bf}, {"bo", &bo}, {"bg", &bg},
          {"w2", &w2}, {"b2", &b2}, {"w3", &w3}, {"b3", &b3}};
}

namespace {

// The sequence has length one, so the previous hidden and cell states are
// always the zero initial state.
const std::vector<double> &ZeroState() {
  static const std::vector<double> zeros(kLstmUnits, 0.0);
  return zeros;
}

// Indices of the nonzero entries of a state vector; empty for the zero
// initial state, which makes the recurrent terms free.
std::vector<std::size_t> NonzeroIndices(std::span<const double> state) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < state.size(); ++k) {
    if (state[k] != 0.0) out.push_back(k);
  }
  return out;
}

// pre = W x + U h_prev + b
void GatePreactivation(const Matrix &w, const Matrix &u, const Matrix &b,
                       const SparseVector &x,
                       std::span<const double> h_prev,
                       std::span<const std::size_t> h_nonzero,
                       std::vector<double> &out) {
  SparseForward(w, b, x, out);
  for (std::size_t r = 0; r < kLstmUnits; ++r) {
    auto row = u.row(r);
    double sum = 0.0;
    for (std::size_t k : h_nonzero) sum += row[k] * h_prev[k];
    out[r] += sum;
  }
}

}  // namespace

double LstmForward(const LstmParams &params, const SparseVector &x,
                   const DropoutMask *mask, LstmCache *cache) {
  internal::CheckInputDim(params.input_dim(), x);
  LstmCache local;
  LstmCache &c = cache ? *cache : local;
  static const std::vector<double> kNoMask;
  const auto &mask1 = mask ? mask->first : kNoMask;
  const auto &mask2 = mask ? mask->second : kNoMask;
  const std::vector<double> &h_prev = ZeroState();
  const std::vector<double> &c_prev = ZeroState();
  const std::vector<std::size_t> h_nonzero = NonzeroIndices(h_prev);

  GatePreactivation(params.wi, params.ui, params.bi, x, h_prev, h_nonzero, c.i);
  GatePreactivation(params.wf, params.uf, params.bf, x, h_prev, h_nonzero, c.f);
  GatePreactivation(params.wo, params.uo, params.bo, x, h_prev, h_nonzero, c.o);
  GatePreactivation(params.wg, params.ug, params.bg, x, h_prev, h_nonzero, c.g);
  c.c.resize(kLstmUnits);
  c.tanh_c.resize(kLstmUnits);
  c.h.resize(kLstmUnits);
  for (std::size_t k = 0; k < kLstmUnits; ++k) {
    c.i[k] = numerics::Sigmoid(c.i[k]);
    c.f[k] = numerics::Sigmoid(c.f[k]);
    c.o[k] = numerics::Sigmoid(c.o[k]);
    c.g[k] = std::tanh(c.g[k]);
    c.c[k] = c.f[k] * c_prev[k] + c.i[k] * c.g[k];
    c.tanh_c[k] = std::tanh(c.c[k]);
    c.h[k] = c.o[k] * c.tanh_c[k];
  }
  ApplyMask(mask1, c.h, c.a1);

  DenseForward(params.w2, params.b2, c.a1, c.z2);
  c.h2.resize(c.z2.size());
  for (std::size_t i = 0; i < c.z2.size(); ++i) c.h2[i] = std::max(0.0, c.z2[i]);
  ApplyMask(mask2, c.h2, c.a2);

  c.z3 = params.b3(0, 0);
  for (std::size_t i = 0; i < c.a2.size(); ++i) c.z3 += params.w3(0, i) * c.a2[i];
  c.p = numerics::Sigmoid(c.z3);
  return c.p;
}

LossAndGradients<LstmParams> LstmLossAndGradients(const LstmParams &params,
                                                  const Batch &batch) {
  if (batch.size() == 0) throw DataError("lstm: empty batch");
  if (!batch.masks.empty() && batch.masks.size() != batch.size()) {
    throw DimensionError("lstm: one dropout mask per example required");
  }
  LossAndGradients<LstmParams> out;
  out.gradients = LstmParams::Zeros(params.input_dim());
  LstmParams &g = out.gradients;
  const double scale = 1.0 / static_cast<double>(batch.size());
  const std::vector<double> &h_prev = ZeroState();
  const std::vector<double> &c_prev = ZeroState();
  const std::vector<std::size_t> h_nonzero = NonzeroIndices(h_prev);

  LstmCache c;
  std::vector<double> dz2(kSecondDenseUnits), dh(kLstmUnits);
  std::vector<double> dzi(kLstmUnits), dzf(kLstmUnits), dzo(kLstmUnits),
      dzg(kLstmUnits);
  for (std::size_t s = 0; s < batch.size(); ++s) {
    const SparseVector &x = *batch.inputs[s];
    const int y = batch.labels[s];
    if (y != 0 && y != 1) throw DataError("lstm: label must be 0 or 1");
    const DropoutMask *mask = batch.masks.empty() ? nullptr : &batch.masks[s];
    const double p = LstmForward(params, x, mask, &c);
    out.loss += BinaryCrossEntropy(p, y) * scale;

    const double dz3 = internal::BceGradient(p, y) * scale;
    g.b3(0, 0) += dz3;
    for (std::size_t j = 0; j < kSecondDenseUnits; ++j) {
      g.w3(0, j) += dz3 * c.a2[j];
      double d = params.w3(0, j) * dz3;
      if (mask && !mask->second.empty()) d *= mask->second[j];
      dz2[j] = c.z2[j] > 0.0 ? d : 0.0;
    }

    std::fill(dh.begin(), dh.end(), 0.0);
    for (std::size_t j = 0; j < kSecondDenseUnits; ++j) {
      const double d = dz2[j];
      if (d == 0.0) continue;
      g.b2(j, 0) += d;
      auto grow = g.w2.row(j);
      auto prow = params.w2.row(j);
      for (std::size_t k = 0; k < kLstmUnits; ++k) {
        grow[k] += d * c.a1[k];
        dh[k] += prow[k] * d;
      }
    }

    for (std::size_t k = 0; k < kLstmUnits; ++k) {
      double d = dh[k];
      if (mask && !mask->first.empty()) d *= mask->first[k];
      const double d_o = d * c.tanh_c[k];
      const double dc = d * c.o[k] * (1.0 - c.tanh_c[k] * c.tanh_c[k]);
      const double d_i = dc * c.g[k];
      const double d_g = dc * c.i[k];
      const double d_f = dc * c_prev[k];
      dzi[k] = d_i * c.i[k] * (1.0 - c.i[k]);
      dzf[k] = d_f * c.f[k] * (1.0 - c.f[k]);
      dzo[k] = d_o * c.o[k] * (1.0 - c.o[k]);
      dzg[k] = d_g * (1.0 - c.g[k] * c.g[k]);
    }

    struct Gate {
      const std::vector<double> &dz;
      Matrix &w, &u, &b;
    };
    for (const Gate &gate : {Gate{dzi, g.wi, g.ui, g.bi},
                             Gate{dzf, g.wf, g.uf, g.bf},
                             Gate{dzo, g.wo, g.uo, g.bo},
                             Gate{dzg, g.wg, g.ug, g.bg}}) {
      for (std::size_t k = 0; k < kLstmUnits; ++k) {
        const double d = gate.dz[k];
        gate.b(k, 0) += d;
        for (const auto &[index, value] : x.entries) {
          gate.w(k, index) += d * value;
        }
        auto urow = gate.u.row(k);
        for (std::size_t m : h_nonzero) urow[m] += d * h_prev[m];
      }
    }
  }
  if (!std::isfinite(out.loss)) {
    throw NumericalError("lstm: non-finite loss");
  }
  return out;
}

Trained<LstmParams> TrainLstm(const Dataset &train, const TrainConfig &config,
                              const Dataset *eval) {
  config.Validate();
  train.Validate();
  if (eval) eval->Validate();
  numerics::Prng rng(config.seed);
  LstmParams init = LstmParams::GlorotInit(train.dim, rng);
  return internal::TrainNetwork(
      std::move(init), train, config, eval, kLstmUnits, kSecondDenseUnits,
      rng, LstmLossAndGradients,
      [](const LstmParams &p, const SparseVector &x) {
        return LstmForward(p, x);
      });
}

}  // namespace tgtriage::models
