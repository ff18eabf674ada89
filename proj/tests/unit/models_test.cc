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

#include "tgtriage/models.h"

#include <cmath>
#include <limits>
#include <cstring>

#include <gtest/gtest.h>

#include "gradcheck.h"
#include "test_util.h"
#include "tgtriage/error.h"

namespace tgtriage::models {
namespace {

// Rebuilds an instance of tests/oracles/nn_oracle.py from its seed.
template <typename Params>
struct OracleInstance {
  Params params;
  std::vector<SparseVector> inputs;
  Batch batch;
};

template <typename Params>
OracleInstance<Params> BuildOracleInstance(const nlohmann::json &c) {
  const std::size_t dim = c["dim"];
  const std::size_t n = c["batch"];
  const double scale = c["scale"];
  numerics::Prng rng(c["seed"].get<std::uint64_t>());
  OracleInstance<Params> inst{Params::Zeros(dim), {}, {}};
  for (auto &t : inst.params.Tensors()) {
    for (double &v : t.value->data()) v = rng.Uniform(-scale, scale);
  }
  for (std::size_t s = 0; s < n; ++s) {
    SparseVector x{dim, {}};
    for (std::uint32_t j = 0; j < dim; ++j) {
      if (rng.Uniform() < 0.5) x.entries.emplace_back(j, rng.Uniform(0.1, 1.0));
    }
    inst.inputs.push_back(std::move(x));
    inst.batch.labels.push_back(static_cast<int>(rng.UniformInt(2)));
  }
  for (const auto &x : inst.inputs) inst.batch.inputs.push_back(&x);
  if (!c["dropout"].is_null()) {
    for (std::size_t s = 0; s < n; ++s) {
      inst.batch.masks.push_back(SampleDropoutMask(
          kFirstDenseUnits, kSecondDenseUnits, c["dropout"], rng));
    }
  }
  return inst;
}

template <typename Params>
void ExpectMatchesOracle(const nlohmann::json &c,
                         const LossAndGradients<Params> &got) {
  EXPECT_NEAR(got.loss, c["loss"].get<double>(), 1e-12);
  const auto tensors = got.gradients.Tensors();
  ASSERT_EQ(tensors.size(), c["tensors"].size());
  for (std::size_t t = 0; t < tensors.size(); ++t) {
    const auto &ref = c["tensors"][t];
    ASSERT_EQ(tensors[t].name, ref["name"].get<std::string>());
    const auto data = tensors[t].value->data();
    double sum = 0, abs_sum = 0;
    for (double g : data) {
      sum += g;
      abs_sum += std::abs(g);
    }
    EXPECT_NEAR(sum, ref["sum"].get<double>(), 1e-10) << ref["name"];
    EXPECT_NEAR(abs_sum, ref["abs_sum"].get<double>(), 1e-10) << ref["name"];
    for (const auto &sample : ref["samples"]) {
      const std::size_t k = sample[0];
      EXPECT_NEAR(data[k], sample[1].get<double>(), 1e-12)
          << ref["name"] << "[" << k << "]";
    }
  }
}

TEST(Oracle, FnnMatchesTorchAutograd) {
  const auto golden = testing::LoadFixtureJson("nn_goldens.json");
  int seen = 0;
  for (const auto &c : golden["cases"]) {
    if (c["model"] != "fnn") continue;
    auto inst = BuildOracleInstance<FnnParams>(c);
    ExpectMatchesOracle(c, FnnLossAndGradients(inst.params, inst.batch));
    ++seen;
  }
  EXPECT_EQ(seen, 3);
}

TEST(Oracle, LstmMatchesTorchAutograd) {
  const auto golden = testing::LoadFixtureJson("nn_goldens.json");
  int seen = 0;
  for (const auto &c : golden["cases"]) {
    if (c["model"] != "lstm") continue;
    auto inst = BuildOracleInstance<LstmParams>(c);
    ExpectMatchesOracle(c, LstmLossAndGradients(inst.params, inst.batch));
    ++seen;
  }
  EXPECT_EQ(seen, 3);
}

TEST(GradientCheck, FnnFiniteDifferences) {
  for (std::uint64_t seed : {1, 2}) {
    const auto r = testing::CheckFnnGradients(seed, 5, 3);
    EXPECT_GE(r.fraction_within(), 0.99) << "seed " << seed;
    EXPECT_LE(r.worst, 1e-3) << "seed " << seed;
  }
}

TEST(GradientCheck, LstmFiniteDifferencesAndZeroRecurrence) {
  const auto r = testing::CheckLstmGradients(3, 4, 2, 200);
  EXPECT_GE(r.fraction_within(), 0.99);
  EXPECT_LE(r.worst, 1e-3);
  EXPECT_EQ(r.recurrent_checked, 800u);
  EXPECT_EQ(r.recurrent_nonzero, 0u);
}

TEST(Lstm, ForgetPathGetsNoGradient) {
  numerics::Prng rng(8);
  auto params = LstmParams::GlorotInit(5, rng);
  auto inst = testing::RandomInstance(5, 4, rng);
  const auto g = LstmLossAndGradients(params, inst.batch).gradients;
  for (double v : g.wf.data()) EXPECT_EQ(v, 0.0);
  for (double v : g.bf.data()) EXPECT_EQ(v, 0.0);
}

TEST(Loss, BinaryCrossEntropyClips) {
  EXPECT_NEAR(BinaryCrossEntropy(0.5, 1), std::log(2.0), 1e-15);
  EXPECT_NEAR(BinaryCrossEntropy(0.0, 1), -std::log(kProbabilityClip), 1e-12);
  EXPECT_NEAR(BinaryCrossEntropy(1.0, 0), -std::log(kProbabilityClip), 1e-6);
  EXPECT_TRUE(std::isfinite(BinaryCrossEntropy(1.0, 0)));
}

TEST(Dropout, MaskValuesAndExpectation) {
  numerics::Prng rng(4);
  EXPECT_TRUE(SampleDropoutMask(8, 4, 0.0, rng).first.empty());
  double sum = 0;
  constexpr int kMasks = 10000;
  for (int i = 0; i < kMasks; ++i) {
    const auto m = SampleDropoutMask(16, 8, 0.5, rng);
    for (double v : m.first) {
      ASSERT_TRUE(v == 0.0 || v == 2.0);
      sum += v;
    }
  }
  EXPECT_NEAR(sum / (kMasks * 16.0), 1.0, 0.02);
}

TEST(Dropout, ForwardIsIdentityWithoutMask) {
  numerics::Prng rng(5);
  auto params = FnnParams::GlorotInit(6, rng);
  const auto inst = testing::RandomInstance(6, 1, rng);
  FnnCache cache;
  FnnForward(params, inst.inputs[0], nullptr, &cache);
  EXPECT_EQ(cache.a1, cache.h1);
  EXPECT_EQ(cache.a2, cache.h2);
  const auto mask = SampleDropoutMask(kFirstDenseUnits, kSecondDenseUnits, 0.5, rng);
  FnnForward(params, inst.inputs[0], &mask, &cache);
  for (std::size_t k = 0; k < cache.h1.size(); ++k) {
    EXPECT_EQ(cache.a1[k], cache.h1[k] * mask.first[k]);
  }
}

// Two well separated bags of words: features 0-4 for class 0, 5-9 for 1.
Dataset Separable(std::size_t n, std::uint64_t seed) {
  numerics::Prng rng(seed);
  Dataset d;
  d.dim = 10;
  for (std::size_t i = 0; i < n; ++i) {
    const int y = static_cast<int>(i % 2);
    SparseVector x{10, {}};
    double norm = 0;
    for (std::uint32_t j = 0; j < 5; ++j) {
      if (rng.Uniform() < 0.5 || j == 0) {
        const double v = rng.Uniform(0.2, 1.0);
        x.entries.emplace_back(j + 5 * y, v);
        norm += v * v;
      }
    }
    for (auto &e : x.entries) e.second /= std::sqrt(norm);
    d.inputs.push_back(std::move(x));
    d.labels.push_back(y);
  }
  return d;
}

double Accuracy(const Classifier &model, const Dataset &d) {
  const auto preds = PredictAll(model, d.inputs);
  int correct = 0;
  for (std::size_t i = 0; i < preds.size(); ++i) correct += preds[i].label == d.labels[i];
  return static_cast<double>(correct) / preds.size();
}

class TrainAll : public ::testing::TestWithParam<ModelKind> {};

TEST_P(TrainAll, LearnsSeparableData) {
  const Dataset train = Separable(200, 1);
  const Dataset test = Separable(100, 2);
  TrainConfig config;
  config.epochs = GetParam() == ModelKind::kSvm ? 60 : 20;
  TrainTrace trace;
  const Classifier model = Train(GetParam(), train, config, &test, &trace);
  EXPECT_EQ(KindOf(model), GetParam());
  EXPECT_EQ(InputDim(model), 10u);
  EXPECT_GE(Accuracy(model, test), 0.98);
  ASSERT_EQ(trace.train_loss.size(), static_cast<std::size_t>(config.epochs));
  EXPECT_EQ(trace.eval_loss.size(), trace.train_loss.size());
  if (GetParam() != ModelKind::kSvm) {
    EXPECT_LT(trace.train_loss.back(), trace.train_loss.front());
    return;
  }
  // Pegasos starts with huge steps that take the first block of epochs to
  // wash out of the averaged iterate; after that, 10-epoch block means of
  // the objective must not increase.
  double previous = std::numeric_limits<double>::infinity();
  for (std::size_t b = 10; b + 10 <= trace.train_loss.size(); b += 10) {
    double mean = 0.0;
    for (std::size_t k = b; k < b + 10; ++k) mean += trace.train_loss[k] / 10;
    EXPECT_LE(mean, previous) << "block starting at epoch " << b + 1;
    previous = mean;
  }
}

TEST_P(TrainAll, DeterministicUnderSeed) {
  const Dataset train = Separable(64, 3);
  TrainConfig config;
  config.epochs = 2;
  config.seed = 11;
  const Classifier a = Train(GetParam(), train, config);
  const Classifier b = Train(GetParam(), train, config);
  EXPECT_TRUE(a == b);
  config.seed = 12;
  const Classifier c = Train(GetParam(), train, config);
  EXPECT_FALSE(a == c);
}

TEST_P(TrainAll, CheckpointRoundTripIsBitIdentical) {
  const Dataset train = Separable(64, 4);
  TrainConfig config;
  config.epochs = 2;
  // Ten terms, matching the input dimension.
  const auto vectorizer = textvec::TfidfModel::Fit(
      std::vector<std::string>{"aa ab ac ad ae", "af ag ah ai aj"});
  const Checkpoint ckpt{Train(GetParam(), train, config), config, vectorizer};
  const std::string text = ToJson(ckpt).dump();
  const Checkpoint back = CheckpointFromJson(nlohmann::json::parse(text));
  EXPECT_TRUE(back.model == ckpt.model);
  EXPECT_EQ(back.config, config);
  ASSERT_TRUE(back.vectorizer.has_value());
  EXPECT_EQ(*back.vectorizer, vectorizer);
  const auto p1 = PredictAll(ckpt.model, train.inputs);
  const auto p2 = PredictAll(back.model, train.inputs);
  for (std::size_t i = 0; i < p1.size(); ++i) {
    EXPECT_EQ(std::memcmp(&p1[i].score, &p2[i].score, sizeof(double)), 0);
    EXPECT_EQ(p1[i].label, p2[i].label);
  }
}

TEST_P(TrainAll, RejectsMismatchedInputs) {
  Dataset train = Separable(8, 5);
  TrainConfig config;
  config.epochs = 1;
  const Classifier model = Train(GetParam(), train, config);
  const SparseVector wrong{3, {{0, 1.0}}};
  EXPECT_THROW(Predict(model, wrong), DimensionError);
  train.labels[0] = 2;
  EXPECT_THROW(Train(GetParam(), train, config), DataError);
}

INSTANTIATE_TEST_SUITE_P(Models, TrainAll,
                         ::testing::Values(ModelKind::kFnn, ModelKind::kLstm,
                                           ModelKind::kSvm),
                         [](const auto &info) {
                           return std::string(ToString(info.param));
                         });

TEST(TrainConfig, ValidationAndJson) {
  TrainConfig c;
  EXPECT_NO_THROW(c.Validate());
  c.epochs = 0;
  EXPECT_THROW(c.Validate(), UsageError);
  c = TrainConfig{};
  c.dropout_rate = 1.0;
  EXPECT_THROW(c.Validate(), UsageError);
  c = TrainConfig{};
  c.batch_size = 0;
  EXPECT_THROW(c.Validate(), UsageError);
  c = TrainConfig{};
  c.seed = 77;
  c.adam.learning_rate = 0.01;
  EXPECT_EQ(TrainConfig::FromJson(c.ToJson()), c);
}

TEST(Training, DivergenceRaisesTrainingError) {
  TrainConfig config;
  config.epochs = 3;
  config.adam.learning_rate = 1e308;
  try {
    Train(ModelKind::kFnn, Separable(64, 6), config);
    FAIL() << "expected TrainingError";
  } catch (const TrainingError &e) {
    EXPECT_GE(e.epoch(), 1);
    EXPECT_GE(e.batch(), 1);
  }
}

TEST(Svm, HingeObjectiveAndThreshold) {
  Dataset d;
  d.dim = 2;
  d.inputs = {SparseVector{2, {{0, 1.0}}}, SparseVector{2, {{1, 1.0}}}};
  d.labels = {1, 0};
  SvmParams p{{0.0, 0.0}, 0.0, 0.5};
  // Zero model: hinge 1 on both examples, no regularization.
  EXPECT_DOUBLE_EQ(SvmObjective(p, d), 1.0);
  p.w = {2.0, -2.0};
  // Margins 2 and 2 -> zero hinge; regularizer 0.25 * (4 + 4).
  EXPECT_DOUBLE_EQ(SvmObjective(p, d), 0.25 * 8.0);
  EXPECT_EQ(DecisionThreshold(ModelKind::kSvm), 0.0);
  EXPECT_EQ(DecisionThreshold(ModelKind::kFnn), 0.5);
  const Classifier model = p;
  EXPECT_EQ(Predict(model, d.inputs[0]).label, 1);
  EXPECT_EQ(Predict(model, d.inputs[1]).label, 0);
}

TEST(ModelKindNames, RoundTrip) {
  for (auto k : {ModelKind::kFnn, ModelKind::kLstm, ModelKind::kSvm}) {
    EXPECT_EQ(ParseModelKind(ToString(k)), k);
  }
  EXPECT_THROW(ParseModelKind("cnn"), UsageError);
}

}  // namespace
}  // namespace tgtriage::models
