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

#include <string>

#include "tgtriage/error.h"
#include "tgtriage/models.h"

namespace tgtriage::models {
namespace {

constexpr const char *kFormat = "tgtriage.checkpoint";
constexpr int kFormatVersion = 1;

nlohmann::json TensorJson(std::string_view name, const Matrix &m) {
  return {{"name", name},
          {"shape", {m.rows(), m.cols()}},
          {"data", std::vector<double>(m.data().begin(), m.data().end())}};
}

Matrix TensorFromJson(const nlohmann::json &tensors, std::string_view name,
                      std::size_t rows, std::size_t cols) {
  for (const auto &t : tensors) {
    if (t.at("name").get<std::string>() != name) continue;
    auto shape = t.at("shape").get<std::vector<std::size_t>>();
    if (shape.size() != 2 || shape[0] != rows || shape[1] != cols) {
      throw DimensionError("checkpoint: tensor '" + std::string(name) +
                           "' has the wrong shape");
    }
    Matrix m(rows, cols, t.at("data").get<std::vector<double>>());
    if (!m.AllFinite()) {
      throw DataError("checkpoint: tensor '" + std::string(name) +
                      "' has non-finite values");
    }
    return m;
  }
  throw SchemaError("checkpoint: missing tensor '" + std::string(name) + "'",
                    std::string(name), 0);
}

template <typename Params>
void LoadTensors(Params &p, const nlohmann::json &tensors) {
  for (TensorRef ref : p.Tensors()) {
    *ref.value = TensorFromJson(tensors, ref.name, ref.value->rows(),
                                ref.value->cols());
  }
}

}  // namespace

nlohmann::json ToJson(const Checkpoint &checkpoint) {
  const Classifier &model = checkpoint.model;
  nlohmann::json tensors = nlohmann::json::array();
  if (const auto *fnn = std::get_if<FnnParams>(&model)) {
    for (const ConstTensorRef &t : fnn->Tensors()) {
      tensors.push_back(TensorJson(t.name, *t.value));
    }
  } else if (const auto *lstm = std::get_if<LstmParams>(&model)) {
    for (const ConstTensorRef &t : lstm->Tensors()) {
      tensors.push_back(TensorJson(t.name, *t.value));
    }
  } else {
    const auto &svm = std::get<SvmParams>(model);
    tensors.push_back(TensorJson("w", Matrix(1, svm.w.size(), svm.w)));
    tensors.push_back(TensorJson("b", Matrix(1, 1, {svm.b})));
  }
  nlohmann::json out = {
      {"format", kFormat},
      {"version", kFormatVersion},
      {"model_kind", ToString(KindOf(model))},
      {"input_dim", InputDim(model)},
      {"config", checkpoint.config.ToJson()},
      {"tensors", std::move(tensors)},
  };
  if (const auto *svm = std::get_if<SvmParams>(&model)) {
    out["lambda"] = svm->lambda;
  }
  if (checkpoint.vectorizer) out["vectorizer"] = checkpoint.vectorizer->ToJson();
  return out;
}

Checkpoint CheckpointFromJson(const nlohmann::json &json) {
  try {
    if (json.at("format").get<std::string>() != kFormat) {
      throw SchemaError("checkpoint: not a tgtriage checkpoint", "format", 0);
    }
    if (json.at("version").get<int>() != kFormatVersion) {
      throw SchemaError("checkpoint: unsupported version", "version", 0);
    }
    Checkpoint out;
    out.config = TrainConfig::FromJson(json.at("config"));
    const auto dim = json.at("input_dim").get<std::size_t>();
    const auto &tensors = json.at("tensors");
    const ModelKind kind =
        ParseModelKind(json.at("model_kind").get<std::string>());
    switch (kind) {
      case ModelKind::kFnn: {
        FnnParams p = FnnParams::Zeros(dim);
        LoadTensors(p, tensors);
        out.model = std::move(p);
        break;
      }
      case ModelKind::kLstm: {
        LstmParams p = LstmParams::Zeros(dim);
        LoadTensors(p, tensors);
        out.model = std::move(p);
        break;
      }
      case ModelKind::kSvm: {
        SvmParams p;
        Matrix w = TensorFromJson(tensors, "w", 1, dim);
        p.w.assign(w.data().begin(), w.data().end());
        p.b = TensorFromJson(tensors, "b", 1, 1)(0, 0);
        p.lambda = json.at("lambda").get<double>();
        out.model = std::move(p);
        break;
      }
    }
    if (json.contains("vectorizer")) {
      out.vectorizer = textvec::TfidfModel::FromJson(json["vectorizer"]);
      if (out.vectorizer->dim() != dim) {
        throw DimensionError("checkpoint: vectorizer dim does not match model");
      }
    }
    return out;
  } catch (const nlohmann::json::exception &e) {
    throw SchemaError(std::string("checkpoint: ") + e.what(), "checkpoint", 0);
  } catch (const UsageError &e) {
    throw SchemaError(std::string("checkpoint: ") + e.what(), "model_kind", 0);
  }
}

}  // namespace tgtriage::models
