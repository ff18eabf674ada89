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

#ifndef TGTRIAGE_METRICS_H_
#define TGTRIAGE_METRICS_H_

#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace tgtriage::metrics {

// Scores for one model on one test split. All error metrics are computed
// on hard 0/1 labels; "score" in the comparison table is accuracy.
struct EvalReport {
  std::size_t n = 0;
  double accuracy = 0.0;
  double rmse = 0.0;
  double rae = 0.0;
  double rse = 0.0;
  double r2 = 0.0;
  std::size_t tp = 0, fp = 0, tn = 0, fn = 0;

  nlohmann::json ToJson() const;
  static EvalReport FromJson(const nlohmann::json &json);

  bool operator==(const EvalReport &) const = default;
};

// Throws DataError on empty or mismatched inputs, labels outside {0,1}, or
// single-class truth (the RAE/RSE baselines would be zero).
EvalReport Evaluate(std::span<const int> predictions,
                    std::span<const int> truth);

// Model name and its report, in column order.
using NamedReport = std::pair<std::string, EvalReport>;

// Rows in the order Score, RMSE, RAE, RSE, coefficient of determination.
std::vector<std::string> MetricNames();

std::string RenderMarkdownTable(std::span<const NamedReport> reports);
nlohmann::json ComparisonJson(std::span<const NamedReport> reports);

}  // namespace tgtriage::metrics

#endif  // TGTRIAGE_METRICS_H_
