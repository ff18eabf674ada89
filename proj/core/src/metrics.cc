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

#include "tgtriage/metrics.h"

#include <cmath>
#include <cstdio>

#include "tgtriage/error.h"

namespace tgtriage::metrics {

EvalReport Evaluate(std::span<const int> predictions,
                    std::span<const int> truth) {
  if (predictions.size() != truth.size()) {
    throw DataError("evaluate: " + std::to_string(predictions.size()) +
                    " predictions for " + std::to_string(truth.size()) +
                    " labels");
  }
  if (truth.empty()) throw DataError("evaluate: no samples");

  EvalReport r;
  r.n = truth.size();
  std::size_t positives = 0;
  for (std::size_t i = 0; i < r.n; ++i) {
    const int p = predictions[i], y = truth[i];
    if ((p != 0 && p != 1) || (y != 0 && y != 1)) {
      throw DataError("evaluate: labels must be 0 or 1 (index " +
                      std::to_string(i) + ")");
    }
    positives += static_cast<std::size_t>(y);
    if (p == 1 && y == 1) ++r.tp;
    if (p == 1 && y == 0) ++r.fp;
    if (p == 0 && y == 0) ++r.tn;
    if (p == 0 && y == 1) ++r.fn;
  }
  if (positives == 0 || positives == r.n) {
    throw DataError(
        "evaluate: truth contains a single class; RAE and RSE are undefined");
  }

  const double n = static_cast<double>(r.n);
  const double mean = static_cast<double>(positives) / n;
  // For 0/1 values |e| = e^2, so the absolute and squared error totals
  // both equal the number of mistakes.
  const double errors = static_cast<double>(r.fp + r.fn);
  double abs_baseline = 0.0, sq_baseline = 0.0;
  for (int y : truth) {
    const double d = static_cast<double>(y) - mean;
    abs_baseline += std::abs(d);
    sq_baseline += d * d;
  }
  r.accuracy = static_cast<double>(r.tp + r.tn) / n;
  // mean((yhat - y)^2) is the error rate, i.e. 1 - accuracy.
  r.rmse = std::sqrt(1.0 - r.accuracy);
  r.rae = errors / abs_baseline;
  r.rse = errors / sq_baseline;
  r.r2 = 1.0 - r.rse;
  return r;
}

nlohmann::json EvalReport::ToJson() const {
  return {{"n", n},       {"accuracy", accuracy}, {"rmse", rmse},
          {"rae", rae},   {"rse", rse},           {"r2", r2},
          {"tp", tp},     {"fp", fp},             {"tn", tn},
          {"fn", fn}};
}

EvalReport EvalReport::FromJson(const nlohmann::json &json) {
  try {
    EvalReport r;
    r.n = json.at("n").get<std::size_t>();
    r.accuracy = json.at("accuracy").get<double>();
    r.rmse = json.at("rmse").get<double>();
    r.rae = json.at("rae").get<double>();
    r.rse = json.at("rse").get<double>();
    r.r2 = json.at("r2").get<double>();
    r.tp = json.at("tp").get<std::size_t>();
    r.fp = json.at("fp").get<std::size_t>();
    r.tn = json.at("tn").get<std::size_t>();
    r.fn = json.at("fn").get<std::size_t>();
    return r;
  } catch (const nlohmann::json::exception &e) {
    throw FormatError(std::string("eval report: ") + e.what());
  }
}

std::vector<std::string> MetricNames() {
  return {"Score", "Root Mean Squared Error (RMSE)",
          "Relative Absolute Error (RAE)", "Relative Squared Error (RSE)",
          "Coefficient of Determination"};
}

namespace {

std::vector<double> MetricValues(const EvalReport &r) {
  return {r.accuracy, r.rmse, r.rae, r.rse, r.r2};
}

std::string TwoDecimals(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

}  // namespace

std::string RenderMarkdownTable(std::span<const NamedReport> reports) {
  std::string out = "| Metric |";
  for (const auto &[name, report] : reports) out += " " + name + " |";
  out += "\n|---|";
  for (std::size_t i = 0; i < reports.size(); ++i) out += "---:|";
  out += "\n";
  const std::vector<std::string> names = MetricNames();
  for (std::size_t m = 0; m < names.size(); ++m) {
    out += "| " + names[m] + " |";
    for (const auto &[name, report] : reports) {
      out += " " + TwoDecimals(MetricValues(report)[m]) + " |";
    }
    out += "\n";
  }
  return out;
}

nlohmann::json ComparisonJson(std::span<const NamedReport> reports) {
  nlohmann::json columns = nlohmann::json::array();
  for (const auto &[name, report] : reports) columns.push_back(name);
  nlohmann::json rows = nlohmann::json::array();
  const std::vector<std::string> names = MetricNames();
  for (std::size_t m = 0; m < names.size(); ++m) {
    nlohmann::json values = nlohmann::json::array();
    nlohmann::json rendered = nlohmann::json::array();
    for (const auto &[name, report] : reports) {
      values.push_back(MetricValues(report)[m]);
      rendered.push_back(TwoDecimals(MetricValues(report)[m]));
    }
    rows.push_back(
        {{"metric", names[m]}, {"values", values}, {"rendered", rendered}});
  }
  return {{"columns", columns}, {"rows", rows}};
}

}  // namespace tgtriage::metrics
