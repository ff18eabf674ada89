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

#ifndef TGTRIAGE_TEXTVEC_H_
#define TGTRIAGE_TEXTVEC_H_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace tgtriage::textvec {

struct TokenizerConfig {
  bool lowercase = true;
  // Tokens are maximal runs of alphanumeric characters at least this long.
  int min_token_length = 2;

  bool operator==(const TokenizerConfig &) const = default;
};

std::vector<std::string> Tokenize(std::string_view text,
                                  const TokenizerConfig &config = {});

// Sparse feature vector with strictly increasing indices.
struct SparseVector {
  std::size_t dim = 0;
  std::vector<std::pair<std::uint32_t, double>> entries;

  bool empty() const { return entries.empty(); }
  double Norm() const;
  // Dot product with a dense row of length dim.
  double Dot(std::span<const double> dense) const;
  std::vector<double> ToDense() const;

  bool operator==(const SparseVector &) const = default;
};

// Fitted TF-IDF vectorizer: smoothed idf, raw counts, L2 normalization.
class TfidfModel {
 public:
  // Learns the vocabulary and idf weights from `documents`. Throws FitError
  // (a DataError) when the corpus is empty or yields no tokens.
  static TfidfModel Fit(std::span<const std::string> documents,
                        const TokenizerConfig &config = {});

  SparseVector Transform(std::string_view document) const;
  std::vector<SparseVector> TransformAll(
      std::span<const std::string> documents) const;

  std::size_t dim() const { return terms_.size(); }
  const std::vector<std::string> &terms() const { return terms_; }
  const std::vector<double> &idf() const { return idf_; }
  const TokenizerConfig &config() const { return config_; }

  // Returns -1 for out-of-vocabulary terms.
  long IndexOf(std::string_view term) const;

  nlohmann::json ToJson() const;
  static TfidfModel FromJson(const nlohmann::json &json);

  bool operator==(const TfidfModel &other) const {
    return terms_ == other.terms_ && idf_ == other.idf_ &&
           config_ == other.config_;
  }

 private:
  TfidfModel(TokenizerConfig config, std::vector<std::string> terms,
             std::vector<double> idf);

  TokenizerConfig config_;
  std::vector<std::string> terms_;  // sorted; position is the column index
  std::vector<double> idf_;
  std::map<std::string, std::uint32_t, std::less<>> index_;
};

}  // namespace tgtriage::textvec

#endif  // TGTRIAGE_TEXTVEC_H_
