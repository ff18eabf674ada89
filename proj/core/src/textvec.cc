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

#include "tgtriage/textvec.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "tgtriage/error.h"
#include "tgtriage/utf8.h"

namespace tgtriage::textvec {

std::vector<std::string> Tokenize(std::string_view text,
                                  const TokenizerConfig &config) {
  std::vector<std::string> tokens;
  std::u32string run;
  auto flush = [&] {
    if (run.size() >= static_cast<std::size_t>(config.min_token_length)) {
      tokens.push_back(utf8::Encode(run));
    }
    run.clear();
  };
  for (char32_t cp : utf8::Decode(text)) {
    if (utf8::IsAlnum(cp)) {
      run.push_back(config.lowercase ? utf8::ToLower(cp) : cp);
    } else {
      flush();
    }
  }
  flush();
  return tokens;
}

double SparseVector::Norm() const {
  double sum = 0.0;
  for (const auto &[index, weight] : entries) sum += weight * weight;
  return std::sqrt(sum);
}

double SparseVector::Dot(std::span<const double> dense) const {
  double sum = 0.0;
  for (const auto &[index, weight] : entries) sum += weight * dense[index];
  return sum;
}

std::vector<double> SparseVector::ToDense() const {
  std::vector<double> out(dim, 0.0);
  for (const auto &[index, weight] : entries) out[index] = weight;
  return out;
}

TfidfModel::TfidfModel(TokenizerConfig config, std::vector<std::string> terms,
                       std::vector<double> idf)
    : config_(config), terms_(std::move(terms)), idf_(std::move(idf)) {
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    index_.emplace(terms_[i], static_cast<std::uint32_t>(i));
  }
}

TfidfModel TfidfModel::Fit(std::span<const std::string> documents,
                           const TokenizerConfig &config) {
  if (documents.empty()) throw FitError("tfidf: empty corpus");
  std::map<std::string, std::size_t> document_frequency;
  for (const std::string &doc : documents) {
    std::vector<std::string> tokens = Tokenize(doc, config);
    std::set<std::string> distinct(tokens.begin(), tokens.end());
    for (const std::string &t : distinct) ++document_frequency[t];
  }
  if (document_frequency.empty()) {
    throw FitError("tfidf: corpus yields an empty vocabulary");
  }
  const double n = static_cast<double>(documents.size());
  std::vector<std::string> terms;
  std::vector<double> idf;
  terms.reserve(document_frequency.size());
  idf.reserve(document_frequency.size());
  for (const auto &[term, df] : document_frequency) {
    terms.push_back(term);
    idf.push_back(std::log((1.0 + n) / (1.0 + static_cast<double>(df))) + 1.0);
  }
  return TfidfModel(config, std::move(terms), std::move(idf));
}

long TfidfModel::IndexOf(std::string_view term) const {
  auto it = index_.find(term);
  return it == index_.end() ? -1 : static_cast<long>(it->second);
}

SparseVector TfidfModel::Transform(std::string_view document) const {
  std::map<std::uint32_t, double> counts;
  for (const std::string &token : Tokenize(document, config_)) {
    auto it = index_.find(token);
    if (it != index_.end()) counts[it->second] += 1.0;
  }
  SparseVector out;
  out.dim = terms_.size();
  out.entries.reserve(counts.size());
  double norm2 = 0.0;
  for (const auto &[index, count] : counts) {
    const double w = count * idf_[index];
    out.entries.emplace_back(index, w);
    norm2 += w * w;
  }
  if (norm2 > 0.0) {
    const double norm = std::sqrt(norm2);
    for (auto &entry : out.entries) entry.second /= norm;
  }
  return out;
}

std::vector<SparseVector> TfidfModel::TransformAll(
    std::span<const std::string> documents) const {
  std::vector<SparseVector> out;
  out.reserve(documents.size());
  for (const std::string &doc : documents) out.push_back(Transform(doc));
  return out;
}

nlohmann::json TfidfModel::ToJson() const {
  return {
      {"format", "tgtriage.tfidf"},
      {"version", 1},
      {"config",
       {{"lowercase", config_.lowercase},
        {"min_token_length", config_.min_token_length}}},
      {"vocabulary", terms_},
      {"idf", idf_},
  };
}

TfidfModel TfidfModel::FromJson(const nlohmann::json &json) {
  try {
    TokenizerConfig config;
    const auto &c = json.at("config");
    config.lowercase = c.at("lowercase").get<bool>();
    config.min_token_length = c.at("min_token_length").get<int>();
    auto terms = json.at("vocabulary").get<std::vector<std::string>>();
    auto idf = json.at("idf").get<std::vector<double>>();
    if (terms.size() != idf.size()) {
      throw SchemaError("tfidf: vocabulary and idf lengths differ", "idf", 0);
    }
    if (!std::is_sorted(terms.begin(), terms.end()) ||
        std::adjacent_find(terms.begin(), terms.end()) != terms.end()) {
      throw SchemaError("tfidf: vocabulary must be sorted and unique",
                        "vocabulary", 0);
    }
    return TfidfModel(config, std::move(terms), std::move(idf));
  } catch (const nlohmann::json::exception &e) {
    throw SchemaError(std::string("tfidf: ") + e.what(), "tfidf", 0);
  }
}

}  // namespace tgtriage::textvec
