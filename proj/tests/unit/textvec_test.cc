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

#include <cmath>
#include <map>

#include <gtest/gtest.h>

#include "test_util.h"
#include "tgtriage/error.h"
#include "tgtriage/numerics.h"

namespace tgtriage::textvec {
namespace {

TEST(Tokenize, AlphanumericRunsOfTwoOrMore) {
  EXPECT_EQ(Tokenize("DDoS attack on 10.0.0.1, a x!"),
            (std::vector<std::string>{"ddos", "attack", "on", "10"}));
  EXPECT_EQ(Tokenize("Приве́т МИР"),  // combining accent splits the run
            (std::vector<std::string>{"приве", "мир"}));
  EXPECT_EQ(Tokenize("Café"), (std::vector<std::string>{"café"}));
  EXPECT_TRUE(Tokenize("").empty());
  EXPECT_EQ(Tokenize("Ab Cd", {false, 2}),
            (std::vector<std::string>{"Ab", "Cd"}));
  EXPECT_EQ(Tokenize("a bb", {true, 1}),
            (std::vector<std::string>{"a", "bb"}));
}

TEST(Tfidf, MatchesScikitLearnGoldens) {
  const auto golden = testing::LoadFixtureJson("tfidf_goldens.json");
  for (const auto &c : golden["corpora"]) {
    const auto fit = c["fit"].get<std::vector<std::string>>();
    const auto docs = c["transform"].get<std::vector<std::string>>();
    const auto model = TfidfModel::Fit(fit);
    ASSERT_EQ(model.terms(), c["vocabulary"].get<std::vector<std::string>>());
    const auto idf = c["idf"].get<std::vector<double>>();
    ASSERT_EQ(model.idf().size(), idf.size());
    for (std::size_t k = 0; k < idf.size(); ++k) {
      EXPECT_NEAR(model.idf()[k], idf[k], 1e-12);
    }
    for (std::size_t d = 0; d < docs.size(); ++d) {
      const SparseVector v = model.Transform(docs[d]);
      const auto &row = c["rows"][d];
      ASSERT_EQ(v.entries.size(), row.size()) << docs[d];
      for (std::size_t k = 0; k < row.size(); ++k) {
        EXPECT_EQ(v.entries[k].first, row[k][0].get<std::uint32_t>());
        EXPECT_NEAR(v.entries[k].second, row[k][1].get<double>(), 1e-12);
      }
    }
  }
}

// Brute-force evaluation of the formula on dense counts.
std::vector<double> BruteForce(const std::vector<std::vector<int>> &fit_counts,
                               const std::vector<int> &doc_counts) {
  const std::size_t n = fit_counts.size();
  const std::size_t v = doc_counts.size();
  std::vector<double> out(v, 0.0);
  double norm = 0.0;
  for (std::size_t t = 0; t < v; ++t) {
    int df = 0;
    for (const auto &d : fit_counts) df += d[t] > 0;
    const double idf = std::log((1.0 + n) / (1.0 + df)) + 1.0;
    out[t] = doc_counts[t] * idf;
    norm += out[t] * out[t];
  }
  if (norm > 0) {
    for (double &x : out) x /= std::sqrt(norm);
  }
  return out;
}

TEST(Tfidf, BruteForceOracleProperty) {
  numerics::Prng rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t terms = 1 + rng.UniformInt(12);
    const std::size_t ndocs = 1 + rng.UniformInt(10);
    std::vector<std::string> names;
    for (std::size_t t = 0; t < terms; ++t) names.push_back("w" + std::to_string(10 + t));
    std::vector<std::vector<int>> counts(ndocs, std::vector<int>(terms, 0));
    std::vector<std::string> docs;
    for (auto &row : counts) {
      std::string doc;
      for (std::size_t k = 1 + rng.UniformInt(8); k > 0; --k) {
        const std::size_t t = rng.UniformInt(terms);
        ++row[t];
        doc += names[t] + " ";
      }
      docs.push_back(doc);
    }
    const auto model = TfidfModel::Fit(docs);
    for (std::size_t d = 0; d < ndocs; ++d) {
      const auto dense = model.Transform(docs[d]).ToDense();
      // Vocabulary order is sorted, and the names sort like their indices.
      std::vector<int> row_in_vocab;
      std::vector<std::vector<int>> fit_in_vocab(ndocs);
      for (std::size_t t = 0; t < terms; ++t) {
        const long idx = model.IndexOf(names[t]);
        if (idx < 0) continue;
        row_in_vocab.push_back(counts[d][t]);
        for (std::size_t e = 0; e < ndocs; ++e) fit_in_vocab[e].push_back(counts[e][t]);
      }
      const auto expected = BruteForce(fit_in_vocab, row_in_vocab);
      ASSERT_EQ(dense.size(), expected.size());
      for (std::size_t k = 0; k < dense.size(); ++k) {
        EXPECT_NEAR(dense[k], expected[k], 1e-12);
      }
    }
  }
}

TEST(Tfidf, InvariantsHold) {
  const std::vector<std::string> docs = {"alpha beta", "beta gamma gamma",
                                         "delta", "alpha alpha alpha"};
  const auto model = TfidfModel::Fit(docs);
  for (std::size_t k = 1; k < model.terms().size(); ++k) {
    EXPECT_LT(model.terms()[k - 1], model.terms()[k]);
  }
  for (double idf : model.idf()) EXPECT_GE(idf, 1.0);
  for (const auto &v : model.TransformAll(docs)) {
    EXPECT_NEAR(v.Norm(), 1.0, 1e-12);
    for (std::size_t k = 1; k < v.entries.size(); ++k) {
      EXPECT_LT(v.entries[k - 1].first, v.entries[k].first);
    }
  }
  EXPECT_TRUE(model.Transform("nothing known here").empty());
  EXPECT_EQ(model.Transform("zz").dim, model.dim());
}

TEST(Tfidf, SingleDocumentIdfIsOne) {
  const auto model = TfidfModel::Fit(std::vector<std::string>{"one two"});
  for (double idf : model.idf()) EXPECT_DOUBLE_EQ(idf, 1.0);
  const auto v = model.Transform("one two");
  EXPECT_NEAR(v.entries[0].second, 1 / std::sqrt(2.0), 1e-15);
}

TEST(Tfidf, FitErrors) {
  EXPECT_THROW(TfidfModel::Fit(std::vector<std::string>{}), FitError);
  EXPECT_THROW(TfidfModel::Fit(std::vector<std::string>{"a b", "!"}), FitError);
}

TEST(Tfidf, JsonRoundTrip) {
  const auto model =
      TfidfModel::Fit(std::vector<std::string>{"Kyiv DDoS", "vote ddos"}, {true, 2});
  const auto back = TfidfModel::FromJson(model.ToJson());
  EXPECT_EQ(back, model);
  EXPECT_EQ(back.Transform("ddos vote"), model.Transform("ddos vote"));
  nlohmann::json bad = model.ToJson();
  bad["idf"].push_back(2.0);
  EXPECT_THROW(TfidfModel::FromJson(bad), SchemaError);
}

TEST(SparseVector, DotAndDense) {
  SparseVector v{4, {{1, 2.0}, {3, -1.0}}};
  const std::vector<double> w = {5, 1, 7, 3};
  EXPECT_DOUBLE_EQ(v.Dot(w), -1.0);
  EXPECT_EQ(v.ToDense(), (std::vector<double>{0, 2, 0, -1}));
  EXPECT_DOUBLE_EQ(v.Norm(), std::sqrt(5.0));
}

}  // namespace
}  // namespace tgtriage::textvec
