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

#ifndef TGTRIAGE_SENTIMENT_H_
#define TGTRIAGE_SENTIMENT_H_

#include <string>
#include <string_view>
#include <unordered_map>

#include <nlohmann/json.hpp>

namespace tgtriage::sentiment {

// Lowercase token -> mean valence in [-4, 4].
class SentimentLexicon {
 public:
  SentimentLexicon() = default;

  // Parses token<TAB>valence lines; '#' starts a comment line and extra
  // tab-separated columns are ignored. Later duplicates replace earlier
  // ones. Throws FormatError on a bad line or out-of-range valence.
  static SentimentLexicon Parse(std::string_view text);
  static SentimentLexicon Load(const std::string &path);

  // Throws FormatError if |valence| > 4.
  void Set(std::string token, double valence);
  const double *Find(std::string_view token) const;
  bool Contains(std::string_view token) const { return Find(token); }
  std::size_t size() const { return valences_.size(); }

  // Copy with every valence negated.
  SentimentLexicon Negated() const;

 private:
  std::unordered_map<std::string, double> valences_;
};

struct SentimentScore {
  double neg = 0.0;
  double neu = 0.0;
  double pos = 0.0;
  double compound = 0.0;

  nlohmann::json ToJson() const;
};

// Normalization applied to the summed valence: s / sqrt(s^2 + alpha).
double NormalizeValence(double sum, double alpha = 15.0);

// Lexicon-and-rules scoring: boosters, negation, capitalization emphasis,
// "but" reweighting, idioms and punctuation emphasis. Empty text scores
// all zeros.
SentimentScore Score(std::string_view text, const SentimentLexicon &lexicon);

}  // namespace tgtriage::sentiment

#endif  // TGTRIAGE_SENTIMENT_H_
