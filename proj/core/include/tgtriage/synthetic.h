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

#ifndef TGTRIAGE_SYNTHETIC_H_
#define TGTRIAGE_SYNTHETIC_H_

#include <cstdint>

#include <nlohmann/json.hpp>

#include "tgtriage/corpus.h"

namespace tgtriage::pipeline {

// Two-topic corpus generator. Each class has a word pool; the first
// `overlap` fraction of the smaller pool is shared by both classes and
// occupies the most frequent ranks. Tokens are drawn from a Zipf law over
// the pool ranks, so common words are mostly shared and the topical tail
// carries the signal.
struct SyntheticCorpusSpec {
  // Documents per class; unequal counts give an imbalanced corpus.
  std::size_t politics_docs = 2000;
  std::size_t cyber_docs = 2000;
  std::size_t politics_vocab = 150;
  std::size_t cyber_vocab = 150;
  double overlap = 0.3;
  std::size_t min_tokens = 3;
  std::size_t max_tokens = 9;
  double zipf_exponent = 1.0;
  std::uint64_t seed = 20240607;

  // Throws UsageError on empty pools, bad lengths or overlap outside [0,1].
  void Validate() const;

  nlohmann::json ToJson() const;
  bool operator==(const SyntheticCorpusSpec &) const = default;
};

corpus::LabeledDataset GenerateSyntheticCorpus(const SyntheticCorpusSpec &spec);

}  // namespace tgtriage::pipeline

#endif  // TGTRIAGE_SYNTHETIC_H_
