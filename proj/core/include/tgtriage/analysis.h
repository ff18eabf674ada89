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

#ifndef TGTRIAGE_ANALYSIS_H_
#define TGTRIAGE_ANALYSIS_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tgtriage/corpus.h"
#include "tgtriage/entities.h"
#include "tgtriage/sentiment.h"

namespace tgtriage::pipeline {

struct MessageAnalysis {
  std::string id;
  std::optional<sentiment::SentimentScore> sentiment;
  std::optional<std::vector<entities::EntitySpan>> entities;
};

// Either analyzer may be null to skip that part.
std::vector<MessageAnalysis> Analyze(std::span<const corpus::Message> messages,
                                     const sentiment::SentimentLexicon *lexicon,
                                     const entities::Gazetteer *gazetteer);

// [{id, compound, neg, neu, pos, entities: [{text, label, char_start,
// char_end}]}]; absent parts are omitted.
nlohmann::json AnalysisJson(std::span<const MessageAnalysis> analyses);

// Per message: sentiment line followed by grouped entities.
std::string AnalysisMarkdown(std::span<const corpus::Message> messages,
                             std::span<const MessageAnalysis> analyses);

}  // namespace tgtriage::pipeline

#endif  // TGTRIAGE_ANALYSIS_H_
