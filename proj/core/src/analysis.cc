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

#include "tgtriage/analysis.h"

#include <cstdio>
#include <sstream>

#include "tgtriage/error.h"

namespace tgtriage::pipeline {

std::vector<MessageAnalysis> Analyze(std::span<const corpus::Message> messages,
                                     const sentiment::SentimentLexicon *lexicon,
                                     const entities::Gazetteer *gazetteer) {
  std::vector<MessageAnalysis> out;
  out.reserve(messages.size());
  for (const corpus::Message &m : messages) {
    MessageAnalysis a;
    a.id = m.id;
    if (lexicon) a.sentiment = sentiment::Score(m.content, *lexicon);
    if (gazetteer) a.entities = entities::Recognize(m.content, *gazetteer);
    out.push_back(std::move(a));
  }
  return out;
}

nlohmann::json AnalysisJson(std::span<const MessageAnalysis> analyses) {
  nlohmann::json out = nlohmann::json::array();
  for (const MessageAnalysis &a : analyses) {
    nlohmann::json j = {{"id", a.id}};
    if (a.sentiment) {
      j.update(a.sentiment->ToJson());
    }
    if (a.entities) {
      nlohmann::json spans = nlohmann::json::array();
      for (const entities::EntitySpan &s : *a.entities) {
        spans.push_back(s.ToJson());
      }
      j["entities"] = std::move(spans);
    }
    out.push_back(std::move(j));
  }
  return out;
}

std::string AnalysisMarkdown(std::span<const corpus::Message> messages,
                             std::span<const MessageAnalysis> analyses) {
  if (messages.size() != analyses.size()) {
    throw DataError("analysis count does not match message count");
  }
  std::ostringstream out;
  out << "# Message analysis\n";
  for (std::size_t k = 0; k < messages.size(); ++k) {
    const MessageAnalysis &a = analyses[k];
    out << "\n## " << a.id << "\n\n";
    if (a.sentiment) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.4f", a.sentiment->compound);
      out << "Sentiment score: " << buf << "\n\n";
    }
    out << "Text: " << messages[k].content << "\n";
    if (a.entities) {
      const auto groups = entities::GroupByLabel(*a.entities);
      out << "\nEntities:\n\n";
      if (groups.empty()) {
        out << "(none)\n";
      } else {
        out << entities::RenderGroups(groups);
      }
    }
  }
  return out.str();
}

}  // namespace tgtriage::pipeline
