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

#ifndef TGTRIAGE_ENTITIES_H_
#define TGTRIAGE_ENTITIES_H_

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <nlohmann/json.hpp>

namespace tgtriage::entities {

enum class EntityLabel { kPerson, kNorp, kGpe, kOrg, kLoc, kDate, kEvent };

std::string_view ToString(EntityLabel label);      // "GPE"
std::string_view DisplayName(EntityLabel label);   // "Gpe"
// Throws FormatError for names outside the label set.
EntityLabel ParseEntityLabel(std::string_view name);

inline constexpr std::size_t kMaxSurfaceTokens = 5;

// Surface forms (1 to 5 tokens) mapped to labels, plus the word list used
// by the date rules.
class Gazetteer {
 public:
  Gazetteer() = default;

  // surface<TAB>LABEL lines, '#' comments. Throws FormatError on a bad
  // line, an unknown label, a repeated surface form, or a surface form
  // longer than kMaxSurfaceTokens tokens.
  static Gazetteer Parse(std::string_view text);
  static Gazetteer Load(const std::string &path);

  void Add(std::string_view surface, EntityLabel label);

  // One term per line. Terms starting with an uppercase letter (month
  // names) only match with that exact case; others match any case.
  void SetDateTerms(std::string_view text);
  void LoadDateTerms(const std::string &path);

  std::size_t size() const { return exact_.size(); }

  // Lookups keyed by the space-joined token sequence.
  const EntityLabel *FindExact(const std::string &key) const;
  // Returns the label and the surface form it was registered under.
  const std::pair<EntityLabel, std::string> *FindFolded(
      const std::string &folded_key) const;
  bool IsDateTerm(std::string_view token) const;

 private:
  std::unordered_map<std::string, EntityLabel> exact_;
  // Folded key -> (label, original surface). Only the first surface form
  // per folded key is kept.
  std::unordered_map<std::string, std::pair<EntityLabel, std::string>>
      folded_;
  std::unordered_set<std::string> date_exact_;
  std::unordered_set<std::string> date_folded_;
};

struct EntitySpan {
  std::string text;
  EntityLabel label;
  std::size_t char_start = 0;  // code point offsets, end exclusive
  std::size_t char_end = 0;

  nlohmann::json ToJson() const;
  bool operator==(const EntitySpan &) const = default;
};

// Greedy left-to-right longest match over tokens. At each token the
// longest gazetteer entry wins; among equal lengths an exact-case match
// beats a case-folded one. Tokens left uncovered then go through the date
// rules (date terms, capitalized month names, years 1900-2099).
std::vector<EntitySpan> Recognize(std::string_view text,
                                  const Gazetteer &gazetteer);

// Entities of one message grouped by label, labels in first-occurrence
// order, duplicates kept.
struct EntityGroup {
  EntityLabel label;
  std::vector<std::string> texts;
};

std::vector<EntityGroup> GroupByLabel(std::span<const EntitySpan> spans);

// "Gpe: South Africa, Israel" lines, one per group.
std::string RenderGroups(std::span<const EntityGroup> groups);

}  // namespace tgtriage::entities

#endif  // TGTRIAGE_ENTITIES_H_
