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

#include "tgtriage/entities.h"

#include <algorithm>
#include <array>

#include "tgtriage/error.h"
#include "tgtriage/files.h"
#include "tgtriage/utf8.h"

namespace tgtriage::entities {
namespace {

struct LabelName {
  EntityLabel label;
  std::string_view code;
  std::string_view display;
};

constexpr std::array<LabelName, 7> kLabelNames = {{
    {EntityLabel::kPerson, "PERSON", "Person"},
    {EntityLabel::kNorp, "NORP", "Norp"},
    {EntityLabel::kGpe, "GPE", "Gpe"},
    {EntityLabel::kOrg, "ORG", "Org"},
    {EntityLabel::kLoc, "LOC", "Loc"},
    {EntityLabel::kDate, "DATE", "Date"},
    {EntityLabel::kEvent, "EVENT", "Event"},
}};

struct Token {
  std::size_t start = 0;  // code point offsets
  std::size_t end = 0;
  std::string text;
};

std::vector<Token> WordTokens(const std::u32string &cps) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < cps.size()) {
    if (!utf8::IsAlnum(cps[i])) {
      ++i;
      continue;
    }
    Token t;
    t.start = i;
    while (i < cps.size() && utf8::IsAlnum(cps[i])) utf8::Append(t.text, cps[i++]);
    t.end = i;
    tokens.push_back(std::move(t));
  }
  return tokens;
}

// Tokens of a multi-word entity may only be separated by whitespace.
bool WhitespaceGap(const std::u32string &cps, const Token &a, const Token &b) {
  for (std::size_t k = a.end; k < b.start; ++k) {
    if (!utf8::IsSpace(cps[k])) return false;
  }
  return true;
}

std::string JoinKey(const std::vector<Token> &tokens, std::size_t begin,
                    std::size_t count) {
  std::string key;
  for (std::size_t k = begin; k < begin + count; ++k) {
    if (k > begin) key += ' ';
    key += tokens[k].text;
  }
  return key;
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

template <typename Fn>
void ForEachLine(std::string_view text, Fn &&fn) {
  std::size_t pos = 0, line_no = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    fn(++line_no, line);
    pos = end + 1;
  }
}

bool IsYear(const std::string &token) {
  if (token.size() != 4) return false;
  for (char c : token) {
    if (c < '0' || c > '9') return false;
  }
  const int year = std::stoi(token);
  return year >= 1900 && year <= 2099;
}

}  // namespace

std::string_view ToString(EntityLabel label) {
  for (const auto &n : kLabelNames) {
    if (n.label == label) return n.code;
  }
  return "?";
}

std::string_view DisplayName(EntityLabel label) {
  for (const auto &n : kLabelNames) {
    if (n.label == label) return n.display;
  }
  return "?";
}

EntityLabel ParseEntityLabel(std::string_view name) {
  for (const auto &n : kLabelNames) {
    if (n.code == name) return n.label;
  }
  throw FormatError("unknown entity label '" + std::string(name) + "'");
}

Gazetteer Gazetteer::Parse(std::string_view text) {
  Gazetteer g;
  ForEachLine(text, [&](std::size_t line_no, std::string_view line) {
    line = Trim(line);
    if (line.empty() || line.front() == '#') return;
    const std::size_t tab = line.find('\t');
    const std::string where = "gazetteer: line " + std::to_string(line_no);
    if (tab == std::string_view::npos) {
      throw FormatError(where + ": expected surface<TAB>LABEL");
    }
    const std::string_view surface = Trim(line.substr(0, tab));
    const EntityLabel label = ParseEntityLabel(Trim(line.substr(tab + 1)));
    const std::size_t before = g.size();
    g.Add(surface, label);
    if (g.size() == before) {
      throw FormatError(where + ": repeated surface form '" +
                        std::string(surface) + "'");
    }
  });
  return g;
}

Gazetteer Gazetteer::Load(const std::string &path) {
  return Parse(ReadFile(path));
}

void Gazetteer::Add(std::string_view surface, EntityLabel label) {
  const std::vector<Token> tokens = WordTokens(utf8::Decode(surface));
  if (tokens.empty() || tokens.size() > kMaxSurfaceTokens) {
    throw FormatError("gazetteer: surface form '" + std::string(surface) +
                      "' must have 1 to " + std::to_string(kMaxSurfaceTokens) +
                      " tokens");
  }
  const std::string key = JoinKey(tokens, 0, tokens.size());
  exact_[key] = label;
  folded_.try_emplace(utf8::ToLower(key), label, key);
}

void Gazetteer::SetDateTerms(std::string_view text) {
  date_exact_.clear();
  date_folded_.clear();
  ForEachLine(text, [&](std::size_t, std::string_view line) {
    line = Trim(line);
    if (line.empty() || line.front() == '#') return;
    const std::u32string cps = utf8::Decode(line);
    if (utf8::IsUpper(cps.front())) {
      date_exact_.emplace(line);
    } else {
      date_folded_.insert(utf8::ToLower(line));
    }
  });
}

void Gazetteer::LoadDateTerms(const std::string &path) {
  SetDateTerms(ReadFile(path));
}

const EntityLabel *Gazetteer::FindExact(const std::string &key) const {
  auto it = exact_.find(key);
  return it == exact_.end() ? nullptr : &it->second;
}

const std::pair<EntityLabel, std::string> *Gazetteer::FindFolded(
    const std::string &folded_key) const {
  auto it = folded_.find(folded_key);
  return it == folded_.end() ? nullptr : &it->second;
}

bool Gazetteer::IsDateTerm(std::string_view token) const {
  return date_exact_.count(std::string(token)) > 0 ||
         date_folded_.count(utf8::ToLower(token)) > 0;
}

nlohmann::json EntitySpan::ToJson() const {
  return {{"text", text},
          {"label", std::string(ToString(label))},
          {"char_start", char_start},
          {"char_end", char_end}};
}

std::vector<EntitySpan> Recognize(std::string_view text,
                                  const Gazetteer &gazetteer) {
  const std::u32string cps = utf8::Decode(text);
  const std::vector<Token> tokens = WordTokens(cps);
  auto make_span = [&](std::size_t first, std::size_t count, EntityLabel label) {
    EntitySpan span;
    span.label = label;
    span.char_start = tokens[first].start;
    span.char_end = tokens[first + count - 1].end;
    span.text = utf8::Encode(
        std::u32string_view(cps).substr(span.char_start,
                                        span.char_end - span.char_start));
    return span;
  };

  std::vector<EntitySpan> spans;
  std::vector<std::size_t> uncovered;
  std::size_t i = 0;
  while (i < tokens.size()) {
    std::size_t reach = 1;
    while (reach < kMaxSurfaceTokens && i + reach < tokens.size() &&
           WhitespaceGap(cps, tokens[i + reach - 1], tokens[i + reach])) {
      ++reach;
    }
    std::size_t matched = 0;
    EntityLabel label{};
    for (std::size_t len = reach; len >= 1 && matched == 0; --len) {
      const std::string key = JoinKey(tokens, i, len);
      if (const EntityLabel *exact = gazetteer.FindExact(key)) {
        matched = len;
        label = *exact;
      } else if (const auto *folded =
                     gazetteer.FindFolded(utf8::ToLower(key))) {
        matched = len;
        label = folded->first;
      }
    }
    if (matched > 0) {
      spans.push_back(make_span(i, matched, label));
      i += matched;
    } else {
      uncovered.push_back(i++);
    }
  }

  for (std::size_t k : uncovered) {
    if (gazetteer.IsDateTerm(tokens[k].text) || IsYear(tokens[k].text)) {
      spans.push_back(make_span(k, 1, EntityLabel::kDate));
    }
  }
  std::sort(spans.begin(), spans.end(),
            [](const EntitySpan &a, const EntitySpan &b) {
              return a.char_start < b.char_start;
            });
  return spans;
}

std::vector<EntityGroup> GroupByLabel(std::span<const EntitySpan> spans) {
  std::vector<EntityGroup> groups;
  for (const EntitySpan &span : spans) {
    auto it = std::find_if(groups.begin(), groups.end(),
                           [&](const EntityGroup &g) { return g.label == span.label; });
    if (it == groups.end()) {
      groups.push_back({span.label, {}});
      it = groups.end() - 1;
    }
    it->texts.push_back(span.text);
  }
  return groups;
}

std::string RenderGroups(std::span<const EntityGroup> groups) {
  std::string out;
  for (const EntityGroup &g : groups) {
    out += DisplayName(g.label);
    out += ": ";
    for (std::size_t k = 0; k < g.texts.size(); ++k) {
      if (k > 0) out += ", ";
      out += g.texts[k];
    }
    out += '\n';
  }
  return out;
}

}  // namespace tgtriage::entities
