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

#include "tgtriage/corpus.h"

#include <cmath>
#include <numeric>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "tgtriage/csv.h"
#include "tgtriage/error.h"
#include "tgtriage/numerics.h"

namespace tgtriage::corpus {
namespace {

constexpr std::size_t kTopLevel = static_cast<std::size_t>(-1);

bool IsBlank(std::string_view s) {
  for (char c : s) {
    if (c != ' ' && c != '\t' && c != '\n' && c != '\r' && c != '\f' &&
        c != '\v') {
      return false;
    }
  }
  return true;
}

std::string Trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t')) --e;
  return std::string(s.substr(b, e - b));
}

[[noreturn]] void MissingField(const std::string &field, std::size_t record) {
  if (record == kTopLevel) {
    throw SchemaError("export: missing or invalid top-level field '" + field +
                          "'",
                      field, record);
  }
  throw SchemaError("export: message " + std::to_string(record) +
                        ": missing or invalid field '" + field + "'",
                    field, record);
}

// Text is either a plain string or a list of runs, each a string or an
// object carrying a "text" string.
std::string ConcatenateText(const nlohmann::json &text, std::size_t record) {
  if (text.is_string()) return text.get<std::string>();
  if (!text.is_array()) MissingField("text", record);
  std::string out;
  for (const auto &run : text) {
    if (run.is_string()) {
      out += run.get<std::string>();
    } else if (run.is_object() && run.contains("text") &&
               run["text"].is_string()) {
      out += run["text"].get<std::string>();
    } else {
      MissingField("text", record);
    }
  }
  return out;
}

enum class LabelPolicy { kRequired, kOptional };

std::vector<Message> ReadCsv(std::string_view csv_text, LabelPolicy policy) {
  std::vector<csv::Row> rows = csv::Parse(csv_text);
  if (rows.empty()) throw FormatError("csv: missing header");

  const csv::Row &header = rows.front();
  std::unordered_set<std::string> seen;
  for (const std::string &name : header) {
    if (!seen.insert(Trim(name)).second) {
      throw FormatError("csv: duplicate header column '" + Trim(name) + "'");
    }
  }
  static const csv::Row kPlain = {"content", "date", "group", "class"};
  static const csv::Row kWithId = {"id", "content", "date", "group", "class"};
  csv::Row trimmed;
  for (const std::string &name : header) trimmed.push_back(Trim(name));
  bool has_id;
  if (trimmed == kPlain) {
    has_id = false;
  } else if (trimmed == kWithId) {
    has_id = true;
  } else {
    throw FormatError(
        "csv: header must be content,date,group,class (optionally preceded "
        "by id)");
  }
  const std::size_t width = header.size();
  const std::size_t off = has_id ? 1 : 0;

  std::vector<Message> messages;
  messages.reserve(rows.size() - 1);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const csv::Row &row = rows[r];
    if (row.size() == 1 && row[0].empty()) continue;  // blank line
    if (row.size() != width) {
      throw FormatError("csv: row " + std::to_string(r) + " has " +
                        std::to_string(row.size()) + " fields, expected " +
                        std::to_string(width));
    }
    csv::Row check;
    for (const std::string &f : row) check.push_back(Trim(f));
    if (check == trimmed) {
      throw FormatError("csv: duplicate header at row " + std::to_string(r));
    }

    Message m;
    m.id = has_id ? row[0] : "row-" + std::to_string(r);
    if (m.id.empty()) {
      throw LabeledDataError("csv: row " + std::to_string(r) + ": empty id", r);
    }
    m.content = row[off];
    m.date = row[off + 1];
    m.group = row[off + 2];
    std::string label = Trim(row[off + 3]);
    if (label == "0") {
      m.label = Label::kPolitics;
    } else if (label == "1") {
      m.label = Label::kCyber;
    } else if (!(label.empty() && policy == LabelPolicy::kOptional)) {
      throw LabeledDataError("csv: row " + std::to_string(r) +
                                 ": class must be 0 or 1, got '" + label + "'",
                             r);
    }
    if (IsBlank(m.content)) {
      throw LabeledDataError(
          "csv: row " + std::to_string(r) + ": content is empty", r);
    }
    messages.push_back(std::move(m));
  }
  return messages;
}

}  // namespace

LabeledDataset::LabeledDataset(std::vector<Message> messages)
    : messages_(std::move(messages)) {
  for (std::size_t i = 0; i < messages_.size(); ++i) {
    const Message &m = messages_[i];
    if (!m.label) {
      throw DataError("dataset: message '" + m.id + "' has no label");
    }
    if (IsBlank(m.content)) {
      throw DataError("dataset: message '" + m.id + "' has empty content");
    }
    ++class_counts_[ToInt(*m.label)];
  }
}

std::vector<std::string> LabeledDataset::Contents() const {
  std::vector<std::string> out;
  out.reserve(messages_.size());
  for (const Message &m : messages_) out.push_back(m.content);
  return out;
}

std::vector<int> LabeledDataset::Labels() const {
  std::vector<int> out;
  out.reserve(messages_.size());
  for (const Message &m : messages_) out.push_back(ToInt(*m.label));
  return out;
}

std::vector<Message> ParseTelegramExport(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error &e) {
    throw ParseError(std::string("export: ") + e.what(), e.byte);
  }
  if (!doc.is_object()) MissingField("messages", kTopLevel);
  if (!doc.contains("name") || !doc["name"].is_string()) {
    MissingField("name", kTopLevel);
  }
  if (!doc.contains("messages") || !doc["messages"].is_array()) {
    MissingField("messages", kTopLevel);
  }
  const std::string group = doc["name"].get<std::string>();

  std::vector<Message> out;
  const auto &posts = doc["messages"];
  for (std::size_t i = 0; i < posts.size(); ++i) {
    const auto &post = posts[i];
    if (!post.is_object()) MissingField("id", i);
    if (!post.contains("id") || !post["id"].is_number_integer()) {
      MissingField("id", i);
    }
    if (!post.contains("date") || !post["date"].is_string()) {
      MissingField("date", i);
    }
    if (!post.contains("text")) MissingField("text", i);
    std::string text = ConcatenateText(post["text"], i);
    if (IsBlank(text)) continue;  // media-only or service post

    Message m;
    m.id = group + "/" + std::to_string(post["id"].get<std::int64_t>());
    m.content = std::move(text);
    m.date = post["date"].get<std::string>();
    m.group = group;
    out.push_back(std::move(m));
  }
  return out;
}

LabeledDataset LoadLabeledCsv(std::string_view csv_text) {
  return LabeledDataset(ReadCsv(csv_text, LabelPolicy::kRequired));
}

std::vector<Message> LoadMessageCsv(std::string_view csv_text) {
  return ReadCsv(csv_text, LabelPolicy::kOptional);
}

std::string ToCsv(std::span<const Message> messages) {
  std::string out = csv::FormatRow({"id", "content", "date", "group", "class"});
  for (const Message &m : messages) {
    out += csv::FormatRow(
        {m.id, m.content, m.date, m.group,
         m.label ? std::to_string(ToInt(*m.label)) : std::string()});
  }
  return out;
}

std::string ToCsv(const LabeledDataset &dataset) {
  return ToCsv(std::span<const Message>(dataset.messages()));
}

LabeledDataset Merge(std::span<const LabeledDataset> parts) {
  std::vector<Message> all;
  std::unordered_set<std::string> ids;
  for (const LabeledDataset &part : parts) {
    for (const Message &m : part.messages()) {
      if (!ids.insert(m.id).second) {
        throw DataError("merge: duplicate message id '" + m.id + "'");
      }
      all.push_back(m);
    }
  }
  return LabeledDataset(std::move(all));
}

std::vector<std::size_t> SplitPermutation(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  numerics::Prng rng(seed);
  numerics::Shuffle(std::span<std::size_t>(order), rng);
  return order;
}

Split SplitDataset(const LabeledDataset &dataset, const SplitSpec &spec) {
  if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0)) {
    throw UsageError("split: train_fraction must lie in (0, 1)");
  }
  const std::size_t n = dataset.size();
  if (n < 2) throw DataError("split: need at least 2 messages");
  // The nudge keeps products like 0.29 * 100 from flooring to 28.
  const auto n_train = static_cast<std::size_t>(
      std::floor(spec.train_fraction * static_cast<double>(n) + 1e-9));
  if (n_train == 0 || n_train == n) {
    throw DataError("split: " + std::to_string(n) +
                    " messages leave one side empty at fraction " +
                    std::to_string(spec.train_fraction));
  }
  std::vector<std::size_t> order = SplitPermutation(n, spec.seed);
  std::vector<Message> train, test;
  train.reserve(n_train);
  test.reserve(n - n_train);
  for (std::size_t k = 0; k < n; ++k) {
    const Message &m = dataset.messages()[order[k]];
    (k < n_train ? train : test).push_back(m);
  }
  return {LabeledDataset(std::move(train)), LabeledDataset(std::move(test))};
}

}  // namespace tgtriage::corpus
