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

#ifndef TGTRIAGE_CORPUS_H_
#define TGTRIAGE_CORPUS_H_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tgtriage::corpus {

// Binary topic label. 0 is political discourse, 1 is cyber-threat content.
enum class Label : int { kPolitics = 0, kCyber = 1 };

inline int ToInt(Label label) { return static_cast<int>(label); }

// One channel post.
struct Message {
  std::string id;
  std::string content;
  std::string date;   // ISO-8601, UTC
  std::string group;  // source channel name
  std::optional<Label> label;

  bool operator==(const Message &) const = default;
};

// A list of labeled messages together with per-class counts.
class LabeledDataset {
 public:
  LabeledDataset() = default;

  // Throws DataError if a message is unlabeled or has blank content.
  explicit LabeledDataset(std::vector<Message> messages);

  const std::vector<Message> &messages() const { return messages_; }
  std::size_t size() const { return messages_.size(); }
  bool empty() const { return messages_.empty(); }

  // Indexed by ToInt(label).
  const std::array<std::size_t, 2> &class_counts() const {
    return class_counts_;
  }

  std::vector<std::string> Contents() const;
  std::vector<int> Labels() const;

  bool operator==(const LabeledDataset &) const = default;

 private:
  std::vector<Message> messages_;
  std::array<std::size_t, 2> class_counts_{0, 0};
};

struct SplitSpec {
  double train_fraction = 0.75;
  std::uint64_t seed = 42;
};

struct Split {
  LabeledDataset train;
  LabeledDataset test;
};

// Parses a channel export (see docs/formats.md). Media-only posts and posts
// whose text is blank are skipped. Throws ParseError on malformed JSON and
// SchemaError on a missing or mistyped field.
std::vector<Message> ParseTelegramExport(std::string_view json_text);

// Parses a CSV with header content,date,group,class (optionally preceded by
// an id column). Rows without an id get "row-<n>". Every row must carry a
// class of 0 or 1.
LabeledDataset LoadLabeledCsv(std::string_view csv_text);

// Same layout as LoadLabeledCsv but the class column may be empty.
std::vector<Message> LoadMessageCsv(std::string_view csv_text);

// Writes id,content,date,group,class. Unlabeled messages get an empty class.
std::string ToCsv(std::span<const Message> messages);
std::string ToCsv(const LabeledDataset &dataset);

// Concatenates datasets in order. Throws DataError on a repeated id.
LabeledDataset Merge(std::span<const LabeledDataset> parts);

// Deterministic shuffle-and-cut. |train| = floor(train_fraction * N).
// Throws UsageError for a bad fraction and DataError when either side would
// be empty.
Split SplitDataset(const LabeledDataset &dataset, const SplitSpec &spec);

// The permutation SplitDataset applies: SplitMix64 seeded with `seed`
// driving a Fisher-Yates shuffle of 0..n-1.
std::vector<std::size_t> SplitPermutation(std::size_t n, std::uint64_t seed);

}  // namespace tgtriage::corpus

#endif  // TGTRIAGE_CORPUS_H_
