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
#include <map>

#include <gtest/gtest.h>

#include "tgtriage/csv.h"
#include "tgtriage/error.h"
#include "tgtriage/files.h"
#include "tgtriage/numerics.h"
#include "test_util.h"

namespace tgtriage::entities {
namespace {

const Gazetteer &Bundled() {
  static const Gazetteer gazetteer = [] {
    Gazetteer g = Gazetteer::Load((DataDir() / "gazetteer.tsv").string());
    g.LoadDateTerms((DataDir() / "date_terms.txt").string());
    return g;
  }();
  return gazetteer;
}

std::string MessageText(int index) {
  const auto table =
      csv::Parse(ReadFile(testing::FixturePath("example_messages.csv")));
  return table[index + 1][1];
}

std::multiset<std::pair<std::string, std::string>> AsMultiset(
    const std::vector<EntitySpan> &spans) {
  std::multiset<std::pair<std::string, std::string>> out;
  for (const auto &s : spans) {
    out.emplace(std::string(ToString(s.label)), s.text);
  }
  return out;
}

TEST(Recognize, MessageOne) {
  const auto spans = Recognize(MessageText(0), Bundled());
  const std::multiset<std::pair<std::string, std::string>> expected = {
      {"PERSON", "Killmilk"},
      {"ORG", "Killnet"},
      {"NORP", "Bulgarian"},
      {"GPE", "the Republic of Bulgaria"}};
  EXPECT_EQ(AsMultiset(spans), expected);
}

TEST(Recognize, MessageTwo) {
  const auto spans = Recognize(MessageText(1), Bundled());
  const std::multiset<std::pair<std::string, std::string>> expected = {
      {"GPE", "South Africa"}, {"GPE", "Israel"},  {"GPE", "Israel"},
      {"GPE", "Israel"},       {"GPE", "South Africa"},
      {"DATE", "decades"},     {"NORP", "Palestinians"}};
  EXPECT_EQ(AsMultiset(spans), expected);
  const auto groups = GroupByLabel(spans);
  EXPECT_EQ(RenderGroups(groups),
            "Gpe: South Africa, Israel, Israel, Israel, South Africa\n"
            "Date: decades\n"
            "Norp: Palestinians\n");
}

TEST(Recognize, LongestMatchWins) {
  Gazetteer g;
  g.Add("New York", EntityLabel::kGpe);
  g.Add("New York Times", EntityLabel::kOrg);
  const auto spans = Recognize("New York Times reported", g);
  ASSERT_EQ(spans.size(), 1u);
  EXPECT_EQ(spans[0].text, "New York Times");
  EXPECT_EQ(spans[0].label, EntityLabel::kOrg);
  EXPECT_EQ(spans[0].char_start, 0u);
  EXPECT_EQ(spans[0].char_end, 14u);
  const auto city = Recognize("flights to New York today", g);
  ASSERT_EQ(city.size(), 1u);
  EXPECT_EQ(city[0].label, EntityLabel::kGpe);
}

TEST(Recognize, ExactCaseBeatsFolded) {
  Gazetteer g;
  g.Add("Georgia", EntityLabel::kGpe);
  g.Add("GEORGIA", EntityLabel::kOrg);
  EXPECT_EQ(Recognize("GEORGIA", g)[0].label, EntityLabel::kOrg);
  EXPECT_EQ(Recognize("Georgia", g)[0].label, EntityLabel::kGpe);
  const auto folded = Recognize("georgia", g);
  ASSERT_EQ(folded.size(), 1u);
  EXPECT_EQ(folded[0].label, EntityLabel::kGpe);  // first registered fold
  EXPECT_EQ(folded[0].text, "georgia");           // surface from the text
}

TEST(Recognize, MultiTokenNeedsWhitespaceGap) {
  Gazetteer g;
  g.Add("South Africa", EntityLabel::kGpe);
  EXPECT_EQ(Recognize("South  Africa", g).size(), 1u);
  EXPECT_TRUE(Recognize("South-Africa", g).empty());
  EXPECT_TRUE(Recognize("South, Africa", g).empty());
}

TEST(Recognize, CodePointOffsets) {
  Gazetteer g;
  g.Add("Kyiv", EntityLabel::kGpe);
  const auto spans = Recognize("\xc3\xa9t\xc3\xa9 in Kyiv", g);  // "été in Kyiv"
  ASSERT_EQ(spans.size(), 1u);
  EXPECT_EQ(spans[0].char_start, 7u);
  EXPECT_EQ(spans[0].char_end, 11u);
}

TEST(Recognize, DateLayer) {
  const auto spans = Recognize(
      "In March 2022 and over the past decades, may 1899 passed", Bundled());
  std::vector<std::string> dates;
  for (const auto &s : spans) {
    if (s.label == EntityLabel::kDate) dates.push_back(s.text);
  }
  EXPECT_EQ(dates, (std::vector<std::string>{"March", "2022", "decades"}));
  EXPECT_TRUE(Recognize("march on", Bundled()).empty());
  EXPECT_EQ(Recognize("DECADES", Bundled()).size(), 1u);
  EXPECT_TRUE(Recognize("12022 or 21000", Bundled()).empty());
}

TEST(Recognize, OutputIsSortedAndNonOverlapping) {
  // Random token streams over gazetteer surfaces and filler.
  const std::vector<std::string> pool = {
      "South",   "Africa",  "the",     "Republic", "of",   "Bulgaria",
      "Israel",  "New",     "York",    "decades",  "hello", "Killnet",
      "NATO",    "2021",    "Georgia", "georgian", "x",     "United",
      "States",  "Kingdom", ",",       "."};
  numerics::Prng rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    std::string text;
    for (std::size_t k = rng.UniformInt(25); k > 0; --k) {
      text += pool[rng.UniformInt(pool.size())];
      text += rng.Uniform() < 0.8 ? " " : "  ";
    }
    const auto spans = Recognize(text, Bundled());
    for (std::size_t i = 0; i < spans.size(); ++i) {
      EXPECT_LT(spans[i].char_start, spans[i].char_end);
      EXPECT_LE(spans[i].char_end, text.size());
      if (i > 0) EXPECT_LE(spans[i - 1].char_end, spans[i].char_start) << text;
    }
    // Pure function of the input.
    EXPECT_EQ(spans, Recognize(text, Bundled()));
  }
}

TEST(Recognize, NoLongerGazetteerEntryCoversAShorterSpan) {
  // Property: no emitted span can be extended on the right into a longer
  // registered surface form.
  Gazetteer g;
  g.Add("a b", EntityLabel::kLoc);
  g.Add("a b c", EntityLabel::kOrg);
  g.Add("b c d", EntityLabel::kEvent);
  g.Add("c", EntityLabel::kPerson);
  const std::vector<std::string> pool = {"a", "b", "c", "d"};
  numerics::Prng rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    std::string text;
    for (std::size_t k = 1 + rng.UniformInt(12); k > 0; --k) {
      text += pool[rng.UniformInt(pool.size())] + " ";
    }
    for (const auto &s : Recognize(text, g)) {
      if (s.text == "a b") {
        EXPECT_NE(text.substr(s.char_start, 5), "a b c") << text;
      }
    }
  }
}

TEST(Groups, OrderOfFirstAppearance) {
  std::vector<EntitySpan> spans = {
      {"Israel", EntityLabel::kGpe, 0, 6},
      {"decades", EntityLabel::kDate, 7, 14},
      {"Gaza", EntityLabel::kGpe, 15, 19}};
  const auto groups = GroupByLabel(spans);
  ASSERT_EQ(groups.size(), 2u);
  EXPECT_EQ(groups[0].label, EntityLabel::kGpe);
  EXPECT_EQ(groups[0].texts, (std::vector<std::string>{"Israel", "Gaza"}));
  EXPECT_EQ(RenderGroups(groups), "Gpe: Israel, Gaza\nDate: decades\n");
  EXPECT_EQ(RenderGroups({}), "");
}

TEST(Gazetteer, ParseErrors) {
  EXPECT_NO_THROW(Gazetteer::Parse("# c\nKyiv\tGPE\r\n\n"));
  EXPECT_THROW(Gazetteer::Parse("Kyiv\n"), FormatError);
  EXPECT_THROW(Gazetteer::Parse("Kyiv\tCITY\n"), FormatError);
  EXPECT_THROW(Gazetteer::Parse("Kyiv\tGPE\nKyiv\tLOC\n"), FormatError);
  EXPECT_THROW(Gazetteer::Parse("a b c d e f\tORG\n"), FormatError);
  EXPECT_THROW(Gazetteer::Parse("...\tORG\n"), FormatError);
}

TEST(Labels, RoundTrip) {
  for (auto label : {EntityLabel::kPerson, EntityLabel::kNorp,
                     EntityLabel::kGpe, EntityLabel::kOrg, EntityLabel::kLoc,
                     EntityLabel::kDate, EntityLabel::kEvent}) {
    EXPECT_EQ(ParseEntityLabel(ToString(label)), label);
  }
  EXPECT_EQ(DisplayName(EntityLabel::kNorp), "Norp");
  EXPECT_THROW(ParseEntityLabel("CITY"), FormatError);
}

TEST(Span, Json) {
  const EntitySpan span{"Kyiv", EntityLabel::kGpe, 3, 7};
  const auto j = span.ToJson();
  EXPECT_EQ(j["text"], "Kyiv");
  EXPECT_EQ(j["label"], "GPE");
  EXPECT_EQ(j["char_start"], 3);
  EXPECT_EQ(j["char_end"], 7);
}

}  // namespace
}  // namespace tgtriage::entities
