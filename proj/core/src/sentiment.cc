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

#include "tgtriage/sentiment.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string>
#include <unordered_set>
#include <vector>

#include "tgtriage/error.h"
#include "tgtriage/files.h"
#include "tgtriage/utf8.h"

namespace tgtriage::sentiment {
namespace {

// Empirically derived constants of the reference VADER implementation.
constexpr double kBoosterIncrement = 0.293;
constexpr double kBoosterDecrement = -0.293;
constexpr double kCapsIncrement = 0.733;
constexpr double kNegationScalar = -0.74;
constexpr double kExclamationIncrement = 0.292;
constexpr int kMaxExclamations = 4;
constexpr double kQuestionIncrement = 0.18;
constexpr double kQuestionFlood = 0.96;

const std::unordered_set<std::string> &NegationWords() {
  static const std::unordered_set<std::string> words = {
      "aint",     "arent",     "cannot",  "cant",     "couldnt",  "darent",
      "didnt",    "doesnt",    "ain't",   "aren't",   "can't",    "couldn't",
      "daren't",  "didn't",    "doesn't", "dont",     "hadnt",    "hasnt",
      "havent",   "isnt",      "mightnt", "mustnt",   "neither",  "don't",
      "hadn't",   "hasn't",    "haven't", "isn't",    "mightn't", "mustn't",
      "neednt",   "needn't",   "never",   "none",     "nope",     "nor",
      "not",      "nothing",   "nowhere", "oughtnt",  "shant",    "shouldnt",
      "uhuh",     "wasnt",     "werent",  "oughtn't", "shan't",   "shouldn't",
      "uh-uh",    "wasn't",    "weren't", "without",  "wont",     "wouldnt",
      "won't",    "wouldn't",  "rarely",  "seldom",   "despite"};
  return words;
}

const std::unordered_map<std::string, double> &Boosters() {
  static const std::unordered_map<std::string, double> boosters = [] {
    std::unordered_map<std::string, double> m;
    for (const char *w :
         {"absolutely", "amazingly", "awfully", "completely", "considerable",
          "considerably", "decidedly", "deeply", "effing", "enormous",
          "enormously", "entirely", "especially", "exceptional",
          "exceptionally", "extreme", "extremely", "fabulously", "flipping",
          "flippin", "frackin", "fracking", "fricking", "frickin",
          "frigging", "friggin", "fully", "fuckin", "fucking", "fuggin",
          "fugging", "greatly", "hella", "highly", "hugely", "incredible",
          "incredibly", "intensely", "major", "majorly", "more", "most",
          "particularly", "purely", "quite", "really", "remarkably", "so",
          "substantially", "thoroughly", "total", "totally", "tremendous",
          "tremendously", "uber", "unbelievably", "unusually", "utter",
          "utterly", "very"}) {
      m.emplace(w, kBoosterIncrement);
    }
    for (const char *w :
         {"almost", "barely", "hardly", "just enough", "kind of", "kinda",
          "kindof", "kind-of", "less", "little", "marginal", "marginally",
          "occasional", "occasionally", "partly", "scarce", "scarcely",
          "slight", "slightly", "somewhat", "sort of", "sorta", "sortof",
          "sort-of"}) {
      m.emplace(w, kBoosterDecrement);
    }
    return m;
  }();
  return boosters;
}

// Phrases containing lexicon words whose valence is replaced outright.
const std::unordered_map<std::string, double> &SpecialCases() {
  static const std::unordered_map<std::string, double> cases = {
      {"the shit", 3},     {"the bomb", 3},        {"bad ass", 1.5},
      {"badass", 1.5},     {"bus stop", 0.0},      {"yeah right", -2},
      {"kiss of death", -1.5}, {"to die for", 3},  {"beating heart", 3.5}};
  return cases;
}

bool IsAsciiPunct(char c) {
  return (c >= '!' && c <= '/') || (c >= ':' && c <= '@') ||
         (c >= '[' && c <= '`') || (c >= '{' && c <= '~');
}

// Strips leading and trailing ASCII punctuation unless that would leave
// two characters or fewer (which keeps emoticons such as ":)").
std::string StripPunctuationIfWord(const std::string &token) {
  std::size_t b = 0, e = token.size();
  while (b < e && IsAsciiPunct(token[b])) ++b;
  while (e > b && IsAsciiPunct(token[e - 1])) --e;
  std::string_view stripped(token.data() + b, e - b);
  if (utf8::Length(stripped) <= 2) return token;
  return std::string(stripped);
}

std::vector<std::string> SplitWhitespace(std::string_view text) {
  std::vector<std::string> out;
  std::string current;
  for (char32_t cp : utf8::Decode(text)) {
    if (utf8::IsSpace(cp)) {
      if (!current.empty()) out.push_back(std::move(current));
      current.clear();
    } else {
      utf8::Append(current, cp);
    }
  }
  if (!current.empty()) out.push_back(std::move(current));
  return out;
}

bool IsNegation(const std::string &lower_word) {
  return NegationWords().count(lower_word) > 0 ||
         lower_word.find("n't") != std::string::npos;
}

class Scorer {
 public:
  Scorer(std::string_view text, const SentimentLexicon &lexicon)
      : lexicon_(lexicon) {
    for (std::string &w : SplitWhitespace(text)) {
      words_.push_back(StripPunctuationIfWord(w));
    }
    std::size_t all_caps = 0;
    for (const std::string &w : words_) {
      lower_.push_back(utf8::ToLower(w));
      upper_.push_back(utf8::IsAllUpper(w));
      if (upper_.back()) ++all_caps;
    }
    const std::size_t differential = words_.size() - all_caps;
    cap_differential_ = differential > 0 && differential < words_.size();
  }

  std::vector<double> Valences() const {
    std::vector<double> sentiments;
    sentiments.reserve(words_.size());
    const auto &boosters = Boosters();
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if (boosters.count(lower_[i])) {
        sentiments.push_back(0.0);
        continue;
      }
      if (i + 1 < words_.size() && lower_[i] == "kind" &&
          lower_[i + 1] == "of") {
        sentiments.push_back(0.0);
        continue;
      }
      sentiments.push_back(WordValence(i));
    }
    ButCheck(sentiments);
    return sentiments;
  }

  std::size_t size() const { return words_.size(); }

 private:
  bool InLexicon(std::size_t i) const { return lexicon_.Contains(lower_[i]); }

  double WordValence(std::size_t i) const {
    const double *base = lexicon_.Find(lower_[i]);
    if (base == nullptr) return 0.0;
    double valence = *base;
    const std::size_t n = words_.size();

    // "no" directly before another lexicon word acts as a negator only.
    if (lower_[i] == "no" && i + 1 < n && InLexicon(i + 1)) valence = 0.0;
    if ((i > 0 && lower_[i - 1] == "no") || (i > 1 && lower_[i - 2] == "no") ||
        (i > 2 && lower_[i - 3] == "no" &&
         (lower_[i - 1] == "or" || lower_[i - 1] == "nor"))) {
      valence = *base * kNegationScalar;
    }

    if (upper_[i] && cap_differential_) {
      valence += valence > 0 ? kCapsIncrement : -kCapsIncrement;
    }

    for (std::size_t start = 0; start < 3; ++start) {
      if (i > start && !InLexicon(i - (start + 1))) {
        double s = BoosterScalar(i - (start + 1), valence);
        if (start == 1 && s != 0) s *= 0.95;
        if (start == 2 && s != 0) s *= 0.9;
        valence += s;
        valence = NegationCheck(valence, start, i);
        if (start == 2) valence = SpecialIdiomsCheck(valence, i);
      }
    }
    return LeastCheck(valence, i);
  }

  double BoosterScalar(std::size_t j, double valence) const {
    auto it = Boosters().find(lower_[j]);
    if (it == Boosters().end()) return 0.0;
    double scalar = it->second;
    if (valence < 0) scalar = -scalar;
    if (upper_[j] && cap_differential_) {
      scalar += valence > 0 ? kCapsIncrement : -kCapsIncrement;
    }
    return scalar;
  }

  double NegationCheck(double valence, std::size_t start, std::size_t i) const {
    const auto &w = lower_;
    if (start == 0) {
      if (IsNegation(w[i - 1])) valence *= kNegationScalar;
    } else if (start == 1) {
      if (w[i - 2] == "never" && (w[i - 1] == "so" || w[i - 1] == "this")) {
        valence *= 1.25;
      } else if (w[i - 2] == "without" && w[i - 1] == "doubt") {
        // "without doubt" is not a negation.
      } else if (IsNegation(w[i - 2])) {
        valence *= kNegationScalar;
      }
    } else {
      // The reference groups this test as (never && so/this at i-2) or
      // (so/this at i-1); kept as is.
      if ((w[i - 3] == "never" && (w[i - 2] == "so" || w[i - 2] == "this")) ||
          (w[i - 1] == "so" || w[i - 1] == "this")) {
        valence *= 1.25;
      } else if (w[i - 3] == "without" &&
                 (w[i - 2] == "doubt" || w[i - 1] == "doubt")) {
      } else if (IsNegation(w[i - 3])) {
        valence *= kNegationScalar;
      }
    }
    return valence;
  }

  double SpecialIdiomsCheck(double valence, std::size_t i) const {
    const auto &w = lower_;
    const auto &cases = SpecialCases();
    const std::string onezero = w[i - 1] + " " + w[i];
    const std::string twoonezero = w[i - 2] + " " + w[i - 1] + " " + w[i];
    const std::string twoone = w[i - 2] + " " + w[i - 1];
    const std::string threetwoone = w[i - 3] + " " + w[i - 2] + " " + w[i - 1];
    const std::string threetwo = w[i - 3] + " " + w[i - 2];
    for (const std::string *seq :
         {&onezero, &twoonezero, &twoone, &threetwoone, &threetwo}) {
      auto it = cases.find(*seq);
      if (it != cases.end()) {
        valence = it->second;
        break;
      }
    }
    if (w.size() - 1 > i) {
      auto it = cases.find(w[i] + " " + w[i + 1]);
      if (it != cases.end()) valence = it->second;
    }
    if (w.size() - 1 > i + 1) {
      auto it = cases.find(w[i] + " " + w[i + 1] + " " + w[i + 2]);
      if (it != cases.end()) valence = it->second;
    }
    // Multi-word dampeners such as "kind of" preceding the word.
    for (const std::string *seq : {&threetwoone, &threetwo, &twoone}) {
      auto it = Boosters().find(*seq);
      if (it != Boosters().end()) valence += it->second;
    }
    return valence;
  }

  double LeastCheck(double valence, std::size_t i) const {
    if (i > 1 && !InLexicon(i - 1) && lower_[i - 1] == "least") {
      if (lower_[i - 2] != "at" && lower_[i - 2] != "very") {
        valence *= kNegationScalar;
      }
    } else if (i > 0 && !InLexicon(i - 1) && lower_[i - 1] == "least") {
      valence *= kNegationScalar;
    }
    return valence;
  }

  // Contrastive "but": halves what precedes the first occurrence and
  // amplifies what follows it.
  void ButCheck(std::vector<double> &sentiments) const {
    auto it = std::find(lower_.begin(), lower_.end(), "but");
    if (it == lower_.end()) return;
    const std::size_t but_index = static_cast<std::size_t>(it - lower_.begin());
    for (std::size_t k = 0; k < sentiments.size(); ++k) {
      if (k < but_index) sentiments[k] *= 0.5;
      if (k > but_index) sentiments[k] *= 1.5;
    }
  }

  const SentimentLexicon &lexicon_;
  std::vector<std::string> words_;
  std::vector<std::string> lower_;
  std::vector<bool> upper_;
  bool cap_differential_ = false;
};

double PunctuationEmphasis(std::string_view text) {
  const auto exclamations = std::min<std::ptrdiff_t>(
      std::count(text.begin(), text.end(), '!'), kMaxExclamations);
  const auto questions = std::count(text.begin(), text.end(), '?');
  double amplifier = static_cast<double>(exclamations) * kExclamationIncrement;
  if (questions > 1) {
    amplifier += questions <= 3 ? static_cast<double>(questions) *
                                      kQuestionIncrement
                                : kQuestionFlood;
  }
  return amplifier;
}

}  // namespace

SentimentLexicon SentimentLexicon::Parse(std::string_view text) {
  SentimentLexicon lexicon;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') {
      if (end == text.size()) break;
      continue;
    }
    const std::size_t tab = line.find('\t');
    if (tab == std::string_view::npos || tab == 0) {
      throw FormatError("lexicon: line " + std::to_string(line_no) +
                        ": expected token<TAB>valence");
    }
    std::string_view token = line.substr(0, tab);
    std::string_view rest = line.substr(tab + 1);
    rest = rest.substr(0, rest.find('\t'));
    double valence = 0.0;
    auto [ptr, ec] =
        std::from_chars(rest.data(), rest.data() + rest.size(), valence);
    if (ec != std::errc() || ptr != rest.data() + rest.size()) {
      throw FormatError("lexicon: line " + std::to_string(line_no) +
                        ": bad valence '" + std::string(rest) + "'");
    }
    lexicon.Set(std::string(token), valence);
    if (end == text.size()) break;
  }
  return lexicon;
}

SentimentLexicon SentimentLexicon::Load(const std::string &path) {
  return Parse(ReadFile(path));
}

void SentimentLexicon::Set(std::string token, double valence) {
  if (!(valence >= -4.0 && valence <= 4.0)) {
    throw FormatError("lexicon: valence of '" + token +
                      "' lies outside [-4, 4]");
  }
  valences_[std::move(token)] = valence;
}

const double *SentimentLexicon::Find(std::string_view token) const {
  auto it = valences_.find(std::string(token));
  return it == valences_.end() ? nullptr : &it->second;
}

SentimentLexicon SentimentLexicon::Negated() const {
  SentimentLexicon out;
  for (const auto &[token, valence] : valences_) out.valences_[token] = -valence;
  return out;
}

nlohmann::json SentimentScore::ToJson() const {
  return {{"compound", compound}, {"neg", neg}, {"neu", neu}, {"pos", pos}};
}

double NormalizeValence(double sum, double alpha) {
  const double normalized = sum / std::sqrt(sum * sum + alpha);
  return std::clamp(normalized, -1.0, 1.0);
}

SentimentScore Score(std::string_view text, const SentimentLexicon &lexicon) {
  Scorer scorer(text, lexicon);
  SentimentScore out;
  if (scorer.size() == 0) return out;

  const std::vector<double> sentiments = scorer.Valences();
  double sum = 0.0;
  for (double s : sentiments) sum += s;
  const double emphasis = PunctuationEmphasis(text);
  if (sum > 0) {
    sum += emphasis;
  } else if (sum < 0) {
    sum -= emphasis;
  }
  out.compound = NormalizeValence(sum);

  // Each scored word counts one unit on top of its magnitude so neutral
  // words weigh in the proportions.
  double pos_sum = 0.0, neg_sum = 0.0;
  std::size_t neutral = 0;
  for (double s : sentiments) {
    if (s > 0) pos_sum += s + 1.0;
    if (s < 0) neg_sum += s - 1.0;
    if (s == 0) ++neutral;
  }
  if (pos_sum > std::abs(neg_sum)) {
    pos_sum += emphasis;
  } else if (pos_sum < std::abs(neg_sum)) {
    neg_sum -= emphasis;
  }
  const double total =
      pos_sum + std::abs(neg_sum) + static_cast<double>(neutral);
  out.pos = std::abs(pos_sum / total);
  out.neg = std::abs(neg_sum / total);
  out.neu = std::abs(static_cast<double>(neutral) / total);
  return out;
}

}  // namespace tgtriage::sentiment
