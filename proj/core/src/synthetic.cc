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

#include "tgtriage/synthetic.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <span>
#include <string>
#include <vector>

#include "tgtriage/error.h"
#include "tgtriage/numerics.h"

namespace tgtriage::pipeline {
namespace {

using numerics::Prng;
using numerics::Shuffle;

constexpr const char *kSharedSeeds[] = {
    "today",   "news",    "group",   "channel", "update",  "people",
    "report",  "says",    "week",    "official", "public", "statement",
    "support", "latest",  "read",    "share",   "video",   "source",
    "breaking", "country", "world",  "info",    "watch",   "post",
    "message", "follow",  "time",    "team",    "details", "link"};

constexpr const char *kPoliticsSeeds[] = {
    "election",  "parliament", "minister",  "vote",      "president",
    "senate",    "campaign",   "party",     "coalition", "referendum",
    "democracy", "opposition", "cabinet",   "policy",    "governor",
    "protest",   "diplomat",   "sanctions", "treaty",    "ballot",
    "mayor",     "congress",   "reform",    "legislation", "embassy",
    "summit",    "negotiation", "corruption", "budget",  "constitution",
    "candidate", "voters",     "lawmakers", "ministry",  "regime",
    "election",  "monarchy",   "republic",  "senator",   "rally"};

constexpr const char *kCyberSeeds[] = {
    "ddos",       "malware",   "ransomware", "exploit",   "phishing",
    "botnet",     "firewall",  "breach",     "vulnerability", "payload",
    "backdoor",   "trojan",    "encryption", "hackers",   "leak",
    "database",   "server",    "credentials", "patch",    "zeroday",
    "spyware",    "rootkit",   "keylogger",  "defacement", "injection",
    "proxy",      "vpn",       "scanner",    "bruteforce", "cve",
    "worm",       "sandbox",   "crypter",    "tor",       "onion",
    "dox",        "honeypot",  "packet",     "firmware",  "shellcode"};

// The first `n` distinct words from `seeds`, extended with numbered variants
// ("ballot2", "ballot3", ...) when the seed list runs out.
std::vector<std::string> BuildPool(std::span<const char *const> seeds,
                                   std::size_t n) {
  std::vector<std::string> base;
  for (const char *s : seeds) {
    if (std::find(base.begin(), base.end(), s) == base.end()) base.push_back(s);
  }
  std::vector<std::string> pool;
  pool.reserve(n);
  for (std::size_t round = 1; pool.size() < n; ++round) {
    for (const std::string &w : base) {
      if (pool.size() == n) break;
      pool.push_back(round == 1 ? w : w + std::to_string(round));
    }
  }
  return pool;
}

class ZipfSampler {
 public:
  ZipfSampler(std::size_t n, double exponent) : cdf_(n) {
    double total = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      total += 1.0 / std::pow(static_cast<double>(r + 1), exponent);
      cdf_[r] = total;
    }
    for (double &c : cdf_) c /= total;
  }

  std::size_t Sample(Prng &rng) const {
    const double u = rng.Uniform();
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    return std::min<std::size_t>(static_cast<std::size_t>(it - cdf_.begin()),
                                 cdf_.size() - 1);
  }

 private:
  std::vector<double> cdf_;
};

std::string SyntheticDate(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "2023-%02zu-%02zuT%02zu:00:00Z",
                1 + (index / (28 * 24)) % 12, 1 + (index / 24) % 28,
                index % 24);
  return buf;
}

}  // namespace

void SyntheticCorpusSpec::Validate() const {
  if (politics_docs == 0 || cyber_docs == 0) {
    throw UsageError("synthetic corpus needs documents of both classes");
  }
  if (politics_vocab == 0 || cyber_vocab == 0) {
    throw UsageError("synthetic corpus word pools must be non-empty");
  }
  if (!(overlap >= 0.0 && overlap <= 1.0)) {
    throw UsageError("synthetic overlap must lie in [0, 1]");
  }
  if (min_tokens == 0 || min_tokens > max_tokens) {
    throw UsageError("synthetic token lengths need 1 <= min <= max");
  }
  if (!(zipf_exponent >= 0.0) || !std::isfinite(zipf_exponent)) {
    throw UsageError("synthetic zipf exponent must be finite and >= 0");
  }
}

nlohmann::json SyntheticCorpusSpec::ToJson() const {
  return {{"politics_docs", politics_docs}, {"cyber_docs", cyber_docs},
          {"politics_vocab", politics_vocab}, {"cyber_vocab", cyber_vocab},
          {"overlap", overlap},             {"min_tokens", min_tokens},
          {"max_tokens", max_tokens},       {"zipf_exponent", zipf_exponent},
          {"seed", seed}};
}

corpus::LabeledDataset GenerateSyntheticCorpus(const SyntheticCorpusSpec &spec) {
  spec.Validate();
  const std::size_t shared = static_cast<std::size_t>(std::llround(
      spec.overlap * static_cast<double>(std::min(spec.politics_vocab,
                                                  spec.cyber_vocab))));
  const std::vector<std::string> common = BuildPool(kSharedSeeds, shared);

  auto topical_pool = [&](std::span<const char *const> seeds, std::size_t n) {
    std::vector<std::string> pool = common;
    for (std::string &w : BuildPool(seeds, n - shared)) pool.push_back(std::move(w));
    return pool;
  };
  const std::vector<std::string> pools[2] = {
      topical_pool(kPoliticsSeeds, spec.politics_vocab),
      topical_pool(kCyberSeeds, spec.cyber_vocab)};
  const ZipfSampler samplers[2] = {
      ZipfSampler(pools[0].size(), spec.zipf_exponent),
      ZipfSampler(pools[1].size(), spec.zipf_exponent)};

  Prng rng(spec.seed);
  std::vector<corpus::Label> labels(spec.politics_docs, corpus::Label::kPolitics);
  labels.insert(labels.end(), spec.cyber_docs, corpus::Label::kCyber);
  Shuffle(std::span<corpus::Label>(labels), rng);

  std::vector<corpus::Message> messages;
  messages.reserve(labels.size());
  const std::uint64_t span = spec.max_tokens - spec.min_tokens + 1;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const int c = static_cast<int>(labels[i]);
    const std::size_t length = spec.min_tokens + rng.UniformInt(span);
    std::string content;
    for (std::size_t t = 0; t < length; ++t) {
      if (t > 0) content += ' ';
      content += pools[c][samplers[c].Sample(rng)];
    }
    corpus::Message m;
    m.id = "syn-" + std::to_string(i);
    m.content = std::move(content);
    m.date = SyntheticDate(i);
    m.group = c == 0 ? "synthetic-politics" : "synthetic-cyber";
    m.label = labels[i];
    messages.push_back(std::move(m));
  }
  return corpus::LabeledDataset(std::move(messages));
}

}  // namespace tgtriage::pipeline
