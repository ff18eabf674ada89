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

#ifndef TGTRIAGE_CONFIG_H_
#define TGTRIAGE_CONFIG_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tgtriage::pipeline {

// Flat INI-style configuration:
//
//   # comment
//   [section]
//   key = value
//
// Section names may contain dots ("models.fnn"). Keys outside any section
// belong to the "" section. Later assignments win.
class ConfigFile {
 public:
  ConfigFile() = default;

  // Throws UsageError on a malformed line.
  static ConfigFile Parse(std::string_view text);
  static ConfigFile Load(const std::string &path);

  void Set(const std::string &section, const std::string &key,
           std::string value);
  // "section.key=value", where the section is everything before the last
  // dot of the left-hand side.
  void ApplyOverride(std::string_view assignment);

  bool Has(const std::string &section, const std::string &key) const;
  std::optional<std::string> Get(const std::string &section,
                                 const std::string &key) const;

  // Typed getters. Throw UsageError when the value does not parse.
  std::string GetString(const std::string &section, const std::string &key,
                        const std::string &fallback) const;
  double GetDouble(const std::string &section, const std::string &key,
                   double fallback) const;
  std::int64_t GetInt(const std::string &section, const std::string &key,
                      std::int64_t fallback) const;
  std::uint64_t GetUint(const std::string &section, const std::string &key,
                        std::uint64_t fallback) const;
  bool GetBool(const std::string &section, const std::string &key,
               bool fallback) const;
  // Comma-separated list, entries trimmed, empties dropped.
  std::vector<std::string> GetList(const std::string &section,
                                   const std::string &key) const;

  // Keys that were never read by a getter; used to reject typos.
  std::vector<std::string> UnusedKeys() const;

 private:
  std::map<std::string, std::map<std::string, std::string>> values_;
  mutable std::map<std::string, bool> used_;
};

}  // namespace tgtriage::pipeline

#endif  // TGTRIAGE_CONFIG_H_
