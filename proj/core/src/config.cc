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

#include "tgtriage/config.h"

#include <charconv>

#include "tgtriage/error.h"
#include "tgtriage/files.h"

namespace tgtriage::pipeline {
namespace {

std::string_view Trim(std::string_view s) {
  const char *ws = " \t\r";
  const std::size_t b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const std::size_t e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::string QualifiedName(const std::string &section, const std::string &key) {
  return section.empty() ? key : section + "." + key;
}

template <typename T>
T ParseNumber(const std::string &name, const std::string &value) {
  T out{};
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw UsageError("config: '" + name + "' has invalid value '" + value +
                     "'");
  }
  return out;
}

}  // namespace

ConfigFile ConfigFile::Parse(std::string_view text) {
  ConfigFile cfg;
  std::string section;
  std::size_t pos = 0, line_no = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = Trim(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (line.empty() || line.front() == '#' || line.front() == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3) {
        throw UsageError("config line " + std::to_string(line_no) +
                         ": bad section header");
      }
      section = std::string(Trim(line.substr(1, line.size() - 2)));
      continue;
    }
    const std::size_t eq = line.find('=');
    const std::string_view key =
        eq == std::string_view::npos ? std::string_view{} : Trim(line.substr(0, eq));
    if (key.empty()) {
      throw UsageError("config line " + std::to_string(line_no) +
                       ": expected key = value");
    }
    cfg.Set(section, std::string(key), std::string(Trim(line.substr(eq + 1))));
  }
  return cfg;
}

ConfigFile ConfigFile::Load(const std::string &path) {
  try {
    return Parse(ReadFile(path));
  } catch (const DataError &e) {
    throw UsageError(std::string("config: ") + e.what());
  }
}

void ConfigFile::Set(const std::string &section, const std::string &key,
                     std::string value) {
  values_[section][key] = std::move(value);
  used_.try_emplace(QualifiedName(section, key), false);
}

void ConfigFile::ApplyOverride(std::string_view assignment) {
  const std::size_t eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw UsageError("override '" + std::string(assignment) +
                     "' is not section.key=value");
  }
  const std::string_view lhs = Trim(assignment.substr(0, eq));
  const std::size_t dot = lhs.rfind('.');
  const std::string section =
      dot == std::string_view::npos ? "" : std::string(lhs.substr(0, dot));
  const std::string key = std::string(
      dot == std::string_view::npos ? lhs : lhs.substr(dot + 1));
  if (key.empty()) {
    throw UsageError("override '" + std::string(assignment) + "' has no key");
  }
  Set(section, key, std::string(Trim(assignment.substr(eq + 1))));
}

bool ConfigFile::Has(const std::string &section, const std::string &key) const {
  auto s = values_.find(section);
  return s != values_.end() && s->second.count(key) > 0;
}

std::optional<std::string> ConfigFile::Get(const std::string &section,
                                           const std::string &key) const {
  auto s = values_.find(section);
  if (s == values_.end()) return std::nullopt;
  auto k = s->second.find(key);
  if (k == s->second.end()) return std::nullopt;
  used_[QualifiedName(section, key)] = true;
  return k->second;
}

std::string ConfigFile::GetString(const std::string &section,
                                  const std::string &key,
                                  const std::string &fallback) const {
  return Get(section, key).value_or(fallback);
}

double ConfigFile::GetDouble(const std::string &section, const std::string &key,
                             double fallback) const {
  auto v = Get(section, key);
  return v ? ParseNumber<double>(QualifiedName(section, key), *v) : fallback;
}

std::int64_t ConfigFile::GetInt(const std::string &section,
                                const std::string &key,
                                std::int64_t fallback) const {
  auto v = Get(section, key);
  return v ? ParseNumber<std::int64_t>(QualifiedName(section, key), *v)
           : fallback;
}

std::uint64_t ConfigFile::GetUint(const std::string &section,
                                  const std::string &key,
                                  std::uint64_t fallback) const {
  auto v = Get(section, key);
  return v ? ParseNumber<std::uint64_t>(QualifiedName(section, key), *v)
           : fallback;
}

bool ConfigFile::GetBool(const std::string &section, const std::string &key,
                         bool fallback) const {
  auto v = Get(section, key);
  if (!v) return fallback;
  if (*v == "true" || *v == "yes" || *v == "1" || *v == "on") return true;
  if (*v == "false" || *v == "no" || *v == "0" || *v == "off") return false;
  throw UsageError("config: '" + QualifiedName(section, key) +
                   "' is not a boolean: '" + *v + "'");
}

std::vector<std::string> ConfigFile::GetList(const std::string &section,
                                             const std::string &key) const {
  std::vector<std::string> out;
  auto v = Get(section, key);
  if (!v) return out;
  std::string_view rest = *v;
  while (true) {
    const std::size_t comma = rest.find(',');
    const std::string_view item = Trim(rest.substr(0, comma));
    if (!item.empty()) out.emplace_back(item);
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return out;
}

std::vector<std::string> ConfigFile::UnusedKeys() const {
  std::vector<std::string> out;
  for (const auto &[name, used] : used_) {
    if (!used) out.push_back(name);
  }
  return out;
}

}  // namespace tgtriage::pipeline
