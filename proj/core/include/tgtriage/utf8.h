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

#ifndef TGTRIAGE_UTF8_H_
#define TGTRIAGE_UTF8_H_

#include <string>
#include <string_view>

// Small UTF-8 helpers. Character classes cover the scripts that show up in
// channel text (Latin, Greek, Cyrillic, Hebrew, Arabic, CJK); anything else
// is treated as a non-word symbol.
namespace tgtriage::utf8 {

// Invalid sequences decode to U+FFFD, consuming one byte each.
std::u32string Decode(std::string_view text);
std::string Encode(std::u32string_view text);
void Append(std::string &out, char32_t cp);

bool IsAlnum(char32_t cp);
bool IsSpace(char32_t cp);
bool IsUpper(char32_t cp);
bool IsLower(char32_t cp);
char32_t ToLower(char32_t cp);

std::string ToLower(std::string_view text);

// Python's str.isupper(): at least one cased character and no lowercase ones.
bool IsAllUpper(std::string_view text);

std::size_t Length(std::string_view text);

}  // namespace tgtriage::utf8

#endif  // TGTRIAGE_UTF8_H_
