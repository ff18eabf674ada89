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

#ifndef TGTRIAGE_CSV_H_
#define TGTRIAGE_CSV_H_

#include <string>
#include <string_view>
#include <vector>

// RFC-4180 reader and writer. Records end in CRLF or LF; quoted fields may
// span lines and escape quotes by doubling them.
namespace tgtriage::csv {

using Row = std::vector<std::string>;

// Throws FormatError on an unterminated quote or stray characters after a
// closing quote. A trailing newline does not produce an empty record.
std::vector<Row> Parse(std::string_view text);

std::string EscapeField(std::string_view field);
std::string FormatRow(const Row &row);

}  // namespace tgtriage::csv

#endif  // TGTRIAGE_CSV_H_
