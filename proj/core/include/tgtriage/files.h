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

#ifndef TGTRIAGE_FILES_H_
#define TGTRIAGE_FILES_H_

#include <filesystem>
#include <string>
#include <string_view>

namespace tgtriage {

// Throws DataError if the file cannot be read.
std::string ReadFile(const std::filesystem::path &path);

// Writes to a sibling temporary file, then renames it over `path`.
void WriteFileAtomic(const std::filesystem::path &path,
                     std::string_view content);

// Directory holding the bundled lexicon, gazetteer and date terms. Checks
// $TGTRIAGE_DATA_DIR, then the install location, then the source tree.
std::filesystem::path DataDir();

std::string_view Version();

}  // namespace tgtriage

#endif  // TGTRIAGE_FILES_H_
