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

#include "tgtriage/files.h"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <system_error>

#include <unistd.h>

#include "tgtriage/error.h"

namespace tgtriage {

std::string ReadFile(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw DataError("error reading '" + path.string() + "'");
  return std::move(buf).str();
}

void WriteFileAtomic(const std::filesystem::path &path,
                     std::string_view content) {
  std::error_code ec;
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write '" + tmp.string() + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      std::filesystem::remove(tmp, ec);
      throw DataError("error writing '" + tmp.string() + "'");
    }
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw DataError("cannot move output into place at '" + path.string() +
                    "'");
  }
}

std::filesystem::path DataDir() {
  auto usable = [](const std::filesystem::path &dir) {
    std::error_code ec;
    return std::filesystem::exists(dir / "vader_lexicon.tsv", ec);
  };
  if (const char *env = std::getenv("TGTRIAGE_DATA_DIR"); env && *env) {
    if (!usable(env)) {
      throw DataError(std::string("TGTRIAGE_DATA_DIR='") + env +
                      "' holds no vader_lexicon.tsv");
    }
    return env;
  }
#ifdef TGTRIAGE_INSTALL_DATA_DIR
  if (usable(TGTRIAGE_INSTALL_DATA_DIR)) return TGTRIAGE_INSTALL_DATA_DIR;
#endif
#ifdef TGTRIAGE_SOURCE_DATA_DIR
  if (usable(TGTRIAGE_SOURCE_DATA_DIR)) return TGTRIAGE_SOURCE_DATA_DIR;
#endif
  throw DataError("bundled data not found; set TGTRIAGE_DATA_DIR");
}

std::string_view Version() { return TGTRIAGE_VERSION_STRING; }

}  // namespace tgtriage
