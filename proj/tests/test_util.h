// Copyright 2026 The crashloc Authors.
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

#ifndef CRASHLOC_TESTS_TEST_UTIL_H_
#define CRASHLOC_TESTS_TEST_UTIL_H_

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "crashloc/corpus.h"
#include "crashloc/error.h"

namespace crashloc::testing {

inline std::filesystem::path DataDir() { return CRASHLOC_TEST_DATA_DIR; }

inline std::filesystem::path DataPath(const std::string& relative) { return DataDir() / relative; }

inline std::string ReadLog(const std::string& stem) {
  return ReadFile(DataDir() / "logs" / (stem + ".log"));
}

// All fixture log stems, sorted.
inline std::vector<std::string> LogStems() {
  std::vector<std::string> stems;
  for (const auto& entry : std::filesystem::directory_iterator(DataDir() / "logs")) {
    if (entry.path().extension() == ".log") stems.push_back(entry.path().stem().string());
  }
  std::sort(stems.begin(), stems.end());
  return stems;
}

inline void WriteText(const std::filesystem::path& path, const std::string& text) {
  std::ofstream(path, std::ios::binary) << text;
}

// Code of the crashloc::Error thrown by `fn`, or nullopt if none was thrown.
inline std::optional<ErrorCode> CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

}  // namespace crashloc::testing

#endif  // CRASHLOC_TESTS_TEST_UTIL_H_
