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

#ifndef CRASHLOC_CONFIG_H_
#define CRASHLOC_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "crashloc/trace_parser.h"
#include "json.hpp"

namespace crashloc {

struct Config {
  std::vector<std::string> framework_prefixes = FrameworkMatcher::DefaultPrefixes();
  double chi2_ratio = 0.5;
  double nb_smoothing = 1.0;
  int links_depth = 5;
  int kfold_k = 5;
  std::uint64_t seed = 42;
  int jobs = 1;

  // Throws Error(kInvalidConfig) naming the offending field.
  void Validate() const;

  FrameworkMatcher Matcher() const { return FrameworkMatcher(framework_prefixes); }

  // Overlays keys present in `doc` onto this config. Unknown keys are errors.
  void Merge(const nlohmann::json& doc);
  static Config Load(const std::filesystem::path& path);

  nlohmann::ordered_json ToJson() const;
};

}  // namespace crashloc

#endif  // CRASHLOC_CONFIG_H_
