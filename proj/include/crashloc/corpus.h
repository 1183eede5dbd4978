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

#ifndef CRASHLOC_CORPUS_H_
#define CRASHLOC_CORPUS_H_

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "crashloc/app_model.h"
#include "crashloc/category.h"
#include "crashloc/trace_parser.h"
#include "json.hpp"

namespace crashloc {

// A historical crash with its ground truth.
struct LabeledCrash {
  std::string crash_log;
  CrashReport report;  // parsed and split
  Category category = Category::kA;
  // `class#method` for Categories A and B; the sub-category name for C.
  std::string true_location;
  // Wrongly handled API (Category B only).
  std::optional<ApiRef> api_h;
  // Category C only.
  std::optional<SubCategory> sub_category;
  // Absolute or corpus-relative path, as written in the corpus.
  std::optional<std::string> app_model;
};

struct Corpus {
  std::vector<LabeledCrash> crashes;
  // Directory relative app_model paths resolve against.
  std::filesystem::path base_dir;

  std::optional<std::filesystem::path> AppModelPath(const LabeledCrash& crash) const;
};

// One JSON object per line:
//   {crash_log, category, true_location, api_h, sub_category, app_model}
// Blank lines are skipped. Throws Error(kSchemaError) whose `where` is
// "line N/field"; parse/split failures of crash_log surface the same way.
Corpus ParseCorpus(std::string_view jsonl, const FrameworkMatcher& matcher,
                   std::filesystem::path base_dir = {});
Corpus LoadCorpus(const std::filesystem::path& path, const FrameworkMatcher& matcher);

nlohmann::json LabeledCrashToJson(const LabeledCrash& crash);
std::string SerializeCorpus(const std::vector<LabeledCrash>& crashes);

// Elements of `crashes` with the given category, in order.
std::vector<LabeledCrash> FilterByCategory(std::span<const LabeledCrash> crashes,
                                           Category category);

std::string ReadFile(const std::filesystem::path& path);

}  // namespace crashloc

#endif  // CRASHLOC_CORPUS_H_
