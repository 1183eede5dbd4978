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

#ifndef CRASHLOC_LOCALIZER_H_
#define CRASHLOC_LOCALIZER_H_

#include <array>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "crashloc/app_model.h"
#include "crashloc/category.h"
#include "crashloc/corpus.h"
#include "crashloc/naive_bayes.h"
#include "crashloc/trace_parser.h"
#include "json.hpp"

namespace crashloc {

// A developer method (Categories A, B) or an out-of-code sub-category (C).
using Location = std::variant<MethodRef, SubCategory>;

std::string LocationLabel(const Location& location);

struct RankedLocation {
  Location location;
  double score = 0.0;
};

// Where the wrongly handled API came from.
struct HandledApiInference {
  ApiRef api;
  std::size_t training_index = 0;
  std::string training_true_location;
  double similarity = 0.0;
  // Nearest training crash shares nothing with the query.
  bool low_confidence = false;
};

struct LocalizationResult {
  Category predicted_category = Category::kA;
  // Non-increasing scores, no duplicate locations.
  std::vector<RankedLocation> ranked;

  // Phase-1 scores when the result came out of Locate().
  std::optional<std::array<double, kCategoryCount>> category_log_scores;
  // Category B.
  std::optional<HandledApiInference> handled_api;
  // Category C: mean similarity and training case count per sub-category.
  std::vector<std::pair<SubCategory, std::pair<double, std::size_t>>> sub_category_means;
  std::vector<std::string> warnings;

  // 1-based rank of `true_location`, if present.
  std::optional<std::size_t> RankOf(const std::string& true_location) const;

  nlohmann::ordered_json ToJson() const;
};

struct LocateOptions {
  int links_depth = 5;
};

// Developer frames in stack order, score 1/position. Repeated methods keep
// their first position. Throws Error(kNoDeveloperFrame).
LocalizationResult LocateCategoryA(const CrashReport& report);

// api_h of the most similar training crash. Throws Error(kEmptyPool).
HandledApiInference InferHandledApi(const CrashReport& report,
                                    std::span<const LabeledCrash> training_b);

// Ranking for faults outside the trace but inside the code.
//
// S is the set of developer methods invoking api_h. Each developer frame sf
// sits at distance d (1 for the crash method). For a call-in api_h, every
// s in S gains 1/d once per frame whose class has an active method linked to
// s; unlinked candidates are dropped. For a callback api_h, the
// non-overridden callbacks of sf's class that inherit api_h are ranked in
// frame order with score 1/d.
//
// Frames whose class the model does not declare are skipped with a warning.
LocalizationResult LocateCategoryB(const CrashReport& report, const AppModel& model,
                                   std::span<const LabeledCrash> training_b,
                                   const LocateOptions& options = {});

// Sub-categories ranked by mean similarity to their training cases. Throws
// Error(kEmptyPool).
LocalizationResult LocateCategoryC(const CrashReport& report,
                                   std::span<const LabeledCrash> training_c);

// Phase 2 for a given category. `model` may be null unless category is B, in
// which case Error(kLocateError) is raised. Errors carry Phase::kLocate.
LocalizationResult LocateAs(Category category, const CrashReport& report, const AppModel* model,
                            std::span<const LabeledCrash> corpus,
                            const LocateOptions& options = {});

// Phase 1 then Phase 2 against the matching partition of `corpus`.
LocalizationResult Locate(const CrashReport& report, const AppModel* model,
                          std::span<const LabeledCrash> corpus, const Categorizer& categorizer,
                          const LocateOptions& options = {});

}  // namespace crashloc

#endif  // CRASHLOC_LOCALIZER_H_
