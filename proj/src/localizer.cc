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

#include "crashloc/localizer.h"

#include <algorithm>
#include <map>
#include <numeric>

#include "crashloc/error.h"
#include "crashloc/similarity.h"

namespace crashloc {
namespace {

using nlohmann::ordered_json;

bool SameLocation(const Location& a, const Location& b) {
  if (a.index() != b.index()) return false;
  if (const auto* ma = std::get_if<MethodRef>(&a)) {
    const auto& mb = std::get<MethodRef>(b);
    return ma->class_name == mb.class_name && ma->method_name == mb.method_name &&
           ma->signature == mb.signature;
  }
  return std::get<SubCategory>(a) == std::get<SubCategory>(b);
}

bool Contains(const std::vector<RankedLocation>& ranked, const Location& loc) {
  return std::any_of(ranked.begin(), ranked.end(),
                     [&loc](const RankedLocation& r) { return SameLocation(r.location, loc); });
}

}  // namespace

std::string LocationLabel(const Location& location) {
  if (const auto* method = std::get_if<MethodRef>(&location)) return method->ToString();
  return std::string(SubCategoryName(std::get<SubCategory>(location)));
}

std::optional<std::size_t> LocalizationResult::RankOf(const std::string& true_location) const {
  std::optional<MethodRef> truth_method = MethodRef::Parse(true_location);
  std::optional<SubCategory> truth_sub = ParseSubCategory(true_location);
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    const Location& loc = ranked[i].location;
    if (const auto* method = std::get_if<MethodRef>(&loc)) {
      if (truth_method && method->Matches(*truth_method)) return i + 1;
    } else if (truth_sub && std::get<SubCategory>(loc) == *truth_sub) {
      return i + 1;
    }
  }
  return std::nullopt;
}

ordered_json LocalizationResult::ToJson() const {
  ordered_json doc = ordered_json::object();
  doc["predicted_category"] = std::string(CategoryName(predicted_category));
  ordered_json ranked_json = ordered_json::array();
  for (const RankedLocation& entry : ranked) {
    ordered_json item = ordered_json::object();
    item["location"] = LocationLabel(entry.location);
    item["kind"] = std::holds_alternative<MethodRef>(entry.location) ? "method" : "sub_category";
    item["score"] = entry.score;
    ranked_json.push_back(std::move(item));
  }
  doc["ranked"] = std::move(ranked_json);

  ordered_json provenance = ordered_json::object();
  if (category_log_scores) {
    ordered_json scores = ordered_json::object();
    for (Category c : kAllCategories) {
      scores[std::string(CategoryName(c))] = (*category_log_scores)[CategoryIndex(c)];
    }
    provenance["category_log_scores"] = std::move(scores);
  }
  if (handled_api) {
    ordered_json api = ordered_json::object();
    api["class_name"] = handled_api->api.class_name;
    api["method_name"] = handled_api->api.method_name;
    api["kind"] = std::string(ApiKindName(handled_api->api.kind));
    provenance["api_h"] = std::move(api);
    provenance["training_index"] = handled_api->training_index;
    provenance["training_true_location"] = handled_api->training_true_location;
    provenance["similarity"] = handled_api->similarity;
    provenance["low_confidence"] = handled_api->low_confidence;
  }
  if (!sub_category_means.empty()) {
    ordered_json means = ordered_json::array();
    for (const auto& [sub, stats] : sub_category_means) {
      ordered_json item = ordered_json::object();
      item["sub_category"] = std::string(SubCategoryName(sub));
      item["mean_similarity"] = stats.first;
      item["cases"] = stats.second;
      means.push_back(std::move(item));
    }
    provenance["sub_category_means"] = std::move(means);
  }
  doc["provenance"] = std::move(provenance);
  doc["warnings"] = warnings;
  return doc;
}

LocalizationResult LocateCategoryA(const CrashReport& report) {
  if (report.developer_frames.empty()) {
    throw Error(ErrorCode::kNoDeveloperFrame, "Category-A localization needs a developer frame");
  }
  LocalizationResult result;
  result.predicted_category = Category::kA;
  for (const StackFrame& frame : report.developer_frames) {
    Location loc = MethodRef{frame.class_name, frame.method_name, std::nullopt, true};
    if (Contains(result.ranked, loc)) continue;
    const double position = static_cast<double>(result.ranked.size() + 1);
    result.ranked.push_back({std::move(loc), 1.0 / position});
  }
  return result;
}

HandledApiInference InferHandledApi(const CrashReport& report,
                                    std::span<const LabeledCrash> training_b) {
  const NearestCrash nearest = MostSimilar(report, training_b);
  const LabeledCrash& match = training_b[nearest.index];
  if (!match.api_h) {
    throw Error(ErrorCode::kSchemaError,
                "Category-B training crash " + std::to_string(nearest.index) + " has no api_h");
  }
  HandledApiInference out;
  out.api = *match.api_h;
  out.training_index = nearest.index;
  out.training_true_location = match.true_location;
  out.similarity = nearest.score;
  out.low_confidence = nearest.score <= 0.0;
  return out;
}

LocalizationResult LocateCategoryB(const CrashReport& report, const AppModel& model,
                                   std::span<const LabeledCrash> training_b,
                                   const LocateOptions& options) {
  if (report.developer_frames.empty()) {
    throw Error(ErrorCode::kNoDeveloperFrame, "Category-B localization needs a developer frame");
  }
  LocalizationResult result;
  result.predicted_category = Category::kB;
  result.handled_api = InferHandledApi(report, training_b);
  const ApiRef& api = result.handled_api->api;
  if (result.handled_api->low_confidence) {
    result.warnings.push_back("nearest Category-B training crash has similarity 0");
  }

  const std::vector<MethodRef> invokers = model.InvokersOf(api);
  std::vector<double> scores(invokers.size(), 0.0);

  for (std::size_t pos = 0; pos < report.developer_frames.size(); ++pos) {
    const StackFrame& sf = report.developer_frames[pos];
    const double d = static_cast<double>(pos + 1);
    const ClassDef* cls = model.FindClass(sf.class_name);
    if (!cls) {
      result.warnings.push_back("class " + sf.class_name + " of frame " +
                                std::to_string(sf.index) + " is not in the app model; skipped");
      continue;
    }
    if (api.kind == ApiKind::kCallIn) {
      for (std::size_t i = 0; i < invokers.size(); ++i) {
        const bool linked = std::any_of(
            cls->active_methods.begin(), cls->active_methods.end(), [&](const MethodRef& am) {
              return model.Links(invokers[i], am, options.links_depth);
            });
        if (linked) scores[i] += 1.0 / d;
      }
    } else {
      for (const NonOverriddenCallback& nc : cls->non_overridden_callbacks) {
        if (!model.InheritsFrom(nc, api)) continue;
        Location loc = nc.method;
        if (!Contains(result.ranked, loc)) result.ranked.push_back({std::move(loc), 1.0 / d});
      }
    }
  }

  if (api.kind == ApiKind::kCallIn) {
    std::vector<std::size_t> order(invokers.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&scores](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
    for (std::size_t i : order) {
      if (scores[i] > 0.0) result.ranked.push_back({invokers[i], scores[i]});
    }
  }
  return result;
}

LocalizationResult LocateCategoryC(const CrashReport& report,
                                   std::span<const LabeledCrash> training_c) {
  if (training_c.empty()) throw Error(ErrorCode::kEmptyPool, "no Category-C training crashes");
  const FrameSeq query = FrameSequence(report);
  std::array<double, kSubCategoryCount> sum{};
  std::array<std::size_t, kSubCategoryCount> count{};
  for (const LabeledCrash& crash : training_c) {
    if (!crash.sub_category) continue;
    const auto s = static_cast<std::size_t>(*crash.sub_category);
    const FrameSeq seq = FrameSequence(crash.report);
    sum[s] += EditSimilarity(query, seq);
    count[s] += 1;
  }

  LocalizationResult result;
  result.predicted_category = Category::kC;
  for (SubCategory sub : kAllSubCategories) {
    const auto s = static_cast<std::size_t>(sub);
    if (count[s] == 0) continue;
    const double mean = sum[s] / static_cast<double>(count[s]);
    result.sub_category_means.push_back({sub, {mean, count[s]}});
    result.ranked.push_back({sub, mean});
  }
  if (result.ranked.empty()) {
    throw Error(ErrorCode::kEmptyPool, "no Category-C training crash carries a sub-category");
  }
  std::stable_sort(result.ranked.begin(), result.ranked.end(),
                   [](const RankedLocation& a, const RankedLocation& b) {
                     return a.score > b.score;
                   });
  return result;
}

LocalizationResult LocateAs(Category category, const CrashReport& report, const AppModel* model,
                            std::span<const LabeledCrash> corpus, const LocateOptions& options) {
  try {
    switch (category) {
      case Category::kA:
        return LocateCategoryA(report);
      case Category::kB: {
        if (!model) {
          throw Error(ErrorCode::kLocateError, "Category-B localization requires an app model");
        }
        const std::vector<LabeledCrash> pool =
            FilterByCategory(corpus, Category::kB);
        return LocateCategoryB(report, *model, pool, options);
      }
      case Category::kC: {
        const std::vector<LabeledCrash> pool =
            FilterByCategory(corpus, Category::kC);
        return LocateCategoryC(report, pool);
      }
    }
  } catch (const Error& e) {
    throw e.WithPhase(Phase::kLocate);
  }
  throw Error(ErrorCode::kLocateError, "unknown category");
}

LocalizationResult Locate(const CrashReport& report, const AppModel* model,
                          std::span<const LabeledCrash> corpus, const Categorizer& categorizer,
                          const LocateOptions& options) {
  Prediction prediction;
  try {
    prediction = categorizer.Categorize(report);
  } catch (const Error& e) {
    throw e.WithPhase(Phase::kCategorize);
  }
  LocalizationResult result = LocateAs(prediction.category, report, model, corpus, options);
  result.category_log_scores = prediction.log_scores;
  return result;
}

}  // namespace crashloc
