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

#include "crashloc/corpus.h"

#include <fstream>
#include <sstream>

#include "crashloc/error.h"

namespace crashloc {
namespace {

using nlohmann::json;

[[noreturn]] void Fail(std::size_t line, const std::string& field, const std::string& what) {
  std::string where = "line " + std::to_string(line) + "/" + field;
  throw Error(ErrorCode::kSchemaError, where + ": " + what, where);
}

std::optional<std::string> OptionalString(const json& obj, const char* key, std::size_t line) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) Fail(line, key, "expected string or null");
  return it->get<std::string>();
}

LabeledCrash ParseEntry(const json& obj, std::size_t line, const FrameworkMatcher& matcher) {
  if (!obj.is_object()) Fail(line, "", "expected JSON object");
  LabeledCrash crash;

  auto log = OptionalString(obj, "crash_log", line);
  if (!log) Fail(line, "crash_log", "missing");
  crash.crash_log = *log;
  try {
    crash.report = ParseAndSplit(crash.crash_log, matcher);
  } catch (const Error& e) {
    Fail(line, "crash_log", std::string(ErrorCodeName(e.code())) + ": " + e.what());
  }

  auto category = OptionalString(obj, "category", line);
  if (!category) Fail(line, "category", "missing");
  auto parsed = ParseCategory(*category);
  if (!parsed) Fail(line, "category", "expected \"A\", \"B\" or \"C\"");
  crash.category = *parsed;

  auto truth = OptionalString(obj, "true_location", line);
  if (!truth || truth->empty()) Fail(line, "true_location", "missing");
  crash.true_location = *truth;

  if (auto it = obj.find("api_h"); it != obj.end() && !it->is_null()) {
    if (!it->is_object()) Fail(line, "api_h", "expected object or null");
    ApiRef api;
    auto cls = OptionalString(*it, "class_name", line);
    auto method = OptionalString(*it, "method_name", line);
    auto kind = OptionalString(*it, "kind", line);
    if (!cls || !method || !kind) Fail(line, "api_h", "needs class_name, method_name, kind");
    api.class_name = *cls;
    api.method_name = *method;
    auto parsed_kind = ParseApiKind(*kind);
    if (!parsed_kind) Fail(line, "api_h/kind", "expected 'call-in' or 'callback'");
    api.kind = *parsed_kind;
    crash.api_h = std::move(api);
  }

  if (auto sub = OptionalString(obj, "sub_category", line)) {
    auto parsed_sub = ParseSubCategory(*sub);
    if (!parsed_sub) Fail(line, "sub_category", "unknown sub-category '" + *sub + "'");
    crash.sub_category = *parsed_sub;
  }
  crash.app_model = OptionalString(obj, "app_model", line);

  if (crash.category == Category::kB && !crash.api_h) {
    Fail(line, "api_h", "Category-B crashes need api_h");
  }
  if (crash.category == Category::kC) {
    if (!crash.sub_category) Fail(line, "sub_category", "Category-C crashes need sub_category");
    if (crash.true_location != SubCategoryName(*crash.sub_category)) {
      Fail(line, "true_location", "must equal sub_category for Category C");
    }
  }
  return crash;
}

}  // namespace

std::optional<std::filesystem::path> Corpus::AppModelPath(const LabeledCrash& crash) const {
  if (!crash.app_model) return std::nullopt;
  std::filesystem::path p(*crash.app_model);
  if (p.is_relative()) p = base_dir / p;
  return p;
}

Corpus ParseCorpus(std::string_view jsonl, const FrameworkMatcher& matcher,
                   std::filesystem::path base_dir) {
  Corpus corpus;
  corpus.base_dir = std::move(base_dir);
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < jsonl.size()) {
    std::size_t end = jsonl.find('\n', start);
    if (end == std::string_view::npos) end = jsonl.size();
    std::string_view line = jsonl.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      Fail(line_no, "", e.what());
    }
    corpus.crashes.push_back(ParseEntry(obj, line_no, matcher));
  }
  return corpus;
}

Corpus LoadCorpus(const std::filesystem::path& path, const FrameworkMatcher& matcher) {
  return ParseCorpus(ReadFile(path), matcher, path.parent_path());
}

json LabeledCrashToJson(const LabeledCrash& crash) {
  json obj = json::object();
  obj["crash_log"] = crash.crash_log;
  obj["category"] = std::string(CategoryName(crash.category));
  obj["true_location"] = crash.true_location;
  if (crash.api_h) {
    obj["api_h"] = {{"class_name", crash.api_h->class_name},
                    {"method_name", crash.api_h->method_name},
                    {"kind", std::string(ApiKindName(crash.api_h->kind))}};
  } else {
    obj["api_h"] = nullptr;
  }
  obj["sub_category"] =
      crash.sub_category ? json(std::string(SubCategoryName(*crash.sub_category))) : json(nullptr);
  obj["app_model"] = crash.app_model ? json(*crash.app_model) : json(nullptr);
  return obj;
}

std::string SerializeCorpus(const std::vector<LabeledCrash>& crashes) {
  std::string out;
  for (const LabeledCrash& crash : crashes) {
    out += LabeledCrashToJson(crash).dump();
    out += '\n';
  }
  return out;
}

std::vector<LabeledCrash> FilterByCategory(std::span<const LabeledCrash> crashes,
                                           Category category) {
  std::vector<LabeledCrash> out;
  for (const LabeledCrash& crash : crashes) {
    if (crash.category == category) out.push_back(crash);
  }
  return out;
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string(), path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace crashloc
