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

#include "crashloc/config.h"

#include "crashloc/corpus.h"
#include "crashloc/error.h"

namespace crashloc {

void Config::Validate() const {
  if (framework_prefixes.empty()) {
    throw Error(ErrorCode::kInvalidConfig, "framework_prefixes must not be empty",
                "/framework_prefixes");
  }
  if (!(chi2_ratio > 0.0 && chi2_ratio <= 1.0)) {
    throw Error(ErrorCode::kInvalidConfig, "chi2_ratio must lie in (0, 1]", "/chi2_ratio");
  }
  if (!(nb_smoothing > 0.0)) {
    throw Error(ErrorCode::kInvalidConfig, "nb_smoothing must be positive", "/nb_smoothing");
  }
  if (links_depth < 1) {
    throw Error(ErrorCode::kInvalidConfig, "links_depth must be at least 1", "/links_depth");
  }
  if (kfold_k < 2) {
    throw Error(ErrorCode::kInvalidConfig, "kfold_k must be at least 2", "/kfold_k");
  }
  if (jobs < 1) throw Error(ErrorCode::kInvalidConfig, "jobs must be at least 1", "/jobs");
}

void Config::Merge(const nlohmann::json& doc) {
  if (!doc.is_object()) throw Error(ErrorCode::kInvalidConfig, "config must be a JSON object", "");
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    const std::string& key = it.key();
    try {
      if (key == "framework_prefixes") {
        framework_prefixes = it->get<std::vector<std::string>>();
      } else if (key == "chi2_ratio") {
        chi2_ratio = it->get<double>();
      } else if (key == "nb_smoothing") {
        nb_smoothing = it->get<double>();
      } else if (key == "links_depth") {
        links_depth = it->get<int>();
      } else if (key == "kfold_k") {
        kfold_k = it->get<int>();
      } else if (key == "seed") {
        seed = it->get<std::uint64_t>();
      } else if (key == "jobs") {
        jobs = it->get<int>();
      } else {
        throw Error(ErrorCode::kInvalidConfig, "unknown config key '" + key + "'", "/" + key);
      }
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kInvalidConfig, "config key '" + key + "': " + e.what(), "/" + key);
    }
  }
}

Config Config::Load(const std::filesystem::path& path) {
  Config config;
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(ReadFile(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kInvalidConfig, path.string() + ": " + e.what(), path.string());
  }
  config.Merge(doc);
  return config;
}

nlohmann::ordered_json Config::ToJson() const {
  nlohmann::ordered_json doc = nlohmann::ordered_json::object();
  doc["framework_prefixes"] = framework_prefixes;
  doc["chi2_ratio"] = chi2_ratio;
  doc["nb_smoothing"] = nb_smoothing;
  doc["links_depth"] = links_depth;
  doc["kfold_k"] = kfold_k;
  doc["seed"] = seed;
  doc["jobs"] = jobs;
  return doc;
}

}  // namespace crashloc
