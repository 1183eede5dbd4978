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

#include "crashloc/category.h"

namespace crashloc {

std::string_view CategoryName(Category c) {
  switch (c) {
    case Category::kA: return "A";
    case Category::kB: return "B";
    case Category::kC: return "C";
  }
  return "?";
}

std::optional<Category> ParseCategory(std::string_view name) {
  for (Category c : kAllCategories) {
    if (CategoryName(c) == name) return c;
  }
  return std::nullopt;
}

std::string_view SubCategoryName(SubCategory s) {
  switch (s) {
    case SubCategory::kManifest: return "Manifest";
    case SubCategory::kHardware: return "Hardware";
    case SubCategory::kAsset: return "Asset";
    case SubCategory::kResource: return "Resource";
    case SubCategory::kFirmware: return "Firmware";
  }
  return "?";
}

std::optional<SubCategory> ParseSubCategory(std::string_view name) {
  for (SubCategory s : kAllSubCategories) {
    if (SubCategoryName(s) == name) return s;
  }
  return std::nullopt;
}

}  // namespace crashloc
