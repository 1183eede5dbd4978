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

#ifndef CRASHLOC_CATEGORY_H_
#define CRASHLOC_CATEGORY_H_

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>

namespace crashloc {

// Where the crashing fault lives relative to the stack trace.
//   A: in a developer method listed in the trace.
//   B: in developer code, but outside the trace.
//   C: outside the code (manifest, assets, device constraints, ...).
enum class Category { kA = 0, kB = 1, kC = 2 };

inline constexpr std::size_t kCategoryCount = 3;
inline constexpr std::array<Category, kCategoryCount> kAllCategories = {
    Category::kA, Category::kB, Category::kC};

constexpr std::size_t CategoryIndex(Category c) {
  return static_cast<std::size_t>(c);
}

std::string_view CategoryName(Category c);
std::optional<Category> ParseCategory(std::string_view name);

// Out-of-code fault locations. Declaration order is the canonical order used
// to break score ties.
enum class SubCategory { kManifest, kHardware, kAsset, kResource, kFirmware };

inline constexpr std::size_t kSubCategoryCount = 5;
inline constexpr std::array<SubCategory, kSubCategoryCount> kAllSubCategories = {
    SubCategory::kManifest, SubCategory::kHardware, SubCategory::kAsset,
    SubCategory::kResource, SubCategory::kFirmware};

std::string_view SubCategoryName(SubCategory s);
std::optional<SubCategory> ParseSubCategory(std::string_view name);

}  // namespace crashloc

#endif  // CRASHLOC_CATEGORY_H_
