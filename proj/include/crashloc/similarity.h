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

#ifndef CRASHLOC_SIMILARITY_H_
#define CRASHLOC_SIMILARITY_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "crashloc/corpus.h"
#include "crashloc/trace_parser.h"

namespace crashloc {

// Framework sub-trace as `class.method` symbols, topmost first.
using FrameSeq = std::vector<std::string>;

FrameSeq FrameSequence(const CrashReport& report);

// Token-level Levenshtein distance with unit insert/delete/substitute costs.
std::size_t EditDistance(std::span<const std::string> a, std::span<const std::string> b);

// 1 - d / max(|a|, |b|); 1 when both are empty.
double EditSimilarity(std::span<const std::string> a, std::span<const std::string> b);

// Edit similarity of the two framework sub-traces.
double CrashSimilarity(const CrashReport& a, const CrashReport& b);

struct NearestCrash {
  std::size_t index = 0;
  double score = 0.0;
};

// Highest-similarity element of `pool`; the earliest one on ties. Throws
// Error(kEmptyPool).
NearestCrash MostSimilar(const CrashReport& query, std::span<const LabeledCrash> pool);

}  // namespace crashloc

#endif  // CRASHLOC_SIMILARITY_H_
