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

#include "crashloc/similarity.h"

#include <algorithm>

#include "crashloc/error.h"

namespace crashloc {

FrameSeq FrameSequence(const CrashReport& report) {
  FrameSeq seq;
  seq.reserve(report.framework_subtrace.size());
  for (const StackFrame& frame : report.framework_subtrace) seq.push_back(frame.QualifiedName());
  return seq;
}

std::size_t EditDistance(std::span<const std::string> a, std::span<const std::string> b) {
  if (a.size() < b.size()) std::swap(a, b);
  // Two-row Wagner-Fischer over the shorter sequence.
  std::vector<std::size_t> prev(b.size() + 1);
  std::vector<std::size_t> cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t substitute = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, substitute});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

double EditSimilarity(std::span<const std::string> a, std::span<const std::string> b) {
  const std::size_t longest = std::max(a.size(), b.size());
  if (longest == 0) return 1.0;
  return 1.0 - static_cast<double>(EditDistance(a, b)) / static_cast<double>(longest);
}

double CrashSimilarity(const CrashReport& a, const CrashReport& b) {
  const FrameSeq sa = FrameSequence(a);
  const FrameSeq sb = FrameSequence(b);
  return EditSimilarity(sa, sb);
}

NearestCrash MostSimilar(const CrashReport& query, std::span<const LabeledCrash> pool) {
  if (pool.empty()) throw Error(ErrorCode::kEmptyPool, "similarity pool is empty");
  const FrameSeq q = FrameSequence(query);
  NearestCrash best{0, -1.0};
  for (std::size_t i = 0; i < pool.size(); ++i) {
    const FrameSeq candidate = FrameSequence(pool[i].report);
    const double score = EditSimilarity(q, candidate);
    if (score > best.score) best = {i, score};
  }
  return best;
}

}  // namespace crashloc
