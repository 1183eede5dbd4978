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

#ifndef CRASHLOC_EVALUATION_H_
#define CRASHLOC_EVALUATION_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "crashloc/category.h"
#include "crashloc/config.h"
#include "crashloc/corpus.h"
#include "crashloc/error.h"
#include "crashloc/similarity.h"
#include "json.hpp"

namespace crashloc {

// Crashes sharing a byte-identical framework sub-trace.
struct Bucket {
  FrameSeq key;
  // Indices into the bucketized corpus, ascending.
  std::vector<std::size_t> members;
};

// Buckets in order of first occurrence.
std::vector<Bucket> Bucketize(std::span<const LabeledCrash> corpus);

// xorshift64* (Marsaglia shifts 12/25/27, multiplier 0x2545F4914F6CDD1D),
// state seeded through one splitmix64 step so that seed 0 is usable.
class Xorshift64Star {
 public:
  explicit Xorshift64Star(std::uint64_t seed);
  std::uint64_t Next();

 private:
  std::uint64_t state_;
};

// Fisher-Yates from the back: for i = n-1 .. 1, j = Next() % (i + 1).
std::vector<std::size_t> SeededPermutation(std::size_t n, std::uint64_t seed);

struct Fold {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

// Shuffles 0..n-1 with the seed, then cuts k contiguous test slices
// [f*n/k, (f+1)*n/k). Train is the complement, in ascending order.
// Throws Error(kCorpusTooSmall) when n < k, Error(kInvalidConfig) when k < 2.
std::vector<Fold> KFoldSplit(std::size_t n, int k, std::uint64_t seed);

// 1-based rank of the true location; nullopt when it is not ranked at all.
using CaseRank = std::optional<std::size_t>;

// Fraction of cases with rank <= k. Misses count in the denominator.
double RecallAtK(std::span<const CaseRank> ranks, std::size_t k);

// Mean of 1/rank, misses contributing 0. Throws Error(kEmptySet).
double MeanReciprocalRank(std::span<const CaseRank> ranks);

inline constexpr std::array<std::size_t, 3> kRecallCutoffs = {1, 5, 10};

struct RankMetrics {
  std::size_t cases = 0;
  std::array<std::size_t, kRecallCutoffs.size()> hits{};
  std::size_t located = 0;
  double mrr = 0.0;

  static RankMetrics Of(std::span<const CaseRank> ranks);
  double recall(std::size_t cutoff_index) const;
};

struct MetricsTable {
  std::array<RankMetrics, kCategoryCount> per_category;
  RankMetrics total;
};

struct CaseOutcome {
  std::size_t corpus_index = 0;
  std::size_t fold = 0;
  Category actual = Category::kA;
  Category predicted = Category::kA;
  CaseRank rank;          // locator chosen by Phase 1
  CaseRank perfect_rank;  // locator of the true category
};

struct CaseFailure {
  std::size_t corpus_index = 0;
  // "end_to_end" or "perfect".
  std::string variant;
  Phase phase = Phase::kNone;
  ErrorCode code = ErrorCode::kLocateError;
  std::string message;
};

struct BucketSummary {
  std::size_t bucket_count = 0;
  RankMetrics metrics;
};

struct EvalReport {
  int fold_count = 0;
  std::uint64_t seed = 0;
  // Headline metrics follow the perfect-categorization protocol when set.
  bool perfect_categorization = false;
  // confusion[predicted][actual]
  std::array<std::array<std::size_t, kCategoryCount>, kCategoryCount> confusion{};
  std::array<double, kCategoryCount> precision{};
  std::array<double, kCategoryCount> recall{};
  MetricsTable end_to_end;
  MetricsTable perfect;
  BucketSummary buckets;
  std::vector<CaseOutcome> cases;  // corpus order
  std::vector<CaseFailure> failures;

  const MetricsTable& headline() const { return perfect_categorization ? perfect : end_to_end; }

  nlohmann::ordered_json ToJson() const;
  // Plain-text tables: categorization matrix, precision/recall, and the
  // localization tables.
  std::string ToText() const;
};

// Cross-validated run of the full pipeline over `corpus`. Each fold trains
// vocabulary, chi-square selection and naive Bayes on its training part and
// localizes every test crash both end-to-end and with its true category.
EvalReport Evaluate(const Corpus& corpus, const Config& config, bool perfect_categorization);

// Metrics recomputed with each bucket counted once, represented by its first
// member. `ranks` is aligned with `corpus`.
BucketSummary ScoreSummaryByBucket(std::span<const LabeledCrash> corpus,
                                   std::span<const CaseRank> ranks);

}  // namespace crashloc

#endif  // CRASHLOC_EVALUATION_H_
