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

#ifndef CRASHLOC_FEATURES_H_
#define CRASHLOC_FEATURES_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "crashloc/category.h"
#include "crashloc/corpus.h"
#include "crashloc/trace_parser.h"
#include "json.hpp"

namespace crashloc {

// Distinct words of a split report, in first-occurrence order:
//   exception type split on '.', message split on whitespace, and each
//   framework sub-trace frame's `class.method` split on '.'.
// Case is preserved and empty pieces are dropped.
std::vector<std::string> Tokenize(const CrashReport& report);

class Vocabulary {
 public:
  Vocabulary() = default;
  explicit Vocabulary(std::vector<std::string> words);

  // Appends `word` unless present; returns its position.
  std::size_t Add(const std::string& word);

  const std::vector<std::string>& words() const { return words_; }
  std::size_t size() const { return words_.size(); }
  // Position of `word`, or -1.
  std::ptrdiff_t IndexOf(const std::string& word) const;

 private:
  std::vector<std::string> words_;
  std::unordered_map<std::string, std::size_t> index_;
};

// A tokenized training document.
struct Document {
  std::vector<std::string> tokens;
  Category category = Category::kA;
};

std::vector<Document> MakeDocuments(std::span<const LabeledCrash> corpus);

// Union of document tokens in first-occurrence order. Throws
// Error(kEmptyCorpus).
Vocabulary BuildVocabulary(std::span<const Document> docs);
Vocabulary BuildVocabulary(std::span<const LabeledCrash> corpus);

// 2x2 chi-square statistic without continuity correction:
//   o11 = word present & in class    o12 = word present & not in class
//   o21 = word absent  & in class    o22 = word absent  & not in class
// Zero when any marginal is zero.
double ChiSquare2x2(double o11, double o12, double o21, double o22);

// Per-word score: max over categories of the one-vs-rest 2x2 statistic.
// Aligned with `vocab.words()`.
std::vector<double> ChiSquareScores(const Vocabulary& vocab, std::span<const Document> docs);

// ceil(ratio * n), robust to floating error for exact products.
std::size_t SelectionSize(double ratio, std::size_t n);

struct SelectedVocabulary {
  Vocabulary base;
  double ratio = 1.0;
  // Highest chi-square first; ties keep vocabulary order.
  std::vector<std::string> selected;
  std::vector<double> chi2;

  std::size_t size() const { return selected.size(); }
  nlohmann::ordered_json ToJson() const;
  // Restores `selected`, `chi2` and `ratio`; `base` is left for the caller.
  static SelectedVocabulary FromJson(const nlohmann::ordered_json& doc);
};

// Throws Error(kInvalidConfig) unless 0 < ratio <= 1.
SelectedVocabulary ChiSquareSelect(const Vocabulary& vocab, std::span<const Document> docs,
                                   double ratio);
SelectedVocabulary ChiSquareSelect(const Vocabulary& vocab, std::span<const LabeledCrash> corpus,
                                   double ratio);

struct FeatureVector {
  std::vector<std::uint8_t> bits;

  std::size_t size() const { return bits.size(); }
  bool operator==(const FeatureVector&) const = default;
};

FeatureVector Vectorize(std::span<const std::string> tokens, const SelectedVocabulary& sel);
FeatureVector Vectorize(const CrashReport& report, const SelectedVocabulary& sel);

}  // namespace crashloc

#endif  // CRASHLOC_FEATURES_H_
