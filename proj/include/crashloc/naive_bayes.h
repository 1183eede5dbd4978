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

#ifndef CRASHLOC_NAIVE_BAYES_H_
#define CRASHLOC_NAIVE_BAYES_H_

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "crashloc/category.h"
#include "crashloc/corpus.h"
#include "crashloc/features.h"
#include "json.hpp"

namespace crashloc {

struct TrainingExample {
  FeatureVector features;
  Category category = Category::kA;
};

struct Prediction {
  Category category = Category::kA;
  // Unnormalized log posterior per category, indexed by CategoryIndex().
  std::array<double, kCategoryCount> log_scores{};

  // exp-normalized scores; sums to 1.
  std::array<double, kCategoryCount> Posterior() const;
};

// Bernoulli naive Bayes over binary features with additive smoothing:
//   prior(c)  = (n_c + s) / (N + 3s)
//   cond(i,c) = (n_{i,c} + s) / (n_c + 2s)      P(bit i = 1 | c)
class NaiveBayesModel {
 public:
  // Throws Error(kEmptyCorpus), Error(kDimensionMismatch) on ragged vectors,
  // Error(kInvalidConfig) for smoothing <= 0.
  static NaiveBayesModel Train(std::span<const TrainingExample> corpus, double smoothing);

  // Argmax of log prior + sum of per-feature log likelihoods; ties go to the
  // earlier category (A before B before C). Throws Error(kDimensionMismatch).
  Prediction Predict(const FeatureVector& v) const;

  double smoothing() const { return smoothing_; }
  std::size_t feature_count() const { return feature_count_; }
  double prior(Category c) const { return priors_[CategoryIndex(c)]; }
  double cond(std::size_t feature, Category c) const {
    return cond_[feature * kCategoryCount + CategoryIndex(c)];
  }

  // {smoothing, priors: {A,B,C}, conditionals: [[A,B,C] per feature]}
  nlohmann::ordered_json ToJson() const;
  static NaiveBayesModel FromJson(const nlohmann::ordered_json& doc);

 private:
  void CacheLogs();

  double smoothing_ = 1.0;
  std::size_t feature_count_ = 0;
  std::array<double, kCategoryCount> priors_{};
  // Row-major by feature.
  std::vector<double> cond_;
  std::array<double, kCategoryCount> log_priors_{};
  std::vector<double> log_cond_;
  std::vector<double> log_not_cond_;
};

// Phase-1 categorizer: tokenizer vocabulary, chi-square selection and the
// naive Bayes model trained on the selected features.
class Categorizer {
 public:
  // Throws Error(kEmptyCorpus) for an empty corpus.
  static Categorizer Train(std::span<const LabeledCrash> corpus, double chi2_ratio,
                           double smoothing);

  Prediction Categorize(const CrashReport& report) const;

  const SelectedVocabulary& vocabulary() const { return vocab_; }
  const NaiveBayesModel& model() const { return model_; }

  nlohmann::ordered_json ToJson() const;
  static Categorizer FromJson(const nlohmann::ordered_json& doc);

 private:
  SelectedVocabulary vocab_;
  NaiveBayesModel model_;
};

}  // namespace crashloc

#endif  // CRASHLOC_NAIVE_BAYES_H_
