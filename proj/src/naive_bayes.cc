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

#include "crashloc/naive_bayes.h"

#include <cmath>

#include "crashloc/error.h"

namespace crashloc {

using nlohmann::ordered_json;

std::array<double, kCategoryCount> Prediction::Posterior() const {
  double top = log_scores[0];
  for (double s : log_scores) top = std::max(top, s);
  std::array<double, kCategoryCount> out{};
  double total = 0.0;
  for (std::size_t c = 0; c < kCategoryCount; ++c) {
    out[c] = std::exp(log_scores[c] - top);
    total += out[c];
  }
  for (double& p : out) p /= total;
  return out;
}

NaiveBayesModel NaiveBayesModel::Train(std::span<const TrainingExample> corpus,
                                       double smoothing) {
  if (corpus.empty()) throw Error(ErrorCode::kEmptyCorpus, "naive Bayes needs training data");
  if (!(smoothing > 0.0)) throw Error(ErrorCode::kInvalidConfig, "smoothing must be positive");

  NaiveBayesModel model;
  model.smoothing_ = smoothing;
  model.feature_count_ = corpus.front().features.size();

  std::array<double, kCategoryCount> count{};
  std::vector<double> ones(model.feature_count_ * kCategoryCount, 0.0);
  for (const TrainingExample& ex : corpus) {
    if (ex.features.size() != model.feature_count_) {
      throw Error(ErrorCode::kDimensionMismatch, "training vectors differ in length");
    }
    const std::size_t c = CategoryIndex(ex.category);
    count[c] += 1;
    for (std::size_t i = 0; i < model.feature_count_; ++i) {
      if (ex.features.bits[i]) ones[i * kCategoryCount + c] += 1;
    }
  }

  const double n = static_cast<double>(corpus.size());
  for (std::size_t c = 0; c < kCategoryCount; ++c) {
    model.priors_[c] = (count[c] + smoothing) / (n + kCategoryCount * smoothing);
  }
  model.cond_.resize(ones.size());
  for (std::size_t i = 0; i < model.feature_count_; ++i) {
    for (std::size_t c = 0; c < kCategoryCount; ++c) {
      const std::size_t k = i * kCategoryCount + c;
      model.cond_[k] = (ones[k] + smoothing) / (count[c] + 2 * smoothing);
    }
  }
  model.CacheLogs();
  return model;
}

void NaiveBayesModel::CacheLogs() {
  for (std::size_t c = 0; c < kCategoryCount; ++c) log_priors_[c] = std::log(priors_[c]);
  log_cond_.resize(cond_.size());
  log_not_cond_.resize(cond_.size());
  for (std::size_t k = 0; k < cond_.size(); ++k) {
    log_cond_[k] = std::log(cond_[k]);
    log_not_cond_[k] = std::log1p(-cond_[k]);
  }
}

Prediction NaiveBayesModel::Predict(const FeatureVector& v) const {
  if (v.size() != feature_count_) {
    throw Error(ErrorCode::kDimensionMismatch,
                "feature vector has " + std::to_string(v.size()) + " dimensions, model has " +
                    std::to_string(feature_count_));
  }
  Prediction p;
  p.log_scores = log_priors_;
  for (std::size_t i = 0; i < feature_count_; ++i) {
    const std::vector<double>& table = v.bits[i] ? log_cond_ : log_not_cond_;
    for (std::size_t c = 0; c < kCategoryCount; ++c) {
      p.log_scores[c] += table[i * kCategoryCount + c];
    }
  }
  // Scores equal in exact arithmetic can differ in the last bits depending on
  // summation order; treat those as ties so the earlier category wins.
  constexpr double kTieTolerance = 1e-9;
  std::size_t best = 0;
  for (std::size_t c = 1; c < kCategoryCount; ++c) {
    if (p.log_scores[c] > p.log_scores[best] + kTieTolerance) best = c;
  }
  p.category = kAllCategories[best];
  return p;
}

ordered_json NaiveBayesModel::ToJson() const {
  ordered_json doc = ordered_json::object();
  doc["smoothing"] = smoothing_;
  ordered_json priors = ordered_json::object();
  for (Category c : kAllCategories) priors[std::string(CategoryName(c))] = prior(c);
  doc["priors"] = std::move(priors);
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < feature_count_; ++i) {
    rows.push_back({cond(i, Category::kA), cond(i, Category::kB), cond(i, Category::kC)});
  }
  doc["conditionals"] = std::move(rows);
  return doc;
}

NaiveBayesModel NaiveBayesModel::FromJson(const ordered_json& doc) {
  NaiveBayesModel model;
  try {
    model.smoothing_ = doc.at("smoothing").get<double>();
    const ordered_json& priors = doc.at("priors");
    for (Category c : kAllCategories) {
      model.priors_[CategoryIndex(c)] = priors.at(std::string(CategoryName(c))).get<double>();
    }
    const ordered_json& rows = doc.at("conditionals");
    model.feature_count_ = rows.size();
    for (const ordered_json& row : rows) {
      auto values = row.get<std::vector<double>>();
      if (values.size() != kCategoryCount) {
        throw Error(ErrorCode::kSchemaError, "conditional row needs 3 values", "/nb/conditionals");
      }
      model.cond_.insert(model.cond_.end(), values.begin(), values.end());
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kSchemaError, std::string("naive Bayes model: ") + e.what(), "/nb");
  }
  if (!(model.smoothing_ > 0.0)) {
    throw Error(ErrorCode::kSchemaError, "smoothing must be positive", "/nb/smoothing");
  }
  for (double p : model.priors_) {
    if (!(p > 0.0 && p < 1.0)) {
      throw Error(ErrorCode::kSchemaError, "prior outside (0,1)", "/nb/priors");
    }
  }
  for (double p : model.cond_) {
    if (!(p > 0.0 && p < 1.0)) {
      throw Error(ErrorCode::kSchemaError, "conditional probability outside (0,1)",
                  "/nb/conditionals");
    }
  }
  model.CacheLogs();
  return model;
}

Categorizer Categorizer::Train(std::span<const LabeledCrash> corpus, double chi2_ratio,
                               double smoothing) {
  const std::vector<Document> docs = MakeDocuments(corpus);
  const Vocabulary vocab = BuildVocabulary(docs);
  Categorizer out;
  out.vocab_ = ChiSquareSelect(vocab, docs, chi2_ratio);
  std::vector<TrainingExample> examples;
  examples.reserve(docs.size());
  for (const Document& doc : docs) {
    examples.push_back({Vectorize(doc.tokens, out.vocab_), doc.category});
  }
  out.model_ = NaiveBayesModel::Train(examples, smoothing);
  return out;
}

Prediction Categorizer::Categorize(const CrashReport& report) const {
  return model_.Predict(Vectorize(report, vocab_));
}

ordered_json Categorizer::ToJson() const {
  ordered_json doc = ordered_json::object();
  doc["vocabulary"] = vocab_.base.words();
  doc["selected"] = vocab_.ToJson();
  doc["nb"] = model_.ToJson();
  return doc;
}

Categorizer Categorizer::FromJson(const ordered_json& doc) {
  Categorizer out;
  if (!doc.is_object() || !doc.contains("selected") || !doc.contains("nb")) {
    throw Error(ErrorCode::kSchemaError, "model bundle needs 'selected' and 'nb'", "");
  }
  out.vocab_ = SelectedVocabulary::FromJson(doc.at("selected"));
  if (doc.contains("vocabulary")) {
    try {
      out.vocab_.base = Vocabulary(doc.at("vocabulary").get<std::vector<std::string>>());
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kSchemaError, std::string("vocabulary: ") + e.what(), "/vocabulary");
    }
  }
  out.model_ = NaiveBayesModel::FromJson(doc.at("nb"));
  if (out.model_.feature_count() != out.vocab_.size()) {
    throw Error(ErrorCode::kSchemaError, "model and selected vocabulary differ in size",
                "/nb/conditionals");
  }
  return out;
}

}  // namespace crashloc
