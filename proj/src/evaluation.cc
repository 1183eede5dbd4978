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

#include "crashloc/evaluation.h"

#include <algorithm>
#include <cstdio>
#include <map>
#include <memory>
#include <numeric>
#include <thread>

#include "crashloc/app_model.h"
#include "crashloc/localizer.h"
#include "crashloc/naive_bayes.h"

namespace crashloc {
namespace {

using nlohmann::ordered_json;

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

struct LoadedModel {
  std::unique_ptr<AppModel> model;
  std::string error;
  ErrorCode code = ErrorCode::kLocateError;
};

struct FoldResult {
  std::vector<CaseOutcome> cases;
  std::vector<CaseFailure> failures;
};

double SafeRatio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

FoldResult RunFold(std::size_t fold_index, const Fold& fold, const Corpus& corpus,
                   const Config& config, const std::map<std::string, LoadedModel>& models) {
  FoldResult out;
  std::vector<LabeledCrash> train;
  train.reserve(fold.train.size());
  for (std::size_t i : fold.train) train.push_back(corpus.crashes[i]);

  const Categorizer categorizer =
      Categorizer::Train(train, config.chi2_ratio, config.nb_smoothing);
  const LocateOptions options{config.links_depth};

  for (std::size_t index : fold.test) {
    const LabeledCrash& crash = corpus.crashes[index];
    CaseOutcome outcome;
    outcome.corpus_index = index;
    outcome.fold = fold_index;
    outcome.actual = crash.category;
    outcome.predicted = categorizer.Categorize(crash.report).category;

    const AppModel* model = nullptr;
    std::string model_error;
    if (auto path = corpus.AppModelPath(crash)) {
      const LoadedModel& loaded = models.at(path->string());
      model = loaded.model.get();
      model_error = loaded.error;
    }

    auto run = [&](Category category, const char* variant) -> CaseRank {
      try {
        if (category == Category::kB && !model && !model_error.empty()) {
          throw Error(ErrorCode::kLocateError, model_error).WithPhase(Phase::kLocate);
        }
        LocalizationResult result = LocateAs(category, crash.report, model, train, options);
        return result.RankOf(crash.true_location);
      } catch (const Error& e) {
        out.failures.push_back({index, variant, e.phase(), e.code(), e.what()});
        return std::nullopt;
      }
    };
    outcome.rank = run(outcome.predicted, "end_to_end");
    outcome.perfect_rank = run(outcome.actual, "perfect");
    out.cases.push_back(outcome);
  }
  return out;
}

MetricsTable BuildTable(const std::vector<CaseOutcome>& cases, bool perfect) {
  MetricsTable table;
  std::array<std::vector<CaseRank>, kCategoryCount> per;
  std::vector<CaseRank> all;
  for (const CaseOutcome& c : cases) {
    const CaseRank r = perfect ? c.perfect_rank : c.rank;
    per[CategoryIndex(c.actual)].push_back(r);
    all.push_back(r);
  }
  for (std::size_t c = 0; c < kCategoryCount; ++c) table.per_category[c] = RankMetrics::Of(per[c]);
  table.total = RankMetrics::Of(all);
  return table;
}

ordered_json MetricsToJson(const RankMetrics& m) {
  ordered_json doc = ordered_json::object();
  doc["cases"] = m.cases;
  ordered_json recall = ordered_json::object();
  ordered_json hits = ordered_json::object();
  for (std::size_t i = 0; i < kRecallCutoffs.size(); ++i) {
    recall[std::to_string(kRecallCutoffs[i])] = m.recall(i);
    hits[std::to_string(kRecallCutoffs[i])] = m.hits[i];
  }
  doc["recall_at"] = std::move(recall);
  doc["hits_at"] = std::move(hits);
  doc["located"] = m.located;
  doc["mrr"] = m.mrr;
  return doc;
}

ordered_json TableToJson(const MetricsTable& t) {
  ordered_json doc = ordered_json::object();
  for (Category c : kAllCategories) {
    doc[std::string(CategoryName(c))] = MetricsToJson(t.per_category[CategoryIndex(c)]);
  }
  doc["total"] = MetricsToJson(t.total);
  return doc;
}

ordered_json RankToJson(const CaseRank& r) { return r ? ordered_json(*r) : ordered_json(nullptr); }

std::string Format(const char* fmt, double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), fmt, value);
  return buf;
}

std::string Pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

std::string RecallCell(const RankMetrics& m, std::size_t i) {
  return Format("%.2f", m.recall(i)) + "(" + std::to_string(m.hits[i]) + "/" +
         std::to_string(m.cases) + ")";
}

void AppendTable(std::string& out, const std::string& title, const MetricsTable& t) {
  out += title + "\n";
  out += Pad("Category", 10);
  for (std::size_t k : kRecallCutoffs) out += Pad("Recall@" + std::to_string(k), 16);
  out += "MRR\n";
  auto row = [&out](const std::string& name, const RankMetrics& m) {
    out += Pad(name, 10);
    for (std::size_t i = 0; i < kRecallCutoffs.size(); ++i) out += Pad(RecallCell(m, i), 16);
    out += Format("%.2f", m.mrr) + "\n";
  };
  for (Category c : kAllCategories) {
    row(std::string(CategoryName(c)), t.per_category[CategoryIndex(c)]);
  }
  row("Total", t.total);
}

}  // namespace

std::vector<Bucket> Bucketize(std::span<const LabeledCrash> corpus) {
  std::vector<Bucket> buckets;
  std::map<FrameSeq, std::size_t> index;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    FrameSeq key = FrameSequence(corpus[i].report);
    auto [it, inserted] = index.emplace(key, buckets.size());
    if (inserted) buckets.push_back({std::move(key), {}});
    buckets[it->second].members.push_back(i);
  }
  return buckets;
}

Xorshift64Star::Xorshift64Star(std::uint64_t seed) : state_(SplitMix64(seed)) {
  if (state_ == 0) state_ = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t Xorshift64Star::Next() {
  state_ ^= state_ >> 12;
  state_ ^= state_ << 25;
  state_ ^= state_ >> 27;
  return state_ * 0x2545F4914F6CDD1DULL;
}

std::vector<std::size_t> SeededPermutation(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Xorshift64Star rng(seed);
  for (std::size_t i = n; i-- > 1;) {
    const std::size_t j = static_cast<std::size_t>(rng.Next() % (i + 1));
    std::swap(perm[i], perm[j]);
  }
  return perm;
}

std::vector<Fold> KFoldSplit(std::size_t n, int k, std::uint64_t seed) {
  if (k < 2) throw Error(ErrorCode::kInvalidConfig, "k-fold split needs k >= 2");
  const auto folds = static_cast<std::size_t>(k);
  if (n < folds) {
    throw Error(ErrorCode::kCorpusTooSmall, "corpus of " + std::to_string(n) +
                                                " crashes cannot be split into " +
                                                std::to_string(k) + " folds");
  }
  const std::vector<std::size_t> perm = SeededPermutation(n, seed);
  std::vector<Fold> out(folds);
  for (std::size_t f = 0; f < folds; ++f) {
    const std::size_t begin = f * n / folds;
    const std::size_t end = (f + 1) * n / folds;
    std::vector<bool> in_test(n, false);
    for (std::size_t i = begin; i < end; ++i) {
      out[f].test.push_back(perm[i]);
      in_test[perm[i]] = true;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (!in_test[i]) out[f].train.push_back(i);
    }
  }
  return out;
}

double RecallAtK(std::span<const CaseRank> ranks, std::size_t k) {
  if (ranks.empty()) return 0.0;
  const auto hits = std::count_if(ranks.begin(), ranks.end(),
                                  [k](const CaseRank& r) { return r && *r <= k; });
  return static_cast<double>(hits) / static_cast<double>(ranks.size());
}

double MeanReciprocalRank(std::span<const CaseRank> ranks) {
  if (ranks.empty()) throw Error(ErrorCode::kEmptySet, "MRR of an empty result set");
  double sum = 0.0;
  for (const CaseRank& r : ranks) {
    if (r) sum += 1.0 / static_cast<double>(*r);
  }
  return sum / static_cast<double>(ranks.size());
}

RankMetrics RankMetrics::Of(std::span<const CaseRank> ranks) {
  RankMetrics m;
  m.cases = ranks.size();
  for (const CaseRank& r : ranks) {
    if (!r) continue;
    ++m.located;
    for (std::size_t i = 0; i < kRecallCutoffs.size(); ++i) {
      if (*r <= kRecallCutoffs[i]) ++m.hits[i];
    }
  }
  m.mrr = ranks.empty() ? 0.0 : MeanReciprocalRank(ranks);
  return m;
}

double RankMetrics::recall(std::size_t cutoff_index) const {
  return SafeRatio(hits[cutoff_index], cases);
}

BucketSummary ScoreSummaryByBucket(std::span<const LabeledCrash> corpus,
                                   std::span<const CaseRank> ranks) {
  if (corpus.size() != ranks.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "ranks must align with the corpus");
  }
  const std::vector<Bucket> buckets = Bucketize(corpus);
  std::vector<CaseRank> representative;
  representative.reserve(buckets.size());
  for (const Bucket& b : buckets) representative.push_back(ranks[b.members.front()]);
  return {buckets.size(), RankMetrics::Of(representative)};
}

EvalReport Evaluate(const Corpus& corpus, const Config& config, bool perfect_categorization) {
  config.Validate();
  const std::vector<Fold> folds =
      KFoldSplit(corpus.crashes.size(), config.kfold_k, config.seed);

  // Models are loaded once, up front, so folds only read shared state.
  std::map<std::string, LoadedModel> models;
  for (const LabeledCrash& crash : corpus.crashes) {
    auto path = corpus.AppModelPath(crash);
    if (!path || models.count(path->string())) continue;
    LoadedModel loaded;
    try {
      loaded.model = std::make_unique<AppModel>(AppModel::Load(*path));
    } catch (const Error& e) {
      loaded.error = std::string(ErrorCodeName(e.code())) + ": " + e.what();
      loaded.code = e.code();
    }
    models.emplace(path->string(), std::move(loaded));
  }

  std::vector<FoldResult> results(folds.size());
  const std::size_t jobs = std::min<std::size_t>(static_cast<std::size_t>(config.jobs), folds.size());
  if (jobs <= 1) {
    for (std::size_t f = 0; f < folds.size(); ++f) {
      results[f] = RunFold(f, folds[f], corpus, config, models);
    }
  } else {
    std::vector<std::thread> workers;
    std::vector<std::exception_ptr> errors(folds.size());
    for (std::size_t w = 0; w < jobs; ++w) {
      workers.emplace_back([&, w] {
        for (std::size_t f = w; f < folds.size(); f += jobs) {
          try {
            results[f] = RunFold(f, folds[f], corpus, config, models);
          } catch (...) {
            errors[f] = std::current_exception();
          }
        }
      });
    }
    for (std::thread& t : workers) t.join();
    for (const std::exception_ptr& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  EvalReport report;
  report.fold_count = config.kfold_k;
  report.seed = config.seed;
  report.perfect_categorization = perfect_categorization;
  report.cases.resize(corpus.crashes.size());
  for (const FoldResult& fold : results) {
    for (const CaseOutcome& c : fold.cases) report.cases[c.corpus_index] = c;
    report.failures.insert(report.failures.end(), fold.failures.begin(), fold.failures.end());
  }
  std::stable_sort(report.failures.begin(), report.failures.end(),
                   [](const CaseFailure& a, const CaseFailure& b) {
                     return a.corpus_index < b.corpus_index;
                   });

  for (const CaseOutcome& c : report.cases) {
    ++report.confusion[CategoryIndex(c.predicted)][CategoryIndex(c.actual)];
  }
  for (std::size_t c = 0; c < kCategoryCount; ++c) {
    std::size_t predicted = 0;
    std::size_t actual = 0;
    for (std::size_t o = 0; o < kCategoryCount; ++o) {
      predicted += report.confusion[c][o];
      actual += report.confusion[o][c];
    }
    report.precision[c] = SafeRatio(report.confusion[c][c], predicted);
    report.recall[c] = SafeRatio(report.confusion[c][c], actual);
  }
  report.end_to_end = BuildTable(report.cases, false);
  report.perfect = BuildTable(report.cases, true);

  std::vector<CaseRank> headline_ranks;
  for (const CaseOutcome& c : report.cases) {
    headline_ranks.push_back(perfect_categorization ? c.perfect_rank : c.rank);
  }
  report.buckets = ScoreSummaryByBucket(corpus.crashes, headline_ranks);
  return report;
}

ordered_json EvalReport::ToJson() const {
  ordered_json doc = ordered_json::object();
  doc["folds"] = fold_count;
  doc["seed"] = seed;
  doc["protocol"] = perfect_categorization ? "perfect_categorization" : "end_to_end";

  const MetricsTable& head = headline();
  ordered_json recall_at = ordered_json::object();
  for (std::size_t i = 0; i < kRecallCutoffs.size(); ++i) {
    recall_at[std::to_string(kRecallCutoffs[i])] = head.total.recall(i);
  }
  doc["recall_at"] = std::move(recall_at);
  doc["mrr"] = head.total.mrr;

  ordered_json confusion_json = ordered_json::object();
  for (Category p : kAllCategories) {
    ordered_json row = ordered_json::object();
    for (Category a : kAllCategories) {
      row[std::string(CategoryName(a))] = confusion[CategoryIndex(p)][CategoryIndex(a)];
    }
    confusion_json[std::string(CategoryName(p))] = std::move(row);
  }
  doc["confusion"] = std::move(confusion_json);

  ordered_json pr = ordered_json::object();
  for (Category c : kAllCategories) {
    pr[std::string(CategoryName(c))] = {{"precision", precision[CategoryIndex(c)]},
                                        {"recall", recall[CategoryIndex(c)]}};
  }
  doc["categorization"] = std::move(pr);
  doc["end_to_end"] = TableToJson(end_to_end);
  doc["perfect_categorization"] = TableToJson(perfect);

  ordered_json bucket_json = ordered_json::object();
  bucket_json["count"] = buckets.bucket_count;
  bucket_json["metrics"] = MetricsToJson(buckets.metrics);
  doc["buckets"] = std::move(bucket_json);

  ordered_json cases_json = ordered_json::array();
  for (const CaseOutcome& c : cases) {
    ordered_json item = ordered_json::object();
    item["index"] = c.corpus_index;
    item["fold"] = c.fold;
    item["actual"] = std::string(CategoryName(c.actual));
    item["predicted"] = std::string(CategoryName(c.predicted));
    item["rank"] = RankToJson(c.rank);
    item["perfect_rank"] = RankToJson(c.perfect_rank);
    cases_json.push_back(std::move(item));
  }
  doc["cases"] = std::move(cases_json);

  ordered_json failures_json = ordered_json::array();
  for (const CaseFailure& f : failures) {
    ordered_json item = ordered_json::object();
    item["index"] = f.corpus_index;
    item["variant"] = f.variant;
    item["phase"] = std::string(PhaseName(f.phase));
    item["error"] = std::string(ErrorCodeName(f.code));
    item["message"] = f.message;
    failures_json.push_back(std::move(item));
  }
  doc["failures"] = std::move(failures_json);
  return doc;
}

std::string EvalReport::ToText() const {
  std::string out;
  out += "Effectiveness of Categorization (Phase 1)\n";
  out += Pad("", 26) + "Actual\n";
  out += Pad("", 26) + Pad("A", 7) + Pad("B", 7) + Pad("C", 7) + "Total\n";
  std::array<std::size_t, kCategoryCount> col{};
  std::size_t grand = 0;
  for (Category p : kAllCategories) {
    const std::size_t pi = CategoryIndex(p);
    std::size_t row_total = 0;
    out += Pad("Predicted as Category " + std::string(CategoryName(p)), 26);
    for (std::size_t a = 0; a < kCategoryCount; ++a) {
      out += Pad(std::to_string(confusion[pi][a]), 7);
      row_total += confusion[pi][a];
      col[a] += confusion[pi][a];
    }
    grand += row_total;
    out += std::to_string(row_total) + "\n";
  }
  out += Pad("Total", 26);
  for (std::size_t a = 0; a < kCategoryCount; ++a) out += Pad(std::to_string(col[a]), 7);
  out += std::to_string(grand) + "\n\n";

  out += Pad("", 12) + Pad("Precision", 11) + "Recall\n";
  for (Category c : kAllCategories) {
    out += Pad("Category " + std::string(CategoryName(c)), 12) +
           Pad(Format("%.2f", precision[CategoryIndex(c)]), 11) +
           Format("%.2f", recall[CategoryIndex(c)]) + "\n";
  }
  out += "\n";
  AppendTable(out, "Localization Performance (perfect categorization)", perfect);
  out += "\n";
  AppendTable(out, "Overall Performance (end to end)", end_to_end);
  out += "\nBuckets: " + std::to_string(buckets.bucket_count) +
         "  MRR by bucket: " + Format("%.2f", buckets.metrics.mrr) + "\n";
  out += "Folds: " + std::to_string(fold_count) + "  Seed: " + std::to_string(seed) +
         "  Protocol: " + (perfect_categorization ? "perfect_categorization" : "end_to_end") +
         "\n";
  if (!failures.empty()) {
    out += "\nFailures:\n";
    for (const CaseFailure& f : failures) {
      out += "  #" + std::to_string(f.corpus_index) + " [" + f.variant + "/" +
             std::string(PhaseName(f.phase)) + "] " + std::string(ErrorCodeName(f.code)) + ": " +
             f.message + "\n";
    }
  }
  return out;
}

}  // namespace crashloc
