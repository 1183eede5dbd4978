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

// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "crashloc/app_model.h"
#include "crashloc/cli.h"
#include "crashloc/corpus.h"
#include "crashloc/evaluation.h"
#include "crashloc/features.h"
#include "crashloc/localizer.h"
#include "crashloc/naive_bayes.h"
#include "crashloc/similarity.h"
#include "crashloc/trace_parser.h"
#include "json.hpp"
#include "oracles.h"
#include "test_util.h"

namespace crashloc {
namespace {

using ::crashloc::testing::DataPath;
using ::crashloc::testing::LogStems;
using ::crashloc::testing::ReadLog;

using Seq = std::vector<std::string>;

// Collects failed expectations for one criterion; keeps the first few.
class Checker {
 public:
  void Expect(bool ok, const std::string& what) {
    if (ok) return;
    if (failures_.size() < 5) failures_.push_back(what);
    ++failure_count_;
  }
  bool ok() const { return failure_count_ == 0; }
  std::size_t failure_count() const { return failure_count_; }
  const std::vector<std::string>& failures() const { return failures_; }

 private:
  std::vector<std::string> failures_;
  std::size_t failure_count_ = 0;
};

const Corpus& FixtureCorpus() {
  static const Corpus* corpus =
      new Corpus(LoadCorpus(DataPath("corpus.jsonl"), FrameworkMatcher::Default()));
  return *corpus;
}

CrashReport Report(const std::string& stem) {
  return ParseAndSplit(ReadLog(stem), FrameworkMatcher::Default());
}

std::string Label(const Location& loc) { return LocationLabel(loc); }

LabeledCrash CrashC(const Seq& frames, SubCategory sub) {
  std::string text = "java.lang.RuntimeException\n";
  for (const std::string& f : frames) text += "\tat android." + f + "(F.java:1)\n";
  text += "\tat com.example.App.run(App.java:1)\n";
  LabeledCrash c;
  c.crash_log = text;
  c.report = ParseAndSplit(text, FrameworkMatcher::Default());
  c.category = Category::kC;
  c.sub_category = sub;
  c.true_location = std::string(SubCategoryName(sub));
  return c;
}

void ParserRoundTrip(Checker& check) {
  const std::vector<std::string> stems = LogStems();
  check.Expect(stems.size() == 20, "expected 20 fixture logs, found " +
                                       std::to_string(stems.size()));
  for (const std::string& stem : stems) {
    const CrashReport parsed = ParseCrashLog(ReadLog(stem));
    const CrashReport split = SplitFrames(parsed, FrameworkMatcher::Default());
    const std::string text = SerializeCrashLog(split);
    check.Expect(ParseCrashLog(text) == parsed, stem + ": re-parse differs");
    check.Expect(ParseAndSplit(text, FrameworkMatcher::Default()) == split,
                 stem + ": re-split differs");
  }
  const CrashReport listing = Report("listing1_transistor");
  check.Expect(listing.crash_api.has_value() &&
                   listing.crash_api->class_name == "androidx.fragment.app.Fragment" &&
                   listing.crash_api->method_name == "startActivityForResult",
               "transistor crash_api");
  check.Expect(listing.crash_method.has_value() &&
                   listing.crash_method->method_name == "selectFromImagePicker",
               "transistor crash_method");
  const CrashReport sandwich = Report("figure1_sandwich");
  check.Expect(sandwich.framework_subtrace.size() == 3 && sandwich.developer_frames.size() == 2,
               "sandwich split shape");
}

void EditSimilarityOracle(Checker& check) {
  const Seq alphabet = {"android.A.f", "android.B.g", "android.C.h", "android.D.i"};
  // Every sequence of length 0..6, both as tokens and as symbol ids.
  std::vector<Seq> seqs = {{}};
  std::vector<std::vector<int>> ids = {{}};
  for (std::size_t begin = 0, len = 0; len < 6; ++len) {
    const std::size_t end = seqs.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (int s = 0; s < 4; ++s) {
        Seq next = seqs[i];
        next.push_back(alphabet[static_cast<std::size_t>(s)]);
        std::vector<int> next_ids = ids[i];
        next_ids.push_back(s);
        seqs.push_back(std::move(next));
        ids.push_back(std::move(next_ids));
      }
    }
    begin = end;
  }
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < seqs.size(); ++i) {
    for (std::size_t j = 0; j < seqs.size(); ++j) {
      const std::size_t want = oracle::EditDistanceTable(ids[i], ids[j]);
      const std::size_t got = EditDistance(seqs[i], seqs[j]);
      if (got != want) {
        check.Expect(false, "distance mismatch at pair (" + std::to_string(i) + ", " +
                                std::to_string(j) + ")");
      }
      ++pairs;
    }
  }
  check.Expect(seqs.size() == 5461 && pairs == 5461u * 5461u, "enumeration size");

  std::mt19937 rng(2);
  for (int trial = 0; trial < 10000; ++trial) {
    Seq a(rng() % 12), b(rng() % 12);
    for (auto& t : a) t = alphabet[rng() % 4];
    for (auto& t : b) t = alphabet[rng() % 4];
    const double ab = EditSimilarity(a, b);
    check.Expect(ab == EditSimilarity(b, a), "asymmetric similarity");
    check.Expect(ab >= 0.0 && ab <= 1.0, "similarity outside [0,1]");
    check.Expect(EditSimilarity(a, a) == 1.0, "self-similarity is not 1");
  }
}

void NaiveBayesOracle(Checker& check) {
  std::mt19937 rng(1000);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + rng() % 8;
    const std::size_t f = 1 + rng() % 6;
    const double s = (trial % 4 == 0) ? 0.5 : 1.0;
    std::vector<TrainingExample> docs;
    std::vector<oracle::NbDoc> plain;
    for (std::size_t i = 0; i < n; ++i) {
      oracle::NbDoc d;
      d.category = static_cast<int>(rng() % 3);
      for (std::size_t j = 0; j < f; ++j) d.bits.push_back(static_cast<int>(rng() % 2));
      docs.push_back({FeatureVector{{d.bits.begin(), d.bits.end()}}, kAllCategories[d.category]});
      plain.push_back(std::move(d));
    }
    const NaiveBayesModel model = NaiveBayesModel::Train(docs, s);
    double prior_sum = 0.0;
    for (Category c : kAllCategories) prior_sum += model.prior(c);
    check.Expect(std::abs(prior_sum - 1.0) <= 1e-9, "priors do not sum to 1");

    // Every query vector of this width.
    for (std::size_t mask = 0; mask < (std::size_t{1} << f); ++mask) {
      std::vector<int> q(f);
      for (std::size_t j = 0; j < f; ++j) q[j] = static_cast<int>((mask >> j) & 1);
      const Prediction p = model.Predict(FeatureVector{{q.begin(), q.end()}});
      const std::array<double, 3> want = oracle::NbLogJoint(plain, q, s);
      for (std::size_t c = 0; c < 3; ++c) {
        check.Expect(std::abs(p.log_scores[c] - want[c]) <= 1e-12,
                     "log score differs in trial " + std::to_string(trial));
      }
      check.Expect(CategoryIndex(p.category) ==
                       static_cast<std::size_t>(oracle::ArgmaxFirst(want)),
                   "argmax differs in trial " + std::to_string(trial));
    }
  }
}

void ChiSquare(Checker& check) {
  check.Expect(std::abs(ChiSquare2x2(2, 0, 0, 2) - 4.0) <= 1e-12, "chi2(2,0,0,2) != 4");
  // 10 * (3*4 - 2*1)^2 / (5*5*4*6)
  check.Expect(std::abs(ChiSquare2x2(3, 2, 1, 4) - 1000.0 / 600.0) <= 1e-12, "chi2(3,2,1,4)");
  check.Expect(std::abs(ChiSquare2x2(2, 2, 3, 3)) <= 1e-12, "independent table is not 0");
  check.Expect(ChiSquare2x2(1, 0, 0, 0) == 0.0, "degenerate table is not 0");

  const std::vector<Document> worked = {{{"w", "p"}, Category::kA},
                                        {{"w", "q"}, Category::kA},
                                        {{"p"}, Category::kB},
                                        {{"q"}, Category::kC}};
  const Vocabulary wv = BuildVocabulary(worked);
  const std::vector<double> scores = ChiSquareScores(wv, worked);
  check.Expect(std::abs(scores[static_cast<std::size_t>(wv.IndexOf("w"))] - 4.0) <= 1e-12,
               "worked example is not 4");

  std::mt19937 rng(4);
  for (std::size_t size = 1; size <= 50; ++size) {
    std::vector<Document> docs(6);
    for (std::size_t w = 0; w < size; ++w) docs[w % docs.size()].tokens.push_back("w" + std::to_string(w));
    for (std::size_t d = 0; d < docs.size(); ++d) {
      docs[d].category = kAllCategories[d % 3];
      if (rng() % 2) docs[d].tokens.push_back("w0");
    }
    const Vocabulary vocab = BuildVocabulary(docs);
    check.Expect(vocab.size() == size, "vocabulary size");
    const std::size_t want = static_cast<std::size_t>(std::ceil(0.5 * static_cast<double>(size)));
    check.Expect(SelectionSize(0.5, size) == want, "SelectionSize at " + std::to_string(size));
    const SelectedVocabulary a = ChiSquareSelect(vocab, docs, 0.5);
    const SelectedVocabulary b = ChiSquareSelect(vocab, docs, 0.5);
    check.Expect(a.selected.size() == want, "selected size at " + std::to_string(size));
    check.Expect(a.selected == b.selected && a.chi2 == b.chi2,
                 "selection not deterministic at " + std::to_string(size));
  }
}

void CategoryAExactness(Checker& check) {
  std::size_t checked = 0;
  for (const std::string& stem : LogStems()) {
    const CrashReport report = Report(stem);
    if (report.developer_frames.empty()) continue;
    ++checked;
    Seq want;
    for (const StackFrame& f : report.developer_frames) {
      want.push_back(f.class_name + "#" + f.method_name);
    }
    Seq got;
    for (const RankedLocation& r : LocateCategoryA(report).ranked) got.push_back(Label(r.location));
    check.Expect(got == want, stem + ": rank differs from developer frames");
  }
  check.Expect(checked > 0, "no fixture with developer frames");
  const LocalizationResult fig = LocateCategoryA(Report("figure1_sandwich"));
  check.Expect(!fig.ranked.empty() &&
                   Label(fig.ranked[0].location) ==
                       "com.sailorslogbook.ui.EntryFragment#showTimePicker",
               "sandwich: first developer frame is not ranked first");
}

std::vector<LabeledCrash> PoolWithout(const std::string& log) {
  std::vector<LabeledCrash> pool;
  for (const LabeledCrash& c : FilterByCategory(FixtureCorpus().crashes, Category::kB)) {
    if (c.crash_log != log) pool.push_back(c);
  }
  return pool;
}

void AlgorithmOneFixtures(Checker& check) {
  {
    const std::string log = ReadLog("geography");
    const AppModel model = AppModel::Load(DataPath("models/geography.json"));
    const LocalizationResult r = LocateCategoryB(
        ParseAndSplit(log, FrameworkMatcher::Default()), model, PoolWithout(log));
    check.Expect(r.handled_api && r.handled_api->api.kind == ApiKind::kCallIn,
                 "Geography: api_h is not call-in");
    check.Expect(!r.ranked.empty() &&
                     r.RankOf("com.yamlearning.geographylearning.MainActivity#onCreate") == 1u &&
                     r.ranked[0].score == 1.0,
                 "Geography: MainActivity#onCreate is not first with score 1.0");
  }
  {
    const std::string log = ReadLog("fengshui");
    const AppModel model = AppModel::Load(DataPath("models/fengshui.json"));
    const LocalizationResult r = LocateCategoryB(
        ParseAndSplit(log, FrameworkMatcher::Default()), model, PoolWithout(log));
    check.Expect(r.handled_api && r.handled_api->api.kind == ApiKind::kCallback,
                 "Fengshui: api_h is not a callback");
    check.Expect(r.RankOf("com.divination1518.g.p#onDowngrade") == 1u,
                 "Fengshui: g.p#onDowngrade is not first");
  }
  try {
    const AppModel model = AppModel::Load(DataPath("models/vacuous.json"));
    LabeledCrash training;
    training.crash_log = ReadLog("vacuous");
    training.report = ParseAndSplit(training.crash_log, FrameworkMatcher::Default());
    training.category = Category::kB;
    training.true_location = "com.example.clock.ClockActivity#onResume";
    training.api_h =
        ApiRef{"android.content.Context", "registerReceiver", std::nullopt, ApiKind::kCallIn};
    const LocalizationResult r =
        LocateCategoryB(training.report, model, std::vector<LabeledCrash>{training});
    check.Expect(r.ranked.empty(), "vacuous: rank is not empty");
  } catch (const Error& e) {
    check.Expect(false, std::string("vacuous: raised ") + e.what());
  }
}

std::size_t RankIndex(const LocalizationResult& r, SubCategory sub) {
  for (std::size_t i = 0; i < r.ranked.size(); ++i) {
    if (std::get<SubCategory>(r.ranked[i].location) == sub) return i;
  }
  return r.ranked.size();
}

void CategoryCAveraging(Checker& check) {
  std::mt19937 rng(7);
  const Seq alphabet = {"A.f", "B.g", "C.h", "D.i"};
  auto random_seq = [&] {
    Seq s(1 + rng() % 5);
    for (auto& t : s) t = alphabet[rng() % alphabet.size()];
    return s;
  };
  auto random_pool = [&] {
    std::vector<LabeledCrash> pool;
    const std::size_t n = 1 + rng() % 12;
    for (std::size_t i = 0; i < n; ++i) {
      pool.push_back(CrashC(random_seq(), kAllSubCategories[rng() % kSubCategoryCount]));
    }
    return pool;
  };

  for (int trial = 0; trial < 100; ++trial) {
    const std::vector<LabeledCrash> pool = random_pool();
    const LabeledCrash query = CrashC(random_seq(), SubCategory::kManifest);
    std::vector<std::pair<int, double>> labeled;
    for (const LabeledCrash& c : pool) {
      labeled.emplace_back(static_cast<int>(*c.sub_category),
                           oracle::EditSimilarity(FrameSequence(query.report),
                                                  FrameSequence(c.report)));
    }
    const auto want = oracle::GroupAverageRank(labeled);
    const LocalizationResult got = LocateCategoryC(query.report, pool);
    bool same = got.ranked.size() == want.size();
    for (std::size_t i = 0; same && i < want.size(); ++i) {
      same = std::get<SubCategory>(got.ranked[i].location) ==
                 static_cast<SubCategory>(want[i].first) &&
             std::abs(got.ranked[i].score - want[i].second) <= 1e-12;
    }
    check.Expect(same, "group average differs in trial " + std::to_string(trial));
  }

  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<LabeledCrash> pool = random_pool();
    const Seq qs = random_seq();
    const LabeledCrash query = CrashC(qs, SubCategory::kManifest);
    const SubCategory target = kAllSubCategories[rng() % kSubCategoryCount];
    const std::size_t before = RankIndex(LocateCategoryC(query.report, pool), target);
    pool.push_back(CrashC(qs, target));  // similarity 1.0 to the query
    const std::size_t after = RankIndex(LocateCategoryC(query.report, pool), target);
    check.Expect(after <= before, "rank lowered in trial " + std::to_string(trial));
  }
}

void Metrics(Checker& check) {
  const std::vector<CaseRank> ranks = {1, 2, 4};
  check.Expect(std::abs(MeanReciprocalRank(ranks) - 0.5833333333333334) <= 1e-12,
               "MRR([1,2,4])");
  std::mt19937 rng(9);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<CaseRank> set(1 + rng() % 40);
    for (CaseRank& r : set) {
      if (rng() % 5 != 0) r = 1 + rng() % 20;
    }
    double prev = 0.0;
    for (std::size_t k = 1; k <= 25; ++k) {
      const double recall = RecallAtK(set, k);
      check.Expect(recall >= prev && recall <= 1.0, "recall not monotone");
      prev = recall;
    }
  }
  const std::vector<Fold> folds = KFoldSplit(500, 5, 42);
  check.Expect(folds.size() == 5, "fold count");
  std::set<std::size_t> covered;
  for (const Fold& f : folds) {
    check.Expect(f.test.size() == 100, "test slice size");
    for (std::size_t i : f.test) check.Expect(covered.insert(i).second, "overlapping test sets");
  }
  check.Expect(covered.size() == 500 && *covered.rbegin() == 499, "test sets do not cover");
}

int RunCli(const std::vector<std::string>& args, std::string& out) {
  std::ostringstream o, e;
  const int code = cli::Run(args, o, e);
  out = o.str();
  if (code != 0) out += e.str();
  return code;
}

void Reproducibility(Checker& check) {
  const std::string corpus = DataPath("corpus.jsonl").string();
  std::string first, second, perfect;
  check.Expect(RunCli({"evaluate", "--corpus", corpus, "--seed", "42"}, first) == 0,
               "evaluate failed: " + first);
  check.Expect(RunCli({"evaluate", "--corpus", corpus, "--seed", "42"}, second) == 0,
               "evaluate failed: " + second);
  check.Expect(!first.empty() && first == second, "reports differ between runs");
  check.Expect(RunCli({"evaluate", "--corpus", corpus, "--seed", "42",
                       "--perfect-categorization"},
                      perfect) == 0,
               "perfect evaluate failed: " + perfect);
  const auto doc = nlohmann::json::parse(perfect, nullptr, false);
  check.Expect(!doc.is_discarded() && doc["mrr"] == 1.0, "perfect-categorization MRR != 1.0");
  check.Expect(!doc.is_discarded() && doc["failures"].empty(), "evaluation reported failures");
}

void Bucketing(Checker& check) {
  const std::vector<LabeledCrash>& crashes = FixtureCorpus().crashes;
  std::vector<FrameSeq> keys;
  for (const LabeledCrash& c : crashes) keys.push_back(FrameSequence(c.report));
  const std::vector<Bucket> buckets = Bucketize(crashes);
  check.Expect(buckets.size() == oracle::DistinctSequences(keys),
               "bucket count " + std::to_string(buckets.size()) + " vs oracle " +
                   std::to_string(oracle::DistinctSequences(keys)));
  std::size_t members = 0;
  for (const Bucket& b : buckets) {
    for (std::size_t m : b.members) {
      check.Expect(keys[m] == b.key, "member key differs from bucket key");
      ++members;
    }
  }
  check.Expect(members == crashes.size(), "buckets do not partition the corpus");
}

struct Criterion {
  int id;
  const char* name;
  std::function<void(Checker&)> run;
  double time_limit_s;  // 0 for none
};

int Main() {
  const std::vector<Criterion> criteria = {
      {1, "parser round-trip on fixture logs", ParserRoundTrip, 1.0},
      {2, "edit similarity matches DP oracle exhaustively", EditSimilarityOracle, 30.0},
      {3, "naive Bayes matches posterior enumeration", NaiveBayesOracle, 0},
      {4, "chi-square tables, selection size, determinism", ChiSquare, 0},
      {5, "Category-A rank equals developer frames", CategoryAExactness, 0},
      {6, "Category-B fixtures (call-in, callback, vacuous)", AlgorithmOneFixtures, 0},
      {7, "Category-C group averaging and monotonicity", CategoryCAveraging, 0},
      {8, "MRR, Recall@k and k-fold split", Metrics, 0},
      {9, "evaluate is reproducible; perfect categorization MRR 1.0", Reproducibility, 0},
      {10, "bucketing matches hash-grouping oracle", Bucketing, 0},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    Checker check;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(check);
    } catch (const std::exception& e) {
      check.Expect(false, std::string("unexpected exception: ") + e.what());
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit_s > 0) {
      char budget[64];
      std::snprintf(budget, sizeof budget, "took %.3f s, limit %.0f s", seconds, c.time_limit_s);
      check.Expect(seconds < c.time_limit_s, budget);
    }
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.3f s", seconds);
    std::cout << (check.ok() ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.name
              << " (" << timing << ")\n";
    if (!check.ok()) {
      ++failed;
      for (const std::string& f : check.failures()) std::cout << "    " << f << "\n";
      if (check.failure_count() > check.failures().size()) {
        std::cout << "    ... " << check.failure_count() - check.failures().size()
                  << " more\n";
      }
    }
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " failed")
            << "\n";
  return failed == 0 ? 0 : 1;
}

}  // namespace
}  // namespace crashloc

int main() { return crashloc::Main(); }
