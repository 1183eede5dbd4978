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

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "crashloc/app_model.h"
#include "crashloc/cli.h"
#include "crashloc/config.h"
#include "crashloc/corpus.h"
#include "crashloc/error.h"
#include "crashloc/evaluation.h"
#include "crashloc/features.h"
#include "crashloc/localizer.h"
#include "crashloc/naive_bayes.h"
#include "crashloc/trace_parser.h"
#include "json.hpp"

namespace crashloc::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

constexpr char kBundleFormat[] = "crashloc-model";
constexpr int kBundleVersion = 1;

// Flag values; a flag only overrides the config when given.
struct Flags {
  std::string corpus;
  std::string model;
  std::string app_model;
  std::string output_dir;
  std::string log;
  std::string inspect_path;
  double chi2_ratio = 0;
  double smoothing = 0;
  int links_depth = 0;
  int folds = 0;
  std::uint64_t seed = 0;
  int jobs = 0;
  bool pretty = false;
  bool perfect = false;
};

// Several subcommands share a flag; each registers its own option.
struct Overrides {
  std::vector<CLI::Option*> chi2_ratio;
  std::vector<CLI::Option*> smoothing;
  std::vector<CLI::Option*> links_depth;
  std::vector<CLI::Option*> folds;
  std::vector<CLI::Option*> seed;
  std::vector<CLI::Option*> jobs;
};

bool Given(const std::vector<CLI::Option*>& opts) {
  for (const CLI::Option* opt : opts) {
    if (opt->count() > 0) return true;
  }
  return false;
}

Config ResolveConfig(const Flags& flags, const Overrides& o) {
  Config config;
  if (const char* env = std::getenv("CRASHLOC_CONFIG"); env != nullptr && *env != '\0') {
    config = Config::Load(env);
  }
  if (Given(o.chi2_ratio)) config.chi2_ratio = flags.chi2_ratio;
  if (Given(o.smoothing)) config.nb_smoothing = flags.smoothing;
  if (Given(o.links_depth)) config.links_depth = flags.links_depth;
  if (Given(o.folds)) config.kfold_k = flags.folds;
  if (Given(o.seed)) config.seed = flags.seed;
  if (Given(o.jobs)) config.jobs = flags.jobs;
  config.Validate();
  return config;
}

void WriteFile(const fs::path& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorCode::kIoError, "cannot write " + path.string(), path.string());
  file << text;
  if (!file) throw Error(ErrorCode::kIoError, "failed writing " + path.string(), path.string());
}

ordered_json ParseJsonFile(const fs::path& path) {
  try {
    return ordered_json::parse(ReadFile(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kSchemaError, path.string() + ": " + e.what(), "");
  }
}

ordered_json PriorsJson(const NaiveBayesModel& nb) {
  ordered_json priors = ordered_json::object();
  for (Category c : kAllCategories) priors[std::string(CategoryName(c))] = nb.prior(c);
  return priors;
}

struct Bundle {
  std::vector<std::string> framework_prefixes;
  Categorizer categorizer;
};

ordered_json BundleToJson(const Config& config, const Categorizer& categorizer) {
  ordered_json doc = ordered_json::object();
  doc["format"] = kBundleFormat;
  doc["version"] = kBundleVersion;
  doc["framework_prefixes"] = config.framework_prefixes;
  doc["chi2_ratio"] = config.chi2_ratio;
  doc["nb_smoothing"] = config.nb_smoothing;
  doc["categorizer"] = categorizer.ToJson();
  return doc;
}

Bundle BundleFromJson(const ordered_json& doc) {
  if (!doc.is_object() || doc.value("format", "") != kBundleFormat) {
    throw Error(ErrorCode::kSchemaError, "not a crashloc model bundle", "/format");
  }
  if (!doc.contains("version") || doc["version"] != kBundleVersion) {
    throw Error(ErrorCode::kSchemaError, "unsupported bundle version", "/version");
  }
  Bundle bundle;
  try {
    bundle.framework_prefixes = doc.at("framework_prefixes").get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kSchemaError, std::string("framework_prefixes: ") + e.what(),
                "/framework_prefixes");
  }
  if (!doc.contains("categorizer")) {
    throw Error(ErrorCode::kSchemaError, "bundle has no categorizer", "/categorizer");
  }
  try {
    bundle.categorizer = Categorizer::FromJson(doc["categorizer"]);
  } catch (const Error& e) {
    throw Error(e.code(), e.what(), "/categorizer" + e.where());
  }
  return bundle;
}

std::size_t CountCategory(const Corpus& corpus, Category c) {
  std::size_t n = 0;
  for (const LabeledCrash& crash : corpus.crashes) n += crash.category == c ? 1 : 0;
  return n;
}

void Emit(std::ostream& out, const ordered_json& doc) { out << doc.dump(2) << "\n"; }

std::string FormatScore(double score) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", score);
  return buf;
}

void PrintRankTable(std::ostream& out, const LocalizationResult& result) {
  out << "Predicted category: " << CategoryName(result.predicted_category) << "\n";
  if (result.handled_api) {
    out << "Handled API: " << result.handled_api->api.ToString() << " ("
        << ApiKindName(result.handled_api->api.kind) << ", similarity "
        << FormatScore(result.handled_api->similarity) << ")\n";
  }
  out << "Rank  Score   Location\n";
  for (std::size_t i = 0; i < result.ranked.size(); ++i) {
    std::string rank = std::to_string(i + 1);
    rank.resize(6, ' ');
    out << rank << FormatScore(result.ranked[i].score) << "  "
        << LocationLabel(result.ranked[i].location) << "\n";
  }
  if (result.ranked.empty()) out << "(no candidate locations)\n";
  for (const std::string& w : result.warnings) out << "warning: " << w << "\n";
}

// --- subcommands ---

int CmdTrain(const Flags& flags, const Config& config, std::ostream& out) {
  const Corpus corpus = LoadCorpus(flags.corpus, config.Matcher());
  const Categorizer categorizer =
      Categorizer::Train(corpus.crashes, config.chi2_ratio, config.nb_smoothing);
  WriteFile(flags.model, BundleToJson(config, categorizer).dump() + "\n");

  ordered_json summary = ordered_json::object();
  summary["model"] = flags.model;
  summary["crashes"] = corpus.crashes.size();
  summary["vocabulary_size"] = categorizer.vocabulary().base.size();
  summary["features"] = categorizer.vocabulary().size();
  summary["priors"] = PriorsJson(categorizer.model());
  Emit(out, summary);
  return kExitOk;
}

int CmdLocate(const Flags& flags, const Config& config, std::ostream& out) {
  const Bundle bundle = BundleFromJson(ParseJsonFile(flags.model));
  const FrameworkMatcher matcher(bundle.framework_prefixes);
  const Corpus corpus = LoadCorpus(flags.corpus, matcher);

  CrashReport report;
  try {
    report = ParseAndSplit(ReadFile(flags.log), matcher);
  } catch (const Error& e) {
    throw e.WithPhase(Phase::kParse);
  }

  std::optional<AppModel> model;
  if (!flags.app_model.empty()) model = AppModel::Load(flags.app_model);

  const LocalizationResult result =
      Locate(report, model ? &*model : nullptr, corpus.crashes, bundle.categorizer,
             LocateOptions{config.links_depth});
  if (flags.pretty) {
    PrintRankTable(out, result);
  } else {
    Emit(out, result.ToJson());
  }
  return kExitOk;
}

int CmdEvaluate(const Flags& flags, const Config& config, std::ostream& out) {
  const Corpus corpus = LoadCorpus(flags.corpus, config.Matcher());
  const EvalReport report = Evaluate(corpus, config, flags.perfect);
  const std::string json = report.ToJson().dump(2) + "\n";
  const std::string text = report.ToText();
  if (!flags.output_dir.empty()) {
    const fs::path dir(flags.output_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error(ErrorCode::kIoError, "cannot create " + dir.string(), dir.string());
    WriteFile(dir / "report.json", json);
    WriteFile(dir / "tables.txt", text);
  }
  out << (flags.pretty ? text : json);
  return kExitOk;
}

int CmdInspect(const Flags& flags, const Config& config, std::ostream& out) {
  const fs::path path(flags.inspect_path);
  ordered_json summary = ordered_json::object();
  if (path.extension() == ".jsonl") {
    const Corpus corpus = LoadCorpus(path, config.Matcher());
    summary["kind"] = "corpus";
    summary["crashes"] = corpus.crashes.size();
    ordered_json per = ordered_json::object();
    for (Category c : kAllCategories) per[std::string(CategoryName(c))] = CountCategory(corpus, c);
    summary["categories"] = std::move(per);
    summary["vocabulary_size"] =
        corpus.crashes.empty() ? 0 : BuildVocabulary(corpus.crashes).size();
    summary["bucket_count"] = Bucketize(corpus.crashes).size();
    Emit(out, summary);
    return kExitOk;
  }

  const ordered_json doc = ParseJsonFile(path);
  if (doc.is_object() && doc.contains("format")) {
    const Bundle bundle = BundleFromJson(doc);
    summary["kind"] = "model";
    summary["framework_prefixes"] = bundle.framework_prefixes;
    summary["vocabulary_size"] = bundle.categorizer.vocabulary().base.size();
    summary["features"] = bundle.categorizer.vocabulary().size();
    summary["chi2_ratio"] = bundle.categorizer.vocabulary().ratio;
    summary["nb_smoothing"] = bundle.categorizer.model().smoothing();
    summary["priors"] = PriorsJson(bundle.categorizer.model());
  } else if (doc.is_object() && doc.contains("classes")) {
    const AppModel model = AppModel::FromJson(nlohmann::json::parse(doc.dump()));
    summary["kind"] = "app_model";
    summary["classes"] = model.classes().size();
    summary["methods"] = model.method_count();
    std::size_t ncs = 0;
    for (const ClassDef& cls : model.classes()) ncs += cls.non_overridden_callbacks.size();
    summary["non_overridden_callbacks"] = ncs;
    summary["invocations"] = model.invocations().size();
    summary["param_flows"] = model.param_flows().size();
    summary["apis"] = model.apis().size();
  } else {
    throw Error(ErrorCode::kSchemaError,
                "unrecognized file: expected a corpus (.jsonl), model bundle or app model", "");
  }
  Emit(out, summary);
  return kExitOk;
}

void ReportError(std::ostream& err, const Error& e) {
  ordered_json doc = ordered_json::object();
  doc["error"] = std::string(ErrorCodeName(e.code()));
  doc["message"] = e.what();
  if (!e.where().empty()) doc["where"] = e.where();
  if (e.phase() != Phase::kNone) doc["phase"] = std::string(PhaseName(e.phase()));
  err << doc.dump() << "\n";
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Localize Android crashes from their stack traces.", "crashloc"};
  app.require_subcommand(1);
  Flags flags;
  Overrides o;

  auto add_training_flags = [&](CLI::App* cmd) {
    o.chi2_ratio.push_back(cmd->add_option("--chi2-ratio", flags.chi2_ratio,
                                           "Fraction of vocabulary kept by chi-square selection"));
    o.smoothing.push_back(
        cmd->add_option("--smoothing", flags.smoothing, "Laplace smoothing constant"));
  };

  CLI::App* train = app.add_subcommand("train", "Train the crash categorizer");
  train->add_option("--corpus", flags.corpus, "Labeled corpus (JSON lines)")->required();
  train->add_option("--model", flags.model, "Output model bundle")->required();
  add_training_flags(train);

  CLI::App* locate = app.add_subcommand("locate", "Rank candidate fault locations for a crash");
  locate->add_option("log", flags.log, "Crash log file")->required();
  locate->add_option("--model", flags.model, "Model bundle from `train`")->required();
  locate->add_option("--corpus", flags.corpus, "Labeled corpus for similarity lookups")
      ->required();
  locate->add_option("--app-model", flags.app_model, "App model JSON (Category B)");
  o.links_depth.push_back(
      locate->add_option("--links-depth", flags.links_depth, "Call-graph search depth"));
  locate->add_flag("--pretty", flags.pretty, "Print a rank table instead of JSON");

  CLI::App* evaluate = app.add_subcommand("evaluate", "Cross-validate the pipeline");
  evaluate->add_option("--corpus", flags.corpus, "Labeled corpus (JSON lines)")->required();
  add_training_flags(evaluate);
  o.links_depth.push_back(
      evaluate->add_option("--links-depth", flags.links_depth, "Call-graph search depth"));
  o.folds.push_back(evaluate->add_option("--folds", flags.folds, "Number of folds"));
  o.seed.push_back(evaluate->add_option("--seed", flags.seed, "Shuffle seed"));
  o.jobs.push_back(evaluate->add_option("--jobs", flags.jobs, "Folds evaluated in parallel"));
  evaluate->add_flag("--perfect-categorization", flags.perfect,
                     "Report headline metrics with true categories");
  evaluate->add_option("--output-dir", flags.output_dir,
                       "Also write report.json and tables.txt here");
  evaluate->add_flag("--pretty", flags.pretty, "Print text tables instead of JSON");

  CLI::App* inspect = app.add_subcommand("inspect", "Summarize a corpus, model or app model");
  inspect->add_option("path", flags.inspect_path, "File to inspect")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    const Config config = ResolveConfig(flags, o);
    if (train->parsed()) return CmdTrain(flags, config, out);
    if (locate->parsed()) return CmdLocate(flags, config, out);
    if (evaluate->parsed()) return CmdEvaluate(flags, config, out);
    return CmdInspect(flags, config, out);
  } catch (const Error& e) {
    ReportError(err, e);
    return e.code() == ErrorCode::kLocateError ? kExitLocate : kExitInput;
  }
}

}  // namespace crashloc::cli
