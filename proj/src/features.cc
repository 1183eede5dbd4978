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

#include "crashloc/features.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "crashloc/error.h"

namespace crashloc {
namespace {

bool IsWhitespace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

template <typename Pred>
void SplitInto(std::string_view text, Pred is_separator, std::vector<std::string>& out,
               std::unordered_set<std::string>& seen) {
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || is_separator(text[i])) {
      if (i > start) {
        std::string token(text.substr(start, i - start));
        if (seen.insert(token).second) out.push_back(std::move(token));
      }
      start = i + 1;
    }
  }
}

}  // namespace

std::vector<std::string> Tokenize(const CrashReport& report) {
  std::vector<std::string> tokens;
  std::unordered_set<std::string> seen;
  auto dot = [](char c) { return c == '.'; };
  SplitInto(report.exception_type, dot, tokens, seen);
  SplitInto(report.message, IsWhitespace, tokens, seen);
  for (const StackFrame& frame : report.framework_subtrace) {
    SplitInto(frame.QualifiedName(), dot, tokens, seen);
  }
  return tokens;
}

Vocabulary::Vocabulary(std::vector<std::string> words) {
  for (const std::string& w : words) Add(w);
}

std::size_t Vocabulary::Add(const std::string& word) {
  auto [it, inserted] = index_.emplace(word, words_.size());
  if (inserted) words_.push_back(word);
  return it->second;
}

std::ptrdiff_t Vocabulary::IndexOf(const std::string& word) const {
  auto it = index_.find(word);
  return it == index_.end() ? -1 : static_cast<std::ptrdiff_t>(it->second);
}

std::vector<Document> MakeDocuments(std::span<const LabeledCrash> corpus) {
  std::vector<Document> docs;
  docs.reserve(corpus.size());
  for (const LabeledCrash& crash : corpus) {
    docs.push_back({Tokenize(crash.report), crash.category});
  }
  return docs;
}

Vocabulary BuildVocabulary(std::span<const Document> docs) {
  if (docs.empty()) throw Error(ErrorCode::kEmptyCorpus, "cannot build a vocabulary from nothing");
  Vocabulary vocab;
  for (const Document& doc : docs) {
    for (const std::string& token : doc.tokens) vocab.Add(token);
  }
  return vocab;
}

Vocabulary BuildVocabulary(std::span<const LabeledCrash> corpus) {
  return BuildVocabulary(MakeDocuments(corpus));
}

double ChiSquare2x2(double o11, double o12, double o21, double o22) {
  const double row1 = o11 + o12;
  const double row2 = o21 + o22;
  const double col1 = o11 + o21;
  const double col2 = o12 + o22;
  if (row1 == 0 || row2 == 0 || col1 == 0 || col2 == 0) return 0.0;
  const double n = row1 + row2;
  const double diff = o11 * o22 - o12 * o21;
  return n * diff * diff / (row1 * row2 * col1 * col2);
}

std::vector<double> ChiSquareScores(const Vocabulary& vocab, std::span<const Document> docs) {
  const std::size_t v = vocab.size();
  // present[w][c]: documents of category c containing w.
  std::vector<std::array<double, kCategoryCount>> present(v, {0, 0, 0});
  std::array<double, kCategoryCount> per_category = {0, 0, 0};
  for (const Document& doc : docs) {
    const std::size_t c = CategoryIndex(doc.category);
    per_category[c] += 1;
    for (const std::string& token : doc.tokens) {
      std::ptrdiff_t idx = vocab.IndexOf(token);
      if (idx >= 0) present[idx][c] += 1;
    }
  }
  const double total = static_cast<double>(docs.size());

  std::vector<double> scores(v, 0.0);
  for (std::size_t w = 0; w < v; ++w) {
    const double with_word = present[w][0] + present[w][1] + present[w][2];
    for (std::size_t c = 0; c < kCategoryCount; ++c) {
      const double o11 = present[w][c];
      const double o12 = with_word - o11;
      const double o21 = per_category[c] - o11;
      const double o22 = (total - with_word) - o21;
      scores[w] = std::max(scores[w], ChiSquare2x2(o11, o12, o21, o22));
    }
  }
  return scores;
}

std::size_t SelectionSize(double ratio, std::size_t n) {
  if (!(ratio > 0.0 && ratio <= 1.0)) {
    throw Error(ErrorCode::kInvalidConfig, "chi2 ratio must lie in (0, 1]");
  }
  const double exact = ratio * static_cast<double>(n);
  auto k = static_cast<std::size_t>(std::ceil(exact - 1e-9));
  return std::min(k, n);
}

SelectedVocabulary ChiSquareSelect(const Vocabulary& vocab, std::span<const Document> docs,
                                   double ratio) {
  const std::size_t keep = SelectionSize(ratio, vocab.size());
  std::vector<double> scores = ChiSquareScores(vocab, docs);

  std::vector<std::size_t> order(vocab.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&scores](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

  SelectedVocabulary out;
  out.base = vocab;
  out.ratio = ratio;
  for (std::size_t i = 0; i < keep; ++i) {
    out.selected.push_back(vocab.words()[order[i]]);
    out.chi2.push_back(scores[order[i]]);
  }
  return out;
}

SelectedVocabulary ChiSquareSelect(const Vocabulary& vocab, std::span<const LabeledCrash> corpus,
                                   double ratio) {
  const std::vector<Document> docs = MakeDocuments(corpus);
  return ChiSquareSelect(vocab, docs, ratio);
}

nlohmann::ordered_json SelectedVocabulary::ToJson() const {
  nlohmann::ordered_json doc = nlohmann::ordered_json::object();
  doc["ratio"] = ratio;
  doc["words"] = selected;
  doc["chi2"] = chi2;
  return doc;
}

SelectedVocabulary SelectedVocabulary::FromJson(const nlohmann::ordered_json& doc) {
  SelectedVocabulary out;
  try {
    out.ratio = doc.at("ratio").get<double>();
    out.selected = doc.at("words").get<std::vector<std::string>>();
    out.chi2 = doc.at("chi2").get<std::vector<double>>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kSchemaError, std::string("selected vocabulary: ") + e.what(),
                "/selected");
  }
  if (out.selected.size() != out.chi2.size()) {
    throw Error(ErrorCode::kSchemaError, "selected vocabulary: words and chi2 differ in length",
                "/selected/chi2");
  }
  return out;
}

FeatureVector Vectorize(std::span<const std::string> tokens, const SelectedVocabulary& sel) {
  std::unordered_set<std::string_view> present(tokens.begin(), tokens.end());
  FeatureVector v;
  v.bits.resize(sel.selected.size(), 0);
  for (std::size_t i = 0; i < sel.selected.size(); ++i) {
    v.bits[i] = present.count(sel.selected[i]) ? 1 : 0;
  }
  return v;
}

FeatureVector Vectorize(const CrashReport& report, const SelectedVocabulary& sel) {
  const std::vector<std::string> tokens = Tokenize(report);
  return Vectorize(tokens, sel);
}

}  // namespace crashloc
