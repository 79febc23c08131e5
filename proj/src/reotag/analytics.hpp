// Copyright 2026 The reo-tag Authors
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

#ifndef REOTAG_ANALYTICS_HPP_
#define REOTAG_ANALYTICS_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "reotag/corpus.hpp"
#include "reotag/labeler.hpp"
#include "reotag/lexicon.hpp"

namespace reotag::analytics {

struct YearStats {
  int year = 0;
  std::size_t sentences = 0;
  std::size_t maori_only = 0;
  std::size_t english_only = 0;
  std::size_t bilingual = 0;
  std::size_t words = 0;  // word tokens of any label
  std::size_t maori_words = 0;
  std::size_t english_words = 0;
};

// One entry per calendar year present, ascending.
std::vector<YearStats> ComputeYearStats(const Corpus& corpus);

struct FrequencyFilter {
  enum class Labels { kAll, kMaori, kEnglish };
  Labels labels = Labels::kAll;
  bool content_only = false;  // drop stopwords

  // all | maori | english | content_only | maori_content | english_content
  static std::optional<FrequencyFilter> Parse(std::string_view name);
  std::string Name() const;
};

struct CountRow {
  std::vector<std::string> words;
  std::size_t count = 0;
};

// Counts of lowercased word tokens, count descending then word order.
std::vector<CountRow> WordFrequency(const Corpus& corpus, FrequencyFilter filter,
                                    const Lexicon* stopwords = nullptr);

struct NgramOptions {
  int n = 1;
  std::size_t top_k = 20;  // 0 keeps every row
  bool content_only = false;
  int max_n = 3;
};

// Windows of n consecutive word tokens within a sentence; stopwords are
// removed before windowing when content_only is set. Throws
// kInvalidArgument when n is outside 1..max_n.
std::vector<CountRow> NgramCounts(const Corpus& corpus, const NgramOptions& options,
                                  const Lexicon* stopwords = nullptr);

struct LengthSummary {
  SentenceClass sentence_class = SentenceClass::kIndeterminate;
  std::size_t count = 0;
  double min = 0, q1 = 0, median = 0, q3 = 0, max = 0;
  std::vector<double> outliers;
};

// Quartiles by the median-of-halves rule (the median itself is left out of
// both halves when the count is odd); outliers lie beyond 1.5 IQR.
LengthSummary Summarize(std::vector<double> values);

// Character lengths (code points of the sentence text) per class present.
std::vector<LengthSummary> SentenceLengthStats(const Corpus& corpus);

struct ForeignRow {
  std::string word;
  std::size_t count = 0;
  Label status = Label::kF;  // F, or U for triage candidates
};

std::vector<ForeignRow> ForeignReport(const Corpus& corpus);

enum class Format { kTsv, kJson };
std::optional<Format> ParseFormat(std::string_view name);

std::string RenderYears(const std::vector<YearStats>& rows, Format format);
std::string RenderCounts(const std::vector<CountRow>& rows, Format format);
std::string RenderLengths(const std::vector<LengthSummary>& rows, Format format);
std::string RenderForeign(const std::vector<ForeignRow>& rows, Format format);
std::string RenderStages(const std::vector<StageDelta>& history, Format format);
std::string RenderLint(const std::vector<LintFinding>& rows, Format format);

}  // namespace reotag::analytics

#endif  // REOTAG_ANALYTICS_HPP_
