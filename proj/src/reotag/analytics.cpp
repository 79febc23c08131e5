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

#include "reotag/analytics.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>

#include "json.hpp"
#include "reotag/corpus_io.hpp"
#include "reotag/error.hpp"
#include "reotag/text.hpp"

namespace reotag::analytics {
namespace {

using nlohmann::ordered_json;

std::string Join(const std::vector<std::string>& words) {
  std::string out;
  for (const auto& w : words) {
    if (!out.empty()) out += ' ';
    out += w;
  }
  return out;
}

std::vector<CountRow> Rank(std::map<std::vector<std::string>, std::size_t> counts) {
  std::vector<CountRow> rows;
  rows.reserve(counts.size());
  for (auto& [words, count] : counts) rows.push_back({words, count});
  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    return a.count > b.count;
  });
  return rows;
}

bool PassesLabels(const Token& t, FrequencyFilter::Labels labels) {
  switch (labels) {
    case FrequencyFilter::Labels::kAll: return true;
    case FrequencyFilter::Labels::kMaori: return t.label == Label::kM;
    case FrequencyFilter::Labels::kEnglish: return t.label == Label::kP;
  }
  return false;
}

void RequireStopwords(bool content_only, const Lexicon* stopwords) {
  if (content_only && stopwords == nullptr) {
    Fail(ErrorCode::kInvalidArgument, "content-word filtering needs a stopword list");
  }
}

double MedianOf(const std::vector<double>& sorted, std::size_t begin, std::size_t end) {
  const std::size_t n = end - begin;
  const std::size_t mid = begin + n / 2;
  return n % 2 == 1 ? sorted[mid] : (sorted[mid - 1] + sorted[mid]) / 2.0;
}

std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string Lab(Label l) { return std::string(1, LabelChar(l)); }

}  // namespace

std::vector<YearStats> ComputeYearStats(const Corpus& corpus) {
  std::map<int, YearStats> years;
  for (const auto& s : corpus.sentences) {
    YearStats& y = years[s.date.year];
    y.year = s.date.year;
    ++y.sentences;
    switch (s.sentence_class()) {
      case SentenceClass::kMaoriOnly: ++y.maori_only; break;
      case SentenceClass::kEnglishOnly: ++y.english_only; break;
      case SentenceClass::kBilingual: ++y.bilingual; break;
      case SentenceClass::kIndeterminate: break;
    }
    for (const Token& t : s.tokens) {
      if (!t.is_word()) continue;
      ++y.words;
      y.maori_words += t.label == Label::kM;
      y.english_words += t.label == Label::kP;
    }
  }
  std::vector<YearStats> out;
  for (auto& [year, stats] : years) out.push_back(stats);
  return out;
}

std::optional<FrequencyFilter> FrequencyFilter::Parse(std::string_view name) {
  using L = FrequencyFilter::Labels;
  if (name == "all") return FrequencyFilter{L::kAll, false};
  if (name == "maori") return FrequencyFilter{L::kMaori, false};
  if (name == "english") return FrequencyFilter{L::kEnglish, false};
  if (name == "content_only") return FrequencyFilter{L::kAll, true};
  if (name == "maori_content") return FrequencyFilter{L::kMaori, true};
  if (name == "english_content") return FrequencyFilter{L::kEnglish, true};
  return std::nullopt;
}

std::string FrequencyFilter::Name() const {
  switch (labels) {
    case Labels::kAll: return content_only ? "content_only" : "all";
    case Labels::kMaori: return content_only ? "maori_content" : "maori";
    case Labels::kEnglish: return content_only ? "english_content" : "english";
  }
  return "all";
}

std::vector<CountRow> WordFrequency(const Corpus& corpus, FrequencyFilter filter,
                                    const Lexicon* stopwords) {
  RequireStopwords(filter.content_only, stopwords);
  std::map<std::vector<std::string>, std::size_t> counts;
  for (const auto& s : corpus.sentences) {
    for (const Token& t : s.tokens) {
      if (!t.is_word() || !PassesLabels(t, filter.labels)) continue;
      if (filter.content_only && stopwords->ContainsKey(t.lower)) continue;
      ++counts[{t.lower}];
    }
  }
  return Rank(std::move(counts));
}

std::vector<CountRow> NgramCounts(const Corpus& corpus, const NgramOptions& options,
                                  const Lexicon* stopwords) {
  if (options.n < 1 || options.n > options.max_n) {
    Fail(ErrorCode::kInvalidArgument,
         "n must be between 1 and " + std::to_string(options.max_n));
  }
  RequireStopwords(options.content_only, stopwords);
  const auto n = static_cast<std::size_t>(options.n);
  std::map<std::vector<std::string>, std::size_t> counts;
  std::vector<const std::string*> words;
  for (const auto& s : corpus.sentences) {
    words.clear();
    for (const Token& t : s.tokens) {
      if (!t.is_word()) continue;
      if (options.content_only && stopwords->ContainsKey(t.lower)) continue;
      words.push_back(&t.lower);
    }
    for (std::size_t i = 0; i + n <= words.size(); ++i) {
      std::vector<std::string> key;
      key.reserve(n);
      for (std::size_t k = 0; k < n; ++k) key.push_back(*words[i + k]);
      ++counts[std::move(key)];
    }
  }
  auto rows = Rank(std::move(counts));
  if (options.top_k > 0 && rows.size() > options.top_k) rows.resize(options.top_k);
  return rows;
}

LengthSummary Summarize(std::vector<double> values) {
  LengthSummary out;
  out.count = values.size();
  if (values.empty()) return out;
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  out.min = values.front();
  out.max = values.back();
  out.median = MedianOf(values, 0, n);
  if (n == 1) {
    out.q1 = out.q3 = out.median;
  } else {
    const std::size_t half = n / 2;
    out.q1 = MedianOf(values, 0, half);
    out.q3 = MedianOf(values, n - half, n);
  }
  const double iqr = out.q3 - out.q1;
  for (double v : values) {
    if (v < out.q1 - 1.5 * iqr || v > out.q3 + 1.5 * iqr) out.outliers.push_back(v);
  }
  return out;
}

std::vector<LengthSummary> SentenceLengthStats(const Corpus& corpus) {
  std::map<SentenceClass, std::vector<double>> by_class;
  for (const auto& s : corpus.sentences) {
    by_class[s.sentence_class()].push_back(
        static_cast<double>(text::CodePointCount(s.Text())));
  }
  std::vector<LengthSummary> out;
  for (auto& [cls, values] : by_class) {
    LengthSummary summary = Summarize(std::move(values));
    summary.sentence_class = cls;
    out.push_back(std::move(summary));
  }
  return out;
}

std::vector<ForeignRow> ForeignReport(const Corpus& corpus) {
  std::map<std::vector<std::string>, std::size_t> foreign, unclear;
  for (const auto& s : corpus.sentences) {
    for (const Token& t : s.tokens) {
      if (t.label == Label::kF) ++foreign[{t.lower}];
      if (t.label == Label::kU) ++unclear[{t.lower}];
    }
  }
  std::vector<ForeignRow> out;
  for (const auto& row : Rank(std::move(foreign))) out.push_back({row.words[0], row.count, Label::kF});
  for (const auto& row : Rank(std::move(unclear))) out.push_back({row.words[0], row.count, Label::kU});
  return out;
}

std::optional<Format> ParseFormat(std::string_view name) {
  if (name == "tsv") return Format::kTsv;
  if (name == "json") return Format::kJson;
  return std::nullopt;
}

std::string RenderYears(const std::vector<YearStats>& rows, Format format) {
  if (format == Format::kJson) {
    auto j = ordered_json::array();
    for (const auto& y : rows) {
      j.push_back({{"year", y.year},
                   {"sentences", {{"total", y.sentences}, {"maori_only", y.maori_only},
                                  {"english_only", y.english_only}, {"bilingual", y.bilingual}}},
                   {"words", {{"total", y.words}, {"M", y.maori_words}, {"P", y.english_words}}}});
    }
    return j.dump(2) + "\n";
  }
  std::ostringstream out;
  out << "year\tsentences\tmaori_only\tenglish_only\tbilingual\twords\tM\tP\n";
  for (const auto& y : rows) {
    out << y.year << '\t' << y.sentences << '\t' << y.maori_only << '\t' << y.english_only
        << '\t' << y.bilingual << '\t' << y.words << '\t' << y.maori_words << '\t'
        << y.english_words << '\n';
  }
  return out.str();
}

std::string RenderCounts(const std::vector<CountRow>& rows, Format format) {
  if (format == Format::kJson) {
    auto j = ordered_json::array();
    for (const auto& r : rows) j.push_back({{"ngram", Join(r.words)}, {"count", r.count}});
    return j.dump(2) + "\n";
  }
  std::ostringstream out;
  out << "ngram\tcount\n";
  for (const auto& r : rows) out << Join(r.words) << '\t' << r.count << '\n';
  return out.str();
}

std::string RenderLengths(const std::vector<LengthSummary>& rows, Format format) {
  if (format == Format::kJson) {
    auto j = ordered_json::array();
    for (const auto& r : rows) {
      j.push_back({{"class", SentenceClassName(r.sentence_class)}, {"count", r.count},
                   {"min", r.min}, {"q1", r.q1}, {"median", r.median}, {"q3", r.q3},
                   {"max", r.max}, {"outliers", r.outliers}});
    }
    return j.dump(2) + "\n";
  }
  std::ostringstream out;
  out << "class\tcount\tmin\tq1\tmedian\tq3\tmax\toutliers\n";
  for (const auto& r : rows) {
    std::string outliers;
    for (double v : r.outliers) {
      if (!outliers.empty()) outliers += ',';
      outliers += Num(v);
    }
    out << SentenceClassName(r.sentence_class) << '\t' << r.count << '\t' << Num(r.min)
        << '\t' << Num(r.q1) << '\t' << Num(r.median) << '\t' << Num(r.q3) << '\t'
        << Num(r.max) << '\t' << outliers << '\n';
  }
  return out.str();
}

std::string RenderForeign(const std::vector<ForeignRow>& rows, Format format) {
  if (format == Format::kJson) {
    auto j = ordered_json::array();
    for (const auto& r : rows) {
      j.push_back({{"word", r.word}, {"count", r.count}, {"status", Lab(r.status)}});
    }
    return j.dump(2) + "\n";
  }
  std::ostringstream out;
  out << "word\tcount\tstatus\n";
  for (const auto& r : rows) out << r.word << '\t' << r.count << '\t' << Lab(r.status) << '\n';
  return out.str();
}

std::string RenderStages(const std::vector<StageDelta>& history, Format format) {
  if (format == Format::kJson) {
    auto j = ordered_json::array();
    for (std::size_t i = 0; i < history.size(); ++i) {
      const auto& d = history[i];
      j.push_back({{"index", i + 1}, {"stage", d.stage}, {"changed", d.changed},
                   {"before", CountsToJson(d.before)}, {"after", CountsToJson(d.after)},
                   {"net_total", static_cast<long long>(d.after.Total()) -
                                     static_cast<long long>(d.before.Total())}});
    }
    return j.dump(2) + "\n";
  }
  std::ostringstream out;
  out << "index\tstage\tchanged";
  for (Label l : kAllLabels) out << '\t' << LabelChar(l) << "_before\t" << LabelChar(l) << "_after";
  out << "\ttotal_before\ttotal_after\tnet_total\n";
  for (std::size_t i = 0; i < history.size(); ++i) {
    const auto& d = history[i];
    out << i + 1 << '\t' << d.stage << '\t' << d.changed;
    for (Label l : kAllLabels) out << '\t' << d.before[l] << '\t' << d.after[l];
    out << '\t' << d.before.Total() << '\t' << d.after.Total() << '\t'
        << static_cast<long long>(d.after.Total()) - static_cast<long long>(d.before.Total())
        << '\n';
  }
  return out.str();
}

std::string RenderLint(const std::vector<LintFinding>& rows, Format format) {
  if (format == Format::kJson) {
    auto j = ordered_json::array();
    for (const auto& r : rows) j.push_back({{"word", r.word}, {"reason", r.reason}});
    return j.dump(2) + "\n";
  }
  std::ostringstream out;
  out << "word\treason\n";
  for (const auto& r : rows) out << r.word << '\t' << r.reason << '\n';
  return out.str();
}

}  // namespace reotag::analytics
