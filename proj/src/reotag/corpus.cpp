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

#include "reotag/corpus.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>
#include <set>
#include <tuple>

#include "reotag/error.hpp"
#include "reotag/text.hpp"

namespace reotag {

char LabelChar(Label label) {
  switch (label) {
    case Label::kM: return 'M';
    case Label::kP: return 'P';
    case Label::kA: return 'A';
    case Label::kU: return 'U';
    case Label::kN: return 'N';
    case Label::kS: return 'S';
    case Label::kF: return 'F';
  }
  return '?';
}

std::optional<Label> ParseLabel(std::string_view s) {
  if (s.size() != 1) return std::nullopt;
  switch (s[0]) {
    case 'M': return Label::kM;
    case 'P': return Label::kP;
    case 'A': return Label::kA;
    case 'U': return Label::kU;
    case 'N': return Label::kN;
    case 'S': return Label::kS;
    case 'F': return Label::kF;
    default: return std::nullopt;
  }
}

TokenKind KindForLabel(Label label) {
  switch (label) {
    case Label::kN: return TokenKind::kNumber;
    case Label::kS: return TokenKind::kPunctuation;
    default: return TokenKind::kWord;
  }
}

Token MakeToken(std::string_view surface, TokenKind kind, bool space_after) {
  Token t;
  t.surface = text::Nfc(surface);
  t.lower = text::FoldCase(t.surface);
  t.kind = kind;
  switch (kind) {
    case TokenKind::kNumber: t.label = Label::kN; break;
    case TokenKind::kPunctuation: t.label = Label::kS; break;
    case TokenKind::kWord: t.label = Label::kU; break;
  }
  t.space_after = space_after;
  return t;
}

char SentenceClassCode(SentenceClass c) {
  switch (c) {
    case SentenceClass::kMaoriOnly: return 'M';
    case SentenceClass::kEnglishOnly: return 'P';
    case SentenceClass::kBilingual: return 'B';
    case SentenceClass::kIndeterminate: return 'I';
  }
  return '?';
}

std::optional<SentenceClass> ParseSentenceClass(std::string_view s) {
  if (s == "M") return SentenceClass::kMaoriOnly;
  if (s == "P") return SentenceClass::kEnglishOnly;
  if (s == "B") return SentenceClass::kBilingual;
  if (s == "I") return SentenceClass::kIndeterminate;
  return std::nullopt;
}

std::string_view SentenceClassName(SentenceClass c) {
  switch (c) {
    case SentenceClass::kMaoriOnly: return "maori_only";
    case SentenceClass::kEnglishOnly: return "english_only";
    case SentenceClass::kBilingual: return "bilingual";
    case SentenceClass::kIndeterminate: return "indeterminate";
  }
  return "unknown";
}

std::optional<Date> Date::FromParts(int year, unsigned month, unsigned day) {
  const std::chrono::year_month_day ymd{std::chrono::year{year},
                                        std::chrono::month{month},
                                        std::chrono::day{day}};
  if (!ymd.ok() || year < 1000 || year > 9999) return std::nullopt;
  return Date{year, month, day};
}

std::optional<Date> Date::Parse(std::string_view iso) {
  if (iso.size() != 10 || iso[4] != '-' || iso[7] != '-') return std::nullopt;
  int year = 0;
  unsigned month = 0, day = 0;
  auto parse = [](std::string_view part, auto& out) {
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), out);
    return ec == std::errc() && ptr == part.data() + part.size();
  };
  if (!parse(iso.substr(0, 4), year) || !parse(iso.substr(5, 2), month) ||
      !parse(iso.substr(8, 2), day)) {
    return std::nullopt;
  }
  return FromParts(year, month, day);
}

std::string Date::ToString() const {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", year, month, day);
  return buf;
}

SentenceClass ClassifySentence(std::span<const Token> tokens) {
  bool any_word = false, any_m = false, any_p = false;
  for (const Token& t : tokens) {
    if (!t.is_word()) continue;
    any_word = true;
    switch (t.label) {
      case Label::kM: any_m = true; break;
      case Label::kP: any_p = true; break;
      default: return SentenceClass::kIndeterminate;
    }
  }
  if (!any_word) return SentenceClass::kIndeterminate;
  if (any_m && any_p) return SentenceClass::kBilingual;
  return any_m ? SentenceClass::kMaoriOnly : SentenceClass::kEnglishOnly;
}

std::string LabelledSentence::Text() const {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    out += tokens[i].surface;
    if (tokens[i].space_after && i + 1 < tokens.size()) out += ' ';
  }
  return out;
}

std::size_t LabelledSentence::WordCount() const {
  std::size_t n = 0;
  for (const Token& t : tokens) n += t.is_word() ? 1 : 0;
  return n;
}

std::vector<std::size_t> CodeSwitchPoints(const LabelledSentence& sentence) {
  if (sentence.sentence_class() == SentenceClass::kIndeterminate) {
    Fail(ErrorCode::kState, "unresolved tokens");
  }
  std::vector<std::size_t> points;
  std::optional<std::size_t> previous;
  for (std::size_t i = 0; i < sentence.tokens.size(); ++i) {
    if (!sentence.tokens[i].is_word()) continue;
    if (previous && sentence.tokens[*previous].label != sentence.tokens[i].label) {
      points.push_back(*previous);
    }
    previous = i;
  }
  return points;
}

std::size_t LabelCounts::Total() const {
  std::size_t total = 0;
  for (std::size_t c : counts_) total += c;
  return total;
}

void LabelCounts::Add(const LabelledSentence& sentence) {
  for (const Token& t : sentence.tokens) ++(*this)[t.label];
}

LabelCounts Corpus::Counts() const {
  LabelCounts counts;
  for (const auto& s : sentences) counts.Add(s);
  return counts;
}

std::size_t Corpus::TokenCount() const {
  std::size_t n = 0;
  for (const auto& s : sentences) n += s.tokens.size();
  return n;
}

std::size_t Corpus::WordCount() const {
  std::size_t n = 0;
  for (const auto& s : sentences) n += s.WordCount();
  return n;
}

void ValidateCorpus(const Corpus& corpus) {
  std::set<std::tuple<Date, std::string, std::size_t>> keys;
  for (const auto& s : corpus.sentences) {
    const std::string where =
        s.date.ToString() + " doc=" + s.doc + " seq=" + std::to_string(s.seq);
    if (!keys.emplace(s.date, s.doc, s.seq).second) {
      Fail(ErrorCode::kParse, "duplicate sentence key " + where);
    }
    for (const Token& t : s.tokens) {
      if (t.surface.empty()) {
        Fail(ErrorCode::kParse, "empty token in " + where);
      }
      for (char32_t cp : text::Decode(t.surface)) {
        if (text::IsWhitespace(cp)) {
          Fail(ErrorCode::kParse, "whitespace inside token in " + where);
        }
      }
      if (KindForLabel(t.label) != t.kind) {
        Fail(ErrorCode::kParse, "token '" + t.surface + "' label " +
                                    LabelChar(t.label) +
                                    " does not match its kind in " + where);
      }
    }
  }
}

std::size_t CountChangedLabels(const Corpus& before, const Corpus& after) {
  std::size_t changed = 0;
  const std::size_t n = std::min(before.sentences.size(), after.sentences.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = before.sentences[i].tokens;
    const auto& b = after.sentences[i].tokens;
    const std::size_t m = std::min(a.size(), b.size());
    for (std::size_t j = 0; j < m; ++j) changed += a[j].label != b[j].label;
  }
  return changed;
}

}  // namespace reotag
