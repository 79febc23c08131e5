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

#ifndef REOTAG_CORPUS_HPP_
#define REOTAG_CORPUS_HPP_

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace reotag {

// Word-level language label. M = Māori, P = Pākehā (English), A = ambiguous,
// U = unclear, N = number, S = symbol, F = foreign.
enum class Label : std::uint8_t { kM, kP, kA, kU, kN, kS, kF };

inline constexpr std::size_t kLabelCount = 7;
inline constexpr std::array<Label, kLabelCount> kAllLabels = {
    Label::kM, Label::kP, Label::kA, Label::kU,
    Label::kN, Label::kS, Label::kF};

char LabelChar(Label label);
std::optional<Label> ParseLabel(std::string_view s);

enum class TokenKind : std::uint8_t { kWord, kNumber, kPunctuation };

struct Token {
  std::string surface;  // NFC, non-empty, no whitespace
  std::string lower;    // case-folded lookup key
  TokenKind kind = TokenKind::kWord;
  Label label = Label::kU;
  // Whether whitespace separated this token from the next in the source.
  bool space_after = false;

  bool is_word() const { return kind == TokenKind::kWord; }

  friend bool operator==(const Token&, const Token&) = default;
};

// Builds a token with the initial label implied by its kind: N for numbers,
// S for punctuation, and the U sentinel for words awaiting the rule pass.
Token MakeToken(std::string_view surface, TokenKind kind,
                bool space_after = false);

// The kind a token must have to carry `label`.
TokenKind KindForLabel(Label label);

enum class SentenceClass : std::uint8_t {
  kMaoriOnly,
  kEnglishOnly,
  kBilingual,
  kIndeterminate,
};

char SentenceClassCode(SentenceClass c);
std::optional<SentenceClass> ParseSentenceClass(std::string_view s);
std::string_view SentenceClassName(SentenceClass c);

struct Date {
  int year = 1970;
  unsigned month = 1;
  unsigned day = 1;

  static std::optional<Date> Parse(std::string_view iso);
  static std::optional<Date> FromParts(int year, unsigned month, unsigned day);
  std::string ToString() const;

  friend auto operator<=>(const Date&, const Date&) = default;
};

// Only word tokens count. All M: MaoriOnly; all P: EnglishOnly; both M and
// P and nothing else: Bilingual; any A/U/F, or no words: Indeterminate.
SentenceClass ClassifySentence(std::span<const Token> tokens);

struct LabelledSentence {
  Date date;
  std::string doc;
  std::size_t seq = 0;
  std::vector<Token> tokens;

  SentenceClass sentence_class() const { return ClassifySentence(tokens); }
  // Token surfaces joined with a single space wherever the source had
  // whitespace.
  std::string Text() const;
  std::size_t WordCount() const;

  friend bool operator==(const LabelledSentence&,
                         const LabelledSentence&) = default;
};

// Token indices i where word i and the next word token carry different
// labels from {M,P}. Throws kState on an Indeterminate sentence.
std::vector<std::size_t> CodeSwitchPoints(const LabelledSentence& sentence);

class LabelCounts {
 public:
  std::size_t& operator[](Label l) { return counts_[Index(l)]; }
  std::size_t operator[](Label l) const { return counts_[Index(l)]; }
  std::size_t Total() const;
  void Add(const LabelledSentence& sentence);

  friend bool operator==(const LabelCounts&, const LabelCounts&) = default;

 private:
  static std::size_t Index(Label l) { return static_cast<std::size_t>(l); }
  std::array<std::size_t, kLabelCount> counts_{};
};

// Label totals before and after one processing stage.
struct StageDelta {
  std::string stage;
  LabelCounts before;
  LabelCounts after;
  std::size_t changed = 0;

  std::int64_t Net(Label l) const {
    return static_cast<std::int64_t>(after[l]) -
           static_cast<std::int64_t>(before[l]);
  }
  bool Conserved() const { return before.Total() == after.Total(); }

  friend bool operator==(const StageDelta&, const StageDelta&) = default;
};

struct Corpus {
  std::vector<LabelledSentence> sentences;
  std::vector<std::string> sources;
  std::vector<StageDelta> history;

  LabelCounts Counts() const;
  std::size_t TokenCount() const;
  std::size_t WordCount() const;

  friend bool operator==(const Corpus&, const Corpus&) = default;
};

// Checks token kind/label agreement, surface shape and (date, doc, seq)
// uniqueness. Throws kParse naming the first offending sentence.
void ValidateCorpus(const Corpus& corpus);

// Number of tokens whose label differs between two corpora with the same
// shape.
std::size_t CountChangedLabels(const Corpus& before, const Corpus& after);

}  // namespace reotag

#endif  // REOTAG_CORPUS_HPP_
