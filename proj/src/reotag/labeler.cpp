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

#include "reotag/labeler.hpp"

#include <map>
#include <thread>

#include "reotag/text.hpp"

namespace reotag {
namespace {

bool HasApostrophe(const std::string& s) {
  return s.find('\'') != std::string::npos ||
         s.find("\xE2\x80\x99") != std::string::npos;
}

StageDelta MakeDelta(std::string stage, const Corpus& before, const Corpus& after) {
  StageDelta d;
  d.stage = std::move(stage);
  d.before = before.Counts();
  d.after = after.Counts();
  d.changed = CountChangedLabels(before, after);
  return d;
}

}  // namespace

Label LabelToken(const Token& token, const LexiconSet& lexicons) {
  switch (token.kind) {
    case TokenKind::kNumber: return Label::kN;
    case TokenKind::kPunctuation: return Label::kS;
    case TokenKind::kWord: break;
  }
  const std::string& key = token.lower;
  if (lexicons.ambiguous().ContainsKey(key)) return Label::kA;
  if (lexicons.maori().ContainsKey(key) || HasMacron(key)) return Label::kM;
  if (lexicons.english().ContainsKey(key) || HasIllegalMaoriChars(key)) {
    return Label::kP;
  }
  if (!HasApostrophe(key) && !CheckOrthography(key).valid) return Label::kP;
  return Label::kU;
}

LabelledSentence LabelSentence(LabelledSentence sentence, const LexiconSet& lexicons) {
  for (Token& t : sentence.tokens) t.label = LabelToken(t, lexicons);
  return sentence;
}

Corpus LabelCorpus(Corpus corpus, const LexiconSet& lexicons, unsigned threads) {
  const Corpus before = corpus;
  auto& sentences = corpus.sentences;
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(sentences.size())));
  if (threads <= 1) {
    for (auto& s : sentences) s = LabelSentence(std::move(s), lexicons);
  } else {
    std::vector<std::jthread> workers;
    const std::size_t chunk = (sentences.size() + threads - 1) / threads;
    for (unsigned w = 0; w < threads; ++w) {
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(sentences.size(), begin + chunk);
      if (begin >= end) break;
      workers.emplace_back([&, begin, end] {
        for (std::size_t i = begin; i < end; ++i) {
          sentences[i] = LabelSentence(std::move(sentences[i]), lexicons);
        }
      });
    }
  }
  corpus.history.push_back(MakeDelta("label", before, corpus));
  return corpus;
}

Corpus ReassessUnclear(Corpus corpus, const LexiconSet& lexicons) {
  const Corpus before = corpus;
  for (auto& s : corpus.sentences) {
    for (Token& t : s.tokens) {
      if (t.label != Label::kU) continue;
      t.label = LabelToken(t, lexicons);
      if (t.label == Label::kU && lexicons.foreign().ContainsKey(t.lower)) {
        t.label = Label::kF;
      }
    }
  }
  corpus.history.push_back(MakeDelta("reassess", before, corpus));
  return corpus;
}

std::vector<LintFinding> LintLabels(const Corpus& corpus, const LexiconSet& lexicons) {
  std::map<std::string, std::string> found;
  for (const auto& s : corpus.sentences) {
    for (const Token& t : s.tokens) {
      if (t.label != Label::kM || lexicons.maori().ContainsKey(t.lower)) continue;
      if (HasApostrophe(t.lower)) continue;
      const OrthographyReport r = CheckOrthography(t.lower);
      if (r.valid) continue;
      std::string reason;
      if (!r.legal_chars) reason = "non-Māori letters";
      else if (!r.no_clusters) reason = "consonant cluster";
      else reason = "closed final syllable";
      found.emplace(t.lower, reason);
    }
  }
  std::vector<LintFinding> out;
  for (auto& [word, reason] : found) out.push_back({word, reason});
  return out;
}

}  // namespace reotag
