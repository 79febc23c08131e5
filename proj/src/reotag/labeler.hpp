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

#ifndef REOTAG_LABELER_HPP_
#define REOTAG_LABELER_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "reotag/corpus.hpp"
#include "reotag/lexicon.hpp"

namespace reotag {

// Rule-based labelling, first match wins:
//   1. number                                         -> N
//   2. punctuation                                    -> S
//   3. in the ambiguous list                          -> A
//   4. in the Māori list, or contains a macron vowel  -> M
//   5. in the English list, contains one of
//      b c d f j l q s v x y z, or (no apostrophe and)
//      fails Māori orthography                        -> P
//   6. otherwise                                      -> U
// Never yields F.
Label LabelToken(const Token& token, const LexiconSet& lexicons);

LabelledSentence LabelSentence(LabelledSentence sentence, const LexiconSet& lexicons);

// Relabels every token and appends a "label" stage. `threads` > 1 fans the
// sentences out; output order and content do not depend on it.
Corpus LabelCorpus(Corpus corpus, const LexiconSet& lexicons, unsigned threads = 1);

// Re-runs the rules on U tokens with (updated) lexicons; words still unclear
// but listed as foreign become F. Appends a "reassess" stage.
Corpus ReassessUnclear(Corpus corpus, const LexiconSet& lexicons);

struct LintFinding {
  std::string word;
  std::string reason;
};

// M-labelled words whose spelling breaks Māori orthography (labelled M by
// rule 4 only because of a macron).
std::vector<LintFinding> LintLabels(const Corpus& corpus, const LexiconSet& lexicons);

}  // namespace reotag

#endif  // REOTAG_LABELER_HPP_
