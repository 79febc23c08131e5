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

#ifndef REOTAG_RESOLVER_HPP_
#define REOTAG_RESOLVER_HPP_

#include <utility>
#include <vector>

#include "reotag/corpus.hpp"

namespace reotag {

struct ResolveOptions {
  // Sentence-final A words take the shared label of the two words before.
  bool final_rule = true;
  // S and N tokens are skipped when looking for neighbouring words.
  bool transparency = true;
};

enum class ScanOrder { kLeftToRight, kRightToLeft };

// One conditional-marking pass over an A-labelled word's context:
//   interior:  both nearest word neighbours M (or both P) -> M (P)
//   initial:   the next two words both M (or both P)      -> M (P)
//   final:     the previous two words both M (or both P)  -> M (P)
// Labels are read from a snapshot taken at the start of the pass, so the
// scan order never affects the result. Only A tokens change.
LabelledSentence ResolvePass(const LabelledSentence& sentence,
                             const ResolveOptions& options = {},
                             ScanOrder order = ScanOrder::kLeftToRight);

// Applies `passes` passes, appending one "resolve" stage per pass. The
// returned delta spans all passes. Throws kInvalidArgument if passes < 1.
std::pair<Corpus, StageDelta> ResolveCorpus(Corpus corpus, int passes,
                                            const ResolveOptions& options = {});

// Repeats passes until one changes nothing or max_passes is reached.
std::pair<Corpus, std::vector<StageDelta>> ResolveToFixpoint(
    Corpus corpus, int max_passes, const ResolveOptions& options = {});

}  // namespace reotag

#endif  // REOTAG_RESOLVER_HPP_
