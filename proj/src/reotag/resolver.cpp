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

#include "reotag/resolver.hpp"

#include <optional>

#include "reotag/error.hpp"

namespace reotag {
namespace {

struct Snapshot {
  std::vector<Label> labels;
  std::vector<bool> is_word;
};

// Labels of up to `count` neighbours of `i` walking in `step` direction.
std::vector<Label> Neighbours(const Snapshot& snap, std::size_t i, int step,
                              std::size_t count, bool transparency) {
  std::vector<Label> out;
  auto j = static_cast<std::ptrdiff_t>(i) + step;
  const auto n = static_cast<std::ptrdiff_t>(snap.labels.size());
  while (j >= 0 && j < n && out.size() < count) {
    const auto k = static_cast<std::size_t>(j);
    if (snap.is_word[k] || !transparency) out.push_back(snap.labels[k]);
    j += step;
  }
  return out;
}

bool AnyWord(const Snapshot& snap, std::size_t i, int step) {
  auto j = static_cast<std::ptrdiff_t>(i) + step;
  const auto n = static_cast<std::ptrdiff_t>(snap.labels.size());
  for (; j >= 0 && j < n; j += step) {
    if (snap.is_word[static_cast<std::size_t>(j)]) return true;
  }
  return false;
}

std::optional<Label> Agreed(const std::vector<Label>& a, const std::vector<Label>& b,
                            std::size_t need_a, std::size_t need_b) {
  if (a.size() != need_a || b.size() != need_b) return std::nullopt;
  std::vector<Label> all(a);
  all.insert(all.end(), b.begin(), b.end());
  const Label first = all.front();
  if (first != Label::kM && first != Label::kP) return std::nullopt;
  for (Label l : all) {
    if (l != first) return std::nullopt;
  }
  return first;
}

std::optional<Label> Decide(const Snapshot& snap, std::size_t i,
                            const ResolveOptions& options) {
  const bool left = AnyWord(snap, i, -1);
  const bool right = AnyWord(snap, i, +1);
  const bool t = options.transparency;
  if (left && right) {
    return Agreed(Neighbours(snap, i, -1, 1, t), Neighbours(snap, i, +1, 1, t), 1, 1);
  }
  if (right) return Agreed({}, Neighbours(snap, i, +1, 2, t), 0, 2);
  if (left && options.final_rule) {
    return Agreed(Neighbours(snap, i, -1, 2, t), {}, 2, 0);
  }
  return std::nullopt;
}

StageDelta Delta(std::string stage, const Corpus& before, const Corpus& after) {
  StageDelta d;
  d.stage = std::move(stage);
  d.before = before.Counts();
  d.after = after.Counts();
  d.changed = CountChangedLabels(before, after);
  return d;
}

Corpus OnePass(const Corpus& corpus, const ResolveOptions& options) {
  Corpus next = corpus;
  for (auto& s : next.sentences) s = ResolvePass(s, options);
  next.history.push_back(Delta("resolve", corpus, next));
  return next;
}

}  // namespace

LabelledSentence ResolvePass(const LabelledSentence& sentence,
                             const ResolveOptions& options, ScanOrder order) {
  Snapshot snap;
  snap.labels.reserve(sentence.tokens.size());
  for (const Token& t : sentence.tokens) {
    snap.labels.push_back(t.label);
    snap.is_word.push_back(t.is_word());
  }
  LabelledSentence out = sentence;
  const std::size_t n = sentence.tokens.size();
  for (std::size_t step = 0; step < n; ++step) {
    const std::size_t i = order == ScanOrder::kLeftToRight ? step : n - 1 - step;
    if (snap.labels[i] != Label::kA || !snap.is_word[i]) continue;
    if (const auto label = Decide(snap, i, options)) out.tokens[i].label = *label;
  }
  return out;
}

std::pair<Corpus, StageDelta> ResolveCorpus(Corpus corpus, int passes,
                                            const ResolveOptions& options) {
  if (passes < 1) Fail(ErrorCode::kInvalidArgument, "passes must be at least 1");
  const Corpus start = corpus;
  for (int p = 0; p < passes; ++p) corpus = OnePass(corpus, options);
  StageDelta total = Delta("resolve", start, corpus);
  return {std::move(corpus), std::move(total)};
}

std::pair<Corpus, std::vector<StageDelta>> ResolveToFixpoint(
    Corpus corpus, int max_passes, const ResolveOptions& options) {
  if (max_passes < 1) Fail(ErrorCode::kInvalidArgument, "max_passes must be at least 1");
  std::vector<StageDelta> deltas;
  for (int p = 0; p < max_passes; ++p) {
    corpus = OnePass(corpus, options);
    deltas.push_back(corpus.history.back());
    if (deltas.back().changed == 0) break;
  }
  return {std::move(corpus), std::move(deltas)};
}

}  // namespace reotag
