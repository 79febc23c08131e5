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

#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <random>

#include "fixtures.hpp"
#include "reotag/error.hpp"
#include "reotag/resolver.hpp"

namespace reotag {
namespace {

using testing_support::LabelString;
using testing_support::SentenceOf;

std::string Pass(const std::string& labels, ResolveOptions opts = {},
                 ScanOrder order = ScanOrder::kLeftToRight) {
  return LabelString(ResolvePass(SentenceOf(labels), opts, order));
}

Corpus CorpusOf(const std::vector<std::string>& rows) {
  Corpus c;
  for (std::size_t i = 0; i < rows.size(); ++i) c.sentences.push_back(SentenceOf(rows[i], i));
  return c;
}

TEST(ResolvePass, Interior) {
  EXPECT_EQ(Pass("MAM"), "MMM");
  EXPECT_EQ(Pass("PAP"), "PPP");
  EXPECT_EQ(Pass("PAM"), "PAM");
  EXPECT_EQ(Pass("MAU"), "MAU");
}

TEST(ResolvePass, SentenceInitial) {
  EXPECT_EQ(Pass("APP"), "PPP");
  EXPECT_EQ(Pass("APPM"), "PPPM");
  EXPECT_EQ(Pass("AMM"), "MMM");
  EXPECT_EQ(Pass("AMP"), "AMP");
  EXPECT_EQ(Pass("AM"), "AM");
}

TEST(ResolvePass, SentenceFinal) {
  EXPECT_EQ(Pass("PPA"), "PPP");
  EXPECT_EQ(Pass("MPA"), "MPA");
  ResolveOptions literal;
  literal.final_rule = false;
  EXPECT_EQ(Pass("PPA", literal), "PPA");
  EXPECT_EQ(Pass("MAM", literal), "MMM");
}

TEST(ResolvePass, SymbolsAndNumbersAreTransparent) {
  EXPECT_EQ(Pass("MSAM"), "MSMM");
  EXPECT_EQ(Pass("ASNPP"), "PSNPP");
  ResolveOptions blocking;
  blocking.transparency = false;
  EXPECT_EQ(Pass("MSAM", blocking), "MSAM");
  EXPECT_EQ(Pass("MAM", blocking), "MMM");
}

TEST(ResolvePass, SnapshotSemantics) {
  // Neither A has two resolved neighbours at the start of the pass.
  EXPECT_EQ(Pass("MAAM"), "MAAM");
  EXPECT_EQ(Pass("PAPA"), "PPPA");
  EXPECT_EQ(Pass("PPPA"), "PPPP");
}

TEST(ResolvePass, UnclearAndForeignNeverChange) {
  EXPECT_EQ(Pass("MUM"), "MUM");
  EXPECT_EQ(Pass("PFP"), "PFP");
}

TEST(ResolveCorpus, TwoPassesAndHistory) {
  auto [c, delta] = ResolveCorpus(CorpusOf({"PAPA", "MAAM", "PPP"}), 2);
  EXPECT_EQ(LabelString(c.sentences[0]), "PPPP");
  EXPECT_EQ(LabelString(c.sentences[1]), "MAAM");
  EXPECT_EQ(delta.changed, 2u);
  ASSERT_EQ(c.history.size(), 2u);
  EXPECT_EQ(c.history[0].changed, 1u);
  EXPECT_EQ(c.history[1].changed, 1u);
  for (const auto& h : c.history) {
    EXPECT_EQ(h.stage, "resolve");
    EXPECT_TRUE(h.Conserved());
  }
}

TEST(ResolveCorpus, AllEnglishIsIdentity) {
  const Corpus in = CorpusOf({"PPP", "PSP"});
  auto [c, delta] = ResolveCorpus(in, 2);
  EXPECT_EQ(c.sentences, in.sentences);
  EXPECT_EQ(delta.changed, 0u);
  EXPECT_EQ(delta.before, delta.after);
}

TEST(ResolveCorpus, RejectsZeroPasses) {
  EXPECT_THROW(ResolveCorpus(CorpusOf({"MAM"}), 0), Error);
}

TEST(ResolveToFixpoint, StopsAfterQuietPass) {
  auto [c, deltas] = ResolveToFixpoint(CorpusOf({"MAM"}), 10);
  ASSERT_EQ(deltas.size(), 2u);
  EXPECT_EQ(deltas[0].changed, 1u);
  EXPECT_EQ(deltas[1].changed, 0u);
  auto [d, quiet] = ResolveToFixpoint(CorpusOf({"PPP"}), 10);
  EXPECT_EQ(quiet.size(), 1u);
  auto [e, capped] = ResolveToFixpoint(CorpusOf({"PAPAPAPA"}), 2);
  EXPECT_EQ(capped.size(), 2u);
}

std::string RandomLabels(std::mt19937& rng) {
  static const std::string weighted = "MMPPAAAAUFNS";
  std::string s;
  const int n = rng() % 14;
  for (int i = 0; i < n; ++i) s += weighted[rng() % weighted.size()];
  return s;
}

std::size_t CountOf(const std::string& s, char c) { return std::count(s.begin(), s.end(), c); }

TEST(ResolverProperties, RandomSentences) {
  std::mt19937 rng(8080);
  for (int iter = 0; iter < 1000; ++iter) {
    const std::string start = RandomLabels(rng);
    for (bool final_rule : {true, false}) {
      for (bool transparency : {true, false}) {
        ResolveOptions opts{final_rule, transparency};
        std::string cur = start;
        const std::size_t initial_a = CountOf(start, 'A');
        std::size_t passes = 0;
        while (true) {
          const std::string next = Pass(cur, opts);
          ++passes;
          ASSERT_EQ(Pass(cur, opts, ScanOrder::kRightToLeft), next) << cur;
          ASSERT_EQ(next.size(), cur.size());
          for (std::size_t k = 0; k < cur.size(); ++k) {
            if (cur[k] != next[k]) {
              ASSERT_EQ(cur[k], 'A') << cur << " -> " << next;
              ASSERT_TRUE(next[k] == 'M' || next[k] == 'P') << cur << " -> " << next;
            }
          }
          ASSERT_LE(CountOf(next, 'A'), CountOf(cur, 'A'));
          for (char keep : {'U', 'F', 'N', 'S'}) ASSERT_EQ(CountOf(next, keep), CountOf(cur, keep));
          if (next == cur) break;
          cur = next;
        }
        ASSERT_LE(passes, initial_a + 1) << start;
      }
    }
  }
}

TEST(ResolverProperties, FixpointBoundOnRandomCorpus) {
  std::mt19937 rng(77);
  std::vector<std::string> rows;
  std::size_t initial_a = 0;
  for (int i = 0; i < 1000; ++i) {
    rows.push_back(RandomLabels(rng));
    initial_a += CountOf(rows.back(), 'A');
  }
  auto [c, deltas] = ResolveToFixpoint(CorpusOf(rows), 1000);
  EXPECT_LE(deltas.size(), initial_a + 1);
  EXPECT_EQ(deltas.back().changed, 0u);
  for (const auto& d : deltas) {
    EXPECT_TRUE(d.Conserved());
    EXPECT_LE(d.after[Label::kA], d.before[Label::kA]);
    EXPECT_GE(d.changed, static_cast<std::size_t>(std::llabs(d.Net(Label::kM))));
  }
}

}  // namespace
}  // namespace reotag
