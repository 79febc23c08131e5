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
#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace {

namespace fs = std::filesystem;

const fs::path kFixtures = REOTAG_FIXTURE_DIR;
const std::string kCli = REOTAG_CLI_PATH;

struct Result {
  int exit = -1;
  std::string out;
  std::string err;
};

std::string Quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') out += "'\\''";
    else out += c;
  }
  return out + "'";
}

std::string Slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("reotag-cli-" + std::to_string(::getpid()) + "-" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  // Runs reo-tag with `args` (already shell-quoted) and an optional env prefix.
  Result Run(const std::string& args, const std::string& env = "env -u REOTAG_LEXICON_DIR") {
    const fs::path err = dir_ / "stderr.txt";
    const std::string cmd = env + " " + Quote(kCli) + " " + args + " 2>" + Quote(err.string());
    Result r;
    FILE* pipe = ::popen(cmd.c_str(), "r");
    if (pipe == nullptr) return r;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    const int status = ::pclose(pipe);
    r.exit = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.err = Slurp(err);
    return r;
  }

  std::string P(const fs::path& p) const { return Quote(p.string()); }
  std::string Lex() const { return "--lexicon-dir " + P(kFixtures / "lexicons"); }

  fs::path Resolved() {
    EXPECT_EQ(Run("ingest --in " + P(kFixtures / "raw") + " --out " + P(dir_ / "raw.tsv")).exit, 0);
    EXPECT_EQ(Run("label --in " + P(dir_ / "raw.tsv") + " " + Lex() + " --out " +
                  P(dir_ / "labelled.tsv")).exit, 0);
    EXPECT_EQ(Run("resolve --passes 2 --in " + P(dir_ / "labelled.tsv") + " --out " +
                  P(dir_ / "resolved.tsv")).exit, 0);
    return dir_ / "resolved.tsv";
  }

  fs::path dir_;
};

TEST_F(CliTest, UsageErrorsExitOne) {
  EXPECT_EQ(Run("").exit, 1);
  EXPECT_EQ(Run("frobnicate").exit, 1);
  EXPECT_EQ(Run("label --bogus").exit, 1);
  EXPECT_EQ(Run("resolve --passes 0").exit, 1);
  EXPECT_EQ(Run("resolve --passes 2 --fixpoint").exit, 1);
  EXPECT_EQ(Run("label --in x.tsv").exit, 1);  // no lexicon directory anywhere
  EXPECT_EQ(Run("analyze --report tea --in x.tsv").exit, 1);
  EXPECT_EQ(Run("--help").exit, 0);
}

TEST_F(CliTest, DataErrorsExitTwo) {
  const Result missing = Run("label --in /no/such.tsv " + Lex());
  EXPECT_EQ(missing.exit, 2);
  EXPECT_NE(missing.err.find("/no/such.tsv"), std::string::npos) << missing.err;

  std::ofstream(dir_ / "bad.tsv") << "# doc = d\n# date = 2010-01-01\n# seq = 1\nnot-a-token-row\n";
  const Result bad = Run("export --in " + P(dir_ / "bad.tsv"));
  EXPECT_EQ(bad.exit, 2);
  EXPECT_NE(bad.err.find("bad.tsv:"), std::string::npos) << bad.err;

  std::ofstream(dir_ / "store.jsonl") << "{broken\n";
  EXPECT_EQ(Run("apply --in " + P(Resolved()) + " --store " + P(dir_ / "store.jsonl")).exit, 2);
}

TEST_F(CliTest, LabelWritesCorpus) {
  Resolved();
  const std::string labelled = Slurp(dir_ / "labelled.tsv");
  EXPECT_NE(labelled.find("\tM"), std::string::npos);
  EXPECT_NE(labelled.find("\tP"), std::string::npos);
  // stdin in, stdout out
  const Result piped =
      Run(Lex() + " label < " + P(dir_ / "raw.tsv"), "env -u REOTAG_LEXICON_DIR");
  EXPECT_EQ(piped.exit, 0) << piped.err;
  EXPECT_EQ(piped.out, labelled);
}

TEST_F(CliTest, LexiconDirFromEnvironment) {
  Run("ingest --in " + P(kFixtures / "raw") + " --out " + P(dir_ / "raw.tsv"));
  const Result r = Run("label --in " + P(dir_ / "raw.tsv"),
                       "REOTAG_LEXICON_DIR=" + P(kFixtures / "lexicons"));
  EXPECT_EQ(r.exit, 0) << r.err;
  EXPECT_FALSE(r.out.empty());
}

TEST_F(CliTest, ResolvePrintsDeltas) {
  Run("ingest --in " + P(kFixtures / "raw") + " --out " + P(dir_ / "raw.tsv"));
  Run("label --in " + P(dir_ / "raw.tsv") + " " + Lex() + " --out " + P(dir_ / "l.tsv"));
  const Result r = Run("resolve --passes 2 --in " + P(dir_ / "l.tsv") + " --out " + P(dir_ / "r.tsv"));
  ASSERT_EQ(r.exit, 0);
  EXPECT_NE(r.err.find("index\tstage\tchanged"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("2\tresolve\t99\t"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("3\tresolve\t12\t"), std::string::npos) << r.err;
  const Result fix = Run("resolve --fixpoint --in " + P(dir_ / "l.tsv"));
  EXPECT_EQ(fix.exit, 0);
}

TEST_F(CliTest, ExportFinal) {
  const fs::path corpus = Resolved();
  const Result r = Run("export --final --in " + P(corpus));
  ASSERT_EQ(r.exit, 0) << r.err;
  std::istringstream lines(r.out);
  std::size_t tokens = 0;
  for (std::string line; std::getline(lines, line);) {
    if (line.empty() || line[0] == '#') continue;
    const char label = line.back();
    EXPECT_TRUE(label == 'M' || label == 'P' || label == 'S' || label == 'N') << line;
    ++tokens;
  }
  EXPECT_GT(tokens, 0u);
  const Result jsonl = Run("export --final --format jsonl --in " + P(corpus));
  ASSERT_EQ(jsonl.exit, 0);
  EXPECT_TRUE(nlohmann::json::accept(jsonl.out.substr(0, jsonl.out.find('\n'))));
}

TEST_F(CliTest, VersionListsChecksums) {
  const Result bare = Run("--version");
  EXPECT_EQ(bare.exit, 0);
  EXPECT_EQ(bare.out.rfind("reo-tag ", 0), 0u);
  const Result full = Run("--version " + Lex());
  EXPECT_EQ(full.exit, 0);
  EXPECT_NE(full.out.find("maori.txt\t"), std::string::npos) << full.out;
  EXPECT_NE(full.out.find("english.txt\t"), std::string::npos);
}

TEST_F(CliTest, TrigramsDecideApply) {
  const fs::path corpus = Resolved();
  const Result tasks = Run("trigrams --in " + P(corpus) + " -k 3 --format json");
  ASSERT_EQ(tasks.exit, 0) << tasks.err;
  const auto json = nlohmann::json::parse(tasks.out);
  ASSERT_EQ(json.size(), 3u);
  const std::string id = json[0]["task_id"];
  const int count = json[0]["count"];
  const fs::path store = dir_ / "store.jsonl";
  const Result d = Run("decide --in " + P(corpus) + " --store " + P(store) + " --task " + id +
                       " --assign 1=P --assign 2=P --assign 3=P --annotator cli");
  ASSERT_EQ(d.exit, 0) << d.err;
  EXPECT_EQ(nlohmann::json::parse(d.out)["seq"], 1);
  EXPECT_EQ(Run("decide --in " + P(corpus) + " --store " + P(store) +
                " --task tri-0000000000000000 --assign 1=P").exit, 2);
  EXPECT_EQ(Run("decide --in " + P(corpus) + " --store " + P(store) + " --task " + id +
                " --assign 1=A").exit, 1);
  const Result word = Run("decide --in " + P(corpus) + " --store " + P(store) + " --word orana");
  ASSERT_EQ(word.exit, 0) << word.err;
  const Result a = Run("apply --in " + P(corpus) + " --store " + P(store) + " --out " + P(dir_ / "applied.tsv"));
  ASSERT_EQ(a.exit, 0) << a.err;
  EXPECT_NE(a.err.find(" tokens relabelled"), std::string::npos);
  const std::string relabelled = a.err.substr(0, a.err.find(" tokens relabelled"));
  EXPECT_GE(std::stoi(relabelled.substr(relabelled.find_last_of(" \n") + 1)), 3 * count);
  const Result after = Run("trigrams --in " + P(corpus) + " --mode all --store " + P(store));
  EXPECT_NE(after.out.find(id), std::string::npos);
  EXPECT_NE(after.out.find("\tdone"), std::string::npos);
}

TEST_F(CliTest, AnalyzeReports) {
  const fs::path corpus = Resolved();
  for (const char* report : {"years", "freq", "ngrams", "lengths", "foreign", "stages", "lint"}) {
    const Result r = Run("analyze --report " + std::string(report) + " --in " + P(corpus) + " " + Lex());
    EXPECT_EQ(r.exit, 0) << report << ": " << r.err;
    EXPECT_FALSE(r.out.empty()) << report;
  }
  const Result stages = Run("analyze --report stages --in " + P(corpus));
  EXPECT_EQ(std::count(stages.out.begin(), stages.out.end(), '\n'), 4);
  EXPECT_EQ(Run("analyze --report ngrams -n 4 --in " + P(corpus)).exit, 1);
}

TEST_F(CliTest, RunMatchesGolden) {
  const Result r = Run("run " + P(kFixtures / "pipeline.ini") + " --out-dir " + P(dir_));
  ASSERT_EQ(r.exit, 0) << r.err;
  for (const char* name : {"corpus.tsv", "gold.tsv", "stages.tsv"}) {
    EXPECT_EQ(Slurp(dir_ / name), Slurp(kFixtures / "golden" / name)) << name;
  }
  EXPECT_EQ(Run("run " + P(dir_ / "missing.ini")).exit, 2);
}

}  // namespace
