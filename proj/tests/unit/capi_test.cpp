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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "reotag/reotag.h"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

const fs::path kFixtures = REOTAG_FIXTURE_DIR;

std::string Take(char* s) {
  std::string out = s == nullptr ? "" : s;
  reotag_string_free(s);
  return out;
}

std::string Slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

class CApiTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("reotag-capi-" + std::to_string(::getpid()) + "-" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
    ASSERT_EQ(reotag_lexicons_load((kFixtures / "lexicons").c_str(), &lex_), REOTAG_OK);
  }
  void TearDown() override {
    reotag_lexicons_free(lex_);
    fs::remove_all(dir_);
  }

  reotag_corpus* Resolved() {
    reotag_corpus* corpus = nullptr;
    EXPECT_EQ(reotag_corpus_ingest((kFixtures / "raw").c_str(), nullptr, 0, &corpus), REOTAG_OK);
    EXPECT_EQ(reotag_label(corpus, lex_, 2), REOTAG_OK);
    EXPECT_EQ(reotag_resolve(corpus, 2, nullptr), REOTAG_OK);
    return corpus;
  }

  fs::path dir_;
  reotag_lexicons* lex_ = nullptr;
};

TEST(CApi, StatusNamesAndVersion) {
  EXPECT_STREQ(reotag_status_name(REOTAG_OK), "ok");
  EXPECT_STREQ(reotag_status_name(REOTAG_NOT_FOUND), "not_found");
  EXPECT_STRNE(reotag_version(), "");
  reotag_string_free(nullptr);
}

TEST(CApi, NullArgumentsAreRejected) {
  reotag_corpus* corpus = nullptr;
  EXPECT_EQ(reotag_corpus_read(nullptr, &corpus), REOTAG_INVALID_ARGUMENT);
  EXPECT_EQ(reotag_corpus_read("x.tsv", nullptr), REOTAG_INVALID_ARGUMENT);
  EXPECT_EQ(reotag_label(nullptr, nullptr, 1), REOTAG_INVALID_ARGUMENT);
  EXPECT_STRNE(reotag_last_error(), "");
}

TEST(CApi, ErrorCodesAndMessages) {
  reotag_corpus* corpus = nullptr;
  EXPECT_EQ(reotag_corpus_read("/no/such/corpus.tsv", &corpus), REOTAG_IO);
  EXPECT_EQ(corpus, nullptr);
  EXPECT_NE(std::string(reotag_last_error()).find("/no/such/corpus.tsv"), std::string::npos);
  const std::string bad = "# doc = d\nnot a token line\n";
  EXPECT_EQ(reotag_corpus_parse(bad.data(), bad.size(), "bad.tsv", &corpus), REOTAG_PARSE);
  EXPECT_NE(std::string(reotag_last_error()).find("bad.tsv:"), std::string::npos)
      << reotag_last_error();
  reotag_lexicons* lex = nullptr;
  EXPECT_EQ(reotag_lexicons_load("/no/such/dir", &lex), REOTAG_IO);
}

TEST_F(CApiTest, LabelWord) {
  char label = 0;
  ASSERT_EQ(reotag_label_word(lex_, "whānau", &label), REOTAG_OK);
  EXPECT_EQ(label, 'M');
  ASSERT_EQ(reotag_label_word(lex_, "house", &label), REOTAG_OK);
  EXPECT_EQ(label, 'P');
  ASSERT_EQ(reotag_label_word(lex_, "kia", &label), REOTAG_OK);
  EXPECT_EQ(label, 'A');
  ASSERT_EQ(reotag_label_word(lex_, "talofa", &label), REOTAG_OK);
  EXPECT_EQ(label, 'P');
  ASSERT_EQ(reotag_label_word(lex_, "kaumatua", &label), REOTAG_OK);
  EXPECT_EQ(label, 'M');
}

TEST_F(CApiTest, DescribeListsChecksums) {
  const std::string text = [&] {
    char* out = nullptr;
    EXPECT_EQ(reotag_lexicons_describe(lex_, &out), REOTAG_OK);
    return Take(out);
  }();
  EXPECT_NE(text.find("maori.txt\t"), std::string::npos);
  EXPECT_EQ(text.find("warning"), std::string::npos);
}

TEST_F(CApiTest, AddWordConflict) {
  size_t indexed = 0;
  EXPECT_EQ(reotag_lexicons_add_word(lex_, "english", "ora", 0, &indexed), REOTAG_CONFLICT);
  EXPECT_EQ(reotag_lexicons_add_word(lex_, "klingon", "ora", 0, &indexed), REOTAG_INVALID_ARGUMENT);
  ASSERT_EQ(reotag_lexicons_add_word(lex_, "maori", "mokopuna", 0, &indexed), REOTAG_OK);
  EXPECT_GE(indexed, 1u);
  char label = 0;
  reotag_label_word(lex_, "mokopuna", &label);
  EXPECT_EQ(label, 'M');
}

TEST_F(CApiTest, CorpusRoundTripAndCounts) {
  reotag_corpus* corpus = Resolved();
  const fs::path path = dir_ / "c.tsv";
  ASSERT_EQ(reotag_corpus_write(corpus, path.c_str()), REOTAG_OK);
  reotag_corpus* back = nullptr;
  ASSERT_EQ(reotag_corpus_read(path.c_str(), &back), REOTAG_OK);
  char* a = nullptr;
  char* b = nullptr;
  reotag_corpus_serialize(corpus, REOTAG_FORMAT_TSV, &a);
  reotag_corpus_serialize(back, REOTAG_FORMAT_TSV, &b);
  EXPECT_EQ(Take(a), Take(b));
  reotag_label_counts counts;
  ASSERT_EQ(reotag_corpus_counts(corpus, &counts), REOTAG_OK);
  EXPECT_EQ(counts.sentences, 197u);
  EXPECT_EQ(counts.tokens, 1611u);
  EXPECT_EQ(counts.m + counts.p + counts.a + counts.u + counts.n + counts.s + counts.f,
            counts.tokens);
  EXPECT_EQ(counts.words, counts.tokens - counts.n - counts.s);

  reotag_corpus* final_corpus = nullptr;
  ASSERT_EQ(reotag_corpus_final(corpus, &final_corpus), REOTAG_OK);
  reotag_label_counts fc;
  reotag_corpus_counts(final_corpus, &fc);
  EXPECT_EQ(fc.a + fc.u + fc.f, 0u);
  EXPECT_LT(fc.sentences, counts.sentences);
  char* jsonl = nullptr;
  ASSERT_EQ(reotag_corpus_serialize(final_corpus, REOTAG_FORMAT_JSON, &jsonl), REOTAG_OK);
  std::istringstream lines(Take(jsonl));
  std::size_t n = 0;
  for (std::string line; std::getline(lines, line); ++n) EXPECT_TRUE(json::accept(line));
  EXPECT_EQ(n, fc.sentences);
  reotag_corpus_free(final_corpus);
  reotag_corpus_free(back);
  reotag_corpus_free(corpus);
}

TEST_F(CApiTest, ResolveFixpoint) {
  reotag_corpus* corpus = nullptr;
  ASSERT_EQ(reotag_corpus_ingest((kFixtures / "raw").c_str(), nullptr, 0, &corpus), REOTAG_OK);
  ASSERT_EQ(reotag_label(corpus, lex_, 1), REOTAG_OK);
  reotag_resolve_options options;
  reotag_resolve_options_init(&options);
  EXPECT_EQ(options.final_rule, 1);
  EXPECT_EQ(options.transparency, 1);
  int passes = 0;
  ASSERT_EQ(reotag_resolve_fixpoint(corpus, 50, &options, &passes), REOTAG_OK);
  EXPECT_GE(passes, 1);
  EXPECT_LE(passes, 50);
  EXPECT_EQ(reotag_resolve(corpus, -1, nullptr), REOTAG_INVALID_ARGUMENT);
  reotag_corpus_free(corpus);
}

TEST_F(CApiTest, TasksSessionAndApply) {
  reotag_corpus* corpus = Resolved();
  char* out = nullptr;
  ASSERT_EQ(reotag_trigram_tasks(corpus, "top_k", 20, nullptr, REOTAG_FORMAT_JSON, &out), REOTAG_OK);
  const json tasks = json::parse(Take(out));
  ASSERT_EQ(tasks.size(), 20u);
  EXPECT_EQ(tasks[0]["words"], json({"i", "make", "a"}));
  ASSERT_EQ(reotag_trigram_tasks(corpus, "all", 0, nullptr, REOTAG_FORMAT_TSV, &out), REOTAG_OK);
  EXPECT_EQ(Take(out).rfind("task_id\tw1\tw2\tw3\tcount", 0), 0u);
  EXPECT_EQ(reotag_trigram_tasks(corpus, "sideways", 0, nullptr, REOTAG_FORMAT_TSV, &out),
            REOTAG_INVALID_ARGUMENT);

  const fs::path store = dir_ / "store.jsonl";
  reotag_session* session = nullptr;
  ASSERT_EQ(reotag_session_open(corpus, store.c_str(), lex_, 0, &session), REOTAG_OK);
  const std::string body =
      json{{"task_id", tasks[0]["task_id"]}, {"assignments", {{"1", "P"}, {"2", "P"}, {"3", "P"}}}}
          .dump();
  ASSERT_EQ(reotag_session_record(session, body.c_str(), &out), REOTAG_OK);
  EXPECT_EQ(json::parse(Take(out))["seq"], 1);
  EXPECT_EQ(reotag_session_record(session, R"({"task_id":"tri-x","assignments":{"1":"P"}})", &out),
            REOTAG_NOT_FOUND);
  EXPECT_EQ(reotag_session_record(session, "{oops", &out), REOTAG_PARSE);
  ASSERT_EQ(reotag_session_mark_foreign(session, "orana", "ann", &out), REOTAG_OK);
  EXPECT_EQ(json::parse(Take(out))["label"], "F");
  ASSERT_EQ(reotag_session_progress(session, &out), REOTAG_OK);
  const json progress = json::parse(Take(out));
  EXPECT_EQ(progress["done"], 1);
  reotag_session_free(session);

  reotag_label_counts before;
  reotag_corpus_counts(corpus, &before);
  size_t changed = 0;
  ASSERT_EQ(reotag_apply(corpus, store.c_str(), &changed), REOTAG_OK);
  reotag_label_counts after;
  reotag_corpus_counts(corpus, &after);
  EXPECT_EQ(after.a, progress["labels"]["A"].get<size_t>());
  EXPECT_EQ(changed, before.a - after.a + before.u - after.u);
  ASSERT_EQ(reotag_trigram_tasks(corpus, "all", 0, store.c_str(), REOTAG_FORMAT_JSON, &out), REOTAG_OK);
  Take(out);
  reotag_corpus_free(corpus);
}

TEST_F(CApiTest, Analyze) {
  reotag_corpus* corpus = Resolved();
  reotag_analyze_options options;
  reotag_analyze_options_init(&options);
  char* out = nullptr;
  for (const char* report : {"years", "freq", "ngrams", "lengths", "foreign", "stages", "lint"}) {
    options.report = report;
    EXPECT_EQ(reotag_analyze(corpus, lex_, &options, &out), REOTAG_OK) << report;
    EXPECT_FALSE(Take(out).empty()) << report;
  }
  options.report = "ngrams";
  options.n = 2;
  options.top_k = 5;
  options.format = REOTAG_FORMAT_JSON;
  ASSERT_EQ(reotag_analyze(corpus, lex_, &options, &out), REOTAG_OK);
  EXPECT_EQ(json::parse(Take(out)).size(), 5u);
  options.n = 9;
  EXPECT_EQ(reotag_analyze(corpus, lex_, &options, &out), REOTAG_INVALID_ARGUMENT);
  options.report = "horoscope";
  EXPECT_EQ(reotag_analyze(corpus, lex_, &options, &out), REOTAG_INVALID_ARGUMENT);
  reotag_corpus_free(corpus);
}

TEST_F(CApiTest, RunPipeline) {
  char* summary = nullptr;
  ASSERT_EQ(reotag_run_pipeline((kFixtures / "pipeline.ini").c_str(), dir_.c_str(), &summary),
            REOTAG_OK);
  const std::string text = Take(summary);
  EXPECT_NE(text.find("wrote\t"), std::string::npos);
  EXPECT_EQ(Slurp(dir_ / "gold.tsv"), Slurp(kFixtures / "golden" / "gold.tsv"));
  EXPECT_EQ(reotag_run_pipeline((dir_ / "none.ini").c_str(), nullptr, &summary), REOTAG_IO);
}

TEST_F(CApiTest, ServerAndLocks) {
  reotag_corpus* corpus = Resolved();
  const fs::path path = dir_ / "c.tsv";
  ASSERT_EQ(reotag_corpus_write(corpus, path.c_str()), REOTAG_OK);
  reotag_corpus_free(corpus);
  const std::string store = (dir_ / "s.jsonl").string();
  reotag_server_options options;
  reotag_server_options_init(&options);
  options.corpus_path = path.c_str();
  options.store_path = store.c_str();
  options.port = 0;
  reotag_server* server = nullptr;
  ASSERT_EQ(reotag_server_start(&options, &server), REOTAG_OK);
  EXPECT_GT(reotag_server_port(server), 0);
  reotag_lock* lock = nullptr;
  EXPECT_EQ(reotag_lock_acquire(path.c_str(), &lock), REOTAG_STATE);
  reotag_server_stop(server);
  reotag_server_wait(server);
  reotag_server_free(server);
  ASSERT_EQ(reotag_lock_acquire(path.c_str(), &lock), REOTAG_OK);
  reotag_lock_release(lock);

  std::ofstream(store) << "garbage\n";
  EXPECT_EQ(reotag_server_start(&options, &server), REOTAG_PARSE);
}

}  // namespace
