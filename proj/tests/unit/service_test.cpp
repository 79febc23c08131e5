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

#include <fstream>

#include "fixtures.hpp"
#include "httplib.h"
#include "json.hpp"
#include "reotag/annotation.hpp"
#include "reotag/corpus_io.hpp"
#include "reotag/error.hpp"
#include "reotag/ingest.hpp"
#include "reotag/labeler.hpp"
#include "reotag/lock_file.hpp"
#include "reotag/resolver.hpp"
#include "reotag/service.hpp"

namespace reotag::annotation {
namespace {

using nlohmann::json;
using testing_support::FixtureDir;
using testing_support::LexiconDir;
using testing_support::TempDir;

class ServiceTest : public ::testing::Test {
 protected:
  void SetUp() override {
    std::filesystem::copy(LexiconDir(), dir_ / "lexicons");
    const auto lex = LexiconSet::LoadDirectory(dir_ / "lexicons");
    Corpus c = LabelCorpus(ingest::IngestPath(FixtureDir() / "raw"), lex);
    corpus_ = ResolveCorpus(std::move(c), 2).first;
    WriteCorpusFile(corpus_, dir_ / "corpus.tsv");
  }

  ServiceOptions Options() const {
    ServiceOptions o;
    o.corpus_path = dir_ / "corpus.tsv";
    o.store_path = dir_ / "store.jsonl";
    o.lexicon_dir = dir_ / "lexicons";
    o.port = 0;
    return o;
  }

  void Start() {
    service_ = std::make_unique<AnnotationService>(Options());
    const int port = service_->Start();
    client_ = std::make_unique<httplib::Client>("127.0.0.1", port);
  }

  json Get(const std::string& path, int expect = 200) {
    auto res = client_->Get(path);
    EXPECT_TRUE(res) << path;
    if (!res) return {};
    EXPECT_EQ(res->status, expect) << path << ": " << res->body;
    return json::parse(res->body);
  }

  json Post(const std::string& path, const json& body, int expect = 200) {
    return PostRaw(path, body.dump(), expect);
  }

  json PostRaw(const std::string& path, const std::string& body, int expect) {
    auto res = client_->Post(path, body, "application/json");
    EXPECT_TRUE(res) << path;
    if (!res) return {};
    EXPECT_EQ(res->status, expect) << path << ": " << res->body;
    return json::parse(res->body);
  }

  TempDir dir_;
  Corpus corpus_;
  std::unique_ptr<AnnotationService> service_;
  std::unique_ptr<httplib::Client> client_;
};

TEST_F(ServiceTest, TasksAreRankedAndLimited) {
  Start();
  const json body = Get("/api/tasks?limit=20");
  const auto ranked = ExtractTrigramTasks(corpus_, TaskSelection::All());
  ASSERT_EQ(body["tasks"].size(), 20u);
  EXPECT_EQ(body["pending"], ranked.size());
  for (std::size_t i = 0; i < 20; ++i) {
    EXPECT_EQ(body["tasks"][i]["task_id"], ranked[i].task_id);
    EXPECT_EQ(body["tasks"][i]["count"], ranked[i].count);
    EXPECT_EQ(body["tasks"][i]["status"], "pending");
  }
  EXPECT_EQ(Get("/api/tasks?mode=top_k&k=3&limit=100")["tasks"].size(), 3u);
  for (const auto& t : Get("/api/tasks?mode=min_count&c=10&limit=1000")["tasks"]) {
    EXPECT_GE(t["count"].get<int>(), 10);
  }
  Get("/api/tasks?mode=bogus", 400);
  Get("/api/tasks?limit=ten", 400);
}

TEST_F(ServiceTest, DecisionUpdatesProgress) {
  Start();
  const json before = Get("/api/progress");
  const json first = Get("/api/tasks?limit=1")["tasks"][0];
  ASSERT_EQ(first["words"], json({"i", "make", "a"}));
  const json body = Post("/api/decisions", {{"task_id", first["task_id"]},
                                            {"assignments", {{"1", "P"}, {"2", "P"}, {"3", "P"}}},
                                            {"annotator", "ann"}});
  EXPECT_EQ(body["decision"]["seq"], 1);
  EXPECT_EQ(body["progress"]["done"], 1);
  EXPECT_EQ(body["progress"]["pending"], before["pending"].get<int>() - 1);
  const int count = first["count"];
  EXPECT_EQ(body["progress"]["labels"]["A"], before["labels"]["A"].get<int>() - 3 * count);
  EXPECT_EQ(body["progress"]["labels"]["P"], before["labels"]["P"].get<int>() + 3 * count);
  EXPECT_EQ(Get("/api/progress"), body["progress"]);

  const json task = Get("/api/tasks/" + first["task_id"].get<std::string>());
  EXPECT_EQ(task["status"], "done");
  EXPECT_EQ(task["decisions"].size(), 1u);
  EXPECT_NE(Get("/api/tasks?limit=1")["tasks"][0]["task_id"], first["task_id"]);

  // Durable before acknowledgement.
  const auto store = DecisionStore::Open(dir_ / "store.jsonl");
  ASSERT_EQ(store.decisions().size(), 1u);
  EXPECT_EQ(store.decisions()[0].annotator, "ann");
}

TEST_F(ServiceTest, AllTasksDoneLeavesNothingPending) {
  Start();
  const json all = Get("/api/tasks?limit=100000");
  for (const auto& t : all["tasks"]) {
    json assignments = json::object();
    for (int p : t["ambiguous_positions"]) assignments[std::to_string(p)] = "M";
    Post("/api/decisions", {{"task_id", t["task_id"]}, {"assignments", assignments}});
  }
  const json progress = Get("/api/progress");
  EXPECT_EQ(progress["pending"], 0);
  EXPECT_EQ(progress["done"], all["tasks"].size());
  // Only sentences too short for a trigram window keep their A tokens.
  std::size_t unreachable = 0;
  for (const auto& s : corpus_.sentences) {
    std::size_t words = 0, ambiguous = 0;
    for (const auto& t : s.tokens) {
      words += t.is_word();
      ambiguous += t.label == Label::kA;
    }
    if (words < 3) unreachable += ambiguous;
  }
  EXPECT_EQ(progress["labels"]["A"], unreachable);
  EXPECT_TRUE(Get("/api/tasks")["tasks"].empty());
}

TEST_F(ServiceTest, WordDecisionAndSentenceFetch) {
  Start();
  std::string doc;
  std::size_t seq = 0;
  for (const auto& s : corpus_.sentences) {
    for (const auto& t : s.tokens) {
      if (t.lower == "meitaki") {
        doc = s.doc;
        seq = s.seq;
      }
    }
  }
  ASSERT_FALSE(doc.empty());
  const std::string path = "/api/sentences/" + httplib::detail::encode_url(doc) + "/" + std::to_string(seq);
  const json before = Get(path);
  EXPECT_EQ(before["doc"], doc);
  Post("/api/decisions", {{"word", "meitaki"}, {"label", "F"}, {"annotator", "ann"}});
  const json after = Get(path);
  bool seen = false;
  for (const auto& t : after["tokens"]) {
    if (t["surface"] == "meitaki") {
      EXPECT_EQ(t["label"], "F");
      seen = true;
    }
  }
  EXPECT_TRUE(seen);
  EXPECT_EQ(after["class"], "I");
  Get("/api/sentences/nodoc/1", 404);
}

TEST_F(ServiceTest, ErrorStatuses) {
  Start();
  Get("/api/tasks/tri-0000000000000000", 404);
  Post("/api/decisions", {{"task_id", "tri-0000000000000000"}, {"assignments", {{"1", "P"}}}}, 404);
  const json first = Get("/api/tasks?limit=1")["tasks"][0];
  Post("/api/decisions", {{"task_id", first["task_id"]}, {"assignments", {{"1", "A"}}}}, 400);
  Post("/api/decisions", {{"task_id", first["task_id"]}, {"assignments", {{"7", "P"}}}}, 400);
  PostRaw("/api/decisions", "{not json", 400);
  Post("/api/decisions",
       {{"task_id", first["task_id"]},
        {"assignments", {{"1", "P"}}},
        {"lexicon_update", {{"word", "ora"}, {"list", "english"}}}},
       409);
  Post("/api/lexicon/words", {{"word", "ora"}, {"list", "english"}}, 409);
  Post("/api/lexicon/words", {{"word", "x"}, {"list", "klingon"}}, 400);
  Post("/api/lexicon/words", {{"list", "maori"}}, 400);
  EXPECT_FALSE(std::filesystem::exists(dir_ / "store.jsonl"));
}

TEST_F(ServiceTest, AddWordPersists) {
  Start();
  const json body = Post("/api/lexicon/words", {{"word", "Mokopuna"}, {"list", "maori"}});
  EXPECT_EQ(body["word"], "mokopuna");
  EXPECT_EQ(body["list"], "maori");
  EXPECT_GE(body["indexed"].get<int>(), 1);
  const auto lex = LexiconSet::LoadDirectory(dir_ / "lexicons");
  EXPECT_TRUE(lex.maori().Contains("mokopuna"));
}

TEST_F(ServiceTest, HoldsCorpusLock) {
  Start();
  try {
    LockFile::Acquire(dir_ / "corpus.tsv");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kState);
  }
  EXPECT_THROW(AnnotationService{Options()}, Error);
  service_->Stop();
  service_.reset();
  EXPECT_NO_THROW(LockFile::Acquire(dir_ / "corpus.tsv"));
}

TEST_F(ServiceTest, CorruptStoreRefusesToStart) {
  std::ofstream(dir_ / "store.jsonl") << "{\"seq\":1,\"kind\":\"word\"\n";
  try {
    AnnotationService service(Options());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParse);
    EXPECT_NE(std::string(e.what()).find("store.jsonl:1"), std::string::npos);
  }
}

TEST_F(ServiceTest, RestartReplaysStore) {
  Start();
  const json first = Get("/api/tasks?limit=1")["tasks"][0];
  Post("/api/decisions", {{"task_id", first["task_id"]}, {"assignments", {{"1", "P"}, {"2", "P"}, {"3", "P"}}}});
  const json progress = Get("/api/progress");
  client_.reset();
  service_->Stop();
  service_.reset();
  Start();
  EXPECT_EQ(Get("/api/progress"), progress);
}

}  // namespace
}  // namespace reotag::annotation
