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

#include "reotag/service.hpp"

#include <charconv>
#include <mutex>
#include <optional>
#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "reotag/annotation.hpp"
#include "reotag/corpus_io.hpp"
#include "reotag/error.hpp"
#include "reotag/lock_file.hpp"

namespace reotag::annotation {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

int HttpStatusFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kParse: return 400;
    case ErrorCode::kNotFound: return 404;
    case ErrorCode::kConflict: return 409;
    case ErrorCode::kState: return 423;
    case ErrorCode::kIo: return 500;
  }
  return 500;
}

void Reply(httplib::Response& res, int status, const ordered_json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json; charset=utf-8");
}

std::size_t ParamOr(const httplib::Request& req, const char* key, std::size_t fallback) {
  if (!req.has_param(key)) return fallback;
  const std::string v = req.get_param_value(key);
  std::size_t out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    Fail(ErrorCode::kInvalidArgument, std::string("bad value for '") + key + "'");
  }
  return out;
}

}  // namespace

struct AnnotationService::Impl {
  ServiceOptions options;
  std::optional<LockFile> lock;
  std::mutex mutex;
  std::unique_ptr<AnnotationSession> session;
  Corpus projected;
  httplib::Server server;
  std::thread thread;
  std::mutex join_mutex;

  void Join() {
    const std::lock_guard<std::mutex> guard(join_mutex);
    if (thread.joinable()) thread.join();
  }

  void Refresh() { projected = session->Projected(); }

  // Runs `fn` under the session mutex and turns core errors into JSON.
  template <typename Fn>
  void Guard(httplib::Response& res, Fn&& fn) {
    try {
      const std::lock_guard<std::mutex> guard(mutex);
      fn();
    } catch (const Error& e) {
      Reply(res, HttpStatusFor(e.code()), {{"error", e.what()}});
    } catch (const json::exception& e) {
      Reply(res, 400, {{"error", std::string("invalid JSON: ") + e.what()}});
    } catch (const std::exception& e) {
      Reply(res, 500, {{"error", e.what()}});
    }
  }

  ordered_json ProgressJson() const {
    Progress p;
    p.labels = projected.Counts();
    const auto tasks = session->Tasks(TaskSelection::All());
    p.total = tasks.size();
    for (const auto& t : tasks) {
      switch (t.status) {
        case TaskStatus::kPending: ++p.pending; break;
        case TaskStatus::kDone: ++p.done; break;
        case TaskStatus::kSkipped: ++p.skipped; break;
      }
    }
    return ProgressToJson(p);
  }

  void Routes() {
    server.Get("/api/tasks", [this](const httplib::Request& req, httplib::Response& res) {
      Guard(res, [&] {
        const std::string mode = req.has_param("mode") ? req.get_param_value("mode") : "all";
        TaskSelection selection = TaskSelection::All();
        if (mode == "top_k") selection = TaskSelection::TopK(ParamOr(req, "k", 20));
        else if (mode == "min_count") selection = TaskSelection::MinCount(ParamOr(req, "c", 10));
        else if (mode != "all") Fail(ErrorCode::kInvalidArgument, "unknown mode '" + mode + "'");
        const std::size_t limit = ParamOr(req, "limit", 20);
        const bool all = req.has_param("status") && req.get_param_value("status") == "all";
        auto tasks = ordered_json::array();
        std::size_t pending = 0;
        for (const auto& t : session->Tasks(selection)) {
          if (t.status == TaskStatus::kPending) ++pending;
          if (!all && t.status != TaskStatus::kPending) continue;
          if (tasks.size() < limit) tasks.push_back(TaskToJson(t));
        }
        Reply(res, 200, {{"tasks", std::move(tasks)}, {"pending", pending}});
      });
    });

    server.Get(R"(/api/tasks/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
      Guard(res, [&] {
        const std::string id = req.matches[1];
        const auto task = session->FindTask(id);
        if (!task) Fail(ErrorCode::kNotFound, "unknown task " + id);
        ordered_json body = TaskToJson(*task);
        auto history = ordered_json::array();
        for (const auto& d : session->store().decisions()) {
          if (d.kind != DecisionKind::kWord && d.task_id == id) history.push_back(DecisionToJson(d));
        }
        body["decisions"] = std::move(history);
        Reply(res, 200, body);
      });
    });

    server.Post("/api/decisions", [this](const httplib::Request& req, httplib::Response& res) {
      Guard(res, [&] {
        Decision d = DecisionFromJson(json::parse(req.body));
        const Decision& stored = session->Record(std::move(d));
        ordered_json body;
        body["decision"] = DecisionToJson(stored);
        Refresh();
        body["progress"] = ProgressJson();
        Reply(res, 200, body);
      });
    });

    server.Get("/api/progress", [this](const httplib::Request&, httplib::Response& res) {
      Guard(res, [&] { Reply(res, 200, ProgressJson()); });
    });

    server.Get(R"(/api/sentences/([^/]+)/(\d+))",
               [this](const httplib::Request& req, httplib::Response& res) {
      Guard(res, [&] {
        const std::string doc = req.matches[1];
        const std::size_t seq = std::stoul(req.matches[2]);
        for (const auto& s : projected.sentences) {
          if (s.doc == doc && s.seq == seq) {
            Reply(res, 200, SentenceToJson(s));
            return;
          }
        }
        Fail(ErrorCode::kNotFound, "no sentence " + doc + "/" + std::to_string(seq));
      });
    });

    server.Post("/api/lexicon/words", [this](const httplib::Request& req, httplib::Response& res) {
      Guard(res, [&] {
        const json body = json::parse(req.body);
        if (!body.contains("word") || !body["word"].is_string() || !body.contains("list") ||
            !body["list"].is_string()) {
          Fail(ErrorCode::kInvalidArgument, "body needs string fields 'word' and 'list'");
        }
        const auto kind = ParseLexiconKind(body["list"].get<std::string>());
        if (!kind) Fail(ErrorCode::kInvalidArgument, "unknown list");
        const std::string word = body["word"].get<std::string>();
        const std::size_t indexed = session->AddWord(*kind, word);
        Reply(res, 200, {{"word", NormalizeWord(word)},
                         {"list", LexiconKindName(*kind)},
                         {"indexed", indexed}});
      });
    });
  }
};

AnnotationService::AnnotationService(ServiceOptions options) : impl_(std::make_unique<Impl>()) {
  impl_->options = std::move(options);
  impl_->lock.emplace(LockFile::Acquire(impl_->options.corpus_path));
  Corpus corpus = ReadCorpusFile(impl_->options.corpus_path);
  DecisionStore store = DecisionStore::Open(impl_->options.store_path);
  std::shared_ptr<const LexiconSet> lexicons;
  if (!impl_->options.lexicon_dir.empty()) {
    lexicons = std::make_shared<const LexiconSet>(
        LexiconSet::LoadDirectory(impl_->options.lexicon_dir));
  }
  impl_->session = std::make_unique<AnnotationSession>(
      std::move(corpus), std::move(store), std::move(lexicons), impl_->options.persist_lexicons);
  impl_->Refresh();
  impl_->Routes();
}

AnnotationService::~AnnotationService() { Stop(); }

int AnnotationService::Start() {
  auto& server = impl_->server;
  int port = impl_->options.port;
  if (port == 0) {
    port = server.bind_to_any_port(impl_->options.host);
    if (port < 0) Fail(ErrorCode::kIo, "cannot bind " + impl_->options.host);
  } else if (!server.bind_to_port(impl_->options.host, port)) {
    Fail(ErrorCode::kIo, "cannot bind " + impl_->options.host + ":" + std::to_string(port));
  }
  impl_->thread = std::thread([&server] { server.listen_after_bind(); });
  server.wait_until_ready();
  return port;
}

void AnnotationService::Wait() { impl_->Join(); }

void AnnotationService::Stop() {
  if (!impl_) return;
  impl_->server.stop();
  impl_->Join();
}

}  // namespace reotag::annotation
