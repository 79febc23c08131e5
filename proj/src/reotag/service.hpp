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

#ifndef REOTAG_SERVICE_HPP_
#define REOTAG_SERVICE_HPP_

#include <filesystem>
#include <memory>
#include <string>

namespace reotag::annotation {

struct ServiceOptions {
  std::filesystem::path corpus_path;
  std::filesystem::path store_path;
  std::filesystem::path lexicon_dir;  // empty: lexicon endpoints disabled
  std::string host = "127.0.0.1";
  int port = 8080;  // 0 picks a free port
  bool persist_lexicons = true;
};

// HTTP/JSON front end over an AnnotationSession.
//
//   GET  /api/tasks?limit=&mode=all|top_k|min_count&k=&c=&status=pending|all
//   GET  /api/tasks/{id}
//   POST /api/decisions        {task_id, assignments, annotator, lexicon_update?}
//                              or {word, label, annotator}
//   GET  /api/progress
//   GET  /api/sentences/{doc}/{seq}
//   POST /api/lexicon/words    {word, list}
//
// Mutations are appended to the decision store before they are
// acknowledged. The corpus file is locked while the service runs.
class AnnotationService {
 public:
  // Loads everything up front; a corrupt store throws kParse.
  explicit AnnotationService(ServiceOptions options);
  ~AnnotationService();

  AnnotationService(const AnnotationService&) = delete;
  AnnotationService& operator=(const AnnotationService&) = delete;

  // Binds and starts serving on a background thread. Returns the port.
  int Start();
  // Blocks until Stop() is called.
  void Wait();
  void Stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace reotag::annotation

#endif  // REOTAG_SERVICE_HPP_
