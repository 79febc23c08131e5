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

#include "reotag/reotag.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <optional>
#include <sstream>
#include <string>

#include "json.hpp"

#include "reotag/analytics.hpp"
#include "reotag/annotation.hpp"
#include "reotag/corpus.hpp"
#include "reotag/corpus_io.hpp"
#include "reotag/error.hpp"
#include "reotag/ingest.hpp"
#include "reotag/labeler.hpp"
#include "reotag/lexicon.hpp"
#include "reotag/lock_file.hpp"
#include "reotag/pipeline.hpp"
#include "reotag/resolver.hpp"
#include "reotag/service.hpp"
#include "reotag/text.hpp"

struct reotag_lexicons {
  reotag::LexiconSet set;
};

struct reotag_corpus {
  reotag::Corpus corpus;
};

struct reotag_session {
  std::unique_ptr<reotag::annotation::AnnotationSession> session;
};

struct reotag_server {
  std::unique_ptr<reotag::annotation::AnnotationService> service;
  int port = 0;
};

struct reotag_lock {
  reotag::LockFile lock;
};

namespace {

using namespace reotag;

thread_local std::string g_last_error;

reotag_status StatusFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return REOTAG_INVALID_ARGUMENT;
    case ErrorCode::kIo: return REOTAG_IO;
    case ErrorCode::kParse: return REOTAG_PARSE;
    case ErrorCode::kConflict: return REOTAG_CONFLICT;
    case ErrorCode::kNotFound: return REOTAG_NOT_FOUND;
    case ErrorCode::kState: return REOTAG_STATE;
  }
  return REOTAG_INTERNAL;
}

template <typename F>
reotag_status Guard(F&& body) {
  g_last_error.clear();
  try {
    body();
    return REOTAG_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return StatusFor(e.code());
  } catch (const nlohmann::json::exception& e) {
    g_last_error = e.what();
    return REOTAG_PARSE;
  } catch (const std::filesystem::filesystem_error& e) {
    g_last_error = e.what();
    return REOTAG_IO;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return REOTAG_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return REOTAG_INTERNAL;
  }
}

void Require(const void* p, const char* name) {
  if (p == nullptr) Fail(ErrorCode::kInvalidArgument, std::string(name) + " is null");
}

char* Dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size());
  out[s.size()] = '\0';
  return out;
}

analytics::Format ToFormat(reotag_format f) {
  return f == REOTAG_FORMAT_JSON ? analytics::Format::kJson : analytics::Format::kTsv;
}

ResolveOptions ToResolve(const reotag_resolve_options* o) {
  ResolveOptions r;
  if (o != nullptr) {
    r.final_rule = o->final_rule != 0;
    r.transparency = o->transparency != 0;
  }
  return r;
}

annotation::TaskSelection ParseSelection(const char* mode, std::size_t param) {
  using annotation::TaskSelection;
  const std::string m = mode == nullptr ? "all" : mode;
  if (m == "all") return TaskSelection::All();
  if (m == "top_k") return TaskSelection::TopK(param == 0 ? 20 : param);
  if (m == "min_count") return TaskSelection::MinCount(param == 0 ? 10 : param);
  Fail(ErrorCode::kInvalidArgument, "unknown task mode '" + m + "' (all, top_k, min_count)");
}

std::string RenderTasks(const std::vector<annotation::TrigramTask>& tasks, reotag_format format) {
  if (format == REOTAG_FORMAT_JSON) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& t : tasks) arr.push_back(annotation::TaskToJson(t));
    return arr.dump(2) + "\n";
  }
  std::ostringstream out;
  out << "task_id\tw1\tw2\tw3\tcount\tambiguous_positions\tstatus\n";
  for (const auto& t : tasks) {
    out << t.task_id << '\t' << t.words[0] << '\t' << t.words[1] << '\t' << t.words[2] << '\t'
        << t.count << '\t';
    bool first = true;
    for (int p : t.ambiguous_positions) {
      out << (first ? "" : ",") << p;
      first = false;
    }
    out << '\t' << annotation::TaskStatusName(t.status) << '\n';
  }
  return out.str();
}

}  // namespace

extern "C" {

const char* reotag_last_error(void) { return g_last_error.c_str(); }

const char* reotag_status_name(reotag_status status) {
  switch (status) {
    case REOTAG_OK: return "ok";
    case REOTAG_INVALID_ARGUMENT: return "invalid_argument";
    case REOTAG_IO: return "io";
    case REOTAG_PARSE: return "parse";
    case REOTAG_CONFLICT: return "conflict";
    case REOTAG_NOT_FOUND: return "not_found";
    case REOTAG_STATE: return "state";
    case REOTAG_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* reotag_version(void) { return REOTAG_VERSION_STRING; }

void reotag_string_free(char* s) { std::free(s); }

reotag_status reotag_lexicons_load(const char* dir, reotag_lexicons** out) {
  return Guard([&] {
    Require(dir, "dir");
    Require(out, "out");
    *out = new reotag_lexicons{LexiconSet::LoadDirectory(dir)};
  });
}

void reotag_lexicons_free(reotag_lexicons* lex) { delete lex; }

reotag_status reotag_lexicons_describe(const reotag_lexicons* lex, char** out) {
  return Guard([&] {
    Require(lex, "lexicons");
    Require(out, "out");
    std::string s;
    for (const auto& [file, sum] : lex->set.checksums()) s += file + "\t" + sum + "\n";
    for (const auto& w : lex->set.warnings()) s += "warning\t" + w + "\n";
    *out = Dup(s);
  });
}

reotag_status reotag_lexicons_add_word(reotag_lexicons* lex, const char* list, const char* word,
                                       int persist, size_t* indexed) {
  return Guard([&] {
    Require(lex, "lexicons");
    Require(list, "list");
    Require(word, "word");
    const auto kind = ParseLexiconKind(list);
    if (!kind) Fail(ErrorCode::kInvalidArgument, std::string("unknown list '") + list + "'");
    std::size_t n = 0;
    lex->set = lex->set.WithWord(*kind, word, persist != 0, &n);
    if (indexed != nullptr) *indexed = n;
  });
}

reotag_status reotag_label_word(const reotag_lexicons* lex, const char* word, char* label) {
  return Guard([&] {
    Require(lex, "lexicons");
    Require(word, "word");
    Require(label, "label");
    const auto tokens = ingest::Tokenize(ingest::CleanSentence(text::Nfc(word)));
    if (tokens.size() != 1) Fail(ErrorCode::kInvalidArgument, "expected a single token");
    *label = LabelChar(LabelToken(tokens.front(), lex->set));
  });
}

reotag_status reotag_corpus_ingest(const char* path, const char* abbreviations, int stops_only,
                                   reotag_corpus** out) {
  return Guard([&] {
    Require(path, "path");
    Require(out, "out");
    ingest::SplitOptions opts;
    if (abbreviations != nullptr) {
      opts.abbreviations.clear();
      std::istringstream in(abbreviations);
      std::string item;
      while (std::getline(in, item, ',')) {
        item = std::string(text::Trim(item));
        if (!item.empty()) opts.abbreviations.push_back(item);
      }
    }
    opts.stops_only = stops_only != 0;
    *out = new reotag_corpus{ingest::IngestPath(path, opts)};
  });
}

reotag_status reotag_corpus_read(const char* path, reotag_corpus** out) {
  return Guard([&] {
    Require(path, "path");
    Require(out, "out");
    *out = new reotag_corpus{ReadCorpusFile(path)};
  });
}

reotag_status reotag_corpus_parse(const char* data, size_t size, const char* source_name,
                                  reotag_corpus** out) {
  return Guard([&] {
    Require(data, "data");
    Require(out, "out");
    *out = new reotag_corpus{
        ParseTsv(std::string_view(data, size), source_name == nullptr ? "<tsv>" : source_name)};
  });
}

reotag_status reotag_corpus_write(const reotag_corpus* corpus, const char* path) {
  return Guard([&] {
    Require(corpus, "corpus");
    Require(path, "path");
    WriteCorpusFile(corpus->corpus, path);
  });
}

reotag_status reotag_corpus_serialize(const reotag_corpus* corpus, reotag_format format,
                                      char** out) {
  return Guard([&] {
    Require(corpus, "corpus");
    Require(out, "out");
    *out = Dup(format == REOTAG_FORMAT_JSON ? WriteJsonLines(corpus->corpus)
                                            : WriteTsv(corpus->corpus));
  });
}

reotag_status reotag_corpus_counts(const reotag_corpus* corpus, reotag_label_counts* out) {
  return Guard([&] {
    Require(corpus, "corpus");
    Require(out, "out");
    const LabelCounts c = corpus->corpus.Counts();
    out->m = c[Label::kM];
    out->p = c[Label::kP];
    out->a = c[Label::kA];
    out->u = c[Label::kU];
    out->n = c[Label::kN];
    out->s = c[Label::kS];
    out->f = c[Label::kF];
    out->tokens = corpus->corpus.TokenCount();
    out->words = corpus->corpus.WordCount();
    out->sentences = corpus->corpus.sentences.size();
  });
}

reotag_status reotag_corpus_final(const reotag_corpus* corpus, reotag_corpus** out) {
  return Guard([&] {
    Require(corpus, "corpus");
    Require(out, "out");
    *out = new reotag_corpus{FinalExport(corpus->corpus)};
  });
}

void reotag_corpus_free(reotag_corpus* corpus) { delete corpus; }

reotag_status reotag_label(reotag_corpus* corpus, const reotag_lexicons* lex, unsigned threads) {
  return Guard([&] {
    Require(corpus, "corpus");
    Require(lex, "lexicons");
    corpus->corpus = LabelCorpus(std::move(corpus->corpus), lex->set, threads == 0 ? 1 : threads);
  });
}

reotag_status reotag_reassess(reotag_corpus* corpus, const reotag_lexicons* lex) {
  return Guard([&] {
    Require(corpus, "corpus");
    Require(lex, "lexicons");
    corpus->corpus = ReassessUnclear(std::move(corpus->corpus), lex->set);
  });
}

void reotag_resolve_options_init(reotag_resolve_options* options) {
  if (options == nullptr) return;
  const ResolveOptions d;
  options->final_rule = d.final_rule ? 1 : 0;
  options->transparency = d.transparency ? 1 : 0;
}

reotag_status reotag_resolve(reotag_corpus* corpus, int passes,
                             const reotag_resolve_options* options) {
  return Guard([&] {
    Require(corpus, "corpus");
    corpus->corpus = ResolveCorpus(std::move(corpus->corpus), passes, ToResolve(options)).first;
  });
}

reotag_status reotag_resolve_fixpoint(reotag_corpus* corpus, int max_passes,
                                      const reotag_resolve_options* options, int* passes_run) {
  return Guard([&] {
    Require(corpus, "corpus");
    auto [next, deltas] = ResolveToFixpoint(std::move(corpus->corpus), max_passes, ToResolve(options));
    corpus->corpus = std::move(next);
    if (passes_run != nullptr) *passes_run = static_cast<int>(deltas.size());
  });
}

reotag_status reotag_trigram_tasks(const reotag_corpus* corpus, const char* mode, size_t param,
                                   const char* store_path, reotag_format format, char** out) {
  return Guard([&] {
    Require(corpus, "corpus");
    Require(out, "out");
    auto tasks = annotation::ExtractTrigramTasks(corpus->corpus, ParseSelection(mode, param));
    if (store_path != nullptr) {
      const auto store = annotation::DecisionStore::Open(store_path);
      for (auto& t : tasks) t.status = store.StatusOf(t.task_id);
    }
    *out = Dup(RenderTasks(tasks, format));
  });
}

reotag_status reotag_session_open(const reotag_corpus* corpus, const char* store_path,
                                  const reotag_lexicons* lex, int persist_lexicons,
                                  reotag_session** out) {
  return Guard([&] {
    Require(corpus, "corpus");
    Require(store_path, "store_path");
    Require(out, "out");
    std::shared_ptr<const LexiconSet> shared;
    if (lex != nullptr) shared = std::make_shared<const LexiconSet>(lex->set);
    auto session = std::make_unique<annotation::AnnotationSession>(
        corpus->corpus, annotation::DecisionStore::Open(store_path), shared,
        persist_lexicons != 0);
    *out = new reotag_session{std::move(session)};
  });
}

reotag_status reotag_session_record(reotag_session* session, const char* decision_json,
                                    char** out) {
  return Guard([&] {
    Require(session, "session");
    Require(decision_json, "decision_json");
    const auto j = nlohmann::json::parse(decision_json);
    const auto& stored = session->session->Record(annotation::DecisionFromJson(j));
    if (out != nullptr) *out = Dup(annotation::DecisionToJson(stored).dump());
  });
}

reotag_status reotag_session_mark_foreign(reotag_session* session, const char* word,
                                          const char* annotator, char** out) {
  return Guard([&] {
    Require(session, "session");
    Require(word, "word");
    const auto& stored =
        session->session->MarkForeign(word, annotator == nullptr ? "" : annotator);
    if (out != nullptr) *out = Dup(annotation::DecisionToJson(stored).dump());
  });
}

reotag_status reotag_session_progress(const reotag_session* session, char** out) {
  return Guard([&] {
    Require(session, "session");
    Require(out, "out");
    *out = Dup(annotation::ProgressToJson(session->session->CurrentProgress()).dump());
  });
}

void reotag_session_free(reotag_session* session) { delete session; }

reotag_status reotag_apply(reotag_corpus* corpus, const char* store_path, size_t* changed) {
  return Guard([&] {
    Require(corpus, "corpus");
    Require(store_path, "store_path");
    const auto store = annotation::DecisionStore::Open(store_path);
    auto [next, delta] = annotation::ApplyDecisions(std::move(corpus->corpus), store.decisions());
    corpus->corpus = std::move(next);
    if (changed != nullptr) *changed = delta.changed;
  });
}

void reotag_analyze_options_init(reotag_analyze_options* options) {
  if (options == nullptr) return;
  const analytics::NgramOptions d;
  options->report = "stages";
  options->filter = "all";
  options->n = d.n;
  options->max_n = d.max_n;
  options->top_k = d.top_k;
  options->content_only = 0;
  options->format = REOTAG_FORMAT_TSV;
}

reotag_status reotag_analyze(const reotag_corpus* corpus, const reotag_lexicons* lex,
                             const reotag_analyze_options* options, char** out) {
  return Guard([&] {
    Require(corpus, "corpus");
    Require(options, "options");
    Require(out, "out");
    const std::string report = options->report == nullptr ? "" : options->report;
    const analytics::Format format = ToFormat(options->format);
    const Corpus& c = corpus->corpus;
    const Lexicon* stopwords = lex == nullptr ? nullptr : &lex->set.stopwords();
    auto need_stopwords = [&] {
      if (stopwords == nullptr) {
        Fail(ErrorCode::kInvalidArgument, "content filters need a lexicon directory");
      }
    };
    std::string result;
    if (report == "years") {
      result = analytics::RenderYears(analytics::ComputeYearStats(c), format);
    } else if (report == "freq") {
      const auto filter =
          analytics::FrequencyFilter::Parse(options->filter == nullptr ? "all" : options->filter);
      if (!filter) Fail(ErrorCode::kInvalidArgument, std::string("unknown filter '") + options->filter + "'");
      if (filter->content_only) need_stopwords();
      auto rows = analytics::WordFrequency(c, *filter, stopwords);
      if (options->top_k != 0 && rows.size() > options->top_k) rows.resize(options->top_k);
      result = analytics::RenderCounts(rows, format);
    } else if (report == "ngrams") {
      analytics::NgramOptions ng;
      ng.n = options->n;
      ng.max_n = options->max_n;
      ng.top_k = options->top_k;
      ng.content_only = options->content_only != 0;
      if (ng.content_only) need_stopwords();
      result = analytics::RenderCounts(analytics::NgramCounts(c, ng, stopwords), format);
    } else if (report == "lengths") {
      result = analytics::RenderLengths(analytics::SentenceLengthStats(c), format);
    } else if (report == "foreign") {
      result = analytics::RenderForeign(analytics::ForeignReport(c), format);
    } else if (report == "stages") {
      if (c.history.empty()) Fail(ErrorCode::kState, "corpus has no stage history");
      result = analytics::RenderStages(c.history, format);
    } else if (report == "lint") {
      if (lex == nullptr) Fail(ErrorCode::kInvalidArgument, "lint needs a lexicon directory");
      result = analytics::RenderLint(LintLabels(c, lex->set), format);
    } else {
      Fail(ErrorCode::kInvalidArgument, "unknown report '" + report + "'");
    }
    *out = Dup(result);
  });
}

reotag_status reotag_run_pipeline(const char* config_path, const char* out_dir, char** summary) {
  return Guard([&] {
    Require(config_path, "config_path");
    const std::filesystem::path config_file(config_path);
    const auto config = PipelineConfig::Load(config_file);
    const std::filesystem::path dir =
        out_dir != nullptr ? std::filesystem::path(out_dir) : config_file.parent_path();
    const auto result = RunPipeline(config, dir);
    if (summary != nullptr) {
      std::string s;
      for (const auto& w : result.warnings) s += "warning\t" + w + "\n";
      for (const auto& p : result.written) s += "wrote\t" + p.string() + "\n";
      s += "counts\t" + FormatCounts(result.corpus.Counts()) + "\n";
      *summary = Dup(s);
    }
  });
}

void reotag_server_options_init(reotag_server_options* options) {
  if (options == nullptr) return;
  const annotation::ServiceOptions d;
  options->corpus_path = nullptr;
  options->store_path = nullptr;
  options->lexicon_dir = nullptr;
  options->host = "127.0.0.1";
  options->port = d.port;
  options->persist_lexicons = d.persist_lexicons ? 1 : 0;
}

reotag_status reotag_server_start(const reotag_server_options* options, reotag_server** out) {
  return Guard([&] {
    Require(options, "options");
    Require(options->corpus_path, "corpus_path");
    Require(options->store_path, "store_path");
    Require(out, "out");
    annotation::ServiceOptions so;
    so.corpus_path = options->corpus_path;
    so.store_path = options->store_path;
    if (options->lexicon_dir != nullptr) so.lexicon_dir = options->lexicon_dir;
    if (options->host != nullptr) so.host = options->host;
    so.port = options->port;
    so.persist_lexicons = options->persist_lexicons != 0;
    auto server = std::make_unique<reotag_server>();
    server->service = std::make_unique<annotation::AnnotationService>(so);
    server->port = server->service->Start();
    *out = server.release();
  });
}

int reotag_server_port(const reotag_server* server) { return server == nullptr ? 0 : server->port; }

void reotag_server_wait(reotag_server* server) {
  if (server != nullptr) server->service->Wait();
}

void reotag_server_stop(reotag_server* server) {
  if (server != nullptr) server->service->Stop();
}

void reotag_server_free(reotag_server* server) {
  if (server == nullptr) return;
  server->service->Stop();
  delete server;
}

reotag_status reotag_lock_acquire(const char* path, reotag_lock** out) {
  return Guard([&] {
    Require(path, "path");
    Require(out, "out");
    *out = new reotag_lock{LockFile::Acquire(path)};
  });
}

void reotag_lock_release(reotag_lock* lock) { delete lock; }

}  // extern "C"
