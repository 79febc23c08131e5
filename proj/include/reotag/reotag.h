/* Copyright 2026 The reo-tag Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef REOTAG_REOTAG_H_
#define REOTAG_REOTAG_H_

#include <stddef.h>

#if defined(REOTAG_BUILDING_LIBRARY)
#define REOTAG_API __attribute__((visibility("default")))
#else
#define REOTAG_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum reotag_status {
  REOTAG_OK = 0,
  REOTAG_INVALID_ARGUMENT = 1,
  REOTAG_IO = 2,
  REOTAG_PARSE = 3,
  REOTAG_CONFLICT = 4,
  REOTAG_NOT_FOUND = 5,
  REOTAG_STATE = 6,
  REOTAG_INTERNAL = 7
} reotag_status;

typedef enum reotag_format {
  REOTAG_FORMAT_TSV = 0,
  REOTAG_FORMAT_JSON = 1  /* JSON lines for corpora */
} reotag_format;

typedef struct reotag_lexicons reotag_lexicons;
typedef struct reotag_corpus reotag_corpus;
typedef struct reotag_session reotag_session;
typedef struct reotag_server reotag_server;
typedef struct reotag_lock reotag_lock;

/* Message of the last failed call on this thread, or "" if none. */
REOTAG_API const char* reotag_last_error(void);
REOTAG_API const char* reotag_status_name(reotag_status status);
REOTAG_API const char* reotag_version(void);
/* Releases any char* returned through an out parameter. */
REOTAG_API void reotag_string_free(char* s);

/* Lexicons */

REOTAG_API reotag_status reotag_lexicons_load(const char* dir, reotag_lexicons** out);
REOTAG_API void reotag_lexicons_free(reotag_lexicons* lex);
/* One "file<TAB>sha256" line per list file, then "warning<TAB>..." lines. */
REOTAG_API reotag_status reotag_lexicons_describe(const reotag_lexicons* lex, char** out);
/* list: maori | english | ambiguous | stopword | foreign. */
REOTAG_API reotag_status reotag_lexicons_add_word(reotag_lexicons* lex, const char* list,
                                                  const char* word, int persist,
                                                  size_t* indexed);
/* Writes the label character for a single word. */
REOTAG_API reotag_status reotag_label_word(const reotag_lexicons* lex, const char* word,
                                           char* label);

/* Corpora */

typedef struct reotag_label_counts {
  size_t m, p, a, u, n, s, f;
  size_t tokens;
  size_t words;
  size_t sentences;
} reotag_label_counts;

/* abbreviations: comma-separated list or NULL for the defaults. */
REOTAG_API reotag_status reotag_corpus_ingest(const char* path, const char* abbreviations,
                                              int stops_only, reotag_corpus** out);
REOTAG_API reotag_status reotag_corpus_read(const char* path, reotag_corpus** out);
REOTAG_API reotag_status reotag_corpus_parse(const char* data, size_t size,
                                             const char* source_name, reotag_corpus** out);
REOTAG_API reotag_status reotag_corpus_write(const reotag_corpus* corpus, const char* path);
REOTAG_API reotag_status reotag_corpus_serialize(const reotag_corpus* corpus,
                                                 reotag_format format, char** out);
REOTAG_API reotag_status reotag_corpus_counts(const reotag_corpus* corpus,
                                              reotag_label_counts* out);
/* Sentences with only M/P words; see export --final. */
REOTAG_API reotag_status reotag_corpus_final(const reotag_corpus* corpus, reotag_corpus** out);
REOTAG_API void reotag_corpus_free(reotag_corpus* corpus);

REOTAG_API reotag_status reotag_label(reotag_corpus* corpus, const reotag_lexicons* lex,
                                      unsigned threads);
REOTAG_API reotag_status reotag_reassess(reotag_corpus* corpus, const reotag_lexicons* lex);

typedef struct reotag_resolve_options {
  int final_rule;
  int transparency;
} reotag_resolve_options;

REOTAG_API void reotag_resolve_options_init(reotag_resolve_options* options);
/* options may be NULL for the defaults. */
REOTAG_API reotag_status reotag_resolve(reotag_corpus* corpus, int passes,
                                        const reotag_resolve_options* options);
REOTAG_API reotag_status reotag_resolve_fixpoint(reotag_corpus* corpus, int max_passes,
                                                 const reotag_resolve_options* options,
                                                 int* passes_run);

/* Annotation */

/* mode: all | top_k | min_count; param is k or the minimum count.
 * store_path may be NULL; otherwise task statuses come from it. */
REOTAG_API reotag_status reotag_trigram_tasks(const reotag_corpus* corpus, const char* mode,
                                              size_t param, const char* store_path,
                                              reotag_format format, char** out);

/* The session takes a copy of the corpus; lex may be NULL. */
REOTAG_API reotag_status reotag_session_open(const reotag_corpus* corpus,
                                             const char* store_path,
                                             const reotag_lexicons* lex, int persist_lexicons,
                                             reotag_session** out);
/* decision_json uses the decision store schema; the stored record is returned. */
REOTAG_API reotag_status reotag_session_record(reotag_session* session,
                                               const char* decision_json, char** out);
REOTAG_API reotag_status reotag_session_mark_foreign(reotag_session* session,
                                                     const char* word, const char* annotator,
                                                     char** out);
REOTAG_API reotag_status reotag_session_progress(const reotag_session* session, char** out);
REOTAG_API void reotag_session_free(reotag_session* session);

/* Applies every decision in the store; changed may be NULL. */
REOTAG_API reotag_status reotag_apply(reotag_corpus* corpus, const char* store_path,
                                      size_t* changed);

/* Analytics */

typedef struct reotag_analyze_options {
  const char* report;  /* years | freq | ngrams | lengths | foreign | stages | lint */
  const char* filter;  /* freq: all | maori | english | content_only | ... */
  int n;
  int max_n;
  size_t top_k;       /* 0 keeps every row */
  int content_only;   /* ngrams */
  reotag_format format;
} reotag_analyze_options;

REOTAG_API void reotag_analyze_options_init(reotag_analyze_options* options);
/* lex is needed for content filters and lint, otherwise may be NULL. */
REOTAG_API reotag_status reotag_analyze(const reotag_corpus* corpus, const reotag_lexicons* lex,
                                        const reotag_analyze_options* options, char** out);

/* Pipeline */

/* out_dir may be NULL to write next to the config. summary lists the files
 * written and any warnings. */
REOTAG_API reotag_status reotag_run_pipeline(const char* config_path, const char* out_dir,
                                             char** summary);

/* Annotation service */

typedef struct reotag_server_options {
  const char* corpus_path;
  const char* store_path;
  const char* lexicon_dir;  /* may be NULL */
  const char* host;
  int port;                 /* 0 picks a free port */
  int persist_lexicons;
} reotag_server_options;

REOTAG_API void reotag_server_options_init(reotag_server_options* options);
REOTAG_API reotag_status reotag_server_start(const reotag_server_options* options,
                                             reotag_server** out);
REOTAG_API int reotag_server_port(const reotag_server* server);
REOTAG_API void reotag_server_wait(reotag_server* server);
REOTAG_API void reotag_server_stop(reotag_server* server);
REOTAG_API void reotag_server_free(reotag_server* server);

/* Exclusive advisory lock on "<path>.lock"; REOTAG_STATE if already held. */
REOTAG_API reotag_status reotag_lock_acquire(const char* path, reotag_lock** out);
REOTAG_API void reotag_lock_release(reotag_lock* lock);

#ifdef __cplusplus
}
#endif

#endif /* REOTAG_REOTAG_H_ */
