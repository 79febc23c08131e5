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

#include <csignal>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <pthread.h>

#include "CLI11.hpp"
#include "reotag/reotag.h"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

// A failed library call, carrying the exit code it maps to.
struct CallError {
  reotag_status status;
  std::string message;
};

void Check(reotag_status status) {
  if (status != REOTAG_OK) throw CallError{status, reotag_last_error()};
}

struct StringDeleter {
  void operator()(char* s) const { reotag_string_free(s); }
};
using OwnedString = std::unique_ptr<char, StringDeleter>;

struct CorpusDeleter {
  void operator()(reotag_corpus* c) const { reotag_corpus_free(c); }
};
using Corpus = std::unique_ptr<reotag_corpus, CorpusDeleter>;

struct LexiconsDeleter {
  void operator()(reotag_lexicons* l) const { reotag_lexicons_free(l); }
};
using Lexicons = std::unique_ptr<reotag_lexicons, LexiconsDeleter>;

struct LockDeleter {
  void operator()(reotag_lock* l) const { reotag_lock_release(l); }
};
using Lock = std::unique_ptr<reotag_lock, LockDeleter>;

struct SessionDeleter {
  void operator()(reotag_session* s) const { reotag_session_free(s); }
};

struct ServerDeleter {
  void operator()(reotag_server* s) const { reotag_server_free(s); }
};

std::string DefaultLexiconDir() {
  const char* env = std::getenv("REOTAG_LEXICON_DIR");
  return env == nullptr ? "" : env;
}

Lexicons LoadLexicons(const std::string& dir) {
  if (dir.empty()) {
    throw CallError{REOTAG_INVALID_ARGUMENT,
                    "no lexicon directory: pass --lexicon-dir or set REOTAG_LEXICON_DIR"};
  }
  reotag_lexicons* lex = nullptr;
  Check(reotag_lexicons_load(dir.c_str(), &lex));
  Lexicons owned(lex);
  char* desc = nullptr;
  Check(reotag_lexicons_describe(lex, &desc));
  OwnedString d(desc);
  std::string s = d.get();
  std::size_t pos = 0;
  while ((pos = s.find("warning\t", pos)) != std::string::npos) {
    const auto end = s.find('\n', pos);
    std::cerr << "reo-tag: " << s.substr(pos + 8, end - pos - 8) << '\n';
    pos = end;
  }
  return owned;
}

Corpus ReadCorpus(const std::string& path) {
  reotag_corpus* c = nullptr;
  if (path == "-") {
    std::string data{std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    Check(reotag_corpus_parse(data.data(), data.size(), "<stdin>", &c));
  } else {
    Check(reotag_corpus_read(path.c_str(), &c));
  }
  return Corpus(c);
}

void WriteCorpus(const reotag_corpus* corpus, const std::string& path,
                 reotag_format format = REOTAG_FORMAT_TSV) {
  if (path == "-" || format == REOTAG_FORMAT_JSON) {
    char* s = nullptr;
    Check(reotag_corpus_serialize(corpus, format, &s));
    OwnedString owned(s);
    if (path == "-") {
      std::cout << owned.get();
      return;
    }
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (f == nullptr) throw CallError{REOTAG_IO, "cannot write " + path};
    const std::string_view data(owned.get());
    const bool ok = std::fwrite(data.data(), 1, data.size(), f) == data.size();
    if (std::fclose(f) != 0 || !ok) throw CallError{REOTAG_IO, "cannot write " + path};
    return;
  }
  reotag_lock* lock = nullptr;
  Check(reotag_lock_acquire(path.c_str(), &lock));
  Lock held(lock);
  Check(reotag_corpus_write(corpus, path.c_str()));
}

void PrintStages(const reotag_corpus* corpus) {
  reotag_analyze_options opts;
  reotag_analyze_options_init(&opts);
  opts.report = "stages";
  char* s = nullptr;
  Check(reotag_analyze(corpus, nullptr, &opts, &s));
  OwnedString owned(s);
  std::cerr << owned.get();
}

reotag_format ParseFormat(const std::string& name) {
  return name == "json" || name == "jsonl" ? REOTAG_FORMAT_JSON : REOTAG_FORMAT_TSV;
}

std::string JsonEscape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

void PrintVersion(const std::string& lexicon_dir) {
  std::cout << "reo-tag " << reotag_version() << '\n';
  if (lexicon_dir.empty()) return;
  reotag_lexicons* lex = nullptr;
  Check(reotag_lexicons_load(lexicon_dir.c_str(), &lex));
  Lexicons owned(lex);
  char* desc = nullptr;
  Check(reotag_lexicons_describe(lex, &desc));
  OwnedString d(desc);
  std::cout << "lexicons " << lexicon_dir << '\n' << d.get();
}

int Serve(const reotag_server_options& options) {
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);
  reotag_server* raw = nullptr;
  Check(reotag_server_start(&options, &raw));
  std::unique_ptr<reotag_server, ServerDeleter> server(raw);
  std::cerr << "reo-tag: serving on http://" << options.host << ':'
            << reotag_server_port(raw) << '\n';
  int sig = 0;
  sigwait(&signals, &sig);
  reotag_server_stop(raw);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Word-level Māori/English language labelling toolkit"};
  app.require_subcommand(0, 1);
  bool show_version = false;
  std::string lexicon_dir = DefaultLexiconDir();
  app.add_flag("--version", show_version, "Print version and lexicon checksums");

  auto add_lexicon_opt = [&](CLI::App* cmd) {
    cmd->add_option("--lexicon-dir", lexicon_dir, "Word list directory (default $REOTAG_LEXICON_DIR)");
  };
  add_lexicon_opt(&app);

  std::string in = "-", out = "-", format = "tsv";

  // ingest
  auto* ingest = app.add_subcommand("ingest", "Extract, split and tokenize source documents");
  std::optional<std::string> abbreviations;
  bool stops_only = false;
  ingest->add_option("--in", in, "Source file or directory")->required();
  ingest->add_option("--out", out, "Output corpus (default stdout)");
  ingest->add_option("--abbreviations", abbreviations, "Comma-separated non-terminal abbreviations");
  ingest->add_flag("--stops-only", stops_only, "Only '.' ends a sentence");
  ingest->add_option("--format", format, "tsv or jsonl")->check(CLI::IsMember({"tsv", "jsonl"}));

  // label
  unsigned threads = 1;
  auto* label = app.add_subcommand("label", "Apply the word labelling rules");
  label->add_option("--in", in, "Input corpus (default stdin)");
  label->add_option("--out", out, "Output corpus (default stdout)");
  label->add_option("--threads", threads, "Worker threads")->check(CLI::Range(1u, 256u));
  add_lexicon_opt(label);

  // resolve
  int passes = 1, max_passes = 10;
  bool fixpoint = false, no_final_rule = false, no_transparency = false;
  auto* resolve = app.add_subcommand("resolve", "Resolve ambiguous words from context");
  resolve->add_option("--in", in, "Input corpus (default stdin)");
  resolve->add_option("--out", out, "Output corpus (default stdout)");
  auto* passes_opt = resolve->add_option("--passes", passes, "Number of passes")->check(CLI::PositiveNumber);
  auto* fix_opt = resolve->add_flag("--fixpoint", fixpoint, "Repeat until nothing changes");
  resolve->add_option("--max-passes", max_passes, "Pass limit for --fixpoint")->check(CLI::PositiveNumber);
  passes_opt->excludes(fix_opt);
  resolve->add_flag("--no-final-rule", no_final_rule, "Disable the sentence-final rule");
  resolve->add_flag("--no-transparency", no_transparency, "Let punctuation and numbers block context");

  // reassess
  auto* reassess = app.add_subcommand("reassess", "Relabel unclear words against current lexicons");
  reassess->add_option("--in", in, "Input corpus (default stdin)");
  reassess->add_option("--out", out, "Output corpus (default stdout)");
  add_lexicon_opt(reassess);

  // trigrams
  std::string mode = "top_k";
  std::size_t k = 20, min_count = 10;
  std::optional<std::string> store;
  auto* trigrams = app.add_subcommand("trigrams", "List trigram annotation tasks");
  trigrams->add_option("--in", in, "Input corpus (default stdin)");
  trigrams->add_option("--mode", mode, "all, top_k or min_count")
      ->check(CLI::IsMember({"all", "top_k", "min_count"}));
  trigrams->add_option("-k,--k", k, "Task count for top_k");
  trigrams->add_option("--min-count", min_count, "Threshold for min_count");
  trigrams->add_option("--store", store, "Decision store for task status");
  trigrams->add_option("--format", format, "tsv or json")->check(CLI::IsMember({"tsv", "json"}));

  // decide
  std::string store_path, task, word, decided_label = "F", annotator, lexicon_update;
  std::vector<std::string> assignments;
  bool skip = false, persist_lexicon = false;
  auto* decide = app.add_subcommand("decide", "Append a decision to a store");
  decide->add_option("--in", in, "Corpus the tasks come from")->required();
  decide->add_option("--store", store_path, "Decision store")->required();
  auto* task_opt = decide->add_option("--task", task, "Trigram task id");
  decide->add_option("--assign", assignments, "POSITION=LABEL, repeatable");
  decide->add_flag("--skip", skip, "Skip the task");
  auto* word_opt = decide->add_option("--word", word, "Word-scoped decision");
  decide->add_option("--label", decided_label, "Label for --word (M, P or F)")
      ->check(CLI::IsMember({"M", "P", "F"}));
  decide->add_option("--annotator", annotator, "Annotator name");
  decide->add_option("--lexicon-update", lexicon_update, "WORD:LIST to add with this decision");
  decide->add_flag("--persist-lexicon", persist_lexicon, "Write lexicon updates back to disk");
  add_lexicon_opt(decide);
  task_opt->excludes(word_opt);

  // apply
  std::vector<std::string> stores;
  auto* apply = app.add_subcommand("apply", "Apply decision stores to a corpus");
  apply->add_option("--in", in, "Input corpus (default stdin)");
  apply->add_option("--out", out, "Output corpus (default stdout)");
  apply->add_option("--store", stores, "Decision store, repeatable (applied in order)")->required();

  // analyze
  reotag_analyze_options analyze_opts;
  reotag_analyze_options_init(&analyze_opts);
  std::string report = "stages", filter = "all";
  bool content_only = false;
  auto* analyze = app.add_subcommand("analyze", "Corpus reports");
  analyze->add_option("--in", in, "Input corpus (default stdin)");
  analyze->add_option("--report", report, "years, freq, ngrams, lengths, foreign, stages or lint")
      ->check(CLI::IsMember({"years", "freq", "ngrams", "lengths", "foreign", "stages", "lint"}));
  analyze->add_option("--format", format, "tsv or json")->check(CLI::IsMember({"tsv", "json"}));
  analyze->add_option("--filter", filter, "freq filter");
  analyze->add_option("-n,--n", analyze_opts.n, "ngram size");
  analyze->add_option("--max-n", analyze_opts.max_n, "largest permitted ngram size");
  analyze->add_option("--top-k", analyze_opts.top_k, "rows to keep (0 keeps all)");
  analyze->add_flag("--content-only", content_only, "drop stopwords before counting ngrams");
  add_lexicon_opt(analyze);

  // export
  bool final_only = false;
  auto* exp = app.add_subcommand("export", "Write the corpus, optionally the final gold set only");
  exp->add_option("--in", in, "Input corpus (default stdin)");
  exp->add_option("--out", out, "Output (default stdout)");
  exp->add_flag("--final", final_only, "Keep only sentences whose words are all M or P");
  exp->add_option("--format", format, "tsv or jsonl")->check(CLI::IsMember({"tsv", "jsonl"}));

  // serve
  reotag_server_options serve_opts;
  reotag_server_options_init(&serve_opts);
  std::string host = serve_opts.host;
  int port = serve_opts.port;
  bool no_persist = false;
  auto* serve = app.add_subcommand("serve", "Run the annotation HTTP service");
  serve->add_option("--corpus", in, "Corpus to annotate")->required();
  serve->add_option("--store", store_path, "Decision store")->required();
  serve->add_option("--host", host, "Bind address");
  serve->add_option("--port", port, "Port (0 picks a free one)");
  serve->add_flag("--no-persist-lexicons", no_persist, "Keep lexicon additions in memory");
  add_lexicon_opt(serve);

  // run
  std::string config;
  std::optional<std::string> out_dir;
  auto* run = app.add_subcommand("run", "Run a configured pipeline");
  run->add_option("config", config, "Pipeline config file")->required();
  run->add_option("--out-dir", out_dir, "Directory for outputs (default: config directory)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (show_version) {
      PrintVersion(lexicon_dir);
      return 0;
    }
    if (*ingest) {
      reotag_corpus* c = nullptr;
      Check(reotag_corpus_ingest(in.c_str(), abbreviations ? abbreviations->c_str() : nullptr,
                                 stops_only ? 1 : 0, &c));
      Corpus corpus(c);
      WriteCorpus(corpus.get(), out, ParseFormat(format));
    } else if (*label) {
      Lexicons lex = LoadLexicons(lexicon_dir);
      Corpus corpus = ReadCorpus(in);
      Check(reotag_label(corpus.get(), lex.get(), threads));
      WriteCorpus(corpus.get(), out);
    } else if (*resolve) {
      Corpus corpus = ReadCorpus(in);
      reotag_resolve_options ro;
      reotag_resolve_options_init(&ro);
      ro.final_rule = no_final_rule ? 0 : 1;
      ro.transparency = no_transparency ? 0 : 1;
      if (fixpoint) {
        int ran = 0;
        Check(reotag_resolve_fixpoint(corpus.get(), max_passes, &ro, &ran));
      } else {
        Check(reotag_resolve(corpus.get(), passes, &ro));
      }
      WriteCorpus(corpus.get(), out);
      PrintStages(corpus.get());
    } else if (*reassess) {
      Lexicons lex = LoadLexicons(lexicon_dir);
      Corpus corpus = ReadCorpus(in);
      Check(reotag_reassess(corpus.get(), lex.get()));
      WriteCorpus(corpus.get(), out);
    } else if (*trigrams) {
      Corpus corpus = ReadCorpus(in);
      const std::size_t param = mode == "top_k" ? k : mode == "min_count" ? min_count : 0;
      char* s = nullptr;
      Check(reotag_trigram_tasks(corpus.get(), mode.c_str(), param,
                                 store ? store->c_str() : nullptr, ParseFormat(format), &s));
      OwnedString owned(s);
      std::cout << owned.get();
    } else if (*decide) {
      std::string body;
      if (!word.empty()) {
        body = R"({"kind":"word","word":")" + JsonEscape(word) + R"(","label":")" +
               decided_label + "\"";
      } else if (!task.empty()) {
        body = R"({"kind":")" + std::string(skip ? "skip" : "trigram") + R"(","task_id":")" +
               JsonEscape(task) + "\"";
        if (!skip) {
          if (assignments.empty()) {
            throw CallError{REOTAG_INVALID_ARGUMENT, "--assign is required for a trigram decision"};
          }
          body += R"(,"assignments":{)";
          for (std::size_t i = 0; i < assignments.size(); ++i) {
            const auto eq = assignments[i].find('=');
            if (eq == std::string::npos) {
              throw CallError{REOTAG_INVALID_ARGUMENT, "--assign expects POSITION=LABEL"};
            }
            const std::string label = assignments[i].substr(eq + 1);
            if (label != "M" && label != "P" && label != "F") {
              throw CallError{REOTAG_INVALID_ARGUMENT, "--assign label must be M, P or F"};
            }
            body += (i ? "," : "") + std::string("\"") + JsonEscape(assignments[i].substr(0, eq)) +
                    "\":\"" + JsonEscape(assignments[i].substr(eq + 1)) + "\"";
          }
          body += "}";
        }
      } else {
        throw CallError{REOTAG_INVALID_ARGUMENT, "decide needs --task or --word"};
      }
      body += R"(,"annotator":")" + JsonEscape(annotator) + "\"";
      if (!lexicon_update.empty()) {
        const auto colon = lexicon_update.rfind(':');
        if (colon == std::string::npos) {
          throw CallError{REOTAG_INVALID_ARGUMENT, "--lexicon-update expects WORD:LIST"};
        }
        body += R"(,"lexicon_update":{"word":")" + JsonEscape(lexicon_update.substr(0, colon)) +
                R"(","list":")" + JsonEscape(lexicon_update.substr(colon + 1)) + "\"}";
      }
      body += "}";
      Corpus corpus = ReadCorpus(in);
      Lexicons lex;
      if (!lexicon_dir.empty()) lex = LoadLexicons(lexicon_dir);
      reotag_session* raw = nullptr;
      Check(reotag_session_open(corpus.get(), store_path.c_str(), lex.get(),
                                persist_lexicon ? 1 : 0, &raw));
      std::unique_ptr<reotag_session, SessionDeleter> session(raw);
      char* s = nullptr;
      Check(reotag_session_record(raw, body.c_str(), &s));
      OwnedString owned(s);
      std::cout << owned.get() << '\n';
    } else if (*apply) {
      Corpus corpus = ReadCorpus(in);
      for (const auto& st : stores) {
        std::size_t changed = 0;
        Check(reotag_apply(corpus.get(), st.c_str(), &changed));
        std::cerr << "reo-tag: " << st << ": " << changed << " tokens relabelled\n";
      }
      WriteCorpus(corpus.get(), out);
    } else if (*analyze) {
      Corpus corpus = ReadCorpus(in);
      Lexicons lex;
      if (!lexicon_dir.empty()) lex = LoadLexicons(lexicon_dir);
      analyze_opts.report = report.c_str();
      analyze_opts.filter = filter.c_str();
      analyze_opts.content_only = content_only ? 1 : 0;
      analyze_opts.format = ParseFormat(format);
      char* s = nullptr;
      Check(reotag_analyze(corpus.get(), lex.get(), &analyze_opts, &s));
      OwnedString owned(s);
      std::cout << owned.get();
    } else if (*exp) {
      Corpus corpus = ReadCorpus(in);
      if (final_only) {
        reotag_corpus* f = nullptr;
        Check(reotag_corpus_final(corpus.get(), &f));
        corpus.reset(f);
      }
      WriteCorpus(corpus.get(), out, ParseFormat(format));
    } else if (*serve) {
      serve_opts.corpus_path = in.c_str();
      serve_opts.store_path = store_path.c_str();
      serve_opts.lexicon_dir = lexicon_dir.empty() ? nullptr : lexicon_dir.c_str();
      serve_opts.host = host.c_str();
      serve_opts.port = port;
      serve_opts.persist_lexicons = no_persist ? 0 : 1;
      return Serve(serve_opts);
    } else if (*run) {
      char* s = nullptr;
      Check(reotag_run_pipeline(config.c_str(), out_dir ? out_dir->c_str() : nullptr, &s));
      OwnedString owned(s);
      std::cerr << owned.get();
    } else {
      std::cerr << app.help();
      return kExitUsage;
    }
  } catch (const CallError& e) {
    std::cerr << "reo-tag: " << e.message << '\n';
    return e.status == REOTAG_INVALID_ARGUMENT ? kExitUsage : kExitData;
  }
  return 0;
}
