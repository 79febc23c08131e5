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

#include "reotag/annotation.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <ctime>
#include <tuple>

#include "reotag/corpus_io.hpp"
#include "reotag/error.hpp"
#include "reotag/text.hpp"

namespace reotag::annotation {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string NowUtc() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string_view KindName(DecisionKind kind) {
  switch (kind) {
    case DecisionKind::kTrigram: return "trigram";
    case DecisionKind::kWord: return "word";
    case DecisionKind::kSkip: return "skip";
  }
  return "unknown";
}

bool IsDecisionLabel(Label l) {
  return l == Label::kM || l == Label::kP || l == Label::kF;
}

Label ParseDecisionLabel(const json& j) {
  if (!j.is_string()) Fail(ErrorCode::kParse, "label must be a string");
  const auto label = ParseLabel(j.get<std::string>());
  if (!label || !IsDecisionLabel(*label)) {
    Fail(ErrorCode::kParse, "label must be one of M, P, F");
  }
  return *label;
}

std::string RequireString(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_string()) {
    Fail(ErrorCode::kParse, std::string("missing string field '") + key + "'");
  }
  return j[key].get<std::string>();
}

// Word indices of each sentence, skipping S/N tokens.
std::vector<std::size_t> WordIndices(const LabelledSentence& s) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < s.tokens.size(); ++i) {
    if (s.tokens[i].is_word()) idx.push_back(i);
  }
  return idx;
}

}  // namespace

std::string TaskId(const Trigram& words) {
  return "tri-" + text::Sha256Hex(words[0] + " " + words[1] + " " + words[2]).substr(0, 16);
}

std::string_view TaskStatusName(TaskStatus status) {
  switch (status) {
    case TaskStatus::kPending: return "pending";
    case TaskStatus::kDone: return "done";
    case TaskStatus::kSkipped: return "skipped";
  }
  return "unknown";
}

std::vector<TrigramTask> ExtractTrigramTasks(const Corpus& corpus,
                                             TaskSelection selection) {
  std::map<Trigram, TrigramTask> found;
  for (const auto& s : corpus.sentences) {
    const auto idx = WordIndices(s);
    for (std::size_t w = 0; w + 3 <= idx.size(); ++w) {
      bool any_a = false;
      for (int p = 0; p < 3; ++p) any_a |= s.tokens[idx[w + p]].label == Label::kA;
      if (!any_a) continue;
      const Trigram words = {s.tokens[idx[w]].lower, s.tokens[idx[w + 1]].lower,
                             s.tokens[idx[w + 2]].lower};
      TrigramTask& task = found[words];
      task.words = words;
      ++task.count;
      for (int p = 0; p < 3; ++p) {
        if (s.tokens[idx[w + p]].label == Label::kA) task.ambiguous_positions.insert(p + 1);
      }
      const bool seen = !task.samples.empty() && task.samples.back().doc == s.doc &&
                        task.samples.back().seq == s.seq && task.samples.back().date == s.date;
      if (!seen && task.samples.size() < 5) {
        task.samples.push_back({s.date, s.doc, s.seq, s.Text()});
      }
    }
  }
  std::vector<TrigramTask> tasks;
  tasks.reserve(found.size());
  for (auto& [words, task] : found) {
    task.task_id = TaskId(words);
    tasks.push_back(std::move(task));
  }
  std::stable_sort(tasks.begin(), tasks.end(), [](const auto& a, const auto& b) {
    if (a.count != b.count) return a.count > b.count;
    return a.words < b.words;
  });
  switch (selection.mode) {
    case TaskSelection::Mode::kAll:
      break;
    case TaskSelection::Mode::kTopK:
      if (tasks.size() > selection.value) tasks.resize(selection.value);
      break;
    case TaskSelection::Mode::kMinCount:
      std::erase_if(tasks, [&](const auto& t) { return t.count < selection.value; });
      break;
  }
  return tasks;
}

ordered_json DecisionToJson(const Decision& d) {
  ordered_json j;
  j["seq"] = d.seq;
  j["kind"] = KindName(d.kind);
  switch (d.kind) {
    case DecisionKind::kTrigram: {
      j["task_id"] = d.task_id;
      j["words"] = d.words;
      ordered_json a = ordered_json::object();
      for (const auto& [pos, label] : d.assignments) {
        a[std::to_string(pos)] = std::string(1, LabelChar(label));
      }
      j["assignments"] = std::move(a);
      break;
    }
    case DecisionKind::kWord:
      j["word"] = d.word;
      j["label"] = std::string(1, LabelChar(d.label));
      break;
    case DecisionKind::kSkip:
      j["task_id"] = d.task_id;
      j["words"] = d.words;
      break;
  }
  j["annotator"] = d.annotator;
  j["timestamp"] = d.timestamp;
  if (d.lexicon_update) {
    j["lexicon_update"] = {{"word", d.lexicon_update->word},
                           {"list", LexiconKindName(d.lexicon_update->list)}};
  }
  return j;
}

Decision DecisionFromJson(const json& j) {
  if (!j.is_object()) Fail(ErrorCode::kParse, "decision must be a JSON object");
  Decision d;
  if (j.contains("seq")) {
    if (!j["seq"].is_number_unsigned()) Fail(ErrorCode::kParse, "seq must be a number");
    d.seq = j["seq"].get<std::size_t>();
  }
  std::string kind = j.contains("kind") && j["kind"].is_string()
                         ? j["kind"].get<std::string>()
                         : (j.contains("word") && !j.contains("task_id") ? "word" : "trigram");
  if (kind == "trigram" || kind == "skip") {
    d.kind = kind == "trigram" ? DecisionKind::kTrigram : DecisionKind::kSkip;
    d.task_id = RequireString(j, "task_id");
    if (j.contains("words")) {
      const auto& w = j["words"];
      if (!w.is_array() || w.size() != 3) Fail(ErrorCode::kParse, "words must list three words");
      for (std::size_t i = 0; i < 3; ++i) {
        if (!w[i].is_string()) Fail(ErrorCode::kParse, "words must be strings");
        d.words[i] = w[i].get<std::string>();
      }
    }
    if (d.kind == DecisionKind::kTrigram) {
      if (!j.contains("assignments") || !j["assignments"].is_object()) {
        Fail(ErrorCode::kParse, "missing object field 'assignments'");
      }
      for (const auto& [key, value] : j["assignments"].items()) {
        int pos = 0;
        if (key.size() != 1 || key[0] < '1' || key[0] > '3') {
          Fail(ErrorCode::kParse, "assignment position must be 1, 2 or 3");
        }
        pos = key[0] - '0';
        d.assignments[pos] = ParseDecisionLabel(value);
      }
    }
  } else if (kind == "word") {
    d.kind = DecisionKind::kWord;
    d.word = RequireString(j, "word");
    if (!j.contains("label")) Fail(ErrorCode::kParse, "missing field 'label'");
    d.label = ParseDecisionLabel(j["label"]);
  } else {
    Fail(ErrorCode::kParse, "unknown decision kind '" + kind + "'");
  }
  if (j.contains("annotator")) {
    if (!j["annotator"].is_string()) Fail(ErrorCode::kParse, "annotator must be a string");
    d.annotator = j["annotator"].get<std::string>();
  }
  if (j.contains("timestamp")) {
    if (!j["timestamp"].is_string()) Fail(ErrorCode::kParse, "timestamp must be a string");
    d.timestamp = j["timestamp"].get<std::string>();
  }
  if (j.contains("lexicon_update") && !j["lexicon_update"].is_null()) {
    const auto& u = j["lexicon_update"];
    if (!u.is_object()) Fail(ErrorCode::kParse, "lexicon_update must be an object");
    LexiconUpdate update;
    update.word = RequireString(u, "word");
    const auto list = ParseLexiconKind(RequireString(u, "list"));
    if (!list) Fail(ErrorCode::kParse, "unknown lexicon list");
    update.list = *list;
    d.lexicon_update = std::move(update);
  }
  return d;
}

DecisionStore DecisionStore::Open(const std::filesystem::path& path) {
  DecisionStore store;
  store.path_ = path;
  std::error_code ec;
  if (!std::filesystem::exists(path, ec)) return store;
  const std::string data = ReadFile(path);
  std::size_t line_no = 0, start = 0;
  while (start < data.size()) {
    auto end = data.find('\n', start);
    if (end == std::string::npos) end = data.size();
    const std::string_view line = text::Trim(std::string_view(data).substr(start, end - start));
    start = end + 1;
    ++line_no;
    if (line.empty()) continue;
    try {
      Decision d = DecisionFromJson(json::parse(line));
      if (d.seq != store.decisions_.size() + 1) {
        Fail(ErrorCode::kParse, "out-of-order seq " + std::to_string(d.seq));
      }
      if (d.kind != DecisionKind::kWord) {
        store.status_[d.task_id] =
            d.kind == DecisionKind::kSkip ? TaskStatus::kSkipped : TaskStatus::kDone;
      }
      store.decisions_.push_back(std::move(d));
    } catch (const json::exception& e) {
      Fail(ErrorCode::kParse, path.string() + ":" + std::to_string(line_no) + ": " +
                                  e.what() + ": " + std::string(line));
    } catch (const Error& e) {
      Fail(ErrorCode::kParse, path.string() + ":" + std::to_string(line_no) + ": " +
                                  e.what() + ": " + std::string(line));
    }
  }
  return store;
}

const Decision& DecisionStore::Append(Decision decision) {
  decision.seq = decisions_.size() + 1;
  if (!path_.empty()) {
    const std::string line = DecisionToJson(decision).dump() + "\n";
    const int fd = ::open(path_.c_str(), O_WRONLY | O_CREAT | O_APPEND | O_CLOEXEC, 0644);
    if (fd < 0) Fail(ErrorCode::kIo, "cannot open decision store " + path_.string());
    std::size_t written = 0;
    while (written < line.size()) {
      const auto n = ::write(fd, line.data() + written, line.size() - written);
      if (n < 0) {
        ::close(fd);
        Fail(ErrorCode::kIo, "cannot append to " + path_.string());
      }
      written += static_cast<std::size_t>(n);
    }
    const bool synced = ::fsync(fd) == 0;
    ::close(fd);
    if (!synced) Fail(ErrorCode::kIo, "cannot sync " + path_.string());
  }
  if (decision.kind != DecisionKind::kWord) {
    status_[decision.task_id] =
        decision.kind == DecisionKind::kSkip ? TaskStatus::kSkipped : TaskStatus::kDone;
  }
  decisions_.push_back(std::move(decision));
  return decisions_.back();
}

TaskStatus DecisionStore::StatusOf(const std::string& task_id) const {
  const auto it = status_.find(task_id);
  return it == status_.end() ? TaskStatus::kPending : it->second;
}

std::pair<Corpus, StageDelta> ApplyDecisions(Corpus corpus,
                                             const std::vector<Decision>& decisions) {
  // Latest decision per trigram and per word, ranked by log position.
  struct Rule {
    std::size_t rank;
    const Decision* decision;
  };
  std::map<Trigram, Rule> trigram_rules;
  std::map<std::string, Rule> word_rules;
  for (std::size_t i = 0; i < decisions.size(); ++i) {
    const Decision& d = decisions[i];
    if (d.kind == DecisionKind::kTrigram) {
      trigram_rules[d.words] = {i + 1, &d};
    } else if (d.kind == DecisionKind::kWord) {
      word_rules[NormalizeWord(d.word)] = {i + 1, &d};
    }
  }
  const Corpus before = corpus;
  for (auto& s : corpus.sentences) {
    const auto idx = WordIndices(s);
    // (rank, label) of the winning decision for each word position.
    std::vector<std::pair<std::size_t, Label>> best(idx.size(), {0, Label::kU});
    for (std::size_t w = 0; w < idx.size(); ++w) {
      const Token& t = s.tokens[idx[w]];
      if (t.label != Label::kA && t.label != Label::kU) continue;
      const auto it = word_rules.find(t.lower);
      if (it != word_rules.end() && it->second.rank > best[w].first) {
        best[w] = {it->second.rank, it->second.decision->label};
      }
    }
    if (!trigram_rules.empty()) {
      for (std::size_t w = 0; w + 3 <= idx.size(); ++w) {
        const Trigram words = {s.tokens[idx[w]].lower, s.tokens[idx[w + 1]].lower,
                               s.tokens[idx[w + 2]].lower};
        const auto it = trigram_rules.find(words);
        if (it == trigram_rules.end()) continue;
        const Rule& rule = it->second;
        for (const auto& [pos, label] : rule.decision->assignments) {
          const std::size_t k = w + static_cast<std::size_t>(pos) - 1;
          if (s.tokens[idx[k]].label != Label::kA) continue;
          if (rule.rank > best[k].first) best[k] = {rule.rank, label};
        }
      }
    }
    for (std::size_t w = 0; w < idx.size(); ++w) {
      if (best[w].first > 0) s.tokens[idx[w]].label = best[w].second;
    }
  }
  StageDelta delta;
  delta.stage = "apply";
  delta.before = before.Counts();
  delta.after = corpus.Counts();
  delta.changed = CountChangedLabels(before, corpus);
  corpus.history.push_back(delta);
  return {std::move(corpus), std::move(delta)};
}

LexiconSet ApplyLexiconUpdates(const LexiconSet& lexicons,
                               const std::vector<Decision>& decisions,
                               std::vector<std::string>* warnings) {
  LexiconSet out = lexicons;
  for (const Decision& d : decisions) {
    if (!d.lexicon_update) continue;
    try {
      out = out.WithWord(d.lexicon_update->list, d.lexicon_update->word, false);
    } catch (const Error& e) {
      if (warnings) {
        warnings->push_back("decision " + std::to_string(d.seq) + ": lexicon update '" +
                            d.lexicon_update->word + "' skipped: " + e.what());
      }
    }
  }
  return out;
}

ordered_json TaskToJson(const TrigramTask& task) {
  ordered_json j;
  j["task_id"] = task.task_id;
  j["words"] = task.words;
  j["count"] = task.count;
  j["ambiguous_positions"] = task.ambiguous_positions;
  auto samples = ordered_json::array();
  for (const auto& s : task.samples) {
    samples.push_back({{"date", s.date.ToString()}, {"doc", s.doc}, {"seq", s.seq}, {"text", s.text}});
  }
  j["samples"] = std::move(samples);
  j["status"] = TaskStatusName(task.status);
  return j;
}

ordered_json ProgressToJson(const Progress& p) {
  ordered_json j;
  j["labels"] = CountsToJson(p.labels);
  j["pending"] = p.pending;
  j["done"] = p.done;
  j["skipped"] = p.skipped;
  j["total"] = p.total;
  return j;
}

AnnotationSession::AnnotationSession(Corpus corpus, DecisionStore store,
                                     std::shared_ptr<const LexiconSet> lexicons,
                                     bool persist_lexicons)
    : base_(std::move(corpus)),
      store_(std::move(store)),
      lexicons_(std::move(lexicons)),
      persist_lexicons_(persist_lexicons),
      universe_(ExtractTrigramTasks(base_, TaskSelection::All())) {
  for (std::size_t i = 0; i < universe_.size(); ++i) by_id_[universe_[i].task_id] = i;
}

std::vector<TrigramTask> AnnotationSession::Tasks(TaskSelection selection) const {
  std::vector<TrigramTask> tasks;
  for (const auto& t : universe_) {
    if (selection.mode == TaskSelection::Mode::kMinCount && t.count < selection.value) continue;
    if (selection.mode == TaskSelection::Mode::kTopK && tasks.size() >= selection.value) break;
    tasks.push_back(t);
    tasks.back().status = store_.StatusOf(t.task_id);
  }
  return tasks;
}

std::optional<TrigramTask> AnnotationSession::FindTask(const std::string& task_id) const {
  const auto it = by_id_.find(task_id);
  if (it == by_id_.end()) return std::nullopt;
  TrigramTask task = universe_[it->second];
  task.status = store_.StatusOf(task_id);
  return task;
}

const Decision& AnnotationSession::Record(Decision decision) {
  switch (decision.kind) {
    case DecisionKind::kTrigram:
    case DecisionKind::kSkip: {
      const auto task = FindTask(decision.task_id);
      if (!task) Fail(ErrorCode::kNotFound, "unknown task " + decision.task_id);
      decision.words = task->words;
      if (decision.kind == DecisionKind::kTrigram) {
        if (decision.assignments.empty()) {
          Fail(ErrorCode::kInvalidArgument, "decision assigns no positions");
        }
        for (const auto& [pos, label] : decision.assignments) {
          if (!task->ambiguous_positions.contains(pos)) {
            Fail(ErrorCode::kInvalidArgument,
                 "position " + std::to_string(pos) + " is not ambiguous in task " +
                     decision.task_id);
          }
          if (!IsDecisionLabel(label)) {
            Fail(ErrorCode::kInvalidArgument, "labels must be M, P or F");
          }
        }
      }
      break;
    }
    case DecisionKind::kWord:
      decision.word = NormalizeWord(decision.word);
      if (decision.word.empty()) Fail(ErrorCode::kInvalidArgument, "empty word");
      if (!IsDecisionLabel(decision.label)) {
        Fail(ErrorCode::kInvalidArgument, "labels must be M, P or F");
      }
      break;
  }
  std::shared_ptr<const LexiconSet> updated;
  if (decision.lexicon_update && lexicons_) {
    // Check for conflicts before anything is written.
    updated = std::make_shared<const LexiconSet>(lexicons_->WithWord(
        decision.lexicon_update->list, decision.lexicon_update->word, false));
  }
  if (decision.timestamp.empty()) decision.timestamp = NowUtc();
  const Decision& stored = store_.Append(std::move(decision));
  if (updated) {
    if (persist_lexicons_) {
      updated = std::make_shared<const LexiconSet>(lexicons_->WithWord(
          stored.lexicon_update->list, stored.lexicon_update->word, true));
    }
    lexicons_ = std::move(updated);
  }
  return stored;
}

const Decision& AnnotationSession::MarkForeign(const std::string& word,
                                               const std::string& annotator) {
  Decision d;
  d.kind = DecisionKind::kWord;
  d.word = word;
  d.label = Label::kF;
  d.annotator = annotator;
  return Record(std::move(d));
}

std::size_t AnnotationSession::AddWord(LexiconKind kind, const std::string& word) {
  if (!lexicons_) Fail(ErrorCode::kState, "no lexicons loaded");
  std::size_t indexed = 0;
  lexicons_ = std::make_shared<const LexiconSet>(
      lexicons_->WithWord(kind, word, persist_lexicons_, &indexed));
  return indexed;
}

Corpus AnnotationSession::Projected() const {
  return ApplyDecisions(base_, store_.decisions()).first;
}

Progress AnnotationSession::CurrentProgress() const {
  Progress p;
  p.labels = Projected().Counts();
  p.total = universe_.size();
  for (const auto& t : universe_) {
    switch (store_.StatusOf(t.task_id)) {
      case TaskStatus::kPending: ++p.pending; break;
      case TaskStatus::kDone: ++p.done; break;
      case TaskStatus::kSkipped: ++p.skipped; break;
    }
  }
  return p;
}

}  // namespace reotag::annotation
