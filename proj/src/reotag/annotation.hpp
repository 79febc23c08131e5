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

#ifndef REOTAG_ANNOTATION_HPP_
#define REOTAG_ANNOTATION_HPP_

#include <array>
#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "reotag/corpus.hpp"
#include "reotag/lexicon.hpp"

namespace reotag::annotation {

using Trigram = std::array<std::string, 3>;

// Stable across corpus versions: derived from the lowercased words only.
std::string TaskId(const Trigram& words);

enum class TaskStatus { kPending, kDone, kSkipped };
std::string_view TaskStatusName(TaskStatus status);

struct SentenceRef {
  Date date;
  std::string doc;
  std::size_t seq = 0;
  std::string text;
};

struct TrigramTask {
  std::string task_id;
  Trigram words;
  // Windows of these three words that contain at least one A token.
  std::size_t count = 0;
  // 1-based window positions that were A in at least one such window.
  std::set<int> ambiguous_positions;
  // First five distinct sentences, corpus order.
  std::vector<SentenceRef> samples;
  TaskStatus status = TaskStatus::kPending;
};

struct TaskSelection {
  enum class Mode { kAll, kTopK, kMinCount };
  Mode mode = Mode::kTopK;
  std::size_t value = 20;

  static TaskSelection All() { return {Mode::kAll, 0}; }
  static TaskSelection TopK(std::size_t k = 20) { return {Mode::kTopK, k}; }
  static TaskSelection MinCount(std::size_t c = 10) { return {Mode::kMinCount, c}; }
};

// Windows are three consecutive word tokens of one sentence (S/N tokens are
// skipped, sentences never join). Ranked by count descending, then by the
// words' byte order.
std::vector<TrigramTask> ExtractTrigramTasks(const Corpus& corpus,
                                             TaskSelection selection = {});

struct LexiconUpdate {
  std::string word;
  LexiconKind list = LexiconKind::kMaori;
};

enum class DecisionKind { kTrigram, kWord, kSkip };

struct Decision {
  std::size_t seq = 0;  // 1-based position in the log
  DecisionKind kind = DecisionKind::kTrigram;
  std::string task_id;
  Trigram words;
  std::map<int, Label> assignments;  // trigram scope: position -> M|P|F
  std::string word;                  // word scope
  Label label = Label::kM;           // word scope
  std::string annotator;
  std::string timestamp;
  std::optional<LexiconUpdate> lexicon_update;
};

nlohmann::ordered_json DecisionToJson(const Decision& decision);
// Throws kParse on a malformed record.
Decision DecisionFromJson(const nlohmann::json& j);

// Append-only JSON-lines decision log. Every append is flushed and synced
// before it returns.
class DecisionStore {
 public:
  DecisionStore() = default;

  // A missing file is an empty store. A malformed line throws kParse naming
  // the line.
  static DecisionStore Open(const std::filesystem::path& path);

  const std::vector<Decision>& decisions() const { return decisions_; }
  const std::filesystem::path& path() const { return path_; }

  const Decision& Append(Decision decision);

  TaskStatus StatusOf(const std::string& task_id) const;

 private:
  std::filesystem::path path_;
  std::vector<Decision> decisions_;
  std::map<std::string, TaskStatus> status_;
};

// Overwrites A labels covered by the latest decision for each trigram, and
// A/U labels of words with a word-scoped decision. Where several decisions
// reach one token the later one wins. Appends an "apply" stage.
std::pair<Corpus, StageDelta> ApplyDecisions(Corpus corpus,
                                             const std::vector<Decision>& decisions);

// Folds the lexicon updates carried by decisions into `lexicons` (in memory).
// Conflicting updates are skipped and reported in `warnings`.
LexiconSet ApplyLexiconUpdates(const LexiconSet& lexicons,
                               const std::vector<Decision>& decisions,
                               std::vector<std::string>* warnings = nullptr);

struct Progress {
  LabelCounts labels;
  std::size_t pending = 0;
  std::size_t done = 0;
  std::size_t skipped = 0;
  std::size_t total = 0;
};

nlohmann::ordered_json TaskToJson(const TrigramTask& task);
nlohmann::ordered_json ProgressToJson(const Progress& progress);

// A corpus snapshot plus its decision log. Validates and records decisions,
// keeps lexicons current, and projects the log onto the corpus.
class AnnotationSession {
 public:
  AnnotationSession(Corpus corpus, DecisionStore store,
                    std::shared_ptr<const LexiconSet> lexicons = nullptr,
                    bool persist_lexicons = false);

  // Tasks from the base corpus with their current status.
  std::vector<TrigramTask> Tasks(TaskSelection selection = TaskSelection::All()) const;
  std::optional<TrigramTask> FindTask(const std::string& task_id) const;

  // Throws kNotFound for an unknown task, kInvalidArgument for an assignment
  // outside the task's ambiguous positions, kConflict for a lexicon clash.
  const Decision& Record(Decision decision);
  const Decision& MarkForeign(const std::string& word, const std::string& annotator);

  std::size_t AddWord(LexiconKind kind, const std::string& word);

  const Corpus& base() const { return base_; }
  const DecisionStore& store() const { return store_; }
  std::shared_ptr<const LexiconSet> lexicons() const { return lexicons_; }

  Corpus Projected() const;
  Progress CurrentProgress() const;

 private:
  Corpus base_;
  DecisionStore store_;
  std::shared_ptr<const LexiconSet> lexicons_;
  bool persist_lexicons_;
  std::vector<TrigramTask> universe_;
  std::map<std::string, std::size_t> by_id_;
};

}  // namespace reotag::annotation

#endif  // REOTAG_ANNOTATION_HPP_
