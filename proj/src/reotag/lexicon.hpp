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

#ifndef REOTAG_LEXICON_HPP_
#define REOTAG_LEXICON_HPP_

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace reotag {

enum class LexiconKind { kMaori, kEnglish, kAmbiguous, kStopword, kForeign };

std::string_view LexiconKindName(LexiconKind kind);
std::optional<LexiconKind> ParseLexiconKind(std::string_view name);

// Lookup key: trimmed, NFC, case-folded.
std::string NormalizeWord(std::string_view word);

// The canonical spelling plus its double-vowel (ā→aa), umlaut (ā→ä) and
// bare-vowel (ā→a) renderings. Words without macrons yield only themselves.
std::vector<std::string> MacronVariants(std::string_view canonical);

// Any of ā ē ī ō ū, in either case or composition.
bool HasMacron(std::string_view word);

// Any of b c d f j l q s v x y z, in either case.
bool HasIllegalMaoriChars(std::string_view word);

struct OrthographyReport {
  std::string word;
  bool legal_chars = false;     // only Māori letters; apostrophes fail
  bool no_clusters = false;     // no two adjacent consonants
  bool open_syllables = false;  // does not end in a consonant
  bool valid = false;
};

// ng and wh count as single consonants. Throws kInvalidArgument on an empty
// word.
OrthographyReport CheckOrthography(std::string_view word);

class Lexicon {
 public:
  Lexicon() = default;
  Lexicon(std::string name, LexiconKind kind);

  // One word per line, '#' comment lines, UTF-8. Appends to any entries
  // already present so several files can back one list.
  void LoadFile(const std::filesystem::path& path);
  static Lexicon Load(const std::filesystem::path& path, LexiconKind kind);

  const std::string& name() const { return name_; }
  LexiconKind kind() const { return kind_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  bool Contains(std::string_view word) const;
  // `key` must already be normalized.
  bool ContainsKey(const std::string& key) const;

  const std::set<std::string>& entries() const { return entries_; }
  const std::map<std::string, std::string>& variant_index() const {
    return variant_index_;
  }
  const std::vector<std::filesystem::path>& files() const { return files_; }

  // Adds a word (and its macron variants for the Māori list). Returns the
  // number of spellings that now resolve to it.
  std::size_t Insert(std::string_view word);
  // Removes a spelling: a canonical entry with all its variants, or a single
  // variant key.
  void Erase(const std::string& key);

 private:
  std::string name_;
  LexiconKind kind_ = LexiconKind::kMaori;
  std::set<std::string> entries_;
  std::map<std::string, std::string> variant_index_;
  std::vector<std::filesystem::path> files_;
};

// The word lists consulted by the labeller and analytics.
//
// A lexicon directory holds maori.txt, english.txt and ambiguous.txt, plus
// optional foreign.txt and stopwords*.txt files.
class LexiconSet {
 public:
  LexiconSet();

  static LexiconSet LoadDirectory(const std::filesystem::path& dir);

  Lexicon& Get(LexiconKind kind);
  const Lexicon& Get(LexiconKind kind) const;
  const Lexicon& maori() const { return Get(LexiconKind::kMaori); }
  const Lexicon& english() const { return Get(LexiconKind::kEnglish); }
  const Lexicon& ambiguous() const { return Get(LexiconKind::kAmbiguous); }
  const Lexicon& stopwords() const { return Get(LexiconKind::kStopword); }
  const Lexicon& foreign() const { return Get(LexiconKind::kForeign); }

  // Spellings found in both core lists move to the ambiguous list.
  void EnforceDisjoint();

  // Snapshot with `word` added. Adding to the Māori list a word the English
  // list knows (or vice versa) throws kConflict. Re-adding a known word is a
  // no-op. With `persist` the backing file is rewritten atomically.
  LexiconSet WithWord(LexiconKind kind, std::string_view word, bool persist,
                      std::size_t* indexed = nullptr) const;

  const std::vector<std::string>& warnings() const { return warnings_; }
  const std::filesystem::path& directory() const { return dir_; }
  // sha256 of each loaded file, keyed by file name.
  const std::map<std::string, std::string>& checksums() const { return checksums_; }

 private:
  std::vector<Lexicon> lists_;
  std::vector<std::string> warnings_;
  std::filesystem::path dir_;
  std::map<std::string, std::string> checksums_;
};

}  // namespace reotag

#endif  // REOTAG_LEXICON_HPP_
