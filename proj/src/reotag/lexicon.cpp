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

#include "reotag/lexicon.hpp"

#include <algorithm>
#include <mutex>

#include "reotag/corpus_io.hpp"
#include "reotag/error.hpp"
#include "reotag/text.hpp"

namespace reotag {
namespace {

struct MacronVowel {
  char32_t macron;
  char32_t bare;
  char32_t umlaut;
};

constexpr MacronVowel kMacronVowels[] = {
    {U'ā', U'a', U'ä'}, {U'ē', U'e', U'ë'}, {U'ī', U'i', U'ï'},
    {U'ō', U'o', U'ö'}, {U'ū', U'u', U'ü'},
};

const MacronVowel* FindMacron(char32_t cp) {
  for (const auto& v : kMacronVowels) {
    if (v.macron == cp) return &v;
  }
  return nullptr;
}

bool IsMacronUpper(char32_t cp) {
  return cp == U'Ā' || cp == U'Ē' || cp == U'Ī' || cp == U'Ō' || cp == U'Ū';
}

// Private-use stand-ins for the ng and wh digraphs.
constexpr char32_t kNg = 0xE000;
constexpr char32_t kWh = 0xE001;

bool IsVowel(char32_t cp) {
  switch (cp) {
    case U'a': case U'e': case U'i': case U'o': case U'u':
      return true;
    default:
      return FindMacron(cp) != nullptr;
  }
}

bool IsMaoriConsonant(char32_t cp) {
  switch (cp) {
    case U'h': case U'k': case U'm': case U'n': case U'p': case U'r':
    case U't': case U'w': case kNg: case kWh:
      return true;
    default:
      return false;
  }
}

std::mutex& PersistMutex() {
  static std::mutex m;
  return m;
}

void AppendLine(const std::filesystem::path& path, const std::string& word) {
  const std::lock_guard<std::mutex> lock(PersistMutex());
  std::string data;
  std::error_code ec;
  if (std::filesystem::exists(path, ec)) data = ReadFile(path);
  if (!data.empty() && data.back() != '\n') data += '\n';
  data += word;
  data += '\n';
  WriteFileAtomic(path, data);
}

}  // namespace

std::string_view LexiconKindName(LexiconKind kind) {
  switch (kind) {
    case LexiconKind::kMaori: return "maori";
    case LexiconKind::kEnglish: return "english";
    case LexiconKind::kAmbiguous: return "ambiguous";
    case LexiconKind::kStopword: return "stopword";
    case LexiconKind::kForeign: return "foreign";
  }
  return "unknown";
}

std::optional<LexiconKind> ParseLexiconKind(std::string_view name) {
  if (name == "maori") return LexiconKind::kMaori;
  if (name == "english") return LexiconKind::kEnglish;
  if (name == "ambiguous") return LexiconKind::kAmbiguous;
  if (name == "stopword" || name == "stopwords") return LexiconKind::kStopword;
  if (name == "foreign") return LexiconKind::kForeign;
  return std::nullopt;
}

std::string NormalizeWord(std::string_view word) {
  return text::FoldCase(text::Trim(word));
}

std::vector<std::string> MacronVariants(std::string_view canonical) {
  const std::u32string cps = text::Decode(canonical);
  std::u32string doubled, umlaut, bare;
  bool any = false;
  for (char32_t cp : cps) {
    if (const MacronVowel* v = FindMacron(cp)) {
      any = true;
      doubled.push_back(v->bare);
      doubled.push_back(v->bare);
      umlaut.push_back(v->umlaut);
      bare.push_back(v->bare);
    } else {
      doubled.push_back(cp);
      umlaut.push_back(cp);
      bare.push_back(cp);
    }
  }
  std::vector<std::string> out{std::string(canonical)};
  if (!any) return out;
  for (const auto& form : {doubled, umlaut, bare}) {
    std::string enc = text::Nfc(text::Encode(form));
    if (std::find(out.begin(), out.end(), enc) == out.end()) out.push_back(enc);
  }
  return out;
}

bool HasMacron(std::string_view word) {
  for (char32_t cp : text::Decode(text::Nfc(word))) {
    if (FindMacron(cp) || IsMacronUpper(cp) || cp == 0x0304) return true;
  }
  return false;
}

bool HasIllegalMaoriChars(std::string_view word) {
  constexpr std::string_view kIllegal = "bcdfjlqsvxyz";
  for (char c : word) {
    const char lower = (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
    if (kIllegal.find(lower) != std::string_view::npos) return true;
  }
  return false;
}

OrthographyReport CheckOrthography(std::string_view word) {
  if (text::Trim(word).empty()) {
    Fail(ErrorCode::kInvalidArgument, "empty word");
  }
  OrthographyReport report;
  report.word = std::string(word);
  const std::u32string cps = text::Decode(text::FoldCase(word));
  std::u32string rewritten;
  for (std::size_t i = 0; i < cps.size(); ++i) {
    if (i + 1 < cps.size() && cps[i] == U'n' && cps[i + 1] == U'g') {
      rewritten.push_back(kNg);
      ++i;
    } else if (i + 1 < cps.size() && cps[i] == U'w' && cps[i + 1] == U'h') {
      rewritten.push_back(kWh);
      ++i;
    } else {
      rewritten.push_back(cps[i]);
    }
  }
  report.legal_chars = std::all_of(rewritten.begin(), rewritten.end(), [](char32_t cp) {
    return IsVowel(cp) || IsMaoriConsonant(cp);
  });
  std::u32string letters;
  for (char32_t cp : rewritten) {
    if (cp != U'\'' && cp != U'’') letters.push_back(cp);
  }
  report.no_clusters = true;
  for (std::size_t i = 1; i < letters.size(); ++i) {
    if (!IsVowel(letters[i - 1]) && !IsVowel(letters[i])) {
      report.no_clusters = false;
      break;
    }
  }
  report.open_syllables = letters.empty() || IsVowel(letters.back());
  report.valid = report.legal_chars && report.no_clusters && report.open_syllables;
  return report;
}

Lexicon::Lexicon(std::string name, LexiconKind kind)
    : name_(std::move(name)), kind_(kind) {}

void Lexicon::LoadFile(const std::filesystem::path& path) {
  const std::string data = ReadFile(path);
  files_.push_back(path);
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < data.size()) {
    auto end = data.find('\n', start);
    if (end == std::string::npos) end = data.size();
    std::string_view line(data.data() + start, end - start);
    start = end + 1;
    ++line_no;
    if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.remove_prefix(3);
    if (text::FindInvalidUtf8(line)) {
      Fail(ErrorCode::kParse, path.string() + ":" + std::to_string(line_no) +
                                  ": invalid UTF-8");
    }
    line = text::Trim(line);
    if (line.empty() || line.starts_with('#')) continue;
    Insert(line);
  }
}

Lexicon Lexicon::Load(const std::filesystem::path& path, LexiconKind kind) {
  Lexicon lex(path.stem().string(), kind);
  lex.LoadFile(path);
  return lex;
}

bool Lexicon::ContainsKey(const std::string& key) const {
  return entries_.contains(key) || variant_index_.contains(key);
}

bool Lexicon::Contains(std::string_view word) const {
  return ContainsKey(NormalizeWord(word));
}

std::size_t Lexicon::Insert(std::string_view word) {
  const std::string key = NormalizeWord(word);
  if (key.empty()) return 0;
  entries_.insert(key);
  if (kind_ != LexiconKind::kMaori || !HasMacron(key)) return 1;
  const auto variants = MacronVariants(key);
  for (const auto& v : variants) variant_index_.emplace(v, key);
  return variants.size();
}

void Lexicon::Erase(const std::string& key) {
  if (entries_.erase(key) > 0) {
    std::erase_if(variant_index_, [&](const auto& kv) { return kv.second == key; });
    return;
  }
  variant_index_.erase(key);
}

LexiconSet::LexiconSet() {
  for (LexiconKind kind : {LexiconKind::kMaori, LexiconKind::kEnglish,
                           LexiconKind::kAmbiguous, LexiconKind::kStopword,
                           LexiconKind::kForeign}) {
    lists_.emplace_back(std::string(LexiconKindName(kind)), kind);
  }
}

Lexicon& LexiconSet::Get(LexiconKind kind) {
  return lists_[static_cast<std::size_t>(kind)];
}

const Lexicon& LexiconSet::Get(LexiconKind kind) const {
  return lists_[static_cast<std::size_t>(kind)];
}

LexiconSet LexiconSet::LoadDirectory(const std::filesystem::path& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) {
    Fail(ErrorCode::kIo, "lexicon directory not found: " + dir.string());
  }
  LexiconSet set;
  set.dir_ = dir;
  auto load = [&](LexiconKind kind, const std::filesystem::path& file) {
    set.Get(kind).LoadFile(file);
    set.checksums_[file.filename().string()] = text::Sha256Hex(ReadFile(file));
  };
  load(LexiconKind::kMaori, dir / "maori.txt");
  load(LexiconKind::kEnglish, dir / "english.txt");
  load(LexiconKind::kAmbiguous, dir / "ambiguous.txt");
  if (std::filesystem::exists(dir / "foreign.txt", ec)) {
    load(LexiconKind::kForeign, dir / "foreign.txt");
  }
  std::vector<std::filesystem::path> stopword_files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    if (entry.is_regular_file() && name.starts_with("stopwords") &&
        entry.path().extension() == ".txt") {
      stopword_files.push_back(entry.path());
    }
  }
  std::sort(stopword_files.begin(), stopword_files.end());
  for (const auto& file : stopword_files) load(LexiconKind::kStopword, file);
  set.EnforceDisjoint();
  return set;
}

void LexiconSet::EnforceDisjoint() {
  Lexicon& maori = Get(LexiconKind::kMaori);
  Lexicon& english = Get(LexiconKind::kEnglish);
  Lexicon& ambiguous = Get(LexiconKind::kAmbiguous);
  std::vector<std::string> collisions;
  for (const auto& word : english.entries()) {
    if (maori.ContainsKey(word)) collisions.push_back(word);
  }
  for (const auto& word : collisions) {
    warnings_.push_back("'" + word +
                        "' is in both the Māori and English lists; moved to ambiguous");
    english.Erase(word);
    maori.Erase(word);
    ambiguous.Insert(word);
  }
}

LexiconSet LexiconSet::WithWord(LexiconKind kind, std::string_view word,
                                bool persist, std::size_t* indexed) const {
  const std::string key = NormalizeWord(word);
  if (key.empty()) Fail(ErrorCode::kInvalidArgument, "empty word");
  for (char32_t cp : text::Decode(key)) {
    if (!text::IsLetter(cp) && cp != U'\'' && cp != U'’') {
      Fail(ErrorCode::kInvalidArgument,
           "'" + std::string(word) + "' must contain only letters and apostrophes");
    }
  }
  if ((kind == LexiconKind::kMaori && english().ContainsKey(key)) ||
      (kind == LexiconKind::kEnglish && maori().ContainsKey(key))) {
    Fail(ErrorCode::kConflict, "conflict: move to ambiguous list instead");
  }
  LexiconSet next = *this;
  Lexicon& target = next.Get(kind);
  if (target.ContainsKey(key)) {
    if (indexed) *indexed = kind == LexiconKind::kMaori ? MacronVariants(key).size() : 1;
    return next;
  }
  const std::size_t n = target.Insert(key);
  if (indexed) *indexed = n;
  if (persist) {
    std::filesystem::path file;
    if (!target.files().empty()) {
      file = target.files().front();
    } else if (!dir_.empty()) {
      file = dir_ / (kind == LexiconKind::kStopword
                         ? std::string("stopwords.txt")
                         : std::string(LexiconKindName(kind)) + ".txt");
    } else {
      Fail(ErrorCode::kState, "lexicon '" + target.name() + "' has no backing file");
    }
    AppendLine(file, key);
    next.checksums_[file.filename().string()] = text::Sha256Hex(ReadFile(file));
  }
  return next;
}

}  // namespace reotag
