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

#include "reotag/ingest.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <regex>
#include <unordered_map>

#include "reotag/corpus_io.hpp"
#include "reotag/error.hpp"
#include "reotag/text.hpp"

namespace reotag::ingest {
namespace {

constexpr std::array<std::string_view, 36> kBlockTags = {
    "address", "article", "aside", "blockquote", "body", "br", "dd", "div",
    "dl", "dt", "figcaption", "figure", "footer", "form", "h1", "h2", "h3",
    "h4", "h5", "h6", "header", "hr", "html", "li", "main", "nav", "ol", "p",
    "pre", "section", "table", "tbody", "td", "th", "tr", "ul"};

constexpr std::array<std::string_view, 6> kSkipTags = {
    "head", "script", "style", "title", "noscript", "template"};

const std::unordered_map<std::string_view, char32_t>& NamedEntities() {
  static const std::unordered_map<std::string_view, char32_t> table = {
      {"amp", U'&'},      {"lt", U'<'},       {"gt", U'>'},
      {"quot", U'"'},     {"apos", U'\''},    {"nbsp", U' '},
      {"ndash", U'–'},    {"mdash", U'—'},    {"hellip", U'…'},
      {"lsquo", U'‘'},    {"rsquo", U'’'},    {"ldquo", U'“'},
      {"rdquo", U'”'},    {"copy", U'©'},     {"reg", U'®'},
      {"amacr", U'ā'},    {"emacr", U'ē'},    {"imacr", U'ī'},
      {"omacr", U'ō'},    {"umacr", U'ū'},    {"Amacr", U'Ā'},
      {"Emacr", U'Ē'},    {"Imacr", U'Ī'},    {"Omacr", U'Ō'},
      {"Umacr", U'Ū'},    {"auml", U'ä'},     {"euml", U'ë'},
      {"iuml", U'ï'},     {"ouml", U'ö'},     {"uuml", U'ü'},
      {"Auml", U'Ä'},     {"Euml", U'Ë'},     {"Iuml", U'Ï'},
      {"Ouml", U'Ö'},     {"Uuml", U'Ü'},     {"eacute", U'é'},
      {"egrave", U'è'},   {"agrave", U'à'},   {"ccedil", U'ç'},
  };
  return table;
}

std::string Lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

template <std::size_t N>
bool Contains(const std::array<std::string_view, N>& names, std::string_view n) {
  return std::find(names.begin(), names.end(), n) != names.end();
}

// Decodes the entity starting at s[pos] == '&'. Returns bytes consumed, or 0
// when the text is not a well-formed reference.
std::size_t DecodeEntity(std::string_view s, std::size_t pos, std::string& out) {
  const auto semi = s.find(';', pos + 1);
  if (semi == std::string_view::npos || semi - pos > 12) return 0;
  const std::string_view body = s.substr(pos + 1, semi - pos - 1);
  if (body.empty()) return 0;
  char32_t cp = 0;
  if (body[0] == '#') {
    std::uint32_t value = 0;
    const bool hex = body.size() > 1 && (body[1] == 'x' || body[1] == 'X');
    const std::string_view digits = body.substr(hex ? 2 : 1);
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(),
                                     value, hex ? 16 : 10);
    if (digits.empty() || ec != std::errc() ||
        ptr != digits.data() + digits.size() || value == 0 || value > 0x10FFFF) {
      return 0;
    }
    cp = value;
  } else {
    const auto& table = NamedEntities();
    const auto it = table.find(body);
    if (it == table.end()) return 0;
    cp = it->second;
  }
  if (cp == U' ') cp = U' ';
  text::Append(out, cp);
  return semi - pos + 1;
}

bool LooksLikeMarkup(std::string_view s) {
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    if (s[i] != '<') continue;
    const unsigned char next = s[i + 1];
    if ((std::isalpha(next) || next == '/' || next == '!') &&
        s.find('>', i) != std::string_view::npos) {
      return true;
    }
  }
  return false;
}

std::string TagName(std::string_view tag) {
  std::size_t i = 0;
  if (i < tag.size() && tag[i] == '/') ++i;
  std::size_t j = i;
  while (j < tag.size() && (std::isalnum(static_cast<unsigned char>(tag[j])))) ++j;
  return Lower(tag.substr(i, j - i));
}

// Trims each line, drops empty lines, and (for markup) folds inline
// whitespace to single spaces.
std::string NormalizeLines(std::string_view s, bool fold_inline) {
  std::string out;
  std::string line;
  auto flush = [&]() {
    const auto trimmed = text::Trim(line);
    if (!trimmed.empty()) {
      if (!out.empty()) out += '\n';
      out += trimmed;
    }
    line.clear();
  };
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (c == '\n') {
      flush();
    } else if (c == '\r') {
      continue;
    } else if (fold_inline && (c == ' ' || c == '\t' || c == '\f' || c == '\v')) {
      if (!line.empty() && line.back() != ' ') line += ' ';
    } else {
      line += c;
    }
  }
  flush();
  return out;
}

std::string StripMarkup(std::string_view html) {
  std::string out;
  out.reserve(html.size());
  std::size_t i = 0;
  while (i < html.size()) {
    const char c = html[i];
    if (c == '<') {
      if (html.substr(i, 4) == "<!--") {
        const auto end = html.find("-->", i + 4);
        i = end == std::string_view::npos ? html.size() : end + 3;
        continue;
      }
      const auto close = html.find('>', i + 1);
      const bool tagish = i + 1 < html.size() &&
                          (std::isalpha(static_cast<unsigned char>(html[i + 1])) ||
                           html[i + 1] == '/' || html[i + 1] == '!' ||
                           html[i + 1] == '?');
      if (!tagish || close == std::string_view::npos) {
        out += c;
        ++i;
        continue;
      }
      const std::string_view tag = html.substr(i + 1, close - i - 1);
      const std::string name = TagName(tag);
      i = close + 1;
      if (!tag.starts_with('/') && Contains(kSkipTags, name)) {
        // Skip to the matching close tag, case-insensitively.
        const std::string lowered = Lower(html.substr(i));
        const auto end = lowered.find("</" + name);
        if (end == std::string::npos) {
          i = html.size();
        } else {
          const auto gt = html.find('>', i + end);
          i = gt == std::string_view::npos ? html.size() : gt + 1;
        }
        continue;
      }
      if (Contains(kBlockTags, name)) out += '\n';
      continue;
    }
    if (c == '\n' || c == '\t' || c == '\r') {
      out += ' ';
      ++i;
      continue;
    }
    if (c == '&') {
      if (const auto used = DecodeEntity(html, i, out)) {
        i += used;
        continue;
      }
    }
    out += c;
    ++i;
  }
  return out;
}

std::string DecodeEntities(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size();) {
    if (s[i] == '&') {
      if (const auto used = DecodeEntity(s, i, out)) {
        i += used;
        continue;
      }
    }
    out += s[i++];
  }
  return out;
}

bool IsTerminator(char c, const SplitOptions& options) {
  return c == '.' || (!options.stops_only && (c == '?' || c == '!'));
}

bool IsCloser(char32_t cp) {
  return cp == U'"' || cp == U'\'' || cp == U')' || cp == U']' ||
         cp == U'”' || cp == U'’';
}

bool IsHyphen(char32_t cp) {
  return cp == U'-' || cp == U'‐' || cp == U'‑';
}

TokenKind ClassifyPiece(std::u32string_view piece) {
  bool digit = false, letter = false, other = false;
  for (char32_t cp : piece) {
    if (text::IsLetter(cp)) letter = true;
    else if (text::IsDigit(cp)) digit = true;
    else if (!text::IsPunctuation(cp)) other = true;
  }
  if (digit && !letter) return TokenKind::kNumber;
  if (!digit && !letter && !other) return TokenKind::kPunctuation;
  return TokenKind::kWord;
}

const std::array<std::string_view, 12> kMonths = {
    "january", "february", "march", "april", "may", "june",
    "july", "august", "september", "october", "november", "december"};

std::optional<Date> ParseDateValue(std::string_view value) {
  static const std::regex iso(R"((\d{4})-(\d{2})-(\d{2}))");
  static const std::regex dmy(R"((\d{1,2})[ _\-]+([A-Za-z]+)[ _\-,]+(\d{4}))");
  const std::string v(value);
  std::smatch m;
  if (std::regex_search(v, m, iso)) {
    if (auto d = Date::Parse(m.str(0))) return d;
  }
  auto search_start = v.cbegin();
  while (std::regex_search(search_start, v.cend(), m, dmy)) {
    const auto month = std::find(kMonths.begin(), kMonths.end(), Lower(m.str(2)));
    if (month != kMonths.end()) {
      const auto d = Date::FromParts(
          std::stoi(m.str(3)),
          static_cast<unsigned>(month - kMonths.begin() + 1),
          static_cast<unsigned>(std::stoi(m.str(1))));
      if (d) return d;
    }
    search_start = m.suffix().first;
  }
  return std::nullopt;
}

std::optional<Date> HeaderDate(std::string_view content) {
  static const std::regex meta(
      R"re(<meta\s+[^>]*name\s*=\s*["']?[A-Za-z.]*date["']?[^>]*>)re",
      std::regex::icase);
  static const std::regex content_attr(R"re(content\s*=\s*["']([^"']*)["'])re",
                                       std::regex::icase);
  static const std::regex text_line(R"(^\s*date\s*:\s*(.+)$)", std::regex::icase);
  const std::string s(content.substr(0, std::min<std::size_t>(content.size(), 1 << 16)));
  std::smatch m;
  if (std::regex_search(s, m, meta)) {
    const std::string tag = m.str(0);
    std::smatch c;
    if (std::regex_search(tag, c, content_attr)) {
      if (auto d = ParseDateValue(c.str(1))) return d;
    }
  }
  // Plain-text header: a "Date:" line among the first few non-empty lines.
  std::size_t start = 0, seen = 0;
  while (start < s.size() && seen < 5) {
    auto end = s.find('\n', start);
    if (end == std::string::npos) end = s.size();
    const std::string line = s.substr(start, end - start);
    start = end + 1;
    if (text::Trim(line).empty()) continue;
    ++seen;
    if (std::regex_search(line, m, text_line)) {
      if (auto d = ParseDateValue(m.str(1))) return d;
    }
  }
  return std::nullopt;
}

std::string DropDateLine(std::string_view content) {
  static const std::regex text_line(R"(^\s*date\s*:)", std::regex::icase);
  std::string out;
  std::size_t start = 0;
  bool dropped = false;
  while (start < content.size()) {
    auto end = content.find('\n', start);
    if (end == std::string_view::npos) end = content.size();
    const std::string line(content.substr(start, end - start));
    start = end + 1;
    if (!dropped && std::regex_search(line, text_line)) {
      dropped = true;
      continue;
    }
    out += line;
    out += '\n';
  }
  return out;
}

}  // namespace

std::string ExtractText(std::string_view html) {
  const bool markup = LooksLikeMarkup(html);
  const std::string stripped = markup ? StripMarkup(html) : DecodeEntities(html);
  return NormalizeLines(text::Nfc(stripped), markup);
}

std::vector<std::string> SplitSentences(std::string_view text,
                                        const SplitOptions& options) {
  std::vector<std::string> out;
  auto emit = [&](std::string_view segment) {
    const auto trimmed = text::Trim(segment);
    if (!trimmed.empty()) out.emplace_back(trimmed);
  };
  std::size_t line_start = 0;
  while (line_start <= text.size()) {
    auto line_end = text.find('\n', line_start);
    if (line_end == std::string_view::npos) line_end = text.size();
    const std::string_view line = text.substr(line_start, line_end - line_start);
    std::size_t seg_start = 0;
    std::size_t i = 0;
    while (i < line.size()) {
      if (!IsTerminator(line[i], options)) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < line.size() && IsTerminator(line[j], options)) ++j;
      const std::size_t run_end = j;
      // Closing quotes and brackets stay with the sentence they end.
      while (j < line.size()) {
        const auto rest = text::Decode(line.substr(j, 4));
        if (rest.empty() || !IsCloser(rest.front())) break;
        std::string enc;
        text::Append(enc, rest.front());
        j += enc.size();
      }
      const bool at_break = j >= line.size() || line[j] == ' ' || line[j] == '\t';
      if (!at_break) {
        i = j;
        continue;
      }
      bool suppressed = false;
      if (line[i] == '.' && run_end == i + 1 && j == run_end) {
        std::size_t w = i;
        while (w > seg_start && line[w - 1] != ' ' && line[w - 1] != '\t') --w;
        while (w < i && (line[w] == '(' || line[w] == '"')) ++w;
        const std::string_view word = line.substr(w, i + 1 - w);
        suppressed = std::find(options.abbreviations.begin(),
                               options.abbreviations.end(),
                               word) != options.abbreviations.end();
      }
      if (!suppressed) {
        emit(line.substr(seg_start, j - seg_start));
        seg_start = j;
      }
      i = j;
    }
    emit(line.substr(seg_start));
    if (line_end == text.size()) break;
    line_start = line_end + 1;
  }
  return out;
}

std::string CleanSentence(std::string_view s) {
  const std::u32string cps = text::Decode(text::Nfc(s));
  std::u32string out;
  out.reserve(cps.size());
  bool pending_space = false;
  for (char32_t cp : cps) {
    if (text::IsControl(cp)) continue;
    if (text::IsWhitespace(cp)) {
      pending_space = true;
      continue;
    }
    if (pending_space && !out.empty()) {
      out.push_back(U' ');
    } else if (!out.empty() && out.back() == cp && text::IsPunctuation(cp)) {
      pending_space = false;
      continue;
    }
    pending_space = false;
    out.push_back(cp);
  }
  return text::Encode(out);
}

std::vector<Token> Tokenize(std::string_view cleaned) {
  std::vector<Token> tokens;
  const std::u32string cps = text::Decode(text::Nfc(cleaned));
  std::size_t i = 0;
  while (i < cps.size()) {
    while (i < cps.size() && text::IsWhitespace(cps[i])) ++i;
    if (i >= cps.size()) break;
    std::size_t end = i;
    while (end < cps.size() && !text::IsWhitespace(cps[end])) ++end;
    const std::u32string_view chunk(cps.data() + i, end - i);
    i = end;
    const std::size_t first_token = tokens.size();

    std::size_t lead = 0;
    while (lead < chunk.size() && text::IsPunctuation(chunk[lead])) ++lead;
    std::size_t trail = chunk.size();
    while (trail > lead && text::IsPunctuation(chunk[trail - 1])) --trail;
    // Apostrophes inside a word stay with it; at the edges they are symbols.
    for (std::size_t k = 0; k < lead; ++k) {
      tokens.push_back(MakeToken(text::Encode(chunk.substr(k, 1)),
                                 TokenKind::kPunctuation));
    }
    const std::u32string_view core = chunk.substr(lead, trail - lead);
    std::size_t piece_start = 0;
    for (std::size_t k = 0; k <= core.size(); ++k) {
      if (k < core.size() && !IsHyphen(core[k])) continue;
      const auto piece = core.substr(piece_start, k - piece_start);
      if (!piece.empty()) {
        tokens.push_back(MakeToken(text::Encode(piece), ClassifyPiece(piece)));
      }
      if (k < core.size()) {
        tokens.push_back(MakeToken(text::Encode(core.substr(k, 1)),
                                   TokenKind::kPunctuation));
      }
      piece_start = k + 1;
    }
    for (std::size_t k = trail; k < chunk.size(); ++k) {
      tokens.push_back(MakeToken(text::Encode(chunk.substr(k, 1)),
                                 TokenKind::kPunctuation));
    }
    if (tokens.size() > first_token) {
      bool more = false;
      for (std::size_t k = i; k < cps.size(); ++k) {
        if (!text::IsWhitespace(cps[k])) {
          more = true;
          break;
        }
      }
      tokens.back().space_after = more;
    }
  }
  return tokens;
}

std::optional<Date> FindDate(std::string_view content, std::string_view filename) {
  if (auto d = HeaderDate(content)) return d;
  return ParseDateValue(filename);
}

SourceDocument LoadDocument(const std::filesystem::path& path) {
  const std::string content = ReadFile(path);
  if (const auto bad = text::FindInvalidUtf8(content)) {
    std::size_t line = 1;
    for (std::size_t k = 0; k < *bad; ++k) line += content[k] == '\n';
    Fail(ErrorCode::kParse,
         path.string() + ":" + std::to_string(line) + ": invalid UTF-8");
  }
  const std::string filename = path.filename().string();
  const auto date = FindDate(content, filename);
  if (!date) {
    Fail(ErrorCode::kParse, path.string() + ": no report date in header or file name");
  }
  SourceDocument doc;
  doc.doc_id = path.stem().string();
  std::replace(doc.doc_id.begin(), doc.doc_id.end(), ' ', '_');
  doc.date = *date;
  const std::string ext = Lower(path.extension().string());
  doc.raw = ExtractText(ext == ".txt" ? DropDateLine(content) : content);
  return doc;
}

std::vector<LabelledSentence> SentencesFromDocument(const SourceDocument& doc,
                                                    const SplitOptions& options) {
  std::vector<LabelledSentence> out;
  for (const std::string& raw : SplitSentences(doc.raw, options)) {
    std::vector<Token> tokens = Tokenize(CleanSentence(raw));
    if (tokens.empty()) continue;
    LabelledSentence s;
    s.date = doc.date;
    s.doc = doc.doc_id;
    s.seq = out.size();
    s.tokens = std::move(tokens);
    out.push_back(std::move(s));
  }
  return out;
}

Corpus IngestPath(const std::filesystem::path& path, const SplitOptions& options) {
  std::vector<std::filesystem::path> files;
  std::error_code ec;
  if (std::filesystem::is_directory(path, ec)) {
    for (const auto& entry : std::filesystem::directory_iterator(path)) {
      if (!entry.is_regular_file()) continue;
      const std::string ext = Lower(entry.path().extension().string());
      if (ext == ".html" || ext == ".htm" || ext == ".txt") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
  } else if (std::filesystem::is_regular_file(path, ec)) {
    files.push_back(path);
  } else {
    Fail(ErrorCode::kIo, "no such file or directory: " + path.string());
  }
  Corpus corpus;
  for (const auto& file : files) {
    const SourceDocument doc = LoadDocument(file);
    corpus.sources.push_back(file.filename().string());
    for (auto& s : SentencesFromDocument(doc, options)) {
      corpus.sentences.push_back(std::move(s));
    }
  }
  ValidateCorpus(corpus);
  return corpus;
}

}  // namespace reotag::ingest
