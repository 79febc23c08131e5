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

#include "reotag/corpus_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>
#include <unistd.h>

#include "reotag/error.hpp"
#include "reotag/text.hpp"

namespace reotag {
namespace {

constexpr std::string_view kMagic = "## reo-tag corpus 1";
constexpr std::string_view kSourcePrefix = "## source ";
constexpr std::string_view kStagePrefix = "## stage ";
constexpr std::string_view kHeaderPrefix = "# date=";
constexpr std::string_view kTextPrefix = "# text = ";

class LineError {
 public:
  LineError(std::string_view source, std::size_t line)
      : source_(source), line_(line) {}

  [[noreturn]] void operator()(const std::string& message) const {
    Fail(ErrorCode::kParse,
         std::string(source_) + ":" + std::to_string(line_) + ": " + message);
  }

 private:
  std::string_view source_;
  std::size_t line_;
};

template <typename T>
bool ParseNumber(std::string_view s, T& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size() && !s.empty();
}

std::vector<std::string_view> SplitOn(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos == std::string_view::npos
                                        ? std::string_view::npos
                                        : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

LabelCounts ParseCounts(std::string_view s, const LineError& error) {
  LabelCounts counts;
  for (std::string_view item : SplitOn(s, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string_view::npos) error("bad label count '" + std::string(item) + "'");
    const auto label = ParseLabel(item.substr(0, colon));
    std::size_t n = 0;
    if (!label || !ParseNumber(item.substr(colon + 1), n)) {
      error("bad label count '" + std::string(item) + "'");
    }
    counts[*label] = n;
  }
  return counts;
}

StageDelta ParseStage(std::string_view rest, const LineError& error) {
  const auto fields = SplitOn(rest, ' ');
  if (fields.size() != 4) error("stage line needs name, before, after, changed");
  auto value = [&](std::string_view field, std::string_view key) {
    if (field.substr(0, key.size()) != key) {
      error("expected '" + std::string(key) + "'");
    }
    return field.substr(key.size());
  };
  StageDelta delta;
  delta.stage = std::string(fields[0]);
  delta.before = ParseCounts(value(fields[1], "before="), error);
  delta.after = ParseCounts(value(fields[2], "after="), error);
  if (!ParseNumber(value(fields[3], "changed="), delta.changed)) {
    error("bad changed count");
  }
  return delta;
}

LabelledSentence ParseHeader(std::string_view line, const LineError& error,
                             SentenceClass& declared) {
  LabelledSentence s;
  bool have_date = false, have_doc = false, have_seq = false, have_class = false;
  for (std::string_view field : SplitOn(line.substr(2), ' ')) {
    const auto eq = field.find('=');
    if (eq == std::string_view::npos) error("bad header field '" + std::string(field) + "'");
    const auto key = field.substr(0, eq);
    const auto val = field.substr(eq + 1);
    if (key == "date") {
      const auto date = Date::Parse(val);
      if (!date) error("bad date '" + std::string(val) + "'");
      s.date = *date;
      have_date = true;
    } else if (key == "doc") {
      if (val.empty()) error("empty doc id");
      s.doc = std::string(val);
      have_doc = true;
    } else if (key == "seq") {
      if (!ParseNumber(val, s.seq)) error("bad seq '" + std::string(val) + "'");
      have_seq = true;
    } else if (key == "class") {
      const auto c = ParseSentenceClass(val);
      if (!c) error("bad class '" + std::string(val) + "'");
      declared = *c;
      have_class = true;
    } else {
      error("unknown header field '" + std::string(key) + "'");
    }
  }
  if (!have_date || !have_doc || !have_seq || !have_class) {
    error("sentence header needs date, doc, seq and class");
  }
  return s;
}

// Recovers token spacing by walking the recorded sentence text.
bool AlignSpacing(std::vector<Token>& tokens, std::string_view text) {
  std::size_t pos = 0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const std::string& surface = tokens[i].surface;
    if (text.substr(pos, surface.size()) != surface) return false;
    pos += surface.size();
    tokens[i].space_after = pos < text.size() && text[pos] == ' ';
    if (tokens[i].space_after) ++pos;
  }
  return pos == text.size();
}

}  // namespace

std::string FormatCounts(const LabelCounts& counts) {
  std::string out;
  for (Label l : kAllLabels) {
    if (!out.empty()) out += ',';
    out += LabelChar(l);
    out += ':';
    out += std::to_string(counts[l]);
  }
  return out;
}

void WriteTsv(const Corpus& corpus, std::ostream& out) {
  out << kMagic << '\n';
  for (const auto& source : corpus.sources) out << kSourcePrefix << source << '\n';
  for (const auto& d : corpus.history) {
    out << kStagePrefix << d.stage << " before=" << FormatCounts(d.before)
        << " after=" << FormatCounts(d.after) << " changed=" << d.changed
        << '\n';
  }
  for (const auto& s : corpus.sentences) {
    out << kHeaderPrefix << s.date.ToString() << " doc=" << s.doc
        << " seq=" << s.seq << " class=" << SentenceClassCode(s.sentence_class())
        << '\n';
    out << kTextPrefix << s.Text() << '\n';
    for (const Token& t : s.tokens) {
      out << t.surface << '\t' << LabelChar(t.label) << '\n';
    }
    out << '\n';
  }
}

std::string WriteTsv(const Corpus& corpus) {
  std::ostringstream out;
  WriteTsv(corpus, out);
  return out.str();
}

Corpus ParseTsv(std::string_view data, std::string_view source_name) {
  if (const auto bad = text::FindInvalidUtf8(data)) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < *bad; ++i) line += data[i] == '\n';
    LineError(source_name, line)("invalid UTF-8");
  }
  Corpus corpus;
  std::optional<LabelledSentence> current;
  std::optional<std::string> current_text;
  SentenceClass declared = SentenceClass::kIndeterminate;
  std::size_t header_line = 0;

  auto finish = [&]() {
    if (!current) return;
    const LineError error(source_name, header_line);
    if (current_text) {
      if (!AlignSpacing(current->tokens, *current_text)) {
        error("sentence text does not match its tokens");
      }
    } else {
      for (std::size_t i = 0; i < current->tokens.size(); ++i) {
        current->tokens[i].space_after = i + 1 < current->tokens.size();
      }
    }
    if (current->sentence_class() != declared) {
      error(std::string("declared class ") + SentenceClassCode(declared) +
            " disagrees with token labels (" +
            SentenceClassCode(current->sentence_class()) + ")");
    }
    corpus.sentences.push_back(std::move(*current));
    current.reset();
    current_text.reset();
  };

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < data.size()) {
    auto end = data.find('\n', start);
    if (end == std::string_view::npos) end = data.size();
    std::string_view line = data.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const LineError error(source_name, line_no);

    if (line.empty()) {
      finish();
      continue;
    }
    if (line.starts_with("##")) {
      if (current) error("corpus metadata inside a sentence");
      if (line == kMagic) continue;
      if (line.starts_with(kSourcePrefix)) {
        corpus.sources.emplace_back(line.substr(kSourcePrefix.size()));
      } else if (line.starts_with(kStagePrefix)) {
        corpus.history.push_back(ParseStage(line.substr(kStagePrefix.size()), error));
      } else {
        error("unknown metadata line");
      }
      continue;
    }
    if (line.starts_with(kHeaderPrefix)) {
      finish();
      current = ParseHeader(line, error, declared);
      header_line = line_no;
      continue;
    }
    if (line.starts_with(kTextPrefix)) {
      if (!current || !current->tokens.empty()) error("misplaced text line");
      current_text = std::string(line.substr(kTextPrefix.size()));
      continue;
    }
    if (line.starts_with('#')) {
      if (current) error("comment inside a sentence");
      continue;
    }
    if (!current) error("token line outside a sentence");
    const auto tab = line.find('\t');
    if (tab == std::string_view::npos || tab == 0) error("expected '<surface>\\t<label>'");
    const auto surface = line.substr(0, tab);
    const auto label = ParseLabel(line.substr(tab + 1));
    if (!label) error("bad label '" + std::string(line.substr(tab + 1)) + "'");
    for (char32_t cp : text::Decode(surface)) {
      if (text::IsWhitespace(cp)) error("whitespace inside token");
    }
    Token t = MakeToken(surface, KindForLabel(*label));
    t.label = *label;
    current->tokens.push_back(std::move(t));
  }
  finish();
  try {
    ValidateCorpus(corpus);
  } catch (const Error& e) {
    Fail(ErrorCode::kParse, std::string(source_name) + ": " + e.what());
  }
  return corpus;
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kIo, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) Fail(ErrorCode::kIo, "error reading " + path.string());
  return buf.str();
}

void WriteFileAtomic(const std::filesystem::path& path, std::string_view data) {
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) Fail(ErrorCode::kIo, "cannot write " + tmp.string());
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    out.flush();
    if (!out) Fail(ErrorCode::kIo, "error writing " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    Fail(ErrorCode::kIo, "cannot replace " + path.string());
  }
}

Corpus ReadCorpusFile(const std::filesystem::path& path) {
  return ParseTsv(ReadFile(path), path.string());
}

void WriteCorpusFile(const Corpus& corpus, const std::filesystem::path& path) {
  WriteFileAtomic(path, WriteTsv(corpus));
}

nlohmann::ordered_json CountsToJson(const LabelCounts& counts) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (Label l : kAllLabels) j[std::string(1, LabelChar(l))] = counts[l];
  return j;
}

nlohmann::ordered_json SentenceToJson(const LabelledSentence& s) {
  nlohmann::ordered_json j;
  j["date"] = s.date.ToString();
  j["doc"] = s.doc;
  j["seq"] = s.seq;
  j["class"] = std::string(1, SentenceClassCode(s.sentence_class()));
  j["text"] = s.Text();
  auto tokens = nlohmann::ordered_json::array();
  for (const Token& t : s.tokens) {
    tokens.push_back({{"surface", t.surface},
                      {"label", std::string(1, LabelChar(t.label))}});
  }
  j["tokens"] = std::move(tokens);
  return j;
}

std::string WriteJsonLines(const Corpus& corpus) {
  std::string out;
  for (const auto& s : corpus.sentences) {
    out += SentenceToJson(s).dump();
    out += '\n';
  }
  return out;
}

}  // namespace reotag
