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

#ifndef REOTAG_INGEST_HPP_
#define REOTAG_INGEST_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "reotag/corpus.hpp"

namespace reotag::ingest {

struct SplitOptions {
  // Tokens (including the trailing stop) that never end a sentence.
  std::vector<std::string> abbreviations = {"Mr.", "Mrs.", "Dr.",
                                            "Hon.", "No.", "St."};
  // Only '.' terminates when set; otherwise '?' and '!' do as well.
  bool stops_only = false;
};

struct SourceDocument {
  std::string doc_id;
  Date date;
  std::string raw;  // markup-free, NFC
};

// Strips tags, comments, and the contents of head/script/style; block-level
// elements become line breaks; entity references are decoded. Input without
// markup is treated as plain text and keeps its line structure.
std::string ExtractText(std::string_view html);

// Each line is split independently; a line break always ends a sentence.
std::vector<std::string> SplitSentences(std::string_view text,
                                        const SplitOptions& options = {});

std::string CleanSentence(std::string_view s);

// Token kinds are assigned; word labels are left at the U sentinel.
std::vector<Token> Tokenize(std::string_view cleaned);

// Header field first (<meta name="date"> or a leading "Date:" line), then a
// YYYY-MM-DD or "DD Month YYYY" pattern in the file name.
std::optional<Date> FindDate(std::string_view content, std::string_view filename);

// Reads one .html/.htm/.txt file. Throws kParse if no date can be found.
SourceDocument LoadDocument(const std::filesystem::path& path);

std::vector<LabelledSentence> SentencesFromDocument(
    const SourceDocument& doc, const SplitOptions& options = {});

// A file, or every .html/.htm/.txt file of a directory in name order.
Corpus IngestPath(const std::filesystem::path& path,
                  const SplitOptions& options = {});

}  // namespace reotag::ingest

#endif  // REOTAG_INGEST_HPP_
