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

#ifndef REOTAG_CORPUS_IO_HPP_
#define REOTAG_CORPUS_IO_HPP_

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "json.hpp"
#include "reotag/corpus.hpp"

// Interchange formats.
//
// TSV (UTF-8, NFC):
//   ## reo-tag corpus 1
//   ## source <path>
//   ## stage <name> before=M:0,P:0,... after=M:0,... changed=<n>
//   # date=YYYY-MM-DD doc=<id> seq=<n> class=<M|P|B|I>
//   # text = <sentence text>
//   <surface>\t<label>
//   <blank line>
//
// The "##" lines carry corpus provenance and the stage history. The
// "# text =" line records token spacing and is optional on input.
namespace reotag {

std::string WriteTsv(const Corpus& corpus);
void WriteTsv(const Corpus& corpus, std::ostream& out);

// `source_name` prefixes error messages ("name:line: ...").
Corpus ParseTsv(std::string_view data, std::string_view source_name = "<tsv>");

Corpus ReadCorpusFile(const std::filesystem::path& path);
void WriteCorpusFile(const Corpus& corpus, const std::filesystem::path& path);

// One JSON object per sentence.
std::string WriteJsonLines(const Corpus& corpus);
nlohmann::ordered_json SentenceToJson(const LabelledSentence& sentence);
nlohmann::ordered_json CountsToJson(const LabelCounts& counts);

std::string FormatCounts(const LabelCounts& counts);

// Whole-file helpers shared by the loaders.
std::string ReadFile(const std::filesystem::path& path);
// Writes via a temporary sibling and rename.
void WriteFileAtomic(const std::filesystem::path& path, std::string_view data);

}  // namespace reotag

#endif  // REOTAG_CORPUS_IO_HPP_
