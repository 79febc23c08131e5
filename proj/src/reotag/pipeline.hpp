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

#ifndef REOTAG_PIPELINE_HPP_
#define REOTAG_PIPELINE_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "reotag/corpus.hpp"
#include "reotag/ingest.hpp"
#include "reotag/resolver.hpp"

namespace reotag {

// Keeps only sentences whose words are all M or P (MaoriOnly, EnglishOnly or
// Bilingual). Sentences with A, U or F words, or with no words, are dropped.
Corpus FinalExport(const Corpus& corpus);

struct PipelineStage {
  enum class Kind { kIngest, kLabel, kResolve, kApply, kReassess, kExport };
  Kind kind;
  std::string argument;  // resolve: pass count; apply: decision store
};

// INI-style configuration:
//
//   [pipeline]
//   sources     = raw                # file or directory
//   lexicon_dir = lexicons
//   stages      = ingest label resolve resolve apply:top20.jsonl reassess resolve export
//   corpus_output = corpus.tsv       # full labelled corpus
//   gold_output   = gold.tsv         # export --final result
//   stage_report  = stages.tsv
//
//   [ingest]
//   abbreviations = Mr.,Mrs.,Dr.,Hon.,No.,St.
//   stops_only    = false
//
//   [resolve]
//   final_rule   = true
//   transparency = true
//
// Input paths are relative to the config file; outputs are relative to the
// output directory (the config directory unless overridden).
struct PipelineConfig {
  std::filesystem::path sources;
  std::filesystem::path lexicon_dir;
  std::vector<PipelineStage> stages;
  std::filesystem::path corpus_output;
  std::filesystem::path gold_output;
  std::filesystem::path stage_report;
  ingest::SplitOptions split;
  ResolveOptions resolve;

  static PipelineConfig Load(const std::filesystem::path& path);
};

struct PipelineResult {
  Corpus corpus;
  std::optional<Corpus> gold;
  std::vector<std::string> warnings;
  std::vector<std::filesystem::path> written;
};

// Runs the stages in order, in memory, and writes the configured outputs.
// Lexicon updates carried by decisions are applied in memory only, so
// repeated runs see identical inputs.
PipelineResult RunPipeline(const PipelineConfig& config,
                           const std::filesystem::path& output_dir);

}  // namespace reotag

#endif  // REOTAG_PIPELINE_HPP_
