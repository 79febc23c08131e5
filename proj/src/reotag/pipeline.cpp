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

#include "reotag/pipeline.hpp"

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "reotag/analytics.hpp"
#include "reotag/annotation.hpp"
#include "reotag/corpus_io.hpp"
#include "reotag/error.hpp"
#include "reotag/labeler.hpp"
#include "reotag/lexicon.hpp"

namespace reotag {
namespace {

namespace pt = boost::property_tree;

PipelineStage ParseStage(const std::string& token) {
  const auto colon = token.find(':');
  const std::string name = token.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : token.substr(colon + 1);
  using K = PipelineStage::Kind;
  if (name == "ingest") return {K::kIngest, arg};
  if (name == "label") return {K::kLabel, arg};
  if (name == "resolve") return {K::kResolve, arg.empty() ? "1" : arg};
  if (name == "apply") {
    if (arg.empty()) Fail(ErrorCode::kInvalidArgument, "apply stage needs a decision store: apply:<file>");
    return {K::kApply, arg};
  }
  if (name == "reassess") return {K::kReassess, arg};
  if (name == "export") return {K::kExport, arg};
  Fail(ErrorCode::kInvalidArgument, "unknown pipeline stage '" + name + "'");
}

bool ParseBool(const std::string& v, const std::string& key) {
  if (v == "true" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "no" || v == "0") return false;
  Fail(ErrorCode::kParse, "'" + key + "' must be true or false");
}

std::filesystem::path Resolve(const std::filesystem::path& base, const std::string& v) {
  if (v.empty()) return {};
  const std::filesystem::path p(v);
  return p.is_absolute() ? p : base / p;
}

}  // namespace

Corpus FinalExport(const Corpus& corpus) {
  Corpus out;
  out.sources = corpus.sources;
  out.history = corpus.history;
  for (const auto& s : corpus.sentences) {
    if (s.sentence_class() != SentenceClass::kIndeterminate) out.sentences.push_back(s);
  }
  return out;
}

PipelineConfig PipelineConfig::Load(const std::filesystem::path& path) {
  if (!std::filesystem::is_regular_file(path)) {
    Fail(ErrorCode::kIo, "cannot read " + path.string());
  }
  pt::ptree tree;
  try {
    pt::read_ini(path.string(), tree);
  } catch (const pt::ini_parser_error& e) {
    Fail(ErrorCode::kParse, e.what());
  }
  const std::filesystem::path base = path.parent_path();
  PipelineConfig config;
  config.sources = Resolve(base, tree.get<std::string>("pipeline.sources", ""));
  config.lexicon_dir = Resolve(base, tree.get<std::string>("pipeline.lexicon_dir", ""));
  config.corpus_output = tree.get<std::string>("pipeline.corpus_output", "");
  config.gold_output = tree.get<std::string>("pipeline.gold_output", "");
  config.stage_report = tree.get<std::string>("pipeline.stage_report", "");

  std::vector<std::string> tokens;
  const std::string stages = tree.get<std::string>("pipeline.stages", "");
  boost::split(tokens, stages, boost::is_any_of(" \t,"), boost::token_compress_on);
  for (const auto& t : tokens) {
    if (t.empty()) continue;
    PipelineStage stage = ParseStage(t);
    if (stage.kind == PipelineStage::Kind::kApply) {
      stage.argument = Resolve(base, stage.argument).string();
    }
    config.stages.push_back(std::move(stage));
  }
  if (config.stages.empty()) Fail(ErrorCode::kInvalidArgument, path.string() + ": no stages");
  if (config.stages.front().kind != PipelineStage::Kind::kIngest &&
      config.sources.extension() != ".tsv") {
    Fail(ErrorCode::kInvalidArgument, "pipeline must start with ingest unless sources is a .tsv corpus");
  }
  if (config.sources.empty()) Fail(ErrorCode::kInvalidArgument, path.string() + ": missing pipeline.sources");

  if (const auto abbr = tree.get_optional<std::string>("ingest.abbreviations")) {
    config.split.abbreviations.clear();
    std::vector<std::string> parts;
    boost::split(parts, *abbr, boost::is_any_of(", "), boost::token_compress_on);
    for (auto& p : parts) {
      if (!p.empty()) config.split.abbreviations.push_back(p);
    }
  }
  config.split.stops_only =
      ParseBool(tree.get<std::string>("ingest.stops_only", "false"), "ingest.stops_only");
  config.resolve.final_rule =
      ParseBool(tree.get<std::string>("resolve.final_rule", "true"), "resolve.final_rule");
  config.resolve.transparency =
      ParseBool(tree.get<std::string>("resolve.transparency", "true"), "resolve.transparency");
  return config;
}

PipelineResult RunPipeline(const PipelineConfig& config,
                           const std::filesystem::path& output_dir) {
  PipelineResult result;
  std::optional<LexiconSet> lexicons;
  auto need_lexicons = [&]() -> LexiconSet& {
    if (!lexicons) {
      if (config.lexicon_dir.empty()) Fail(ErrorCode::kInvalidArgument, "pipeline.lexicon_dir is not set");
      lexicons = LexiconSet::LoadDirectory(config.lexicon_dir);
      for (const auto& w : lexicons->warnings()) result.warnings.push_back(w);
    }
    return *lexicons;
  };

  if (config.stages.front().kind != PipelineStage::Kind::kIngest) {
    result.corpus = ReadCorpusFile(config.sources);
  }
  for (const PipelineStage& stage : config.stages) {
    switch (stage.kind) {
      case PipelineStage::Kind::kIngest:
        result.corpus = ingest::IngestPath(config.sources, config.split);
        break;
      case PipelineStage::Kind::kLabel:
        result.corpus = LabelCorpus(std::move(result.corpus), need_lexicons());
        break;
      case PipelineStage::Kind::kResolve: {
        int passes = 0;
        try {
          passes = std::stoi(stage.argument);
        } catch (const std::exception&) {
          Fail(ErrorCode::kInvalidArgument, "bad resolve pass count '" + stage.argument + "'");
        }
        result.corpus = ResolveCorpus(std::move(result.corpus), passes, config.resolve).first;
        break;
      }
      case PipelineStage::Kind::kApply: {
        const auto store = annotation::DecisionStore::Open(stage.argument);
        lexicons = annotation::ApplyLexiconUpdates(need_lexicons(), store.decisions(),
                                                   &result.warnings);
        result.corpus = annotation::ApplyDecisions(std::move(result.corpus), store.decisions()).first;
        break;
      }
      case PipelineStage::Kind::kReassess:
        result.corpus = ReassessUnclear(std::move(result.corpus), need_lexicons());
        break;
      case PipelineStage::Kind::kExport:
        result.gold = FinalExport(result.corpus);
        break;
    }
  }

  auto write = [&](const std::filesystem::path& rel, const std::string& data) {
    if (rel.empty()) return;
    const auto path = rel.is_absolute() ? rel : output_dir / rel;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    WriteFileAtomic(path, data);
    result.written.push_back(path);
  };
  write(config.corpus_output, WriteTsv(result.corpus));
  if (result.gold) write(config.gold_output, WriteTsv(*result.gold));
  write(config.stage_report,
        analytics::RenderStages(result.corpus.history, analytics::Format::kTsv));
  return result;
}

}  // namespace reotag
