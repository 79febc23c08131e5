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

#ifndef REOTAG_TESTS_FIXTURES_HPP_
#define REOTAG_TESTS_FIXTURES_HPP_

#include <atomic>
#include <filesystem>
#include <random>
#include <string>
#include <unistd.h>

#include "reotag/corpus.hpp"

namespace testing_support {

inline std::filesystem::path FixtureDir() { return REOTAG_FIXTURE_DIR; }
inline std::filesystem::path LexiconDir() { return FixtureDir() / "lexicons"; }

// A fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("reotag-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

// Builds a sentence of word tokens with the given labels; S and N labels
// produce punctuation and number tokens.
inline reotag::LabelledSentence SentenceOf(const std::string& labels, std::size_t seq = 0) {
  reotag::LabelledSentence s;
  s.doc = "synthetic";
  s.seq = seq;
  int i = 0;
  for (char c : labels) {
    const auto label = reotag::ParseLabel(std::string(1, c));
    const reotag::TokenKind kind = reotag::KindForLabel(*label);
    std::string surface = kind == reotag::TokenKind::kPunctuation ? ","
                          : kind == reotag::TokenKind::kNumber    ? "7"
                                                                  : "w" + std::to_string(i++);
    reotag::Token t = reotag::MakeToken(surface, kind, true);
    t.label = *label;
    s.tokens.push_back(t);
  }
  if (!s.tokens.empty()) s.tokens.back().space_after = false;
  return s;
}

inline std::string LabelString(const reotag::LabelledSentence& s) {
  std::string out;
  for (const auto& t : s.tokens) out += reotag::LabelChar(t.label);
  return out;
}

}  // namespace testing_support

#endif  // REOTAG_TESTS_FIXTURES_HPP_
