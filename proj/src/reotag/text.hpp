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

#ifndef REOTAG_TEXT_HPP_
#define REOTAG_TEXT_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

// UTF-8 helpers. Normalization and character properties come from ICU.
namespace reotag::text {

std::string Nfc(std::string_view s);

// NFC, then Unicode default case folding, then NFC again.
std::string FoldCase(std::string_view s);

// Byte offset of the first ill-formed sequence, or nullopt if s is valid.
std::optional<std::size_t> FindInvalidUtf8(std::string_view s);

std::u32string Decode(std::string_view s);
void Append(std::string& out, char32_t cp);
std::string Encode(std::u32string_view cps);

std::size_t CodePointCount(std::string_view s);

bool IsLetter(char32_t cp);
bool IsDigit(char32_t cp);
// General categories P* and S*.
bool IsPunctuation(char32_t cp);
bool IsWhitespace(char32_t cp);
// Cc characters that are not whitespace.
bool IsControl(char32_t cp);

std::string_view Trim(std::string_view s);

std::string Sha256Hex(std::string_view data);

}  // namespace reotag::text

#endif  // REOTAG_TEXT_HPP_
