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

#ifndef REOTAG_ERROR_HPP_
#define REOTAG_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace reotag {

enum class ErrorCode {
  kInvalidArgument,
  kIo,
  kParse,
  kConflict,
  kNotFound,
  kState,
};

const char* ErrorCodeName(ErrorCode code);

// Every failure raised by the core is an Error; the C layer maps the code
// onto reotag_status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void Fail(ErrorCode code, const std::string& message);

}  // namespace reotag

#endif  // REOTAG_ERROR_HPP_
