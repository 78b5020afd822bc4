// Copyright 2026 The GraphTS Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace graphts {

enum class ErrorCode {
  // input / data
  kEmptyInput,
  kParseError,
  kNonFiniteValue,
  kUnknownLabel,
  kDuplicatePath,
  kMissingFile,
  kIoError,
  kSchemaMismatch,
  // parameter validation
  kInvalidParams,
  kInvalidWindowLen,
  kNyquistViolation,
  kUnsupportedOrder,
  kSeriesTooShort,
  kWindowTooLong,
  kBadNode,
  kBadK,
  kUnlabeledRow,
  kTooFewGroups,
  kEmptyGroup,
  kClassTooSmall,
  kSingleClass,
  kBadSpec,
  kEmptyMatrix,
  // orchestration
  kConfigError,
  kInternal,
};

std::string_view to_string(ErrorCode code);

// Exit-code class used by the CLI: 1 config, 2 data, 3 internal.
int exit_code_for(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace graphts
