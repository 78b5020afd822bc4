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

#include "graphts/error.hpp"

namespace graphts {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kNonFiniteValue: return "NonFiniteValue";
    case ErrorCode::kUnknownLabel: return "UnknownLabel";
    case ErrorCode::kDuplicatePath: return "DuplicatePath";
    case ErrorCode::kMissingFile: return "MissingFile";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kSchemaMismatch: return "SchemaMismatch";
    case ErrorCode::kInvalidParams: return "InvalidParams";
    case ErrorCode::kInvalidWindowLen: return "InvalidWindowLen";
    case ErrorCode::kNyquistViolation: return "NyquistViolation";
    case ErrorCode::kUnsupportedOrder: return "UnsupportedOrder";
    case ErrorCode::kSeriesTooShort: return "SeriesTooShort";
    case ErrorCode::kWindowTooLong: return "WindowTooLong";
    case ErrorCode::kBadNode: return "BadNode";
    case ErrorCode::kBadK: return "BadK";
    case ErrorCode::kUnlabeledRow: return "UnlabeledRow";
    case ErrorCode::kTooFewGroups: return "TooFewGroups";
    case ErrorCode::kEmptyGroup: return "EmptyGroup";
    case ErrorCode::kClassTooSmall: return "ClassTooSmall";
    case ErrorCode::kSingleClass: return "SingleClass";
    case ErrorCode::kBadSpec: return "BadSpec";
    case ErrorCode::kEmptyMatrix: return "EmptyMatrix";
    case ErrorCode::kConfigError: return "ConfigError";
    case ErrorCode::kInternal: return "Internal";
  }
  return "Unknown";
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kConfigError:
      return 1;
    case ErrorCode::kInternal:
      return 3;
    default:
      return 2;
  }
}

}  // namespace graphts
