// Copyright 2026 The nmsolve Authors.
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

#include "nmsolve/error.h"

namespace nmsolve {

std::string_view ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidGame: return "InvalidGame";
    case ErrorKind::kDimension: return "DimensionError";
    case ErrorKind::kEmptyHistory: return "EmptyHistory";
    case ErrorKind::kInvalidInput: return "InvalidInput";
    case ErrorKind::kPerfectRecallViolation: return "PerfectRecallViolation";
    case ErrorKind::kMalformedTree: return "MalformedTree";
    case ErrorKind::kIncompleteStrategy: return "IncompleteStrategy";
    case ErrorKind::kInvalidSequenceForm: return "InvalidSequenceForm";
    case ErrorKind::kDomain: return "DomainError";
    case ErrorKind::kConfig: return "ConfigError";
    case ErrorKind::kIo: return "IoError";
    case ErrorKind::kParse: return "ParseError";
  }
  return "Error";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(ErrorKindName(kind)) + ": " + message),
      kind_(kind) {}

void Fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace nmsolve
