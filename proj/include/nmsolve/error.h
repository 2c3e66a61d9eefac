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

#ifndef NMSOLVE_ERROR_H_
#define NMSOLVE_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace nmsolve {

enum class ErrorKind {
  kInvalidGame,
  kDimension,
  kEmptyHistory,
  kInvalidInput,
  kPerfectRecallViolation,
  kMalformedTree,
  kIncompleteStrategy,
  kInvalidSequenceForm,
  kDomain,
  kConfig,
  kIo,
  kParse,
};

std::string_view ErrorKindName(ErrorKind kind);

// Every failure raised by the library carries one of the kinds above so that
// callers (the CLI in particular) can map them onto exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void Fail(ErrorKind kind, const std::string& message);

inline void CheckDimension(std::size_t got, std::size_t want,
                           std::string_view what) {
  if (got != want) {
    Fail(ErrorKind::kDimension,
         std::string(what) + ": expected length " + std::to_string(want) +
             ", got " + std::to_string(got));
  }
}

}  // namespace nmsolve

#endif  // NMSOLVE_ERROR_H_
