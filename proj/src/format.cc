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

#include "nmsolve/format.h"

#include <charconv>
#include <cmath>
#include <string>
#include <system_error>

#include "nmsolve/error.h"

namespace nmsolve {

std::string FormatDouble(double value) {
  if (value == 0.0) value = 0.0;  // folds -0 into 0
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value,
                                 std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

double ParseDouble(std::string_view text) {
  text = Trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(),
                                   value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    Fail(ErrorKind::kParse, "not a number: '" + std::string(text) + "'");
  }
  return value;
}

long long ParseInt(std::string_view text) {
  text = Trim(text);
  long long value = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(),
                                   value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    Fail(ErrorKind::kParse, "not an integer: '" + std::string(text) + "'");
  }
  return value;
}

std::string_view Trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(" \t\r\n");
  return text.substr(first, last - first + 1);
}

}  // namespace nmsolve
