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

#ifndef NMSOLVE_FORMAT_H_
#define NMSOLVE_FORMAT_H_

#include <string>
#include <string_view>

namespace nmsolve {

// Locale-independent shortest-roundtrip-safe text (17 significant digits).
std::string FormatDouble(double value);

// Whole-string parse; throws Error(kParse) on trailing junk.
double ParseDouble(std::string_view text);
long long ParseInt(std::string_view text);

std::string_view Trim(std::string_view text);

}  // namespace nmsolve

#endif  // NMSOLVE_FORMAT_H_
