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

#ifndef NMSOLVE_RNG_H_
#define NMSOLVE_RNG_H_

#include <array>
#include <cstdint>
#include <optional>

namespace nmsolve {

// Self-contained random stream so that random games reproduce bit-for-bit
// across compilers and standard libraries.
//
//   * The 64-bit seed initialises a splitmix64 generator; its first four
//     outputs become the xoshiro256** state words s[0..3].
//   * Uniform doubles are (next() >> 11) * 2^-53, i.e. in [0, 1).
//   * Gaussians use the Box-Muller transform on u1 = 1 - uniform() (in (0, 1])
//     and u2 = uniform():  r = sqrt(-2 ln u1),  z0 = r cos(2 pi u2),
//     z1 = r sin(2 pi u2).  z0 is returned first, z1 is cached and returned
//     by the following call.
class Xoshiro256 {
 public:
  explicit Xoshiro256(std::uint64_t seed);

  std::uint64_t Next();
  double Uniform();
  double Gaussian();

 private:
  std::array<std::uint64_t, 4> s_;
  std::optional<double> cached_gaussian_;
};

std::uint64_t SplitMix64(std::uint64_t& state);

}  // namespace nmsolve

#endif  // NMSOLVE_RNG_H_
