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

#ifndef NMSOLVE_DILATED_H_
#define NMSOLVE_DILATED_H_

#include <span>
#include <vector>

#include "nmsolve/simplex_learners.h"
#include "nmsolve/treeplex.h"

namespace nmsolve {

// Dilated regularizer sum_j x[p_j] psi_j(x_j / x[p_j]) with unit weights.
struct DilatedDgf {
  Regularizer local = Regularizer::kHalfSquaredL2;
};

// psi^dil(x). Entropy uses sum_j sum_a x[j,a] log(x[j,a] / x[p_j]).
double dilated_value(const Treeplex& t, std::span<const double> x,
                     const DilatedDgf& dgf);

// Gradient of psi^dil at the point with flat behavior `behavior`:
//   entropy: log b[j,a] + 1 - |C_{j,a}|
//   l2:      b[j,a] - 1/2 sum_{j' in C_{j,a}} ||b_{j'}||^2
std::vector<double> dilated_gradient(const Treeplex& t,
                                     std::span<const double> behavior,
                                     const DilatedDgf& dgf);

// D(x, z) = psi(x) - psi(z) - <grad psi(z), x - z>.
double dilated_divergence(const Treeplex& t, std::span<const double> x,
                          std::span<const double> z, const DilatedDgf& dgf);

// argmin_x eta <x, g> + D(x, z) by one bottom-up pass; `z_behavior` and
// `out_behavior` are flat behaviors (see flat_behavior). Working on behaviors
// keeps the local strategies of unreached decision points.
void dilated_prox_behavior(const Treeplex& t,
                           std::span<const double> z_behavior,
                           std::span<const double> g, double eta,
                           const DilatedDgf& dgf,
                           std::span<double> out_behavior);

// Sequence-form entry point; zero-reach points of z are read as uniform.
SequenceFormStrategy dilated_prox(const Treeplex& t,
                                  const SequenceFormStrategy& z,
                                  std::span<const double> g, double eta,
                                  const DilatedDgf& dgf);

// Prox with gradient -momentum. L2 gives DMoGDA, entropy gives DMoMWU.
SequenceFormStrategy dmomd_step(const Treeplex& t,
                                const SequenceFormStrategy& z,
                                std::span<const double> momentum, double eta,
                                const DilatedDgf& dgf);

}  // namespace nmsolve

#endif  // NMSOLVE_DILATED_H_
