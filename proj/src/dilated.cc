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

#include "nmsolve/dilated.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nmsolve/error.h"

namespace nmsolve {
namespace {

void CheckEta(double eta) {
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    Fail(ErrorKind::kInvalidInput, "eta must be positive");
  }
}

void CheckInterior(std::span<const double> b, const char* what) {
  for (double v : b) {
    if (!(v > 0.0)) {
      Fail(ErrorKind::kDomain,
           std::string(what) + " has a zero entry; the entropy prox needs an "
                               "interior point");
    }
  }
}

}  // namespace

double dilated_value(const Treeplex& t, std::span<const double> x,
                     const DilatedDgf& dgf) {
  CheckDimension(x.size(), t.seq_count(), "sequence-form vector");
  double v = 0.0;
  for (std::size_t j = 0; j < t.num_decision_points(); ++j) {
    const double reach = x[t.parent_seq(j)];
    if (!(reach > 0.0)) continue;
    for (std::size_t a = 0; a < t.actions(j); ++a) {
      const double xa = x[t.seq(j, a)];
      if (dgf.local == Regularizer::kNegativeEntropy) {
        if (xa > 0.0) v += xa * std::log(xa / reach);
      } else {
        v += 0.5 * xa * xa / reach;
      }
    }
  }
  return v;
}

std::vector<double> dilated_gradient(const Treeplex& t,
                                     std::span<const double> behavior,
                                     const DilatedDgf& dgf) {
  CheckDimension(behavior.size(), t.seq_count(), "flat behavior");
  std::vector<double> grad(t.seq_count(), 0.0);
  for (std::size_t s = 1; s < t.seq_count(); ++s) {
    const auto kids = t.children_of_seq(s);
    if (dgf.local == Regularizer::kNegativeEntropy) {
      grad[s] = std::log(behavior[s]) + 1.0 - static_cast<double>(kids.size());
    } else {
      double sq = 0.0;
      for (std::size_t c : kids) {
        for (std::size_t a = 0; a < t.actions(c); ++a) {
          const double u = behavior[t.seq(c, a)];
          sq += u * u;
        }
      }
      grad[s] = behavior[s] - 0.5 * sq;
    }
  }
  return grad;
}

double dilated_divergence(const Treeplex& t, std::span<const double> x,
                          std::span<const double> z, const DilatedDgf& dgf) {
  std::vector<double> bz(t.seq_count());
  sequence_to_flat_behavior(t, z, bz);
  const auto grad = dilated_gradient(t, bz, dgf);
  double inner = 0.0;
  for (std::size_t s = 1; s < t.seq_count(); ++s) inner += grad[s] * (x[s] - z[s]);
  return dilated_value(t, x, dgf) - dilated_value(t, z, dgf) - inner;
}

void dilated_prox_behavior(const Treeplex& t,
                           std::span<const double> z_behavior,
                           std::span<const double> g, double eta,
                           const DilatedDgf& dgf,
                           std::span<double> out_behavior) {
  CheckDimension(z_behavior.size(), t.seq_count(), "flat behavior");
  CheckDimension(g.size(), t.seq_count(), "sequence gradient");
  CheckDimension(out_behavior.size(), t.seq_count(), "flat behavior output");
  CheckEta(eta);
  const bool entropy = dgf.local == Regularizer::kNegativeEntropy;
  if (entropy) CheckInterior(z_behavior.subspan(1), "prox center");
  const auto grad = dilated_gradient(t, z_behavior, dgf);
  // Optimal value of the subproblem rooted at each decision point, per unit
  // of parent reach.
  std::vector<double> value(t.num_decision_points(), 0.0);
  std::vector<double> v(t.max_actions());
  for (std::size_t j : t.bottom_up()) {
    const std::size_t first = t.first_seq(j), n = t.actions(j);
    for (std::size_t a = 0; a < n; ++a) {
      const std::size_t s = first + a;
      double c = eta * g[s] - grad[s];
      for (std::size_t k : t.children_of_seq(s)) c += value[k];
      v[a] = c;
    }
    if (entropy) {
      // softmax(-v), value -logsumexp(-v)
      double m = -std::numeric_limits<double>::infinity();
      for (std::size_t a = 0; a < n; ++a) m = std::max(m, -v[a]);
      double sum = 0.0;
      for (std::size_t a = 0; a < n; ++a) {
        out_behavior[first + a] = std::exp(-v[a] - m);
        sum += out_behavior[first + a];
      }
      for (std::size_t a = 0; a < n; ++a) out_behavior[first + a] /= sum;
      value[j] = -(m + std::log(sum));
    } else {
      std::vector<double> neg(n);
      for (std::size_t a = 0; a < n; ++a) neg[a] = -v[a];
      const auto u = project_simplex(neg);
      double val = 0.0;
      for (std::size_t a = 0; a < n; ++a) {
        out_behavior[first + a] = u[a];
        val += u[a] * v[a] + 0.5 * u[a] * u[a];
      }
      value[j] = val;
    }
  }
  out_behavior[0] = 1.0;
}

SequenceFormStrategy dilated_prox(const Treeplex& t,
                                  const SequenceFormStrategy& z,
                                  std::span<const double> g, double eta,
                                  const DilatedDgf& dgf) {
  CheckDimension(z.size(), t.seq_count(), "sequence-form vector");
  if (dgf.local == Regularizer::kNegativeEntropy) {
    CheckInterior(z.values(), "prox center");
  }
  std::vector<double> bz(t.seq_count()), bx(t.seq_count()), x(t.seq_count());
  sequence_to_flat_behavior(t, z.values(), bz);
  dilated_prox_behavior(t, bz, g, eta, dgf, bx);
  flat_behavior_to_sequence(t, bx, x);
  return SequenceFormStrategy::Trusted(std::move(x));
}

SequenceFormStrategy dmomd_step(const Treeplex& t,
                                const SequenceFormStrategy& z,
                                std::span<const double> momentum, double eta,
                                const DilatedDgf& dgf) {
  std::vector<double> g(momentum.size());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = -momentum[i];
  return dilated_prox(t, z, g, eta, dgf);
}

}  // namespace nmsolve
