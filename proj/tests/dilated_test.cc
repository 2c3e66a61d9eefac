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

#include <cmath>
#include <vector>

#include "doctest.h"
#include "nmsolve/dilated.h"
#include "nmsolve/error.h"
#include "nmsolve/games.h"
#include "nmsolve/momentum.h"
#include "nmsolve/rng.h"
#include "prox_oracle.h"

namespace nmsolve {
namespace {

using Vec = std::vector<double>;

SequenceFormStrategy RandomInterior(const Treeplex& t, Xoshiro256& rng) {
  Behavior b;
  for (std::size_t j = 0; j < t.num_decision_points(); ++j) {
    Vec w(t.actions(j));
    for (double& v : w) v = rng.Uniform() + 0.05;
    b.push_back(SimplexStrategy::FromWeights(w));
  }
  return behavior_to_sequence(t, b);
}

Vec RandomVec(Xoshiro256& rng, std::size_t n) {
  Vec v(n);
  for (double& x : v) x = rng.Gaussian();
  return v;
}

double Objective(const Treeplex& t, std::span<const double> x, const Vec& z,
                 const Vec& g, double eta, DilatedDgf dgf) {
  return eta * Dot(g, x) + dilated_divergence(t, x, z, dgf);
}

const DilatedDgf kEntropy{Regularizer::kNegativeEntropy};
const DilatedDgf kL2{Regularizer::kHalfSquaredL2};

TEST_CASE("single decision point reduces to the simplex prox") {
  auto t = validate_treeplex({{0, std::nullopt, 4}});
  Xoshiro256 rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    Vec w(4);
    for (double& v : w) v = rng.Uniform() + 0.01;
    auto z = SimplexStrategy::FromWeights(w);
    auto g = RandomVec(rng, 4);
    for (auto dgf : {kEntropy, kL2}) {
      const double eta = 0.3 + rng.Uniform();
      auto x = dilated_prox(t, behavior_to_sequence(t, {z}), Vec{0, g[0], g[1], g[2], g[3]},
                            eta, dgf);
      auto want = local_prox(z, g, {eta, dgf.local});
      for (std::size_t a = 0; a < 4; ++a) CHECK(std::abs(x[a + 1] - want[a]) <= 1e-12);
    }
  }
}

TEST_CASE("zero gradient is a fixed point") {
  Xoshiro256 rng(2);
  for (const auto& game : {kuhn_poker(), leduc_poker()}) {
    const auto& t = game.treeplex_x;
    for (auto dgf : {kEntropy, kL2}) {
      auto z = RandomInterior(t, rng);
      auto x = dilated_prox(t, z, Vec(t.seq_count(), 0.0), 1.0, dgf);
      for (std::size_t s = 0; s < t.seq_count(); ++s) CHECK(std::abs(x[s] - z[s]) <= 1e-12);
    }
  }
}

TEST_CASE("two-level softmax composition") {
  // Parent with actions {0, 1}; child under action 0 with actions {0, 1}.
  auto t = validate_treeplex({{0, std::nullopt, 2}, {1, ParentRef{0, 0}, 2}});
  Xoshiro256 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    auto z = RandomInterior(t, rng);
    const auto bz = sequence_to_behavior(t, z);
    auto g = RandomVec(rng, t.seq_count());
    const double eta = 0.5 + rng.Uniform();
    auto x = dilated_prox(t, z, g, eta, kEntropy);
    // Child: zhat_1 * exp(-eta g_1), normalizer Z1 propagated to the parent.
    const double c0 = bz[1][0] * std::exp(-eta * g[t.seq(1, 0)]);
    const double c1 = bz[1][1] * std::exp(-eta * g[t.seq(1, 1)]);
    const double z1 = c0 + c1;
    const double p0 = bz[0][0] * std::exp(-eta * g[t.seq(0, 0)]) * z1;
    const double p1 = bz[0][1] * std::exp(-eta * g[t.seq(0, 1)]);
    const double top0 = p0 / (p0 + p1);
    CHECK(std::abs(x[t.seq(0, 0)] - top0) <= 1e-10);
    CHECK(std::abs(x[t.seq(0, 1)] - (1 - top0)) <= 1e-10);
    CHECK(std::abs(x[t.seq(1, 0)] - top0 * c0 / z1) <= 1e-10);
    CHECK(std::abs(x[t.seq(1, 1)] - top0 * c1 / z1) <= 1e-10);
  }
}

TEST_CASE("kuhn prox matches the barrier newton oracle") {
  const auto& t = kuhn_poker().treeplex_x;
  Xoshiro256 rng(4);
  for (auto dgf : {kEntropy, kL2}) {
    for (int trial = 0; trial < 20; ++trial) {
      auto z = RandomInterior(t, rng);
      auto g = RandomVec(rng, t.seq_count());
      const double eta = 0.5 + 2.0 * rng.Uniform();
      auto x = dilated_prox(t, z, g, eta, dgf);
      const Vec zv(z.values().begin(), z.values().end());
      auto ref = oracle::ProxOracle(t, zv, g, eta, dgf.local);
      double err = 0.0;
      for (std::size_t s = 0; s < t.seq_count(); ++s) err = std::max(err, std::abs(x[s] - ref[s]));
      CHECK(err <= 1e-6);
    }
  }
}

TEST_CASE("prox output is optimal and feasible") {
  Xoshiro256 rng(5);
  for (const auto& game : {kuhn_poker(), goofspiel(4, true)}) {
    const auto& t = game.treeplex_x;
    for (auto dgf : {kEntropy, kL2}) {
      for (int trial = 0; trial < 5; ++trial) {
        auto z = RandomInterior(t, rng);
        const Vec zv(z.values().begin(), z.values().end());
        auto g = RandomVec(rng, t.seq_count());
        auto x = dilated_prox(t, z, g, 1.0, dgf);
        SequenceFormStrategy valid(t, Vec(x.values().begin(), x.values().end()));
        const double best = Objective(t, x.values(), zv, g, 1.0, dgf);
        for (int p = 0; p < 100; ++p) {
          const double eps = std::pow(10.0, -1.0 - 4.0 * rng.Uniform());
          auto other = RandomInterior(t, rng);
          Vec mix(t.seq_count());
          for (std::size_t s = 0; s < mix.size(); ++s) {
            mix[s] = (1.0 - eps) * x[s] + eps * other[s];
          }
          CHECK(Objective(t, mix, zv, g, 1.0, dgf) >= best - 1e-8);
        }
      }
    }
  }
}

TEST_CASE("entropy prox rejects boundary points") {
  const auto& t = kuhn_poker().treeplex_x;
  Behavior b = uniform_behavior(t);
  b[0] = SimplexStrategy::Vertex(2, 0);
  auto z = behavior_to_sequence(t, b);
  CHECK_THROWS_AS(dilated_prox(t, z, Vec(t.seq_count(), 0.0), 1.0, kEntropy), Error);
  try {
    dilated_prox(t, z, Vec(t.seq_count(), 0.0), 1.0, kEntropy);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kDomain);
  }
  // The Euclidean variant accepts it.
  auto x = dilated_prox(t, z, Vec(t.seq_count(), 0.0), 1.0, kL2);
  CHECK(x[1] == doctest::Approx(1.0));
  CHECK_THROWS_AS(dilated_prox(t, z, Vec(3, 0.0), 1.0, kL2), Error);
}

TEST_CASE("dmomd reductions") {
  Xoshiro256 rng(6);
  const auto& t = kuhn_poker().treeplex_x;
  for (auto dgf : {kEntropy, kL2}) {
    MomentumState m(0.0, RestartInterval::Every(3));
    auto a = behavior_to_sequence(t, uniform_behavior(t));
    auto b = a;
    for (int it = 0; it < 30; ++it) {
      auto loss = RandomVec(rng, t.seq_count());
      a = dmomd_step(t, a, ram_momentum_update(m, loss), 0.2, dgf);
      b = dilated_prox(t, b, loss, 0.2, dgf);
      CHECK(a == b);
    }
    // Zero losses leave the iterate in place.
    MomentumState zero(-0.3, RestartInterval::Every(2));
    auto c = RandomInterior(t, rng);
    const auto start = c;
    for (int it = 0; it < 10; ++it) {
      c = dmomd_step(t, c, ram_momentum_update(zero, Vec(t.seq_count(), 0.0)), 0.5, dgf);
    }
    for (std::size_t s = 0; s < t.seq_count(); ++s) CHECK(std::abs(c[s] - start[s]) <= 1e-12);
  }
  // One decision point: same trajectory as the simplex momentum step.
  auto single = validate_treeplex({{0, std::nullopt, 3}});
  for (auto dgf : {kEntropy, kL2}) {
    MomentumState m1(-0.4, RestartInterval::Every(4)), m2(-0.4, RestartInterval::Every(4));
    auto x = behavior_to_sequence(single, uniform_behavior(single));
    auto s = SimplexStrategy::Uniform(3);
    for (int it = 0; it < 30; ++it) {
      auto loss = RandomVec(rng, 3);
      x = dmomd_step(single, x, ram_momentum_update(m1, Vec{0, loss[0], loss[1], loss[2]}),
                     0.3, dgf);
      s = momd_step(s, ram_momentum_update(m2, loss), {0.3, dgf.local});
      for (std::size_t a = 0; a < 3; ++a) CHECK(std::abs(x[a + 1] - s[a]) <= 1e-12);
    }
  }
}

}  // namespace
}  // namespace nmsolve
