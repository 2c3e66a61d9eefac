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

#ifndef NMSOLVE_SIMPLEX_LEARNERS_H_
#define NMSOLVE_SIMPLEX_LEARNERS_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "nmsolve/momentum.h"
#include "nmsolve/nfg.h"

namespace nmsolve {

enum class Regularizer { kNegativeEntropy, kHalfSquaredL2 };

struct ProxSetup {
  double eta = 1.0;
  Regularizer regularizer = Regularizer::kNegativeEntropy;
};

// Euclidean projection onto the simplex (sort and threshold).
SimplexStrategy project_simplex(std::span<const double> v);

// softmax(v) with the usual max shift.
SimplexStrategy softmax(std::span<const double> v);

// argmin_{z'} eta <z', g> + D(z', z). Entropy zeros stay at zero.
SimplexStrategy local_prox(const SimplexStrategy& z, std::span<const double> g,
                           const ProxSetup& setup);

// Prox step with gradient -momentum.
SimplexStrategy momd_step(const SimplexStrategy& z,
                          std::span<const double> momentum,
                          const ProxSetup& setup);

// argmin_z eta <z, L> + psi(z), L the current cumulative loss.
SimplexStrategy moftrl_step(std::span<const double> cumulative_loss,
                            const ProxSetup& setup);
inline SimplexStrategy moftrl_step(const CumulativeLossState& state,
                                   const ProxSetup& setup) {
  return moftrl_step(state.cumulative(), setup);
}

enum class RegretMatcherMode { kRM, kRMPlus, kMoRMPlus };

class RegretMatcherState {
 public:
  RegretMatcherState(std::size_t dim, RegretMatcherMode mode,
                     double beta = 0.0,
                     RestartInterval k = RestartInterval::Infinite());

  RegretMatcherMode mode() const { return mode_; }
  std::span<const double> regret() const { return r_; }
  std::span<const double> attachment() const { return r_att_; }
  std::int64_t t() const { return t_; }
  std::size_t size() const { return r_.size(); }

  // Strategy proportional to [R]^+, uniform when that is all zeros.
  SimplexStrategy Strategy() const;

 private:
  friend SimplexStrategy regret_matcher_step(RegretMatcherState&,
                                             std::span<const double>,
                                             const SimplexStrategy&);
  RegretMatcherMode mode_;
  double beta_;
  RestartInterval k_;
  std::vector<double> r_;
  std::vector<double> r_prev_;
  std::vector<double> r_att_;
  std::int64_t t_ = 0;
};

// One regret matching update with instantaneous regret of `current` under
// `loss`; returns the next strategy.
SimplexStrategy regret_matcher_step(RegretMatcherState& state,
                                    std::span<const double> loss,
                                    const SimplexStrategy& current);

// [v]^+ normalized, or uniform when the positive part vanishes.
SimplexStrategy positive_part_strategy(std::span<const double> v);

class OptimisticState {
 public:
  explicit OptimisticState(SimplexStrategy start)
      : current_(std::move(start)), prev_loss_(current_.size(), 0.0) {}

  const SimplexStrategy& current() const { return current_; }
  std::span<const double> prev_loss() const { return prev_loss_; }

 private:
  friend const SimplexStrategy& optimistic_step(OptimisticState&,
                                                std::span<const double>,
                                                const ProxSetup&);
  SimplexStrategy current_;
  std::vector<double> prev_loss_;
};

// current <- local_prox(current, 2 loss - prev_loss); prev_loss <- loss.
const SimplexStrategy& optimistic_step(OptimisticState& state,
                                       std::span<const double> loss,
                                       const ProxSetup& setup);

enum class AveragingScheme { kUniform, kLinear, kQuadratic, kLastIterate };

std::string AveragingName(AveragingScheme scheme);
AveragingScheme ParseAveraging(const std::string& name);

// Weight of the 1-based iterate t.
double AveragingWeight(AveragingScheme scheme, std::int64_t t);

SimplexStrategy averaged_strategy(std::span<const SimplexStrategy> history,
                                  AveragingScheme scheme);

// Streaming weighted mean of equal-length vectors.
class RunningAverage {
 public:
  explicit RunningAverage(AveragingScheme scheme) : scheme_(scheme) {}

  void Add(std::span<const double> value);
  std::span<const double> value() const { return mean_; }
  std::int64_t count() const { return count_; }

 private:
  AveragingScheme scheme_;
  std::vector<double> mean_;
  double total_weight_ = 0.0;
  std::int64_t count_ = 0;
};

}  // namespace nmsolve

#endif  // NMSOLVE_SIMPLEX_LEARNERS_H_
