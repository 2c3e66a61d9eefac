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


#ifndef NMSOLVE_CFR_H_
#define NMSOLVE_CFR_H_

#include <span>
#include <string>
#include <vector>

#include "nmsolve/momentum.h"
#include "nmsolve/simplex_learners.h"
#include "nmsolve/treeplex.h"

namespace nmsolve {

enum class CfrVariant { kCFR, kCFRPlus, kPCFRPlus, kMoCFRPlus };

std::string CfrVariantName(CfrVariant variant);

// Predictive RM+ memory for one simplex: thresholded regret R and the
// prediction m of the next instantaneous regret.
class PredictiveRegretState {
 public:
  explicit PredictiveRegretState(std::size_t dim)
      : regret_(dim, 0.0), prediction_(dim, 0.0) {}
  std::span<const double> regret() const { return regret_; }
  std::span<const double> prediction() const { return prediction_; }
  std::size_t size() const { return regret_.size(); }
  // [R + m]^+ normalized (uniform when zero).
  SimplexStrategy Strategy() const;

 private:
  friend SimplexStrategy pcfr_plus_local(PredictiveRegretState&,
                                         std::span<const double>,
                                         std::span<const double>);
  std::vector<double> regret_;
  std::vector<double> prediction_;
};

// R <- [R + r]^+, m <- prediction; returns the strategy from [R + m]^+.
SimplexStrategy pcfr_plus_local(PredictiveRegretState& state,
                                std::span<const double> r,
                                std::span<const double> prediction);
// Standard choice: the prediction is the regret just observed.
inline SimplexStrategy pcfr_plus_local(PredictiveRegretState& state,
                                       std::span<const double> r) {
  return pcfr_plus_local(state, r, r);
}

// Local regret minimizers, one per decision point of a treeplex, together
// with the behavior strategy they currently play.
class LocalRegretBank {
 public:
  LocalRegretBank(const Treeplex& t, CfrVariant variant, double beta = 0.0,
                  RestartInterval k = RestartInterval::Infinite());

  CfrVariant variant() const { return variant_; }
  std::size_t num_decision_points() const { return actions_.size(); }
  std::size_t actions(std::size_t j) const { return actions_[j]; }

  // Cumulative (possibly thresholded) regret of decision point j.
  std::span<const double> regret(std::size_t j) const;
  // Attachment regret; zeros for variants without one.
  std::span<const double> attachment(std::size_t j) const;

  const Behavior& behavior() const { return behavior_; }
  // Behavior laid out by sequence index (entry 0 unused).
  std::span<const double> flat() const { return flat_; }
  // Current strategy in sequence form.
  std::span<const double> sequence() const { return sequence_; }

 private:
  friend const Behavior& cfr_iteration(LocalRegretBank&, const Treeplex&,
                                       std::span<const double>);
  void Refresh(const Treeplex& t);

  CfrVariant variant_;
  std::vector<std::size_t> actions_;
  std::vector<RegretMatcherState> matchers_;
  std::vector<PredictiveRegretState> predictive_;
  Behavior behavior_;
  std::vector<double> flat_;
  std::vector<double> sequence_;
  std::vector<double> local_loss_;
  std::vector<double> node_value_;
};

// One CFR-family iteration against the sequence-form loss: counterfactual
// losses bottom-up, local regret updates, next strategies. The MoCFR+
// attachment refresh happens inside the local MoRM+ update.
const Behavior& cfr_iteration(LocalRegretBank& bank, const Treeplex& t,
                              std::span<const double> loss);

}  // namespace nmsolve

#endif  // NMSOLVE_CFR_H_
