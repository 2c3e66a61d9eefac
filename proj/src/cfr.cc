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


#include "nmsolve/cfr.h"

#include <algorithm>

#include "nmsolve/error.h"

namespace nmsolve {

std::string CfrVariantName(CfrVariant variant) {
  switch (variant) {
    case CfrVariant::kCFR:
      return "cfr";
    case CfrVariant::kCFRPlus:
      return "cfr+";
    case CfrVariant::kPCFRPlus:
      return "pcfr+";
    case CfrVariant::kMoCFRPlus:
      return "mocfr+";
  }
  return "?";
}

SimplexStrategy PredictiveRegretState::Strategy() const {
  std::vector<double> v(regret_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = regret_[i] + prediction_[i];
  return positive_part_strategy(v);
}

SimplexStrategy pcfr_plus_local(PredictiveRegretState& state,
                                std::span<const double> r,
                                std::span<const double> prediction) {
  CheckDimension(r.size(), state.size(), "pcfr+ regret");
  CheckDimension(prediction.size(), state.size(), "pcfr+ prediction");
  for (std::size_t i = 0; i < r.size(); ++i) {
    state.regret_[i] = std::max(state.regret_[i] + r[i], 0.0);
  }
  state.prediction_.assign(prediction.begin(), prediction.end());
  return state.Strategy();
}

namespace {

RegretMatcherMode ModeFor(CfrVariant variant) {
  switch (variant) {
    case CfrVariant::kCFR:
      return RegretMatcherMode::kRM;
    case CfrVariant::kMoCFRPlus:
      return RegretMatcherMode::kMoRMPlus;
    default:
      return RegretMatcherMode::kRMPlus;
  }
}

}  // namespace

LocalRegretBank::LocalRegretBank(const Treeplex& t, CfrVariant variant,
                                 double beta, RestartInterval k)
    : variant_(variant) {
  const std::size_t m = t.num_decision_points();
  actions_.reserve(m);
  for (std::size_t j = 0; j < m; ++j) {
    actions_.push_back(t.actions(j));
    if (variant == CfrVariant::kPCFRPlus) {
      predictive_.emplace_back(t.actions(j));
    } else {
      matchers_.emplace_back(t.actions(j), ModeFor(variant), beta, k);
    }
  }
  behavior_ = uniform_behavior(t);
  flat_.assign(t.seq_count(), 0.0);
  sequence_.assign(t.seq_count(), 0.0);
  local_loss_.assign(t.seq_count(), 0.0);
  node_value_.assign(m, 0.0);
  Refresh(t);
}

std::span<const double> LocalRegretBank::regret(std::size_t j) const {
  if (variant_ == CfrVariant::kPCFRPlus) return predictive_.at(j).regret();
  return matchers_.at(j).regret();
}

std::span<const double> LocalRegretBank::attachment(std::size_t j) const {
  if (variant_ == CfrVariant::kPCFRPlus) {
    static const std::vector<double> kEmpty;
    return std::span<const double>(kEmpty);
  }
  return matchers_.at(j).attachment();
}

void LocalRegretBank::Refresh(const Treeplex& t) {
  for (std::size_t j = 0; j < actions_.size(); ++j) {
    const std::size_t first = t.first_seq(j);
    for (std::size_t a = 0; a < actions_[j]; ++a) {
      flat_[first + a] = behavior_[j][a];
    }
  }
  flat_behavior_to_sequence(t, flat_, sequence_);
}

const Behavior& cfr_iteration(LocalRegretBank& bank, const Treeplex& t,
                              std::span<const double> loss) {
  if (t.num_decision_points() != bank.actions_.size()) {
    Fail(ErrorKind::kConfig, "regret bank covers " +
                                 std::to_string(bank.actions_.size()) +
                                 " decision points, treeplex has " +
                                 std::to_string(t.num_decision_points()));
  }
  for (std::size_t j = 0; j < bank.actions_.size(); ++j) {
    if (t.actions(j) != bank.actions_[j]) {
      Fail(ErrorKind::kConfig, "regret bank action count differs at decision point " +
                                   std::to_string(j));
    }
  }
  CheckDimension(loss.size(), t.seq_count(), "cfr loss");

  // Step I.
  counterfactual_values_flat(t, loss, bank.flat_, bank.local_loss_,
                             bank.node_value_);
  // Steps II-IV.
  std::vector<double> r;
  for (std::size_t j = 0; j < bank.actions_.size(); ++j) {
    const std::size_t first = t.first_seq(j);
    const auto local = std::span<const double>(bank.local_loss_)
                           .subspan(first, bank.actions_[j]);
    if (bank.variant_ == CfrVariant::kPCFRPlus) {
      r = instantaneous_regret(bank.behavior_[j].probs(), local);
      bank.behavior_[j] = pcfr_plus_local(bank.predictive_[j], r);
    } else {
      bank.behavior_[j] =
          regret_matcher_step(bank.matchers_[j], local, bank.behavior_[j]);
    }
  }
  bank.Refresh(t);
  return bank.behavior_;
}

}  // namespace nmsolve
