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

#ifndef NMSOLVE_TREEPLEX_H_
#define NMSOLVE_TREEPLEX_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nmsolve/nfg.h"

namespace nmsolve {

// Sequence (j, a) of decision point j; the empty sequence is index 0.
struct ParentRef {
  std::size_t decision_point = 0;
  std::size_t action = 0;
  friend bool operator==(const ParentRef&, const ParentRef&) = default;
};

struct RawDecisionPoint {
  std::size_t id = 0;
  std::optional<ParentRef> parent;  // nullopt: hangs off the empty sequence
  std::size_t actions = 0;
};

// Validated sequential decision process. Sequence 0 is the empty sequence,
// which plays the part of the single action of an implicit root decision
// point; decision point j owns the contiguous block
// [first_seq(j), first_seq(j) + actions(j)).
class Treeplex {
 public:
  Treeplex() = default;

  std::size_t num_decision_points() const { return actions_.size(); }
  std::size_t seq_count() const { return seq_count_; }
  std::size_t actions(std::size_t j) const { return actions_[j]; }
  std::size_t first_seq(std::size_t j) const { return first_seq_[j]; }
  std::size_t seq(std::size_t j, std::size_t a) const { return first_seq_[j] + a; }
  // Parent sequence index p_j (0 for top-level decision points).
  std::size_t parent_seq(std::size_t j) const { return parent_seq_[j]; }
  std::optional<ParentRef> parent(std::size_t j) const { return parents_[j]; }
  // Decision points whose parent sequence is s.
  std::span<const std::size_t> children_of_seq(std::size_t s) const {
    return {child_list_.data() + child_begin_[s],
            child_begin_[s + 1] - child_begin_[s]};
  }
  std::span<const std::size_t> children(std::size_t j, std::size_t a) const {
    return children_of_seq(seq(j, a));
  }
  // Owner decision point of a non-empty sequence.
  std::size_t seq_owner(std::size_t s) const { return seq_owner_[s]; }
  // Parents before children.
  std::span<const std::size_t> top_down() const { return top_down_; }
  // Children before parents.
  std::span<const std::size_t> bottom_up() const { return bottom_up_; }
  std::span<const std::size_t> roots() const { return children_of_seq(0); }
  std::size_t max_actions() const { return max_actions_; }

  friend Treeplex validate_treeplex(const std::vector<RawDecisionPoint>&);
  friend bool operator==(const Treeplex& a, const Treeplex& b) {
    return a.actions_ == b.actions_ && a.parents_ == b.parents_;
  }

 private:
  std::vector<std::size_t> actions_;
  std::vector<std::optional<ParentRef>> parents_;
  std::vector<std::size_t> first_seq_;
  std::vector<std::size_t> parent_seq_;
  std::vector<std::size_t> seq_owner_;
  std::vector<std::size_t> child_begin_;
  std::vector<std::size_t> child_list_;
  std::vector<std::size_t> top_down_;
  std::vector<std::size_t> bottom_up_;
  std::size_t seq_count_ = 1;
  std::size_t max_actions_ = 0;
};

// Decision point ids must be 0..J-1. Duplicate ids or a decision point hung
// under two parents raise PerfectRecallViolation; dangling parents, cycles and
// zero-action points raise MalformedTree.
Treeplex validate_treeplex(const std::vector<RawDecisionPoint>& points);

std::vector<RawDecisionPoint> raw_decision_points(const Treeplex& t);

// Line format:
//   # treeplex J
//   dp <id> root <n>
//   dp <id> <parent_dp>:<parent_action> <n>
std::string treeplex_to_text(const Treeplex& t);
Treeplex treeplex_from_text(const std::string& text);

class SequenceFormStrategy {
 public:
  SequenceFormStrategy() = default;
  // Checks x[0] = 1, entries in [0, 1] and flow conservation within `tol`.
  SequenceFormStrategy(const Treeplex& t, std::vector<double> values,
                       double tol = 1e-9);

  // No validation; for values produced by exact constructions.
  static SequenceFormStrategy Trusted(std::vector<double> values);

  std::size_t size() const { return x_.size(); }
  double operator[](std::size_t s) const { return x_[s]; }
  std::span<const double> values() const { return x_; }

  friend bool operator==(const SequenceFormStrategy&,
                         const SequenceFormStrategy&) = default;

 private:
  std::vector<double> x_;
};

// Per decision point local strategies, indexed by decision point id.
using Behavior = std::vector<SimplexStrategy>;

Behavior uniform_behavior(const Treeplex& t);

SequenceFormStrategy behavior_to_sequence(const Treeplex& t,
                                          const Behavior& behavior);
// Zero-reach decision points get the uniform strategy.
Behavior sequence_to_behavior(const Treeplex& t, const SequenceFormStrategy& x);

// Flat behavior: entry s >= 1 holds the local probability of sequence s,
// entry 0 is 1. Used by the iterative solvers.
std::vector<double> flat_behavior(const Treeplex& t, const Behavior& behavior);
void flat_behavior_to_sequence(const Treeplex& t, std::span<const double> b,
                               std::span<double> x);
void sequence_to_flat_behavior(const Treeplex& t, std::span<const double> x,
                               std::span<double> b);

struct CounterfactualValues {
  std::vector<std::vector<double>> local_loss;  // l_hat_j
  std::vector<double> value;                    // <l_hat_j, x_hat_j>
  double root_value = 0.0;                      // l[0] + sum over roots
};

CounterfactualValues counterfactual_values(const Treeplex& t,
                                           std::span<const double> loss,
                                           const Behavior& behavior);

// Flat variant: fills local_loss (indexed by sequence) and returns the root
// value. value_j is written to node_value[j].
double counterfactual_values_flat(const Treeplex& t,
                                  std::span<const double> loss,
                                  std::span<const double> behavior,
                                  std::span<double> local_loss,
                                  std::span<double> node_value);

struct BestResponse {
  double value = 0.0;
  SequenceFormStrategy strategy;
};

// min over the treeplex of <l, x>; ties go to the lowest action index.
BestResponse best_response(const Treeplex& t, std::span<const double> loss);
double best_response_value(const Treeplex& t, std::span<const double> loss);

// Entries (x_seq, y_seq, value) of the loss matrix of the x player, with chance
// already folded in. Sorted and merged, so each pair occurs at most once.
class SparsePayoff {
 public:
  struct Entry {
    std::size_t x = 0;
    std::size_t y = 0;
    double value = 0.0;
    friend bool operator==(const Entry&, const Entry&) = default;
  };

  SparsePayoff() = default;
  SparsePayoff(std::size_t x_dim, std::size_t y_dim, std::vector<Entry> entries);

  std::size_t x_dim() const { return x_dim_; }
  std::size_t y_dim() const { return y_dim_; }
  std::span<const Entry> entries() const { return entries_; }
  double max_abs() const;

  // G y
  void LossX(std::span<const double> y, std::span<double> out) const;
  std::vector<double> LossX(std::span<const double> y) const;
  // G^T x
  void GainY(std::span<const double> x, std::span<double> out) const;
  std::vector<double> GainY(std::span<const double> x) const;
  double Value(std::span<const double> x, std::span<const double> y) const;

  SparsePayoff Scaled(double factor) const;
  // -G^T: the game seen from the other seat.
  SparsePayoff Transposed() const;

  friend bool operator==(const SparsePayoff&, const SparsePayoff&) = default;

 private:
  std::size_t x_dim_ = 0;
  std::size_t y_dim_ = 0;
  std::vector<Entry> entries_;
};

// Line format: "# payoff X Y E" then "<x> <y> <value>" per entry.
std::string payoff_to_text(const SparsePayoff& p);
SparsePayoff payoff_from_text(const std::string& text);

// max_{y'} <x, G y'> - min_{x'} <x', G y>.
double efg_exploitability(const SparsePayoff& payoff, const Treeplex& tx,
                          const Treeplex& ty, const SequenceFormStrategy& x,
                          const SequenceFormStrategy& y);
double efg_exploitability(const SparsePayoff& payoff, const Treeplex& tx,
                          const Treeplex& ty, std::span<const double> x,
                          std::span<const double> y);

}  // namespace nmsolve

#endif  // NMSOLVE_TREEPLEX_H_
