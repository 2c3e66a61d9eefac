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

// Reference computations used only by tests. They walk the raw game tree and
// never touch the sequence-form machinery under test.

#ifndef NMSOLVE_TESTS_ORACLES_H_
#define NMSOLVE_TESTS_ORACLES_H_

#include <functional>
#include <memory>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "nmsolve/games.h"

namespace nmsolve::oracle {

// Local strategy at (player, infoset key) with n legal actions.
using Policy =
    std::function<std::vector<double>(int, const std::string&, std::size_t)>;

inline std::vector<double> UniformPolicy(int, const std::string&,
                                         std::size_t n) {
  return std::vector<double>(n, 1.0 / static_cast<double>(n));
}

// Expected utility of player 1.
inline double ExpectedUtility(const GameState& s, const Policy& policy) {
  if (s.IsTerminal()) return s.PlayerOneUtility();
  double v = 0.0;
  if (s.IsChance()) {
    for (const auto& [o, p] : s.ChanceOutcomes()) {
      v += p * ExpectedUtility(*s.Child(o), policy);
    }
    return v;
  }
  const std::size_t n = s.NumActions();
  if (n == 1) return ExpectedUtility(*s.Child(0), policy);
  const auto probs = policy(s.CurrentPlayer(), s.InfosetKey(), n);
  for (std::size_t a = 0; a < n; ++a) {
    if (probs[a] != 0.0) v += probs[a] * ExpectedUtility(*s.Child(a), policy);
  }
  return v;
}

// Every (infoset key, action count) of `player` with more than one action.
inline void CollectInfosets(const GameState& s, int player,
                            std::map<std::string, std::size_t>& out) {
  if (s.IsTerminal()) return;
  if (s.IsChance()) {
    for (const auto& [o, p] : s.ChanceOutcomes()) {
      CollectInfosets(*s.Child(o), player, out);
    }
    return;
  }
  const std::size_t n = s.NumActions();
  if (n > 1 && s.CurrentPlayer() == player) out[s.InfosetKey()] = n;
  for (std::size_t a = 0; a < n; ++a) CollectInfosets(*s.Child(a), player, out);
}

using PureStrategy = std::map<std::string, std::size_t>;

// All pure strategies (one action per information set) of `player`.
inline std::vector<PureStrategy> PureStrategies(const GameState& root,
                                                int player) {
  std::map<std::string, std::size_t> sets;
  CollectInfosets(root, player, sets);
  std::vector<PureStrategy> out{PureStrategy{}};
  for (const auto& [key, n] : sets) {
    std::vector<PureStrategy> next;
    for (const auto& partial : out) {
      for (std::size_t a = 0; a < n; ++a) {
        auto s = partial;
        s[key] = a;
        next.push_back(std::move(s));
      }
    }
    out = std::move(next);
  }
  return out;
}

// Policy for `player` from a pure strategy, deferring to `other` for the
// opponent.
inline Policy Combine(int player, const PureStrategy& pure, Policy other) {
  return [player, &pure, other](int p, const std::string& key, std::size_t n) {
    if (p != player) return other(p, key, n);
    std::vector<double> v(n, 0.0);
    v[pure.at(key)] = 1.0;
    return v;
  };
}

// Policy that reads local strategies of a bundle's behavior by infoset key.
inline Policy FromBehavior(const EfgBundle& b, const Behavior& bx,
                           const Behavior& by) {
  auto index = std::make_shared<std::map<std::pair<int, std::string>, std::size_t>>();
  for (std::size_t j = 0; j < b.infosets_x.size(); ++j) (*index)[{0, b.infosets_x[j]}] = j;
  for (std::size_t j = 0; j < b.infosets_y.size(); ++j) (*index)[{1, b.infosets_y[j]}] = j;
  return [index, &bx, &by](int p, const std::string& key, std::size_t) {
    const auto& s = (p == 0 ? bx : by)[index->at({p, key})];
    return std::vector<double>(s.begin(), s.end());
  };
}

// Counterfactual loss of every information set of `player`: for each action,
// the sum over histories h in the set of (chance and opponent reach of h)
// times the expected loss after taking the action. Player 1 loses -u1,
// player 2 loses u1.
inline double ExpectedLoss(const GameState& s, int player,
                           const Policy& policy) {
  const double u = ExpectedUtility(s, policy);
  return player == 0 ? -u : u;
}

inline void CounterfactualLossWalk(
    const GameState& s, int player, const Policy& policy, double reach,
    std::map<std::string, std::vector<double>>& out) {
  if (s.IsTerminal()) return;
  if (s.IsChance()) {
    for (const auto& [o, p] : s.ChanceOutcomes()) {
      CounterfactualLossWalk(*s.Child(o), player, policy, reach * p, out);
    }
    return;
  }
  const std::size_t n = s.NumActions();
  if (n == 1) {
    CounterfactualLossWalk(*s.Child(0), player, policy, reach, out);
    return;
  }
  if (s.CurrentPlayer() == player) {
    auto& slot = out[s.InfosetKey()];
    slot.resize(n, 0.0);
    for (std::size_t a = 0; a < n; ++a) {
      const auto child = s.Child(a);
      slot[a] += reach * ExpectedLoss(*child, player, policy);
      CounterfactualLossWalk(*child, player, policy, reach, out);
    }
    return;
  }
  const auto probs = policy(s.CurrentPlayer(), s.InfosetKey(), n);
  for (std::size_t a = 0; a < n; ++a) {
    CounterfactualLossWalk(*s.Child(a), player, policy, reach * probs[a], out);
  }
}

inline std::map<std::string, std::vector<double>> CounterfactualLoss(
    const GameState& root, int player, const Policy& policy) {
  std::map<std::string, std::vector<double>> out;
  CounterfactualLossWalk(root, player, policy, 1.0, out);
  return out;
}

// Kuhn equilibrium with alpha = 0, keyed by "<card><history>" (cards 0 < 1 <
// 2, 'p' pass, 'b' bet). Probabilities are of (pass, bet).
inline std::vector<double> KuhnEquilibrium(int player, const std::string& key,
                                           std::size_t) {
  static const std::map<std::string, double> kBet = {
      // player 1: never bet first; with the middle card call a bet 1/3.
      {"0", 0.0}, {"1", 0.0}, {"2", 0.0},
      {"0pb", 0.0}, {"1pb", 1.0 / 3}, {"2pb", 1.0},
      // player 2: bluff 1/3 with the low card, bet the high card, and call
      // with the middle card 1/3 of the time.
      {"0p", 1.0 / 3}, {"1p", 0.0}, {"2p", 1.0},
      {"0b", 0.0}, {"1b", 1.0 / 3}, {"2b", 1.0}};
  (void)player;
  const double bet = kBet.at(key);
  return {1.0 - bet, bet};
}

}  // namespace nmsolve::oracle

#endif  // NMSOLVE_TESTS_ORACLES_H_
