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

#ifndef NMSOLVE_GAMES_H_
#define NMSOLVE_GAMES_H_

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "nmsolve/nfg.h"
#include "nmsolve/treeplex.h"

namespace nmsolve {

// Two-player zero-sum game in extensive form. x (player 1) minimizes
// <x, G y>; G already folds in chance.
struct EfgBundle {
  std::string name;
  Treeplex treeplex_x;
  Treeplex treeplex_y;
  SparsePayoff payoff;
  // max |leaf utility| before any normalization.
  double payoff_scale = 1.0;
  bool normalized = false;
  std::size_t terminal_count = 0;
  // Information-set key of every decision point, by decision point id.
  std::vector<std::string> infosets_x;
  std::vector<std::string> infosets_y;
};

// Divides the payoff by payoff_scale.
EfgBundle normalize_bundle(EfgBundle bundle);

// History node of a game tree, walked once to build an EfgBundle.
class GameState {
 public:
  virtual ~GameState() = default;
  virtual bool IsTerminal() const = 0;
  virtual bool IsChance() const = 0;
  // Chance nodes only: (outcome index, probability).
  virtual std::vector<std::pair<std::size_t, double>> ChanceOutcomes() const = 0;
  // 0 or 1 at decision nodes.
  virtual int CurrentPlayer() const = 0;
  virtual std::size_t NumActions() const = 0;
  // Identifies the information set of the acting player.
  virtual std::string InfosetKey() const = 0;
  // Applies an action (decision nodes) or outcome index (chance nodes).
  virtual std::unique_ptr<GameState> Child(std::size_t action) const = 0;
  // Utility of player 1 at a terminal.
  virtual double PlayerOneUtility() const = 0;
};

// Walks the tree from `root`. Single-action decision nodes are skipped, they
// carry no decision. Raises PerfectRecallViolation when an information set is
// reached under two different own-sequences.
EfgBundle build_efg(const std::string& name, const GameState& root);

std::unique_ptr<GameState> kuhn_root();
std::unique_ptr<GameState> leduc_root();
std::unique_ptr<GameState> goofspiel_root(int ranks, bool limited_info,
                                          bool descending = true);
std::unique_ptr<GameState> liars_dice_root(int faces);

EfgBundle kuhn_poker();
EfgBundle leduc_poker();
EfgBundle goofspiel(int ranks, bool limited_info, bool descending = true);
EfgBundle liars_dice(int faces);

// Matrix game as a one-decision-point-per-player EFG.
EfgBundle wrap_matrix_game(const MatrixGame& game, const std::string& name);

struct NamedMatrixGame {
  MatrixGame game;
  // Known equilibrium, when the game ships with one.
  std::vector<double> x_star;
  std::vector<double> y_star;
};

std::map<std::string, NamedMatrixGame> builtin_matrix_games();

using AnyGame = std::variant<MatrixGame, EfgBundle>;

// kuhn, leduc, goofspiel-{4,5}[-limited], liars-dice-{4,5}, matrix-3x3,
// bias-rps, rps, random-<m>x<n>. `normalize` rescales payoffs into [-1, 1].
AnyGame game_by_name(const std::string& name, bool normalize,
                     std::uint64_t seed);
std::vector<std::string> game_names();
bool is_efg_name(const std::string& name);

}  // namespace nmsolve

#endif  // NMSOLVE_GAMES_H_
