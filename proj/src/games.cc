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

#include "nmsolve/games.h"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "nmsolve/error.h"
#include "nmsolve/format.h"

namespace nmsolve {
namespace {

struct Leaf {
  std::optional<ParentRef> seq[2];
  double value;
};

class TreeWalker {
 public:
  void Walk(const GameState& s, double chance,
            std::optional<ParentRef> seq0, std::optional<ParentRef> seq1) {
    if (s.IsTerminal()) {
      ++terminals_;
      const double u = s.PlayerOneUtility();
      scale_ = std::max(scale_, std::abs(u));
      if (u != 0.0) leaves_.push_back({{seq0, seq1}, -chance * u});
      return;
    }
    if (s.IsChance()) {
      for (const auto& [outcome, p] : s.ChanceOutcomes()) {
        Walk(*s.Child(outcome), chance * p, seq0, seq1);
      }
      return;
    }
    const std::size_t n = s.NumActions();
    if (n == 0) Fail(ErrorKind::kMalformedTree, "decision node without actions");
    if (n == 1) {
      Walk(*s.Child(0), chance, seq0, seq1);
      return;
    }
    const int p = s.CurrentPlayer();
    const auto& own = p == 0 ? seq0 : seq1;
    auto& side = sides_[p];
    const auto [it, inserted] = side.ids.try_emplace(s.InfosetKey(), side.raw.size());
    const std::size_t id = it->second;
    if (inserted) {
      side.raw.push_back({id, own, n});
      side.keys.push_back(it->first);
    } else {
      if (side.raw[id].parent != own) {
        Fail(ErrorKind::kPerfectRecallViolation,
             "information set '" + it->first + "' reached by two sequences");
      }
      if (side.raw[id].actions != n) {
        Fail(ErrorKind::kMalformedTree,
             "information set '" + it->first + "' has varying action counts");
      }
    }
    for (std::size_t a = 0; a < n; ++a) {
      const auto next = ParentRef{id, a};
      Walk(*s.Child(a), chance, p == 0 ? next : seq0, p == 1 ? next : seq1);
    }
  }

  EfgBundle Finish(const std::string& name) {
    EfgBundle b;
    b.name = name;
    b.treeplex_x = validate_treeplex(sides_[0].raw);
    b.treeplex_y = validate_treeplex(sides_[1].raw);
    std::vector<SparsePayoff::Entry> entries;
    entries.reserve(leaves_.size());
    auto index = [](const Treeplex& t, const std::optional<ParentRef>& r) {
      return r ? t.seq(r->decision_point, r->action) : std::size_t{0};
    };
    for (const auto& leaf : leaves_) {
      entries.push_back({index(b.treeplex_x, leaf.seq[0]),
                         index(b.treeplex_y, leaf.seq[1]), leaf.value});
    }
    b.payoff = SparsePayoff(b.treeplex_x.seq_count(), b.treeplex_y.seq_count(),
                            std::move(entries));
    b.payoff_scale = scale_ > 0.0 ? scale_ : 1.0;
    b.terminal_count = terminals_;
    b.infosets_x = std::move(sides_[0].keys);
    b.infosets_y = std::move(sides_[1].keys);
    return b;
  }

 private:
  struct Side {
    std::unordered_map<std::string, std::size_t> ids;
    std::vector<RawDecisionPoint> raw;
    std::vector<std::string> keys;
  };
  Side sides_[2];
  std::vector<Leaf> leaves_;
  double scale_ = 0.0;
  std::size_t terminals_ = 0;
};

}  // namespace

EfgBundle build_efg(const std::string& name, const GameState& root) {
  TreeWalker w;
  w.Walk(root, 1.0, std::nullopt, std::nullopt);
  return w.Finish(name);
}

EfgBundle normalize_bundle(EfgBundle bundle) {
  if (bundle.normalized) return bundle;
  bundle.payoff = bundle.payoff.Scaled(1.0 / bundle.payoff_scale);
  bundle.normalized = true;
  return bundle;
}

EfgBundle kuhn_poker() { return build_efg("kuhn", *kuhn_root()); }

EfgBundle leduc_poker() { return build_efg("leduc", *leduc_root()); }

EfgBundle goofspiel(int ranks, bool limited_info, bool descending) {
  std::string name = "goofspiel-" + std::to_string(ranks);
  if (limited_info) name += "-limited";
  return build_efg(name, *goofspiel_root(ranks, limited_info, descending));
}

EfgBundle liars_dice(int faces) {
  return build_efg("liars-dice-" + std::to_string(faces), *liars_dice_root(faces));
}

EfgBundle wrap_matrix_game(const MatrixGame& game, const std::string& name) {
  EfgBundle b;
  b.name = name;
  b.treeplex_x = validate_treeplex({{0, std::nullopt, game.rows()}});
  b.treeplex_y = validate_treeplex({{0, std::nullopt, game.cols()}});
  std::vector<SparsePayoff::Entry> entries;
  for (std::size_t i = 0; i < game.rows(); ++i) {
    for (std::size_t j = 0; j < game.cols(); ++j) {
      if (game.at(i, j) != 0.0) entries.push_back({1 + i, 1 + j, game.at(i, j)});
    }
  }
  b.payoff = SparsePayoff(game.rows() + 1, game.cols() + 1, std::move(entries));
  b.payoff_scale = game.normalized() ? 1.0 : std::max(game.scale(), 0.0);
  if (!(b.payoff_scale > 0.0)) b.payoff_scale = 1.0;
  b.normalized = game.normalized();
  b.terminal_count = game.rows() * game.cols();
  b.infosets_x = {"row"};
  b.infosets_y = {"col"};
  return b;
}

std::map<std::string, NamedMatrixGame> builtin_matrix_games() {
  std::map<std::string, NamedMatrixGame> out;
  out.emplace("bias-rps",
              NamedMatrixGame{make_matrix_game({{0, -1, 3}, {1, 0, -1}, {-3, 1, 0}},
                                               false),
                              {}, {}});
  out.emplace("matrix-3x3",
              NamedMatrixGame{make_matrix_game({{3, 0, -3}, {0, 3, -4}, {0, 0, 1}},
                                               false),
                              {1.0 / 12, 1.0 / 12, 5.0 / 6},
                              {1.0 / 3, 5.0 / 12, 1.0 / 4}});
  out.emplace("rps",
              NamedMatrixGame{make_matrix_game({{0, -1, 1}, {1, 0, -1}, {-1, 1, 0}},
                                               false),
                              {1.0 / 3, 1.0 / 3, 1.0 / 3},
                              {1.0 / 3, 1.0 / 3, 1.0 / 3}});
  return out;
}

std::vector<std::string> game_names() {
  return {"kuhn",          "leduc",         "goofspiel-4",
          "goofspiel-5",   "goofspiel-4-limited", "goofspiel-5-limited",
          "liars-dice-4",  "liars-dice-5",  "matrix-3x3",
          "bias-rps",      "rps",           "random-<m>x<n>"};
}

bool is_efg_name(const std::string& name) {
  return name == "kuhn" || name == "leduc" || name.rfind("goofspiel-", 0) == 0 ||
         name.rfind("liars-dice-", 0) == 0;
}

AnyGame game_by_name(const std::string& name, bool normalize,
                     std::uint64_t seed) {
  auto finish = [&](EfgBundle b) -> AnyGame {
    return normalize ? normalize_bundle(std::move(b)) : std::move(b);
  };
  if (name == "kuhn") return finish(kuhn_poker());
  if (name == "leduc") return finish(leduc_poker());
  if (name == "goofspiel-4") return finish(goofspiel(4, false));
  if (name == "goofspiel-5") return finish(goofspiel(5, false));
  if (name == "goofspiel-4-limited") return finish(goofspiel(4, true));
  if (name == "goofspiel-5-limited") return finish(goofspiel(5, true));
  if (name == "liars-dice-4") return finish(liars_dice(4));
  if (name == "liars-dice-5") return finish(liars_dice(5));
  const auto builtins = builtin_matrix_games();
  if (auto it = builtins.find(name); it != builtins.end()) {
    const auto& g = it->second.game;
    if (!normalize) return g;
    return make_matrix_game(g.rows(), g.cols(),
                            std::vector<double>(g.entries().begin(), g.entries().end()),
                            true);
  }
  if (name.rfind("random-", 0) == 0) {
    const auto dims = std::string_view(name).substr(7);
    const auto x = dims.find('x');
    if (x != std::string_view::npos) {
      try {
        const long long m = ParseInt(dims.substr(0, x));
        const long long n = ParseInt(dims.substr(x + 1));
        if (m >= 1 && n >= 1) {
          return random_nfg(seed, static_cast<std::size_t>(m),
                            static_cast<std::size_t>(n));
        }
      } catch (const Error&) {
      }
    }
  }
  Fail(ErrorKind::kConfig, "unknown game '" + name + "'");
}

}  // namespace nmsolve
