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


// Acceptance suite: one PASS/FAIL line per criterion, tolerances and time
// budgets pinned below. Exit status is the number of failed criteria
// (capped at 100). `--full` lifts the truncation of the two largest games.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "nmsolve/cfr.h"
#include "nmsolve/dilated.h"
#include "nmsolve/format.h"
#include "nmsolve/games.h"
#include "nmsolve/harness.h"
#include "nmsolve/nfg.h"
#include "nmsolve/rng.h"
#include "nmsolve/simplex_learners.h"
#include "nmsolve/solver.h"
#include "oracles.h"
#include "prox_oracle.h"

namespace nmsolve {
namespace {

using Vec = std::vector<double>;

// Tolerances.
constexpr double kExactGapTol = 1e-12;
constexpr double kLemmaTol = 1e-9;
constexpr double kThreshold4 = 1e-6;
constexpr std::int64_t kHorizon4 = 100000;
constexpr double kImprovement = 10.0;
constexpr double kKuhnTol = 1e-9;
constexpr double kKuhnTarget = 1e-8;
constexpr double kRegretSlack = 1e-9;
constexpr double kProxTol = 1e-6;
constexpr double kReductionTol = 1e-12;
constexpr std::int64_t kReductionIterations = 100;
constexpr std::int64_t kDeskIterations = 2000;

// Time budgets in seconds.
constexpr double kBudget1 = 1e-3;
constexpr double kBudget2 = 1.0;
constexpr double kBudget3 = 10.0;
constexpr double kBudget4 = 30.0;
constexpr double kBudget5 = 10.0;
constexpr double kBudget6 = 30.0;
constexpr double kBudget7 = 60.0;
constexpr double kBudget8 = 60.0;
constexpr double kBudget9 = 60.0;
constexpr double kBudget10 = 5.0;
constexpr double kBudget11 = 30.0;
constexpr double kBudget13 = 600.0;

struct Outcome {
  bool pass = false;
  std::string detail;
  std::vector<std::string> notes;
};

std::string Sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

double Dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

MatrixGame ThreeByThree() {
  return std::get<MatrixGame>(game_by_name("matrix-3x3", true, 0));
}

double FinalExploitability(const ExperimentConfig& c) {
  return run_experiment(c).rows.back().exploitability;
}

Outcome ExactEquilibrium() {
  const auto named = builtin_matrix_games().at("matrix-3x3");
  const double gap = duality_gap(named.game, SimplexStrategy(named.x_star),
                                 SimplexStrategy(named.y_star));
  return {std::abs(gap) <= kExactGapTol, "duality gap at the stored equilibrium " + Sci(gap), {}};
}

Outcome Lemma1() {
  Xoshiro256 rng(2026);
  double worst = 0.0;
  for (int stream = 0; stream < 50; ++stream) {
    const std::size_t d = 1 + rng.Next() % 6;
    const int horizon = 1 + static_cast<int>(rng.Next() % 200);
    RegretMatcherState s(d, RegretMatcherMode::kRMPlus);
    auto x = s.Strategy();
    Vec w(d);
    for (double& v : w) v = rng.Uniform() + 1e-3;
    const auto comparator = SimplexStrategy::FromWeights(w);
    double strategy_regret = 0.0, r_space = 0.0;
    for (int t = 0; t < horizon; ++t) {
      Vec loss(d);
      for (double& v : loss) v = rng.Gaussian();
      const Vec r = instantaneous_regret(x.probs(), loss);
      for (std::size_t i = 0; i < d; ++i) {
        r_space += r[i] * (s.regret()[i] - comparator[i]);
      }
      strategy_regret += Dot(x.probs(), loss) - Dot(comparator.probs(), loss);
      x = regret_matcher_step(s, loss, x);
    }
    // The R-space learner faces loss -r, so its regret is -sum <r, R - x_hat>.
    worst = std::max(worst, std::abs(strategy_regret + r_space));
  }
  return {worst <= kLemmaTol, "max |strategy regret - R-space regret| over 50 streams " + Sci(worst),
          {}};
}

Outcome Theorem1() {
  const auto r = theorem1_check(ThreeByThree(), -0.5, 0.15, 200, 1000000);
  return {r.pass && r.factor == 0.75,
          "max ratio " + Sci(r.max_ratio) + " (limit 1+" + Sci(kTheorem1RatioTolerance) +
              "), z* residual " + Sci(r.fixed_point_residual),
          {}};
}

Outcome Theorem3() {
  const auto p = find_preset("table1/3x3/momwu");
  const auto r = theorem3_check(ThreeByThree(), p.beta, p.eta, p.k, kHorizon4, kThreshold4);
  Outcome o{r.first_hit > 0, "gap <= " + Sci(kThreshold4) + " first at t=" +
                                 std::to_string(r.first_hit) + ", final gap " + Sci(r.final_gap),
            {}};
  o.notes.push_back(std::string("epoch-end gap sequence non-increasing after burn-in: ") +
                    (r.monotone ? "yes" : "no, first uptick at epoch " +
                                              std::to_string(r.first_violation)) +
                    " (reported by theorem3_check, not part of this threshold)");
  return o;
}

Outcome MoRMPlus() {
  const double mo = FinalExploitability(find_preset("table1/3x3/morm+"));
  const double base = FinalExploitability(find_preset("table1/3x3/rm+"));
  return {mo * kImprovement <= base,
          "morm+ " + Sci(mo) + " vs rm+ " + Sci(base) + " at T=10000", {}};
}

Outcome KuhnGroundTruth() {
  const auto root = kuhn_root();
  const oracle::Policy eq = oracle::KuhnEquilibrium;
  const double value = oracle::ExpectedUtility(*root, eq);
  double best_p1 = -INFINITY, best_p2 = INFINITY;
  for (const auto& p : oracle::PureStrategies(*root, 0)) {
    best_p1 = std::max(best_p1, oracle::ExpectedUtility(*root, oracle::Combine(0, p, eq)));
  }
  for (const auto& p : oracle::PureStrategies(*root, 1)) {
    best_p2 = std::min(best_p2, oracle::ExpectedUtility(*root, oracle::Combine(1, p, eq)));
  }
  // No pure deviation helps either side, so the value is pinned.
  const double truth = -1.0 / 18.0;
  const double value_err = std::max({std::abs(value - truth), std::abs(best_p1 - truth),
                                     std::abs(best_p2 - truth)});
  const auto kuhn = kuhn_poker();
  Behavior bx, by;
  for (const auto& key : kuhn.infosets_x) bx.emplace_back(oracle::KuhnEquilibrium(0, key, 2));
  for (const auto& key : kuhn.infosets_y) by.emplace_back(oracle::KuhnEquilibrium(1, key, 2));
  const auto x = behavior_to_sequence(kuhn.treeplex_x, bx);
  const auto y = behavior_to_sequence(kuhn.treeplex_y, by);
  const double expl = efg_exploitability(kuhn.payoff, kuhn.treeplex_x, kuhn.treeplex_y, x, y);
  const double seq_value = -kuhn.payoff.Value(x.values(), y.values());
  return {value_err <= kKuhnTol && std::abs(seq_value - truth) <= kKuhnTol && expl <= kKuhnTol,
          "value " + FormatDouble(value) + " (pure-deviation error " + Sci(value_err) +
              "), exploitability " + Sci(expl),
          {}};
}

Outcome MoCFRPlusKuhn() {
  auto c = find_preset("table2/kuhn/mocfr+");
  const auto log = run_experiment(c);
  std::int64_t hit = -1;
  for (const auto& row : log.rows) {
    if (row.exploitability <= kKuhnTarget) {
      hit = row.iteration;
      break;
    }
  }
  const double mo = log.rows.back().exploitability;
  const double base = FinalExploitability(find_preset("table2/kuhn/cfr+"));
  return {hit > 0 && mo * kImprovement <= base,
          "mocfr+ <= 1e-8 first at t=" + std::to_string(hit) + ", at T=10000 " + Sci(mo) +
              " vs cfr+ " + Sci(base),
          {}};
}

double RegretBoundMargin(const EfgBundle& g, CfrVariant variant) {
  LocalRegretBank bx(g.treeplex_x, variant);
  LocalRegretBank by(g.treeplex_y, variant);
  Vec cumulative(g.treeplex_x.seq_count(), 0.0);
  double realized = 0.0, worst = -INFINITY;
  for (int t = 1; t <= 2000; ++t) {
    const auto loss = g.payoff.LossX(by.sequence());
    realized += Dot(loss, bx.sequence());
    for (std::size_t s = 0; s < loss.size(); ++s) cumulative[s] += loss[s];
    cfr_iteration(bx, g.treeplex_x, loss);
    auto ly = g.payoff.GainY(bx.sequence());
    for (double& v : ly) v = -v;
    cfr_iteration(by, g.treeplex_y, ly);
    if (t == 100 || t == 500 || t == 2000) {
      const double regret = realized - best_response_value(g.treeplex_x, cumulative);
      double bound = 0.0;
      for (std::size_t j = 0; j < g.treeplex_x.num_decision_points(); ++j) {
        double m = -INFINITY;
        for (double r : bx.regret(j)) m = std::max(m, r);
        bound += std::max(m, 0.0);
      }
      worst = std::max(worst, regret - bound);
    }
  }
  return worst;
}

Outcome CfrRegretBound() {
  double worst = -INFINITY;
  for (const auto& g : {kuhn_poker(), goofspiel(4, false)}) {
    worst = std::max(worst, RegretBoundMargin(g, CfrVariant::kCFR));
    worst = std::max(worst, RegretBoundMargin(g, CfrVariant::kCFRPlus));
  }
  return {worst <= kRegretSlack,
          "max (total regret - local bound) over kuhn, goofspiel-4, t in {100,500,2000}: " +
              Sci(worst),
          {}};
}

Outcome DilatedProx() {
  const auto& t = kuhn_poker().treeplex_x;
  Xoshiro256 rng(9);
  double worst = 0.0;
  for (auto reg : {Regularizer::kNegativeEntropy, Regularizer::kHalfSquaredL2}) {
    for (int trial = 0; trial < 20; ++trial) {
      Behavior b;
      for (std::size_t j = 0; j < t.num_decision_points(); ++j) {
        Vec w(t.actions(j));
        for (double& v : w) v = rng.Uniform() + 0.05;
        b.push_back(SimplexStrategy::FromWeights(w));
      }
      const auto z = behavior_to_sequence(t, b);
      Vec g(t.seq_count());
      for (double& v : g) v = rng.Gaussian();
      const double eta = 0.5 + 2.0 * rng.Uniform();
      const auto x = dilated_prox(t, z, g, eta, DilatedDgf{reg});
      const Vec zv(z.values().begin(), z.values().end());
      const auto ref = oracle::ProxOracle(t, zv, g, eta, reg);
      for (std::size_t s = 0; s < t.seq_count(); ++s) {
        worst = std::max(worst, std::abs(x[s] - ref[s]));
      }
    }
  }
  return {worst <= kProxTol, "max coordinate error vs barrier-newton oracle " + Sci(worst), {}};
}

Outcome Proposition1() {
  const auto r = proposition1_check(2.0, {0.1, 0.05, 0.025}, 5.0);
  return {r.pass, "error ratios " + Sci(r.ratios[0]) + ", " + Sci(r.ratios[1]) + " (band [1.5, 3])",
          {}};
}

template <class LossX, class LossY>
double TrajectoryDistance(PlayerLearner& ax, PlayerLearner& ay, PlayerLearner& bx,
                          PlayerLearner& by, bool alternating, LossX loss_x, LossY loss_y) {
  double worst = 0.0;
  auto step = [&](PlayerLearner& x, PlayerLearner& y) {
    if (alternating) {
      x.Observe(loss_x(y.strategy()));
      y.Observe(loss_y(x.strategy()));
    } else {
      const auto lx = loss_x(y.strategy());
      const auto ly = loss_y(x.strategy());
      x.Observe(lx);
      y.Observe(ly);
    }
  };
  for (std::int64_t t = 0; t < kReductionIterations; ++t) {
    step(ax, ay);
    step(bx, by);
    for (std::size_t i = 0; i < ax.strategy().size(); ++i) {
      worst = std::max(worst, std::abs(ax.strategy()[i] - bx.strategy()[i]));
    }
    for (std::size_t i = 0; i < ay.strategy().size(); ++i) {
      worst = std::max(worst, std::abs(ay.strategy()[i] - by.strategy()[i]));
    }
  }
  return worst;
}

Outcome Reductions() {
  struct Pair {
    const char* preset;
    Algorithm momentum;
    Algorithm base;
  };
  const Pair pairs[] = {
      {"table1/3x3/morm+", Algorithm::kMoRMPlus, Algorithm::kRMPlus},
      {"table1/3x3/momwu", Algorithm::kMoMWU, Algorithm::kMWU},
      {"table2/kuhn/mocfr+", Algorithm::kMoCFRPlus, Algorithm::kCFRPlus},
      {"table2/kuhn/dmogda", Algorithm::kDMoGDA, Algorithm::kDGDA},
  };
  const auto nfg = ThreeByThree();
  const auto kuhn = normalize_bundle(kuhn_poker());
  Outcome o{true, "", {}};
  for (const auto& p : pairs) {
    auto cfg = to_solve_config(find_preset(p.preset));
    cfg.beta = 0.0;
    const bool alternating = DefaultAlternating(p.momentum);
    double d;
    if (IsTreeplexAlgorithm(p.momentum)) {
      auto ax = make_treeplex_learner(p.momentum, kuhn.treeplex_x, cfg);
      auto ay = make_treeplex_learner(p.momentum, kuhn.treeplex_y, cfg);
      auto bx = make_treeplex_learner(p.base, kuhn.treeplex_x, cfg);
      auto by = make_treeplex_learner(p.base, kuhn.treeplex_y, cfg);
      d = TrajectoryDistance(
          *ax, *ay, *bx, *by, alternating,
          [&](std::span<const double> y) { return kuhn.payoff.LossX(y); },
          [&](std::span<const double> x) {
            auto v = kuhn.payoff.GainY(x);
            for (double& e : v) e = -e;
            return v;
          });
    } else {
      auto ax = make_simplex_learner(p.momentum, nfg.rows(), cfg);
      auto ay = make_simplex_learner(p.momentum, nfg.cols(), cfg);
      auto bx = make_simplex_learner(p.base, nfg.rows(), cfg);
      auto by = make_simplex_learner(p.base, nfg.cols(), cfg);
      d = TrajectoryDistance(
          *ax, *ay, *bx, *by, alternating,
          [&](std::span<const double> y) { return nfg.RowLoss(y); },
          [&](std::span<const double> x) {
            auto v = nfg.ColGain(x);
            for (double& e : v) e = -e;
            return v;
          });
    }
    o.pass = o.pass && d <= kReductionTol;
    if (!o.detail.empty()) o.detail += ", ";
    o.detail += std::string(AlgorithmName(p.momentum)) + "/" + AlgorithmName(p.base) + " " + Sci(d);
  }
  o.detail = "max strategy difference over 100 iterations: " + o.detail;
  return o;
}

bool IsLargeGame(const std::string& game) {
  return game == "goofspiel-5" || game == "liars-dice-5";
}

Outcome Determinism(bool full) {
  std::vector<ExperimentConfig> configs;
  for (const char* name : {"table1", "table2", "sweep/kuhn/dmogda-k", "sweep/leduc/dmogda-k"}) {
    for (auto& p : expand_presets(name, "")) {
      p.config.output.clear();
      if (!full && IsLargeGame(p.config.game)) p.config.iterations = kDeskIterations;
      configs.push_back(p.config);
    }
  }
  const std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
  const auto first = run_experiments(configs, workers);
  const auto second = run_experiments(configs, workers);
  std::size_t mismatches = 0;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    if (first[i].NumericColumns() != second[i].NumericColumns()) ++mismatches;
  }
  Outcome o{mismatches == 0,
            std::to_string(configs.size()) + " preset runs repeated, " +
                std::to_string(mismatches) + " with differing numeric columns",
            {}};
  if (!full) o.notes.push_back("goofspiel-5 and liars-dice-5 truncated to 2000 iterations; --full runs them whole");
  return o;
}

Outcome WindowedTrend(bool full) {
  std::vector<std::string> games = {"leduc", "goofspiel-4", "liars-dice-4"};
  if (full) {
    games.push_back("goofspiel-5");
    games.push_back("liars-dice-5");
  }
  Outcome o{true, "", {}};
  int failed = 0, total = 0;
  for (const auto& game : games) {
    for (const char* algo : {"dmogda", "mocfr+"}) {
      auto c = find_preset("table2/" + game + "/" + algo);
      // Every iteration is evaluated so the window means cover all of them.
      c.eval_every = 1;
      if (!full) c.iterations = kDeskIterations;
      const std::int64_t quarter = c.iterations / 4;
      const auto log = run_experiment(c);
      double early = 0.0, late = 0.0;
      int n_early = 0, n_late = 0;
      for (const auto& row : log.rows) {
        if (row.iteration <= quarter) {
          early += row.exploitability;
          ++n_early;
        }
        if (row.iteration >= c.iterations - quarter) {
          late += row.exploitability;
          ++n_late;
        }
      }
      early /= n_early;
      late /= n_late;
      const bool ok = late < early;
      ++total;
      if (!ok) ++failed;
      o.pass = o.pass && ok;
      o.notes.push_back(game + " " + algo + ": mean over 1-" + std::to_string(quarter) + " " +
                        Sci(early) + ", over " + std::to_string(c.iterations - quarter) + "-" +
                        std::to_string(c.iterations) + " " + Sci(late) +
                        (ok ? "  ok" : "  NOT DECREASING"));
    }
  }
  o.detail = std::to_string(total - failed) + "/" + std::to_string(total) +
             " runs with a lower late-window mean";
  return o;
}

struct Criterion {
  int id;
  const char* name;
  double budget;  // seconds; 0 means none
  std::function<Outcome()> run;
};

}  // namespace
}  // namespace nmsolve

int main(int argc, char** argv) {
  using namespace nmsolve;
  bool full = false;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--full") == 0) {
      full = true;
    } else {
      std::fprintf(stderr, "usage: %s [--full]\n", argv[0]);
      return 2;
    }
  }
  const std::vector<Criterion> criteria = {
      {1, "exact equilibrium of the 3x3 game", kBudget1, ExactEquilibrium},
      {2, "strategy regret equals R-space regret", kBudget2, Lemma1},
      {3, "geometric KL decay, momwu k=inf", kBudget3, Theorem1},
      {4, "momwu last-iterate gap on the 3x3 game", kBudget4, Theorem3},
      {5, "morm+ 10x below rm+ on the 3x3 game", kBudget5, MoRMPlus},
      {6, "kuhn value and equilibrium", kBudget6, KuhnGroundTruth},
      {7, "mocfr+ on kuhn", kBudget7, MoCFRPlusKuhn},
      {8, "cfr regret bound", kBudget8, CfrRegretBound},
      {9, "dilated prox vs numerical oracle", kBudget9, DilatedProx},
      {10, "heavy ball vs friction ode order", kBudget10, Proposition1},
      {11, "zero-momentum reductions", kBudget11, Reductions},
      {12, "preset determinism", 0.0, [full] { return Determinism(full); }},
      {13, "windowed exploitability trend", kBudget13, [full] { return WindowedTrend(full); }},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what(), {}};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_budget = c.budget <= 0.0 || secs < c.budget;
    const bool pass = o.pass && in_budget;
    if (!pass) ++failures;
    std::printf("criterion %2d %s  %s: %s [%.3f s%s%s]\n", c.id, pass ? "PASS" : "FAIL", c.name,
                o.detail.c_str(), secs,
                c.budget > 0.0 ? (", budget " + Sci(c.budget) + " s").c_str() : "",
                in_budget ? "" : ", OVER BUDGET");
    for (const auto& n : o.notes) std::printf("    %s\n", n.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed%s\n", failures, criteria.size(), full ? " (--full)" : "");
  return std::min(failures, 100);
}
