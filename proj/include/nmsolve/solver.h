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


#ifndef NMSOLVE_SOLVER_H_
#define NMSOLVE_SOLVER_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nmsolve/games.h"
#include "nmsolve/momentum.h"
#include "nmsolve/simplex_learners.h"
#include "nmsolve/treeplex.h"

namespace nmsolve {

enum class Algorithm {
  // Simplex learners for matrix games.
  kRM,
  kRMPlus,
  kMoRMPlus,
  kMWU,
  kGDA,
  kMoMWU,
  kMoGDA,
  kMoFTRLEntropy,
  kMoFTRLL2,
  kOMWU,
  kOGDA,
  // Treeplex learners for extensive-form games.
  kCFR,
  kCFRPlus,
  kPCFRPlus,
  kMoCFRPlus,
  kDMWU,
  kDGDA,
  kDMoMWU,
  kDMoGDA,
  kDOMWU,
  kDOGDA,
};

std::string AlgorithmName(Algorithm algorithm);
Algorithm ParseAlgorithm(const std::string& name);
std::vector<Algorithm> AllAlgorithms();

bool IsTreeplexAlgorithm(Algorithm algorithm);
// Uses beta and k.
bool UsesMomentum(Algorithm algorithm);
// Uses eta (the regret-matching family is parameter free).
bool UsesStepSize(Algorithm algorithm);
// Alternation for the regret-matching "+" family, simultaneous otherwise.
bool DefaultAlternating(Algorithm algorithm);
// Uniform for RM/CFR, linear for RM+/CFR+, quadratic for PCFR+, last
// iterate for everything else.
AveragingScheme DefaultAveraging(Algorithm algorithm);

struct SolveConfig {
  Algorithm algorithm = Algorithm::kRMPlus;
  double eta = 1.0;
  double beta = 0.0;
  RestartInterval k = RestartInterval::Infinite();
  std::int64_t iterations = 1000;
  std::optional<bool> alternating;
  std::optional<AveragingScheme> averaging;
  // Defaults to 1 for matrix games and 10 for extensive-form games.
  std::optional<std::int64_t> eval_every;
  std::uint64_t seed = 0;
  // Label written to the log; defaults to the bundle name or "matrix".
  std::string game;
};

struct ConvergenceRow {
  std::int64_t iteration = 0;
  double exploitability = 0.0;
  double wall_ms = 0.0;
};

struct ConvergenceLog {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<ConvergenceRow> rows;
  // Evaluated strategies (after averaging) at the last checkpoint. Not
  // serialized.
  std::vector<double> final_x;
  std::vector<double> final_y;

  std::string Metadata(const std::string& key) const;
  void WriteCsv(std::ostream& out) const;
  std::string ToCsv() const;
  // iteration and exploitability columns only; wall time is not reproducible.
  std::string NumericColumns() const;
};

inline constexpr const char* kCsvHeader = "iteration,exploitability,wall_ms";

ConvergenceLog parse_convergence_csv(const std::string& text);

// One player's online learner. `strategy` is a simplex point for matrix games
// and a sequence-form point for treeplexes; `Observe` feeds the loss of that
// strategy and moves to the next one.
class PlayerLearner {
 public:
  virtual ~PlayerLearner() = default;
  virtual std::span<const double> strategy() const = 0;
  virtual void Observe(std::span<const double> loss) = 0;
};

std::unique_ptr<PlayerLearner> make_simplex_learner(Algorithm algorithm,
                                                    std::size_t dim,
                                                    const SolveConfig& config);
// `t` must outlive the learner.
std::unique_ptr<PlayerLearner> make_treeplex_learner(Algorithm algorithm,
                                                     const Treeplex& t,
                                                     const SolveConfig& config);

// Runs config.iterations iterations from uniform strategies and evaluates the
// averaged (or last) pair every eval_every iterations. With alternation x
// moves first and y answers the refreshed x; evaluation follows both moves.
ConvergenceLog run_solver(const MatrixGame& game, const SolveConfig& config);
ConvergenceLog run_solver(const EfgBundle& game, const SolveConfig& config);
ConvergenceLog run_solver(const AnyGame& game, const SolveConfig& config);

}  // namespace nmsolve

#endif  // NMSOLVE_SOLVER_H_
