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


#ifndef NMSOLVE_HARNESS_H_
#define NMSOLVE_HARNESS_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nmsolve/momentum.h"
#include "nmsolve/nfg.h"
#include "nmsolve/simplex_learners.h"
#include "nmsolve/solver.h"

namespace nmsolve {

// One experiment as read from a JSON document. Unset optionals fall back to
// the per-algorithm defaults of the solver.
struct ExperimentConfig {
  std::string game = "matrix-3x3";
  // Payoffs divided by their largest magnitude.
  bool normalize = true;
  std::string algorithm = "rm+";
  double eta = 1.0;
  double beta = 0.0;
  RestartInterval k = RestartInterval::Infinite();
  std::int64_t iterations = 1000;
  std::optional<bool> alternating;
  std::optional<AveragingScheme> averaging;
  std::optional<std::int64_t> eval_every;
  std::uint64_t seed = 0;
  // CSV destination; empty means do not write.
  std::string output;

  friend bool operator==(const ExperimentConfig&,
                         const ExperimentConfig&) = default;
};

bool is_game_name(const std::string& name);

// JSON object with the field names above; "k" is an integer or "inf".
// Unknown keys, games and algorithms raise ConfigError naming the key.
ExperimentConfig parse_config(const std::string& text);
std::string config_to_json(const ExperimentConfig& config);
SolveConfig to_solve_config(const ExperimentConfig& config);

// Builds the game, runs the solver and writes the CSV when `output` is set.
ConvergenceLog run_experiment(const ExperimentConfig& config);

struct Preset {
  std::string key;
  ExperimentConfig config;
};

// Hyperparameter presets for the benchmark suite, keyed
// "table1/<game>/<algorithm>" and "table2/<game>/<algorithm>". Baselines
// without tuned parameters are included under the same scheme.
const std::vector<Preset>& presets();
std::vector<std::string> preset_keys();
ExperimentConfig find_preset(const std::string& key);

// Preset groups: an exact key, a prefix such as "table2/kuhn", or a k-sweep
// key "sweep/<kuhn|leduc>/dmogda-k". Outputs land in out_dir, one CSV per
// configuration.
std::vector<Preset> expand_presets(const std::string& name,
                                   const std::string& out_dir);

// Copies of `base` with `param` (k, beta, eta, seed or iterations) set to each
// value; outputs are named after the value inside out_dir.
std::vector<ExperimentConfig> sweep_configs(const ExperimentConfig& base,
                                            const std::string& param,
                                            const std::vector<std::string>& values,
                                            const std::string& out_dir);

// Runs jobs on at most `workers` threads. The first exception is rethrown
// after all threads stop.
void run_parallel(const std::vector<std::function<void()>>& jobs,
                  std::size_t workers);

std::vector<ConvergenceLog> run_experiments(
    const std::vector<ExperimentConfig>& configs, std::size_t workers);

// KL(p || q) for strictly positive q, accurate when q is very close to p.
double kl_divergence(std::span<const double> p, std::span<const double> q);

struct Theorem1Report {
  double beta = 0.0;
  double eta = 0.0;
  double factor = 0.0;     // 1 + beta / 2
  double eta_bound = 0.0;  // sqrt(-(1 + 1.5 beta) beta) / 2
  std::int64_t iterations = 0;
  std::int64_t oracle_iterations = 0;
  std::vector<double> x_star;
  std::vector<double> y_star;
  // Distance of z_* from the logit response it must satisfy.
  double fixed_point_residual = 0.0;
  double max_ratio = 0.0;
  std::int64_t worst_t = 0;
  bool pass = false;
  // Companion duality-gap bound with the Euclidean norm (an interpretation:
  // the norm is not pinned down). Compared at the last iterate.
  double final_gap = 0.0;
  double gap_bound = 0.0;
  bool gap_within_bound = false;

  std::string ToString() const;
};

inline constexpr double kTheorem1RatioTolerance = 1e-6;

// MoMWU with k = inf from uniform. z_* is taken from a long run of the same
// dynamics. ConfigError when beta or eta lies outside the admissible range.
Theorem1Report theorem1_check(const MatrixGame& game, double beta, double eta,
                              std::int64_t iterations,
                              std::int64_t oracle_iterations = 1000000);

struct Theorem3Report {
  bool applicable = true;
  std::string note;
  double beta = 0.0;
  double eta = 0.0;
  std::int64_t k = 0;
  std::int64_t iterations = 0;
  double tol = 0.0;
  std::int64_t first_hit = -1;  // first t with gap <= tol
  double final_gap = 0.0;
  std::vector<double> epoch_gaps;  // gap at the end of each attachment epoch
  bool monotone = false;
  std::int64_t first_violation = -1;  // epoch index
  bool pass = false;

  std::string ToString() const;
};

inline constexpr int kTheorem3BurnInEpochs = 3;
inline constexpr double kTheorem3Slack = 1e-12;

// MoMWU with a finite restart interval; passes when the last-iterate gap hits
// tol and the epoch-end gaps never increase (beyond rounding) after burn-in.
Theorem3Report theorem3_check(const MatrixGame& game, double beta, double eta,
                              RestartInterval k, std::int64_t iterations,
                              double tol);

struct Proposition1Report {
  double friction = 0.0;
  double horizon = 0.0;
  std::vector<double> deltas;
  std::vector<double> errors;
  std::vector<double> ratios;
  bool pass = false;

  std::string ToString() const;
};

// Heavy-ball iterates (eta = delta^2, beta = 1 - friction delta) on the
// rotation field against an RK4 solution of z'' = -F(z) - friction z'. The
// error should halve with delta: ratios within [1.5, 3].
Proposition1Report proposition1_check(double friction = 2.0,
                                      std::vector<double> deltas = {0.1, 0.05,
                                                                    0.025},
                                      double horizon = 5.0);

}  // namespace nmsolve

#endif  // NMSOLVE_HARNESS_H_
