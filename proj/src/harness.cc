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


#include "nmsolve/harness.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <regex>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "nmsolve/error.h"
#include "nmsolve/format.h"
#include "nmsolve/games.h"

namespace nmsolve {

using Json = nlohmann::ordered_json;

bool is_game_name(const std::string& name) {
  static const std::regex kRandom("random-([1-9][0-9]*)x([1-9][0-9]*)");
  if (std::regex_match(name, kRandom)) return true;
  const auto names = game_names();
  return name != "random-<m>x<n>" &&
         std::find(names.begin(), names.end(), name) != names.end();
}

namespace {

[[noreturn]] void BadKey(const std::string& key, const std::string& why) {
  Fail(ErrorKind::kConfig, "config key '" + key + "': " + why);
}

double GetNumber(const Json& v, const std::string& key) {
  if (!v.is_number()) BadKey(key, "expected a number");
  return v.get<double>();
}

std::int64_t GetInt(const Json& v, const std::string& key) {
  if (!v.is_number_integer()) BadKey(key, "expected an integer");
  return v.get<std::int64_t>();
}

bool GetBool(const Json& v, const std::string& key) {
  if (!v.is_boolean()) BadKey(key, "expected true or false");
  return v.get<bool>();
}

std::string GetString(const Json& v, const std::string& key) {
  if (!v.is_string()) BadKey(key, "expected a string");
  return v.get<std::string>();
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    Fail(ErrorKind::kParse, std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) Fail(ErrorKind::kParse, "config must be a JSON object");
  ExperimentConfig c;
  for (const auto& [key, v] : doc.items()) {
    if (key == "game") {
      c.game = GetString(v, key);
      if (!is_game_name(c.game)) BadKey(key, "unknown game '" + c.game + "'");
    } else if (key == "normalize") {
      c.normalize = GetBool(v, key);
    } else if (key == "algorithm") {
      c.algorithm = GetString(v, key);
      try {
        ParseAlgorithm(c.algorithm);
      } catch (const Error&) {
        BadKey(key, "unknown algorithm '" + c.algorithm + "'");
      }
    } else if (key == "eta") {
      c.eta = GetNumber(v, key);
      if (!(c.eta > 0.0)) BadKey(key, "eta must be positive");
    } else if (key == "beta") {
      c.beta = GetNumber(v, key);
    } else if (key == "k") {
      try {
        c.k = v.is_string() ? RestartInterval::Parse(v.get<std::string>())
                            : RestartInterval::Every(GetInt(v, key));
      } catch (const Error& e) {
        BadKey(key, e.what());
      }
    } else if (key == "iterations") {
      c.iterations = GetInt(v, key);
      if (c.iterations <= 0) BadKey(key, "must be positive");
    } else if (key == "alternating") {
      if (!v.is_null()) c.alternating = GetBool(v, key);
    } else if (key == "averaging") {
      if (!v.is_null()) {
        try {
          c.averaging = ParseAveraging(GetString(v, key));
        } catch (const Error& e) {
          BadKey(key, e.what());
        }
      }
    } else if (key == "eval_every") {
      if (!v.is_null()) {
        c.eval_every = GetInt(v, key);
        if (*c.eval_every <= 0) BadKey(key, "must be positive");
      }
    } else if (key == "seed") {
      if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
        BadKey(key, "expected a non-negative integer");
      }
      c.seed = v.get<std::uint64_t>();
    } else if (key == "output") {
      c.output = GetString(v, key);
    } else {
      BadKey(key, "unknown key");
    }
  }
  return c;
}

std::string config_to_json(const ExperimentConfig& c) {
  Json doc;
  doc["game"] = c.game;
  doc["normalize"] = c.normalize;
  doc["algorithm"] = c.algorithm;
  doc["eta"] = c.eta;
  doc["beta"] = c.beta;
  if (c.k.infinite()) {
    doc["k"] = "inf";
  } else {
    doc["k"] = c.k.value();
  }
  doc["iterations"] = c.iterations;
  if (c.alternating) doc["alternating"] = *c.alternating;
  if (c.averaging) doc["averaging"] = AveragingName(*c.averaging);
  if (c.eval_every) doc["eval_every"] = *c.eval_every;
  doc["seed"] = c.seed;
  if (!c.output.empty()) doc["output"] = c.output;
  return doc.dump(2) + "\n";
}

SolveConfig to_solve_config(const ExperimentConfig& c) {
  SolveConfig s;
  s.algorithm = ParseAlgorithm(c.algorithm);
  s.eta = c.eta;
  s.beta = c.beta;
  s.k = c.k;
  s.iterations = c.iterations;
  s.alternating = c.alternating;
  s.averaging = c.averaging;
  s.eval_every = c.eval_every;
  s.seed = c.seed;
  s.game = c.game;
  return s;
}

ConvergenceLog run_experiment(const ExperimentConfig& config) {
  if (!is_game_name(config.game)) {
    Fail(ErrorKind::kConfig, "unknown game '" + config.game + "'");
  }
  const auto game = game_by_name(config.game, config.normalize, config.seed);
  auto log = run_solver(game, to_solve_config(config));
  const double scale = std::visit(
      [](const auto& g) {
        if constexpr (std::is_same_v<std::decay_t<decltype(g)>, MatrixGame>) {
          return g.scale();
        } else {
          return g.payoff_scale;
        }
      },
      game);
  log.metadata.insert(log.metadata.begin() + 1,
                      {{"normalized", config.normalize ? "true" : "false"},
                       {"payoff_scale", FormatDouble(scale)}});
  if (!config.output.empty()) {
    const std::filesystem::path path(config.output);
    std::error_code ec;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
    std::ofstream out(path);
    if (!out) Fail(ErrorKind::kIo, "cannot open '" + config.output + "' for writing");
    log.WriteCsv(out);
    out.close();
    if (!out) Fail(ErrorKind::kIo, "failed writing '" + config.output + "'");
  }
  return log;
}

namespace {

ExperimentConfig Make(const std::string& game, const std::string& algorithm,
                      double eta, double beta, std::optional<int> k,
                      std::int64_t iterations) {
  ExperimentConfig c;
  c.game = game;
  c.algorithm = algorithm;
  c.eta = eta;
  c.beta = beta;
  c.k = k ? RestartInterval::Every(*k) : RestartInterval::Infinite();
  c.iterations = iterations;
  return c;
}

std::vector<Preset> BuildPresets() {
  std::vector<Preset> out;
  struct NfgRow {
    const char* token;
    const char* game;
    double morm_beta;
    int morm_k;
    double momwu_eta, momwu_beta;
    int momwu_k;
    double ogda_eta, omwu_eta;
  };
  const NfgRow nfg[] = {
      {"3x3", "matrix-3x3", -0.04, 10, 1.0, -0.06, 50, 1.0, 1.0},
      {"random25", "random-25x25", -0.02, 70, 7.0, -0.02, 100, 4.0, 5.0},
      {"random50", "random-50x50", -0.005, 70, 7.0, -0.02, 100, 5.0, 7.0},
      {"random75", "random-75x75", -0.003, 35, 9.0, -0.02, 100, 7.0, 9.0},
  };
  const std::int64_t nfg_iters = 10000;
  for (const auto& r : nfg) {
    const std::string p = std::string("table1/") + r.token + "/";
    out.push_back({p + "morm+", Make(r.game, "morm+", 1.0, r.morm_beta, r.morm_k, nfg_iters)});
    out.push_back({p + "momwu", Make(r.game, "momwu", r.momwu_eta, r.momwu_beta, r.momwu_k, nfg_iters)});
    out.push_back({p + "ogda", Make(r.game, "ogda", r.ogda_eta, 0.0, std::nullopt, nfg_iters)});
    out.push_back({p + "omwu", Make(r.game, "omwu", r.omwu_eta, 0.0, std::nullopt, nfg_iters)});
    out.push_back({p + "rm", Make(r.game, "rm", 1.0, 0.0, std::nullopt, nfg_iters)});
    out.push_back({p + "rm+", Make(r.game, "rm+", 1.0, 0.0, std::nullopt, nfg_iters)});
  }
  struct EfgRow {
    const char* game;
    double mocfr_beta;
    int mocfr_k;
    double dmogda_eta, dmogda_beta;
    int dmogda_k;
    double ogda_eta;
    std::int64_t iterations;
  };
  // Kuhn runs long enough for the high-accuracy regime; the three mid-size
  // games use desk-scale horizons; the two large games need --full budgets.
  const EfgRow efg[] = {
      {"kuhn", -0.2, 5, 2.0, -0.1, 10, 1.5, 10000},
      {"goofspiel-4", -0.02, 10, 1.0, -0.04, 70, 0.5, 2000},
      {"liars-dice-4", -0.02, 40, 3.0, -0.005, 10, 3.0, 2000},
      {"leduc", -0.01, 30, 4.0, -0.005, 100, 3.0, 2000},
      {"goofspiel-5", -0.01, 50, 0.8, -0.02, 100, 0.8, 100000},
      {"liars-dice-5", -0.003, 100, 4.0, -0.0005, 50, 3.0, 100000},
  };
  for (const auto& r : efg) {
    const std::string p = std::string("table2/") + r.game + "/";
    out.push_back({p + "mocfr+", Make(r.game, "mocfr+", 1.0, r.mocfr_beta, r.mocfr_k, r.iterations)});
    out.push_back({p + "dmogda", Make(r.game, "dmogda", r.dmogda_eta, r.dmogda_beta, r.dmogda_k, r.iterations)});
    out.push_back({p + "ogda", Make(r.game, "dogda", r.ogda_eta, 0.0, std::nullopt, r.iterations)});
    out.push_back({p + "cfr", Make(r.game, "cfr", 1.0, 0.0, std::nullopt, r.iterations)});
    out.push_back({p + "cfr+", Make(r.game, "cfr+", 1.0, 0.0, std::nullopt, r.iterations)});
    out.push_back({p + "pcfr+", Make(r.game, "pcfr+", 1.0, 0.0, std::nullopt, r.iterations)});
  }
  return out;
}

std::string FileStem(const std::string& key) {
  std::string s = key;
  std::replace(s.begin(), s.end(), '/', '_');
  return s;
}

std::string JoinPath(const std::string& dir, const std::string& file) {
  if (dir.empty()) return file;
  return (std::filesystem::path(dir) / file).string();
}

const std::vector<int> kSweepValues = {1, 5, 10, 50, 100};

}  // namespace

const std::vector<Preset>& presets() {
  static const std::vector<Preset> kPresets = BuildPresets();
  return kPresets;
}

std::vector<std::string> preset_keys() {
  std::vector<std::string> keys;
  for (const auto& p : presets()) keys.push_back(p.key);
  keys.push_back("sweep/kuhn/dmogda-k");
  keys.push_back("sweep/leduc/dmogda-k");
  return keys;
}

ExperimentConfig find_preset(const std::string& key) {
  for (const auto& p : presets()) {
    if (p.key == key) return p.config;
  }
  Fail(ErrorKind::kConfig, "unknown preset '" + key + "'");
}

std::vector<Preset> expand_presets(const std::string& name,
                                   const std::string& out_dir) {
  std::vector<Preset> out;
  if (name == "sweep/kuhn/dmogda-k" || name == "sweep/leduc/dmogda-k") {
    const std::string game = name == "sweep/kuhn/dmogda-k" ? "kuhn" : "leduc";
    const auto base = find_preset("table2/" + game + "/dmogda");
    for (int k : kSweepValues) {
      Preset p{name + "/" + std::to_string(k), base};
      p.config.k = RestartInterval::Every(k);
      out.push_back(std::move(p));
    }
  } else {
    const std::string prefix = name.empty() || name.back() == '/' ? name : name + "/";
    for (const auto& p : presets()) {
      if (p.key == name || p.key.rfind(prefix, 0) == 0) out.push_back(p);
    }
  }
  if (out.empty()) Fail(ErrorKind::kConfig, "unknown preset '" + name + "'");
  for (auto& p : out) p.config.output = JoinPath(out_dir, FileStem(p.key) + ".csv");
  return out;
}

std::vector<ExperimentConfig> sweep_configs(const ExperimentConfig& base,
                                            const std::string& param,
                                            const std::vector<std::string>& values,
                                            const std::string& out_dir) {
  if (values.empty()) Fail(ErrorKind::kConfig, "sweep needs at least one value");
  std::string stem = base.game + "_" + base.algorithm;
  std::vector<ExperimentConfig> out;
  for (const auto& v : values) {
    ExperimentConfig c = base;
    try {
      if (param == "k") {
        c.k = RestartInterval::Parse(v);
      } else if (param == "beta") {
        c.beta = ParseDouble(v);
      } else if (param == "eta") {
        c.eta = ParseDouble(v);
        if (!(c.eta > 0.0)) Fail(ErrorKind::kConfig, "eta must be positive");
      } else if (param == "seed") {
        c.seed = static_cast<std::uint64_t>(ParseInt(v));
      } else if (param == "iterations") {
        c.iterations = ParseInt(v);
        if (c.iterations <= 0) Fail(ErrorKind::kConfig, "iterations must be positive");
      } else {
        Fail(ErrorKind::kConfig, "cannot sweep '" + param +
                                     "' (k, beta, eta, seed or iterations)");
      }
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::kConfig) throw;
      Fail(ErrorKind::kConfig, "sweep value '" + v + "': " + e.what());
    }
    c.output = JoinPath(out_dir, stem + "_" + param + "-" + v + ".csv");
    out.push_back(std::move(c));
  }
  return out;
}

void run_parallel(const std::vector<std::function<void()>>& jobs,
                  std::size_t workers) {
  workers = std::max<std::size_t>(1, std::min(workers, jobs.size()));
  std::atomic<std::size_t> next{0};
  std::exception_ptr first;
  std::mutex mu;
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= jobs.size()) return;
      try {
        jobs[i]();
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!first) first = std::current_exception();
      }
    }
  };
  std::vector<std::thread> threads;
  for (std::size_t w = 1; w < workers; ++w) threads.emplace_back(work);
  work();
  for (auto& t : threads) t.join();
  if (first) std::rethrow_exception(first);
}

std::vector<ConvergenceLog> run_experiments(
    const std::vector<ExperimentConfig>& configs, std::size_t workers) {
  std::vector<ConvergenceLog> logs(configs.size());
  std::vector<std::function<void()>> jobs;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    jobs.emplace_back([&, i] { logs[i] = run_experiment(configs[i]); });
  }
  run_parallel(jobs, workers);
  return logs;
}

double kl_divergence(std::span<const double> p, std::span<const double> q) {
  CheckDimension(q.size(), p.size(), "kl divergence");
  // sum_i q_i phi(p_i / q_i) with phi(r) = r log r - r + 1; equal to KL for
  // two distributions and free of the cancellation in sum p log(p/q).
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!(q[i] > 0.0)) Fail(ErrorKind::kDomain, "kl divergence needs q > 0");
    if (p[i] == 0.0) {
      total += q[i];
      continue;
    }
    const double u = (p[i] - q[i]) / q[i];
    double phi;
    if (std::abs(u) < 1e-3) {
      phi = u * u * (0.5 + u * (-1.0 / 6.0 + u * (1.0 / 12.0 - u / 20.0)));
    } else {
      phi = (1.0 + u) * std::log1p(u) - u;
    }
    total += q[i] * phi;
  }
  return total;
}

namespace {

std::string Fmt(double v) {
  std::ostringstream out;
  out.precision(6);
  out << v;
  return out.str();
}

std::string Join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + Fmt(v[i]);
  return s;
}

void Advance(PlayerLearner& x, PlayerLearner& y, const MatrixGame& game) {
  const auto lx = game.RowLoss(y.strategy());
  auto ly = game.ColGain(x.strategy());
  for (double& v : ly) v = -v;
  x.Observe(lx);
  y.Observe(ly);
}

std::vector<double> Copy(std::span<const double> s) { return {s.begin(), s.end()}; }

double Gap(const MatrixGame& game, std::span<const double> x,
           std::span<const double> y) {
  return duality_gap(game, SimplexStrategy(Copy(x)), SimplexStrategy(Copy(y)));
}

}  // namespace

Theorem1Report theorem1_check(const MatrixGame& game, double beta, double eta,
                              std::int64_t iterations,
                              std::int64_t oracle_iterations) {
  if (!(beta > -2.0 / 3.0 && beta < 0.0)) {
    Fail(ErrorKind::kConfig, "beta=" + FormatDouble(beta) + " violates -2/3 < beta < 0");
  }
  Theorem1Report r;
  r.beta = beta;
  r.eta = eta;
  r.factor = 1.0 + beta / 2.0;
  r.eta_bound = std::sqrt(-(1.0 + 1.5 * beta) * beta) / 2.0;
  if (!(eta > 0.0 && eta <= r.eta_bound)) {
    Fail(ErrorKind::kConfig, "eta=" + FormatDouble(eta) +
                                 " violates 0 < eta <= sqrt(-(1 + 1.5 beta) beta) / 2 = " +
                                 FormatDouble(r.eta_bound));
  }
  if (iterations <= 0 || oracle_iterations <= 0) {
    Fail(ErrorKind::kConfig, "iteration counts must be positive");
  }
  r.iterations = iterations;
  r.oracle_iterations = oracle_iterations;
  SolveConfig c;
  c.algorithm = Algorithm::kMoMWU;
  c.eta = eta;
  c.beta = beta;
  c.k = RestartInterval::Infinite();

  {
    auto x = make_simplex_learner(c.algorithm, game.rows(), c);
    auto y = make_simplex_learner(c.algorithm, game.cols(), c);
    for (std::int64_t t = 0; t < oracle_iterations; ++t) Advance(*x, *y, game);
    r.x_star = Copy(x->strategy());
    r.y_star = Copy(y->strategy());
  }
  // With L_att = 0 the attachment is uniform and z_* is the logit response
  // at temperature -beta / eta.
  {
    const double scale = eta / -beta;
    auto fx = game.RowLoss(r.y_star);
    auto gy = game.ColGain(r.x_star);
    for (double& v : fx) v *= -scale;
    for (double& v : gy) v *= scale;
    const auto sx = softmax(fx), sy = softmax(gy);
    for (std::size_t i = 0; i < sx.size(); ++i) {
      r.fixed_point_residual = std::max(r.fixed_point_residual, std::abs(sx[i] - r.x_star[i]));
    }
    for (std::size_t i = 0; i < sy.size(); ++i) {
      r.fixed_point_residual = std::max(r.fixed_point_residual, std::abs(sy[i] - r.y_star[i]));
    }
  }

  auto x = make_simplex_learner(c.algorithm, game.rows(), c);
  auto y = make_simplex_learner(c.algorithm, game.cols(), c);
  auto divergence = [&] {
    return kl_divergence(r.x_star, x->strategy()) + kl_divergence(r.y_star, y->strategy());
  };
  const double d0 = divergence();
  r.max_ratio = 0.0;
  double bound = d0;
  for (std::int64_t t = 1; t <= iterations; ++t) {
    Advance(*x, *y, game);
    bound *= r.factor;
    const double ratio = d0 > 0.0 ? divergence() / bound : 0.0;
    if (t == 1 || ratio > r.max_ratio) {
      r.max_ratio = ratio;
      r.worst_t = t;
    }
  }
  r.pass = r.max_ratio <= 1.0 + kTheorem1RatioTolerance;

  r.final_gap = Gap(game, x->strategy(), y->strategy());
  double log_norm = 0.0;
  for (double v : r.x_star) {
    const double l = std::log(v * static_cast<double>(r.x_star.size()));
    log_norm += l * l;
  }
  for (double v : r.y_star) {
    const double l = std::log(v * static_cast<double>(r.y_star.size()));
    log_norm += l * l;
  }
  // Each simplex has Euclidean diameter sqrt(2).
  r.gap_bound = (-beta / eta) * 2.0 * std::sqrt(log_norm);
  r.gap_within_bound = r.final_gap <= r.gap_bound;
  return r;
}

std::string Theorem1Report::ToString() const {
  std::ostringstream out;
  out << "momwu k=inf beta=" << Fmt(beta) << " eta=" << Fmt(eta)
      << " (eta bound " << Fmt(eta_bound) << ")\n"
      << "  per-step factor 1+beta/2 = " << Fmt(factor) << "\n"
      << "  z* from " << oracle_iterations << " iterations: x* = [" << Join(x_star)
      << "] y* = [" << Join(y_star) << "]\n"
      << "  logit fixed-point residual " << Fmt(fixed_point_residual) << "\n"
      << "  max_t KL(z*,z_t) / (KL(z*,z_0) factor^t) = " << Fmt(max_ratio)
      << " at t=" << worst_t << " over " << iterations << " iterations -> "
      << (pass ? "PASS" : "FAIL") << "\n"
      << "  gap bound (euclidean norm reading): gap(z_T) = " << Fmt(final_gap)
      << " vs (-beta/eta) diam ||log z*/z_att|| = " << Fmt(gap_bound) << " -> "
      << (gap_within_bound ? "within" : "exceeded") << "\n";
  return out.str();
}

Theorem3Report theorem3_check(const MatrixGame& game, double beta, double eta,
                              RestartInterval k, std::int64_t iterations,
                              double tol) {
  if (k.infinite()) Fail(ErrorKind::kConfig, "theorem 3 check needs a finite k");
  if (!(eta > 0.0)) Fail(ErrorKind::kConfig, "eta must be positive");
  if (iterations <= 0) Fail(ErrorKind::kConfig, "iterations must be positive");
  Theorem3Report r;
  r.beta = beta;
  r.eta = eta;
  r.k = k.value();
  r.iterations = iterations;
  r.tol = tol;
  if (beta == 0.0) {
    r.applicable = false;
    r.note = "not applicable (beta=0)";
    return r;
  }
  SolveConfig c;
  c.algorithm = Algorithm::kMoMWU;
  c.eta = eta;
  c.beta = beta;
  c.k = k;
  auto x = make_simplex_learner(c.algorithm, game.rows(), c);
  auto y = make_simplex_learner(c.algorithm, game.cols(), c);
  for (std::int64_t t = 1; t <= iterations; ++t) {
    Advance(*x, *y, game);
    const double gap = Gap(game, x->strategy(), y->strategy());
    if (r.first_hit < 0 && gap <= tol) r.first_hit = t;
    if (t % r.k == 0) r.epoch_gaps.push_back(gap);
    r.final_gap = gap;
  }
  r.monotone = true;
  for (std::size_t e = kTheorem3BurnInEpochs + 1; e < r.epoch_gaps.size(); ++e) {
    if (r.epoch_gaps[e] > r.epoch_gaps[e - 1] + kTheorem3Slack) {
      r.monotone = false;
      r.first_violation = static_cast<std::int64_t>(e);
      break;
    }
  }
  r.pass = r.first_hit >= 0 && r.monotone;
  return r;
}

std::string Theorem3Report::ToString() const {
  std::ostringstream out;
  if (!applicable) {
    out << "momwu beta=" << Fmt(beta) << ": " << note << "\n";
    return out.str();
  }
  out << "momwu beta=" << Fmt(beta) << " eta=" << Fmt(eta) << " k=" << k << " T="
      << iterations << " tol=" << Fmt(tol) << "\n"
      << "  first t with gap <= tol: "
      << (first_hit >= 0 ? std::to_string(first_hit) : std::string("never")) << "\n"
      << "  final gap " << Fmt(final_gap) << "\n"
      << "  epoch-end gaps non-increasing after " << kTheorem3BurnInEpochs
      << " epochs: " << (monotone ? "yes" : "no, epoch " + std::to_string(first_violation))
      << " (" << epoch_gaps.size() << " epochs)\n"
      << "  -> " << (pass ? "PASS" : "FAIL") << "\n";
  return out.str();
}

Proposition1Report proposition1_check(double friction, std::vector<double> deltas,
                                      double horizon) {
  if (deltas.size() < 2) Fail(ErrorKind::kConfig, "need at least two step sizes");
  Proposition1Report r;
  r.friction = friction;
  r.horizon = horizon;
  r.deltas = deltas;
  const VectorField rotation = [](std::span<const double> z) {
    return std::vector<double>{z[1], -z[0]};
  };
  const std::vector<double> z0{1.0, 0.0};
  for (double delta : deltas) {
    const auto path = gdam_trajectory(rotation, friction, delta, z0, horizon);
    const auto ref = integrate_friction_ode(rotation, friction, z0, horizon, delta, 400);
    double err = 0.0;
    for (std::size_t n = 0; n < std::min(path.size(), ref.size()); ++n) {
      err = std::max(err, std::hypot(path[n][0] - ref[n][0], path[n][1] - ref[n][1]));
    }
    r.errors.push_back(err);
  }
  r.pass = true;
  for (std::size_t i = 0; i + 1 < r.errors.size(); ++i) {
    r.ratios.push_back(r.errors[i] / r.errors[i + 1]);
    r.pass = r.pass && r.ratios.back() >= 1.5 && r.ratios.back() <= 3.0;
  }
  return r;
}

std::string Proposition1Report::ToString() const {
  std::ostringstream out;
  out << "heavy ball vs friction ode, friction=" << Fmt(friction) << " horizon=" << Fmt(horizon)
      << "\n";
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    out << "  delta=" << Fmt(deltas[i]) << " max error " << Fmt(errors[i]);
    if (i > 0) out << " (ratio " << Fmt(ratios[i - 1]) << ")";
    out << "\n";
  }
  out << "  -> " << (pass ? "PASS" : "FAIL") << "\n";
  return out.str();
}

}  // namespace nmsolve
