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


// nmsolve command line: solve, preset, sweep, check, list.
//
// Exit status: 0 success, 1 a check ran and failed, 2 configuration error,
// 3 runtime failure.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "nmsolve/error.h"
#include "nmsolve/format.h"
#include "nmsolve/games.h"
#include "nmsolve/harness.h"

namespace {

using nmsolve::ErrorKind;
using nmsolve::ExperimentConfig;

constexpr int kExitCheckFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

// Raw flag values; only the ones given on the command line are applied on
// top of the --config file.
struct RunFlags {
  std::string config_path;
  std::string game;
  bool raw = false;
  std::string algo;
  double eta = 0.0;
  double beta = 0.0;
  std::string k;
  std::int64_t iters = 0;
  bool alternating = false;
  bool simultaneous = false;
  std::string averaging;
  std::int64_t eval_every = 0;
  std::uint64_t seed = 0;
  std::string out;
};

void AddRunFlags(CLI::App* app, RunFlags& f, bool with_out) {
  app->add_option("--config", f.config_path, "JSON experiment config");
  app->add_option("--game", f.game, "game name (see `nmsolve list`)");
  app->add_flag("--raw", f.raw, "keep payoffs unnormalized");
  app->add_option("--algo", f.algo, "algorithm name");
  app->add_option("--eta", f.eta, "step size");
  app->add_option("--beta", f.beta, "momentum coefficient");
  app->add_option("--k", f.k, "attachment refresh interval, integer or inf");
  app->add_option("--iters", f.iters, "iterations");
  auto* alt = app->add_flag("--alternating", f.alternating, "alternating updates");
  app->add_flag("--simultaneous", f.simultaneous, "simultaneous updates")->excludes(alt);
  app->add_option("--averaging", f.averaging, "last, uniform, linear or quadratic");
  app->add_option("--eval-every", f.eval_every, "log every n-th iteration");
  app->add_option("--seed", f.seed, "seed for random games");
  if (with_out) app->add_option("--out", f.out, "CSV output path");
}

ExperimentConfig BuildConfig(const CLI::App* app, const RunFlags& f) {
  ExperimentConfig c;
  if (!f.config_path.empty()) {
    std::ifstream in(f.config_path);
    if (!in) nmsolve::Fail(ErrorKind::kConfig, "cannot read config '" + f.config_path + "'");
    std::stringstream text;
    text << in.rdbuf();
    try {
      c = nmsolve::parse_config(text.str());
    } catch (const nmsolve::Error& e) {
      if (e.kind() == ErrorKind::kParse) nmsolve::Fail(ErrorKind::kConfig, e.what());
      throw;
    }
  }
  // Reuse the JSON validation for every flag that was actually given.
  nlohmann::ordered_json overrides = nlohmann::ordered_json::parse(nmsolve::config_to_json(c));
  auto given = [&](const char* flag) {
    const auto* opt = app->get_option_no_throw(flag);
    return opt != nullptr && opt->count() > 0;
  };
  if (given("--game")) overrides["game"] = f.game;
  if (f.raw) overrides["normalize"] = false;
  if (given("--algo")) overrides["algorithm"] = f.algo;
  if (given("--eta")) overrides["eta"] = f.eta;
  if (given("--beta")) overrides["beta"] = f.beta;
  if (given("--k")) overrides["k"] = f.k;
  if (given("--iters")) overrides["iterations"] = f.iters;
  if (f.alternating) overrides["alternating"] = true;
  if (f.simultaneous) overrides["alternating"] = false;
  if (given("--averaging")) overrides["averaging"] = f.averaging;
  if (given("--eval-every")) overrides["eval_every"] = f.eval_every;
  if (given("--seed")) overrides["seed"] = f.seed;
  if (given("--out")) overrides["output"] = f.out;
  return nmsolve::parse_config(overrides.dump());
}

std::vector<std::string> SplitList(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = nmsolve::Trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void Summarize(const ExperimentConfig& c, const nmsolve::ConvergenceLog& log) {
  std::cout << c.game << " " << c.algorithm << ": " << log.rows.size() << " rows";
  if (!log.rows.empty()) {
    std::cout << ", final exploitability "
              << nmsolve::FormatDouble(log.rows.back().exploitability);
  }
  if (!c.output.empty()) std::cout << " -> " << c.output;
  std::cout << "\n";
}

std::size_t DefaultWorkers() {
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Momentum and regret-matching solvers for zero-sum games"};
  app.require_subcommand(1);

  RunFlags solve_flags;
  auto* solve = app.add_subcommand("solve", "run one experiment");
  AddRunFlags(solve, solve_flags, true);

  std::string preset_name;
  std::string preset_dir = ".";
  std::size_t preset_workers = DefaultWorkers();
  auto* preset = app.add_subcommand("preset", "run a table preset, a prefix of them, or a k sweep");
  preset->add_option("--name", preset_name, "preset key or prefix")->required();
  preset->add_option("--out-dir", preset_dir, "directory for the CSV files");
  preset->add_option("--workers", preset_workers, "parallel runs");

  RunFlags sweep_flags;
  std::string sweep_param;
  std::string sweep_values;
  std::string sweep_dir = ".";
  std::size_t sweep_workers = DefaultWorkers();
  auto* sweep = app.add_subcommand("sweep", "grid over one parameter");
  AddRunFlags(sweep, sweep_flags, false);
  sweep->add_option("--param", sweep_param, "k, beta, eta, seed or iterations")->required();
  sweep->add_option("--values", sweep_values, "comma separated values")->required();
  sweep->add_option("--out-dir", sweep_dir, "directory for the CSV files");
  sweep->add_option("--workers", sweep_workers, "parallel runs");

  int theorem = 0;
  std::string check_game = "matrix-3x3";
  bool check_raw = false;
  double check_beta = -0.5;
  double check_eta = 0.15;
  std::string check_k = "50";
  std::int64_t check_iters = 200;
  std::int64_t check_oracle = 1000000;
  double check_tol = 1e-6;
  auto* check = app.add_subcommand("check", "property checks on a matrix game");
  check->add_option("--theorem", theorem, "1 (geometric decay, k=inf) or 3 (restarts)")
      ->required()
      ->check(CLI::IsMember({1, 3}));
  check->add_option("--game", check_game, "matrix game");
  check->add_flag("--raw", check_raw, "keep payoffs unnormalized");
  check->add_option("--beta", check_beta, "momentum coefficient");
  check->add_option("--eta", check_eta, "step size");
  check->add_option("--k", check_k, "refresh interval (theorem 3)");
  check->add_option("--iters", check_iters, "iterations");
  check->add_option("--oracle-iters", check_oracle, "reference run length (theorem 1)");
  check->add_option("--tol", check_tol, "duality gap target (theorem 3)");

  auto* list = app.add_subcommand("list", "print games, algorithms and preset keys");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*solve) {
      const auto config = BuildConfig(solve, solve_flags);
      Summarize(config, nmsolve::run_experiment(config));
    } else if (*preset) {
      const auto jobs = nmsolve::expand_presets(preset_name, preset_dir);
      std::vector<ExperimentConfig> configs;
      for (const auto& p : jobs) configs.push_back(p.config);
      const auto logs = nmsolve::run_experiments(configs, preset_workers);
      for (std::size_t i = 0; i < logs.size(); ++i) Summarize(configs[i], logs[i]);
    } else if (*sweep) {
      const auto base = BuildConfig(sweep, sweep_flags);
      const auto configs =
          nmsolve::sweep_configs(base, sweep_param, SplitList(sweep_values), sweep_dir);
      const auto logs = nmsolve::run_experiments(configs, sweep_workers);
      for (std::size_t i = 0; i < logs.size(); ++i) Summarize(configs[i], logs[i]);
    } else if (*check) {
      const auto any = nmsolve::game_by_name(check_game, !check_raw, 0);
      const auto* game = std::get_if<nmsolve::MatrixGame>(&any);
      if (game == nullptr) {
        nmsolve::Fail(ErrorKind::kConfig, "check needs a matrix game, got '" + check_game + "'");
      }
      bool pass;
      if (theorem == 1) {
        const auto r = nmsolve::theorem1_check(*game, check_beta, check_eta, check_iters,
                                               check_oracle);
        std::cout << r.ToString();
        pass = r.pass;
      } else {
        const auto r = nmsolve::theorem3_check(*game, check_beta, check_eta,
                                               nmsolve::RestartInterval::Parse(check_k),
                                               check_iters, check_tol);
        std::cout << r.ToString();
        pass = !r.applicable || r.pass;
      }
      return pass ? 0 : kExitCheckFailed;
    } else if (*list) {
      std::cout << "games:";
      for (const auto& g : nmsolve::game_names()) std::cout << " " << g;
      std::cout << "\nalgorithms:";
      for (auto a : nmsolve::AllAlgorithms()) std::cout << " " << nmsolve::AlgorithmName(a);
      std::cout << "\npresets:\n";
      for (const auto& key : nmsolve::preset_keys()) std::cout << "  " << key << "\n";
    }
  } catch (const nmsolve::Error& e) {
    std::cerr << "nmsolve: " << e.what() << "\n";
    return e.kind() == ErrorKind::kConfig ? kExitConfig : kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "nmsolve: " << e.what() << "\n";
    return kExitRuntime;
  }
  return 0;
}
