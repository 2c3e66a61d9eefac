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


#include "nmsolve/solver.h"

#include <array>
#include <chrono>
#include <sstream>

#include "nmsolve/cfr.h"
#include "nmsolve/dilated.h"
#include "nmsolve/error.h"
#include "nmsolve/format.h"

namespace nmsolve {

namespace {

struct AlgorithmInfo {
  Algorithm algorithm;
  const char* name;
  bool treeplex;
  bool momentum;
  bool step_size;
  bool alternating;
  AveragingScheme averaging;
};

constexpr auto kLast = AveragingScheme::kLastIterate;

constexpr std::array<AlgorithmInfo, 21> kAlgorithms = {{
    {Algorithm::kRM, "rm", false, false, false, false, AveragingScheme::kUniform},
    {Algorithm::kRMPlus, "rm+", false, false, false, true, AveragingScheme::kLinear},
    {Algorithm::kMoRMPlus, "morm+", false, true, false, true, kLast},
    {Algorithm::kMWU, "mwu", false, false, true, false, kLast},
    {Algorithm::kGDA, "gda", false, false, true, false, kLast},
    {Algorithm::kMoMWU, "momwu", false, true, true, false, kLast},
    {Algorithm::kMoGDA, "mogda", false, true, true, false, kLast},
    {Algorithm::kMoFTRLEntropy, "moftrl-ent", false, true, true, false, kLast},
    {Algorithm::kMoFTRLL2, "moftrl-l2", false, true, true, false, kLast},
    {Algorithm::kOMWU, "omwu", false, false, true, false, kLast},
    {Algorithm::kOGDA, "ogda", false, false, true, false, kLast},
    {Algorithm::kCFR, "cfr", true, false, false, false, AveragingScheme::kUniform},
    {Algorithm::kCFRPlus, "cfr+", true, false, false, true, AveragingScheme::kLinear},
    {Algorithm::kPCFRPlus, "pcfr+", true, false, false, true, AveragingScheme::kQuadratic},
    {Algorithm::kMoCFRPlus, "mocfr+", true, true, false, true, kLast},
    {Algorithm::kDMWU, "dmwu", true, false, true, false, kLast},
    {Algorithm::kDGDA, "dgda", true, false, true, false, kLast},
    {Algorithm::kDMoMWU, "dmomwu", true, true, true, false, kLast},
    {Algorithm::kDMoGDA, "dmogda", true, true, true, false, kLast},
    {Algorithm::kDOMWU, "domwu", true, false, true, false, kLast},
    {Algorithm::kDOGDA, "dogda", true, false, true, false, kLast},
}};

const AlgorithmInfo& Info(Algorithm algorithm) {
  for (const auto& info : kAlgorithms) {
    if (info.algorithm == algorithm) return info;
  }
  Fail(ErrorKind::kConfig, "unknown algorithm");
}

}  // namespace

std::string AlgorithmName(Algorithm algorithm) { return Info(algorithm).name; }

Algorithm ParseAlgorithm(const std::string& name) {
  for (const auto& info : kAlgorithms) {
    if (name == info.name) return info.algorithm;
  }
  Fail(ErrorKind::kConfig, "unknown algorithm '" + name + "'");
}

std::vector<Algorithm> AllAlgorithms() {
  std::vector<Algorithm> out;
  for (const auto& info : kAlgorithms) out.push_back(info.algorithm);
  return out;
}

bool IsTreeplexAlgorithm(Algorithm algorithm) { return Info(algorithm).treeplex; }
bool UsesMomentum(Algorithm algorithm) { return Info(algorithm).momentum; }
bool UsesStepSize(Algorithm algorithm) { return Info(algorithm).step_size; }
bool DefaultAlternating(Algorithm algorithm) { return Info(algorithm).alternating; }
AveragingScheme DefaultAveraging(Algorithm algorithm) {
  return Info(algorithm).averaging;
}

std::string ConvergenceLog::Metadata(const std::string& key) const {
  for (const auto& [k, v] : metadata) {
    if (k == key) return v;
  }
  return "";
}

void ConvergenceLog::WriteCsv(std::ostream& out) const {
  for (const auto& [k, v] : metadata) out << "# " << k << ": " << v << "\n";
  out << kCsvHeader << "\n";
  for (const auto& row : rows) {
    out << row.iteration << "," << FormatDouble(row.exploitability) << ","
        << FormatDouble(row.wall_ms) << "\n";
  }
}

std::string ConvergenceLog::ToCsv() const {
  std::ostringstream out;
  WriteCsv(out);
  return out.str();
}

std::string ConvergenceLog::NumericColumns() const {
  std::string out;
  for (const auto& row : rows) {
    out += std::to_string(row.iteration) + "," +
           FormatDouble(row.exploitability) + "\n";
  }
  return out;
}

ConvergenceLog parse_convergence_csv(const std::string& text) {
  ConvergenceLog log;
  std::istringstream in(text);
  std::string line;
  bool header = false;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto trimmed = Trim(line);
    if (trimmed.empty()) continue;
    const std::string where = "line " + std::to_string(line_no);
    if (trimmed.front() == '#') {
      const auto body = Trim(trimmed.substr(1));
      const auto colon = body.find(':');
      if (colon == std::string_view::npos) {
        Fail(ErrorKind::kParse, where + ": metadata without ':'");
      }
      log.metadata.emplace_back(std::string(Trim(body.substr(0, colon))),
                                std::string(Trim(body.substr(colon + 1))));
      continue;
    }
    if (!header) {
      if (trimmed != kCsvHeader) Fail(ErrorKind::kParse, where + ": bad header");
      header = true;
      continue;
    }
    std::array<std::string_view, 3> cols;
    std::size_t start = 0;
    for (int c = 0; c < 3; ++c) {
      const auto comma = trimmed.find(',', start);
      if ((c < 2) == (comma == std::string_view::npos)) {
        Fail(ErrorKind::kParse, where + ": expected 3 columns");
      }
      cols[c] = trimmed.substr(start, c < 2 ? comma - start : std::string_view::npos);
      start = comma + 1;
    }
    ConvergenceRow row;
    row.iteration = ParseInt(cols[0]);
    row.exploitability = ParseDouble(cols[1]);
    row.wall_ms = ParseDouble(cols[2]);
    if (!log.rows.empty() && row.iteration <= log.rows.back().iteration) {
      Fail(ErrorKind::kParse, where + ": iterations must increase");
    }
    log.rows.push_back(row);
  }
  if (!header) Fail(ErrorKind::kParse, "missing CSV header");
  return log;
}

namespace {

ProxSetup Setup(double eta, Regularizer reg) { return {eta, reg}; }

class RegretLearner final : public PlayerLearner {
 public:
  RegretLearner(std::size_t dim, RegretMatcherMode mode, double beta,
                RestartInterval k)
      : state_(dim, mode, beta, k), current_(SimplexStrategy::Uniform(dim)) {}
  std::span<const double> strategy() const override { return current_.probs(); }
  void Observe(std::span<const double> loss) override {
    current_ = regret_matcher_step(state_, loss, current_);
  }

 private:
  RegretMatcherState state_;
  SimplexStrategy current_;
};

class ProxLearner final : public PlayerLearner {
 public:
  ProxLearner(std::size_t dim, ProxSetup setup)
      : setup_(setup), current_(SimplexStrategy::Uniform(dim)) {}
  std::span<const double> strategy() const override { return current_.probs(); }
  void Observe(std::span<const double> loss) override {
    current_ = local_prox(current_, loss, setup_);
  }

 private:
  ProxSetup setup_;
  SimplexStrategy current_;
};

class MomentumLearner final : public PlayerLearner {
 public:
  MomentumLearner(std::size_t dim, ProxSetup setup, double beta,
                  RestartInterval k)
      : setup_(setup), momentum_(beta, k),
        current_(SimplexStrategy::Uniform(dim)) {}
  std::span<const double> strategy() const override { return current_.probs(); }
  void Observe(std::span<const double> loss) override {
    current_ = momd_step(current_, ram_momentum_update(momentum_, loss), setup_);
  }

 private:
  ProxSetup setup_;
  MomentumState momentum_;
  SimplexStrategy current_;
};

class FtrlLearner final : public PlayerLearner {
 public:
  FtrlLearner(std::size_t dim, ProxSetup setup, double beta, RestartInterval k)
      : setup_(setup), state_(beta, k),
        current_(SimplexStrategy::Uniform(dim)) {}
  std::span<const double> strategy() const override { return current_.probs(); }
  void Observe(std::span<const double> loss) override {
    current_ = moftrl_step(attachment_loss_update(state_, loss), setup_);
  }

 private:
  ProxSetup setup_;
  CumulativeLossState state_;
  SimplexStrategy current_;
};

class OptimisticLearner final : public PlayerLearner {
 public:
  OptimisticLearner(std::size_t dim, ProxSetup setup)
      : setup_(setup), state_(SimplexStrategy::Uniform(dim)) {}
  std::span<const double> strategy() const override {
    return state_.current().probs();
  }
  void Observe(std::span<const double> loss) override {
    optimistic_step(state_, loss, setup_);
  }

 private:
  ProxSetup setup_;
  OptimisticState state_;
};

class CfrLearner final : public PlayerLearner {
 public:
  CfrLearner(const Treeplex& t, CfrVariant variant, double beta,
             RestartInterval k)
      : t_(t), bank_(t, variant, beta, k) {}
  std::span<const double> strategy() const override { return bank_.sequence(); }
  void Observe(std::span<const double> loss) override {
    cfr_iteration(bank_, t_, loss);
  }

 private:
  const Treeplex& t_;
  LocalRegretBank bank_;
};

enum class DilatedKind { kPlain, kMomentum, kOptimistic };

class DilatedLearner final : public PlayerLearner {
 public:
  DilatedLearner(const Treeplex& t, DilatedKind kind, Regularizer reg,
                 double eta, double beta, RestartInterval k)
      : t_(t), kind_(kind), dgf_{reg}, eta_(eta), momentum_(beta, k),
        behavior_(flat_behavior(t, uniform_behavior(t))),
        next_(behavior_.size()), sequence_(behavior_.size()),
        gradient_(behavior_.size()), prev_loss_(behavior_.size(), 0.0) {
    flat_behavior_to_sequence(t_, behavior_, sequence_);
  }
  std::span<const double> strategy() const override { return sequence_; }
  void Observe(std::span<const double> loss) override {
    CheckDimension(loss.size(), sequence_.size(), "treeplex loss");
    switch (kind_) {
      case DilatedKind::kPlain:
        gradient_.assign(loss.begin(), loss.end());
        break;
      case DilatedKind::kMomentum: {
        const auto mu = ram_momentum_update(momentum_, loss);
        for (std::size_t s = 0; s < mu.size(); ++s) gradient_[s] = -mu[s];
        break;
      }
      case DilatedKind::kOptimistic:
        for (std::size_t s = 0; s < loss.size(); ++s) {
          gradient_[s] = 2.0 * loss[s] - prev_loss_[s];
        }
        prev_loss_.assign(loss.begin(), loss.end());
        break;
    }
    dilated_prox_behavior(t_, behavior_, gradient_, eta_, dgf_, next_);
    std::swap(behavior_, next_);
    flat_behavior_to_sequence(t_, behavior_, sequence_);
  }

 private:
  const Treeplex& t_;
  DilatedKind kind_;
  DilatedDgf dgf_;
  double eta_;
  MomentumState momentum_;
  std::vector<double> behavior_;
  std::vector<double> next_;
  std::vector<double> sequence_;
  std::vector<double> gradient_;
  std::vector<double> prev_loss_;
};

void CheckConfig(const SolveConfig& c) {
  if (c.iterations <= 0) Fail(ErrorKind::kConfig, "iterations must be positive");
  if (UsesStepSize(c.algorithm) && !(c.eta > 0.0)) {
    Fail(ErrorKind::kConfig, "eta must be positive for " + AlgorithmName(c.algorithm));
  }
  if (c.eval_every && *c.eval_every <= 0) {
    Fail(ErrorKind::kConfig, "eval_every must be positive");
  }
}

}  // namespace

std::unique_ptr<PlayerLearner> make_simplex_learner(Algorithm algorithm,
                                                    std::size_t dim,
                                                    const SolveConfig& c) {
  const auto ent = Regularizer::kNegativeEntropy;
  const auto l2 = Regularizer::kHalfSquaredL2;
  switch (algorithm) {
    case Algorithm::kRM:
      return std::make_unique<RegretLearner>(dim, RegretMatcherMode::kRM, 0.0, c.k);
    case Algorithm::kRMPlus:
      return std::make_unique<RegretLearner>(dim, RegretMatcherMode::kRMPlus, 0.0, c.k);
    case Algorithm::kMoRMPlus:
      return std::make_unique<RegretLearner>(dim, RegretMatcherMode::kMoRMPlus, c.beta, c.k);
    case Algorithm::kMWU:
      return std::make_unique<ProxLearner>(dim, Setup(c.eta, ent));
    case Algorithm::kGDA:
      return std::make_unique<ProxLearner>(dim, Setup(c.eta, l2));
    case Algorithm::kMoMWU:
      return std::make_unique<MomentumLearner>(dim, Setup(c.eta, ent), c.beta, c.k);
    case Algorithm::kMoGDA:
      return std::make_unique<MomentumLearner>(dim, Setup(c.eta, l2), c.beta, c.k);
    case Algorithm::kMoFTRLEntropy:
      return std::make_unique<FtrlLearner>(dim, Setup(c.eta, ent), c.beta, c.k);
    case Algorithm::kMoFTRLL2:
      return std::make_unique<FtrlLearner>(dim, Setup(c.eta, l2), c.beta, c.k);
    case Algorithm::kOMWU:
      return std::make_unique<OptimisticLearner>(dim, Setup(c.eta, ent));
    case Algorithm::kOGDA:
      return std::make_unique<OptimisticLearner>(dim, Setup(c.eta, l2));
    default:
      Fail(ErrorKind::kConfig, AlgorithmName(algorithm) +
                                   " runs on treeplexes; wrap the matrix game first");
  }
}

std::unique_ptr<PlayerLearner> make_treeplex_learner(Algorithm algorithm,
                                                     const Treeplex& t,
                                                     const SolveConfig& c) {
  const auto ent = Regularizer::kNegativeEntropy;
  const auto l2 = Regularizer::kHalfSquaredL2;
  switch (algorithm) {
    case Algorithm::kCFR:
      return std::make_unique<CfrLearner>(t, CfrVariant::kCFR, 0.0, c.k);
    case Algorithm::kCFRPlus:
      return std::make_unique<CfrLearner>(t, CfrVariant::kCFRPlus, 0.0, c.k);
    case Algorithm::kPCFRPlus:
      return std::make_unique<CfrLearner>(t, CfrVariant::kPCFRPlus, 0.0, c.k);
    case Algorithm::kMoCFRPlus:
      return std::make_unique<CfrLearner>(t, CfrVariant::kMoCFRPlus, c.beta, c.k);
    case Algorithm::kDMWU:
      return std::make_unique<DilatedLearner>(t, DilatedKind::kPlain, ent, c.eta, 0.0, c.k);
    case Algorithm::kDGDA:
      return std::make_unique<DilatedLearner>(t, DilatedKind::kPlain, l2, c.eta, 0.0, c.k);
    case Algorithm::kDMoMWU:
      return std::make_unique<DilatedLearner>(t, DilatedKind::kMomentum, ent, c.eta, c.beta, c.k);
    case Algorithm::kDMoGDA:
      return std::make_unique<DilatedLearner>(t, DilatedKind::kMomentum, l2, c.eta, c.beta, c.k);
    case Algorithm::kDOMWU:
      return std::make_unique<DilatedLearner>(t, DilatedKind::kOptimistic, ent, c.eta, 0.0, c.k);
    case Algorithm::kDOGDA:
      return std::make_unique<DilatedLearner>(t, DilatedKind::kOptimistic, l2, c.eta, 0.0, c.k);
    default:
      Fail(ErrorKind::kConfig, AlgorithmName(algorithm) +
                                   " is a matrix-game learner; use it on a matrix game");
  }
}

namespace {

std::vector<std::pair<std::string, std::string>> Describe(
    const SolveConfig& c, const std::string& game, bool alternating,
    AveragingScheme averaging, std::int64_t eval_every) {
  const bool momentum = UsesMomentum(c.algorithm);
  return {
      {"game", game},
      {"algorithm", AlgorithmName(c.algorithm)},
      {"eta", UsesStepSize(c.algorithm) ? FormatDouble(c.eta) : "ignored"},
      {"beta", momentum ? FormatDouble(c.beta) : "ignored"},
      {"k", momentum ? c.k.ToString() : "ignored"},
      {"iterations", std::to_string(c.iterations)},
      {"alternating", alternating ? "true" : "false"},
      {"averaging", AveragingName(averaging)},
      {"eval_every", std::to_string(eval_every)},
      {"seed", std::to_string(c.seed)},
  };
}

template <class LossX, class LossY, class Exploit>
ConvergenceLog Loop(PlayerLearner& x, PlayerLearner& y, const SolveConfig& c,
                    const std::string& game, std::int64_t default_eval,
                    LossX loss_x, LossY loss_y, Exploit exploitability) {
  const bool alternating = c.alternating.value_or(DefaultAlternating(c.algorithm));
  const auto averaging = c.averaging.value_or(DefaultAveraging(c.algorithm));
  const std::int64_t eval_every = c.eval_every.value_or(default_eval);
  ConvergenceLog log;
  log.metadata = Describe(c, game, alternating, averaging, eval_every);
  RunningAverage avg_x(averaging), avg_y(averaging);
  const auto start = std::chrono::steady_clock::now();
  std::vector<double> lx, ly;
  for (std::int64_t t = 1; t <= c.iterations; ++t) {
    if (alternating) {
      loss_x(y.strategy(), lx);
      x.Observe(lx);
      loss_y(x.strategy(), ly);
      y.Observe(ly);
    } else {
      loss_x(y.strategy(), lx);
      loss_y(x.strategy(), ly);
      x.Observe(lx);
      y.Observe(ly);
    }
    avg_x.Add(x.strategy());
    avg_y.Add(y.strategy());
    if (t % eval_every == 0) {
      ConvergenceRow row;
      row.iteration = t;
      row.exploitability = exploitability(avg_x.value(), avg_y.value());
      row.wall_ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - start)
                        .count();
      log.rows.push_back(row);
    }
  }
  log.final_x.assign(avg_x.value().begin(), avg_x.value().end());
  log.final_y.assign(avg_y.value().begin(), avg_y.value().end());
  return log;
}

}  // namespace

ConvergenceLog run_solver(const MatrixGame& game, const SolveConfig& config) {
  CheckConfig(config);
  if (IsTreeplexAlgorithm(config.algorithm)) {
    Fail(ErrorKind::kConfig, AlgorithmName(config.algorithm) +
                                 " needs an extensive-form game; wrap the matrix game first");
  }
  auto x = make_simplex_learner(config.algorithm, game.rows(), config);
  auto y = make_simplex_learner(config.algorithm, game.cols(), config);
  auto loss_x = [&](std::span<const double> ys, std::vector<double>& out) {
    out = game.RowLoss(ys);
  };
  auto loss_y = [&](std::span<const double> xs, std::vector<double>& out) {
    out = game.ColGain(xs);
    for (double& v : out) v = -v;
  };
  auto exploit = [&](std::span<const double> xs, std::span<const double> ys) {
    return duality_gap(game, SimplexStrategy(std::vector<double>(xs.begin(), xs.end())),
                       SimplexStrategy(std::vector<double>(ys.begin(), ys.end())));
  };
  return Loop(*x, *y, config, config.game.empty() ? "matrix" : config.game, 1,
              loss_x, loss_y, exploit);
}

ConvergenceLog run_solver(const EfgBundle& game, const SolveConfig& config) {
  CheckConfig(config);
  if (!IsTreeplexAlgorithm(config.algorithm)) {
    Fail(ErrorKind::kConfig, AlgorithmName(config.algorithm) +
                                 " is a matrix-game learner and cannot run on " +
                                 game.name);
  }
  auto x = make_treeplex_learner(config.algorithm, game.treeplex_x, config);
  auto y = make_treeplex_learner(config.algorithm, game.treeplex_y, config);
  auto loss_x = [&](std::span<const double> ys, std::vector<double>& out) {
    out.resize(game.treeplex_x.seq_count());
    game.payoff.LossX(ys, out);
  };
  auto loss_y = [&](std::span<const double> xs, std::vector<double>& out) {
    out.resize(game.treeplex_y.seq_count());
    game.payoff.GainY(xs, out);
    for (double& v : out) v = -v;
  };
  auto exploit = [&](std::span<const double> xs, std::span<const double> ys) {
    return efg_exploitability(game.payoff, game.treeplex_x, game.treeplex_y, xs, ys);
  };
  return Loop(*x, *y, config, config.game.empty() ? game.name : config.game, 10,
              loss_x, loss_y, exploit);
}

ConvergenceLog run_solver(const AnyGame& game, const SolveConfig& config) {
  return std::visit([&](const auto& g) { return run_solver(g, config); }, game);
}

}  // namespace nmsolve
