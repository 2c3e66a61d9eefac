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

#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "nmsolve/error.h"
#include "nmsolve/games.h"
#include "nmsolve/solver.h"

namespace nmsolve {
namespace {

MatrixGame Rps() { return std::get<MatrixGame>(game_by_name("rps", false, 0)); }

MatrixGame ThreeByThree() {
  return std::get<MatrixGame>(game_by_name("matrix-3x3", true, 0));
}

ErrorKind KindOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::kParse;
}

TEST_CASE("algorithm names round trip") {
  for (auto a : AllAlgorithms()) CHECK(ParseAlgorithm(AlgorithmName(a)) == a);
  CHECK(KindOf([] { ParseAlgorithm("sgd"); }) == ErrorKind::kConfig);
  CHECK(DefaultAveraging(Algorithm::kRM) == AveragingScheme::kUniform);
  CHECK(DefaultAveraging(Algorithm::kRMPlus) == AveragingScheme::kLinear);
  CHECK(DefaultAveraging(Algorithm::kPCFRPlus) == AveragingScheme::kQuadratic);
  CHECK(DefaultAveraging(Algorithm::kMoCFRPlus) == AveragingScheme::kLastIterate);
  CHECK(DefaultAlternating(Algorithm::kCFRPlus));
  CHECK_FALSE(DefaultAlternating(Algorithm::kDMoGDA));
}

TEST_CASE("uniform is a fixed point on rock paper scissors") {
  const auto rps = Rps();
  const auto wrapped = wrap_matrix_game(rps, "rps");
  for (auto a : AllAlgorithms()) {
    SolveConfig c;
    c.algorithm = a;
    c.beta = -0.3;
    c.k = RestartInterval::Every(4);
    c.iterations = 40;
    c.eval_every = 1;
    const auto log = IsTreeplexAlgorithm(a) ? run_solver(wrapped, c) : run_solver(rps, c);
    REQUIRE(log.rows.size() == 40);
    for (const auto& row : log.rows) CHECK(row.exploitability == 0.0);
  }
}

TEST_CASE("config validation") {
  SolveConfig c;
  c.algorithm = Algorithm::kDMoMWU;
  CHECK(KindOf([&] { run_solver(Rps(), c); }) == ErrorKind::kConfig);
  c.algorithm = Algorithm::kMoMWU;
  CHECK(KindOf([&] { run_solver(kuhn_poker(), c); }) == ErrorKind::kConfig);
  c.eta = 0.0;
  CHECK(KindOf([&] { run_solver(Rps(), c); }) == ErrorKind::kConfig);
  c.eta = 1.0;
  c.iterations = 0;
  CHECK(KindOf([&] { run_solver(Rps(), c); }) == ErrorKind::kConfig);
  c.iterations = 10;
  c.eval_every = 0;
  CHECK(KindOf([&] { run_solver(Rps(), c); }) == ErrorKind::kConfig);
  // Regret matching has no step size, so eta is not checked.
  SolveConfig rm;
  rm.algorithm = Algorithm::kRMPlus;
  rm.eta = -1.0;
  CHECK_NOTHROW(run_solver(Rps(), rm));
}

TEST_CASE("log rows, metadata and csv") {
  SolveConfig c;
  c.algorithm = Algorithm::kRMPlus;
  c.iterations = 10;
  const auto log = run_solver(ThreeByThree(), c);
  CHECK(log.rows.size() == 10);
  CHECK(log.Metadata("algorithm") == "rm+");
  CHECK(log.Metadata("beta") == "ignored");
  CHECK(log.Metadata("k") == "ignored");
  CHECK(log.Metadata("eta") == "ignored");
  CHECK(log.Metadata("alternating") == "true");
  CHECK(log.Metadata("averaging") == "linear");
  CHECK(log.Metadata("game") == "matrix");

  const std::string csv = log.ToCsv();
  CHECK(csv.find("# algorithm: rm+\n") != std::string::npos);
  CHECK(csv.find(std::string(kCsvHeader) + "\n") != std::string::npos);
  const auto back = parse_convergence_csv(csv);
  CHECK(back.metadata == log.metadata);
  REQUIRE(back.rows.size() == log.rows.size());
  for (std::size_t i = 0; i < log.rows.size(); ++i) {
    CHECK(back.rows[i].iteration == log.rows[i].iteration);
    CHECK(back.rows[i].exploitability == log.rows[i].exploitability);
    CHECK(back.rows[i].wall_ms == log.rows[i].wall_ms);
  }

  SolveConfig m;
  m.algorithm = Algorithm::kMoMWU;
  m.beta = -0.06;
  m.k = RestartInterval::Every(50);
  m.iterations = 20;
  m.eval_every = 5;
  m.game = "matrix-3x3";
  const auto mlog = run_solver(ThreeByThree(), m);
  CHECK(mlog.rows.size() == 4);
  CHECK(mlog.Metadata("k") == "50");
  CHECK(mlog.Metadata("beta") == "-0.059999999999999998");
  CHECK(mlog.Metadata("game") == "matrix-3x3");

  CHECK(KindOf([] { parse_convergence_csv("iteration,exploit\n"); }) == ErrorKind::kParse);
  CHECK(KindOf([] {
          parse_convergence_csv(std::string(kCsvHeader) + "\n2,0.1,1\n1,0.1,2\n");
        }) == ErrorKind::kParse);
  CHECK(KindOf([] { parse_convergence_csv(std::string(kCsvHeader) + "\n1,0.1\n"); }) ==
        ErrorKind::kParse);
}

TEST_CASE("extensive-form logs default to every tenth iteration") {
  SolveConfig c;
  c.algorithm = Algorithm::kCFRPlus;
  c.iterations = 100;
  const auto log = run_solver(kuhn_poker(), c);
  CHECK(log.rows.size() == 10);
  CHECK(log.rows.front().iteration == 10);
  CHECK(log.Metadata("game") == "kuhn");
}

TEST_CASE("runs are deterministic") {
  for (auto a : {Algorithm::kMoRMPlus, Algorithm::kMoMWU, Algorithm::kOGDA,
                 Algorithm::kMoFTRLL2}) {
    SolveConfig c;
    c.algorithm = a;
    c.eta = 0.5;
    c.beta = -0.05;
    c.k = RestartInterval::Every(7);
    c.iterations = 300;
    const auto g = random_nfg(5, 8, 9);
    CHECK(run_solver(g, c).NumericColumns() == run_solver(g, c).NumericColumns());
  }
  SolveConfig c;
  c.algorithm = Algorithm::kDMoGDA;
  c.eta = 0.5;
  c.beta = -0.05;
  c.k = RestartInterval::Every(7);
  c.iterations = 200;
  const auto g = leduc_poker();
  CHECK(run_solver(g, c).NumericColumns() == run_solver(g, c).NumericColumns());
}

void CheckSameTrajectory(const AnyGame& game, SolveConfig base, Algorithm plain) {
  base.beta = 0.0;
  base.iterations = 100;
  base.eval_every = 1;
  base.averaging = AveragingScheme::kLastIterate;
  SolveConfig other = base;
  other.algorithm = plain;
  other.alternating = base.alternating;
  const auto a = run_solver(game, base);
  const auto b = run_solver(game, other);
  CHECK(a.NumericColumns() == b.NumericColumns());
  CHECK(a.final_x == b.final_x);
  CHECK(a.final_y == b.final_y);
}

TEST_CASE("zero momentum reduces to the base learner") {
  const AnyGame m3 = ThreeByThree();
  const AnyGame kuhn = kuhn_poker();
  for (auto k : {RestartInterval::Every(3), RestartInterval::Infinite()}) {
    SolveConfig c;
    c.k = k;
    c.alternating = true;
    c.algorithm = Algorithm::kMoRMPlus;
    CheckSameTrajectory(m3, c, Algorithm::kRMPlus);
    c.alternating = false;
    c.eta = 0.3;
    c.algorithm = Algorithm::kMoMWU;
    CheckSameTrajectory(m3, c, Algorithm::kMWU);
    c.algorithm = Algorithm::kMoGDA;
    CheckSameTrajectory(m3, c, Algorithm::kGDA);
    c.algorithm = Algorithm::kDMoGDA;
    CheckSameTrajectory(kuhn, c, Algorithm::kDGDA);
    c.algorithm = Algorithm::kDMoMWU;
    CheckSameTrajectory(kuhn, c, Algorithm::kDMWU);
    c.alternating = true;
    c.algorithm = Algorithm::kMoCFRPlus;
    CheckSameTrajectory(kuhn, c, Algorithm::kCFRPlus);
  }
}

TEST_CASE("wrapped matrix game matches the simplex learners") {
  const auto g = random_nfg(9, 4, 6);
  const auto wrapped = wrap_matrix_game(g, "random");
  const std::pair<Algorithm, Algorithm> pairs[] = {
      {Algorithm::kRMPlus, Algorithm::kCFRPlus},
      {Algorithm::kMoRMPlus, Algorithm::kMoCFRPlus},
      {Algorithm::kMoGDA, Algorithm::kDMoGDA},
      {Algorithm::kMoMWU, Algorithm::kDMoMWU},
      {Algorithm::kOGDA, Algorithm::kDOGDA},
  };
  for (const auto& [flat, tree] : pairs) {
    SolveConfig c;
    c.algorithm = flat;
    c.eta = 0.4;
    c.beta = -0.1;
    c.k = RestartInterval::Every(5);
    c.iterations = 60;
    c.eval_every = 1;
    const auto a = run_solver(g, c);
    c.algorithm = tree;
    const auto b = run_solver(wrapped, c);
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
      CHECK(std::abs(a.rows[i].exploitability - b.rows[i].exploitability) <= 1e-12);
    }
  }
}

TEST_CASE("exploitability never goes below rounding") {
  for (auto a : {Algorithm::kCFR, Algorithm::kPCFRPlus, Algorithm::kDOMWU,
                 Algorithm::kDMoGDA}) {
    SolveConfig c;
    c.algorithm = a;
    c.eta = 0.5;
    c.beta = -0.1;
    c.k = RestartInterval::Every(10);
    c.iterations = 500;
    for (const auto& row : run_solver(kuhn_poker(), c).rows) {
      CHECK(row.exploitability >= -1e-12);
    }
  }
}

// Plain dilated GDA cycles in the last iterate; the windowed means only stay
// monotone over this horizon for eta around 0.01 and below.
TEST_CASE("dilated gda with a small step trends down on kuhn") {
  SolveConfig c;
  c.algorithm = Algorithm::kDMoGDA;
  c.eta = 0.01;
  c.beta = 0.0;
  c.iterations = 1000;
  c.eval_every = 1;
  const auto log = run_solver(normalize_bundle(kuhn_poker()), c);
  double prev = INFINITY;
  for (int w = 0; w < 10; ++w) {
    double mean = 0.0;
    for (int i = 0; i < 100; ++i) mean += log.rows[w * 100 + i].exploitability;
    mean /= 100.0;
    CHECK(mean <= prev);
    prev = mean;
  }
}

TEST_CASE("mocfr+ kuhn preset reaches high accuracy") {
  SolveConfig c;
  c.algorithm = Algorithm::kMoCFRPlus;
  c.beta = -0.2;
  c.k = RestartInterval::Every(5);
  c.iterations = 10000;
  c.eval_every = 100;
  const auto log = run_solver(normalize_bundle(kuhn_poker()), c);
  CHECK(log.rows.back().exploitability <= 1e-8);
}

}  // namespace
}  // namespace nmsolve
