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

#include "nmsolve/nfg.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "nmsolve/error.h"
#include "nmsolve/format.h"
#include "nmsolve/rng.h"

namespace nmsolve {

SimplexStrategy::SimplexStrategy(std::vector<double> probs, double tol)
    : probs_(std::move(probs)) {
  if (probs_.empty()) Fail(ErrorKind::kInvalidInput, "empty strategy");
  double sum = 0.0;
  for (double p : probs_) {
    if (!std::isfinite(p) || p < 0.0) {
      Fail(ErrorKind::kInvalidInput, "strategy entries must be finite and >= 0");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > tol) {
    Fail(ErrorKind::kInvalidInput,
         "strategy sums to " + FormatDouble(sum) + ", not 1");
  }
  for (double& p : probs_) p /= sum;
}

SimplexStrategy SimplexStrategy::Uniform(std::size_t dim) {
  if (dim == 0) Fail(ErrorKind::kInvalidInput, "empty strategy");
  SimplexStrategy s;
  s.probs_.assign(dim, 1.0 / static_cast<double>(dim));
  return s;
}

SimplexStrategy SimplexStrategy::FromWeights(std::span<const double> weights) {
  double sum = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) {
      Fail(ErrorKind::kInvalidInput, "weights must be finite and >= 0");
    }
    sum += w;
  }
  if (weights.empty() || !(sum > 0.0)) {
    Fail(ErrorKind::kInvalidInput, "weights must have a positive sum");
  }
  SimplexStrategy s;
  s.probs_.reserve(weights.size());
  for (double w : weights) s.probs_.push_back(w / sum);
  return s;
}

SimplexStrategy SimplexStrategy::Vertex(std::size_t dim, std::size_t index) {
  if (index >= dim) Fail(ErrorKind::kInvalidInput, "vertex index out of range");
  SimplexStrategy s;
  s.probs_.assign(dim, 0.0);
  s.probs_[index] = 1.0;
  return s;
}

double Dot(std::span<const double> a, std::span<const double> b) {
  CheckDimension(b.size(), a.size(), "dot product");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

std::vector<double> MatrixGame::RowLoss(std::span<const double> y) const {
  CheckDimension(y.size(), cols_, "column strategy");
  std::vector<double> f(rows_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    const double* row = g_.data() + i * cols_;
    double acc = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) acc += row[j] * y[j];
    f[i] = acc;
  }
  return f;
}

std::vector<double> MatrixGame::ColGain(std::span<const double> x) const {
  CheckDimension(x.size(), rows_, "row strategy");
  std::vector<double> g(cols_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    const double* row = g_.data() + i * cols_;
    for (std::size_t j = 0; j < cols_; ++j) g[j] += row[j] * x[i];
  }
  return g;
}

MatrixGame make_matrix_game(std::size_t rows, std::size_t cols,
                            std::vector<double> row_major, bool normalize) {
  if (rows == 0 || cols == 0) Fail(ErrorKind::kInvalidGame, "empty matrix");
  if (row_major.size() != rows * cols) {
    Fail(ErrorKind::kInvalidGame, "entry count does not match M x N");
  }
  double scale = 0.0;
  for (double v : row_major) {
    if (!std::isfinite(v)) Fail(ErrorKind::kInvalidGame, "non-finite entry");
    scale = std::max(scale, std::abs(v));
  }
  MatrixGame game;
  game.rows_ = rows;
  game.cols_ = cols;
  game.scale_ = scale;
  game.normalized_ = normalize;
  if (normalize && scale > 0.0) {
    for (double& v : row_major) v /= scale;
  }
  game.g_ = std::move(row_major);
  return game;
}

MatrixGame make_matrix_game(const std::vector<std::vector<double>>& entries,
                            bool normalize) {
  if (entries.empty() || entries.front().empty()) {
    Fail(ErrorKind::kInvalidGame, "empty matrix");
  }
  const std::size_t cols = entries.front().size();
  std::vector<double> flat;
  flat.reserve(entries.size() * cols);
  for (const auto& row : entries) {
    if (row.size() != cols) Fail(ErrorKind::kInvalidGame, "ragged matrix");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return make_matrix_game(entries.size(), cols, std::move(flat), normalize);
}

JointLoss joint_loss(const MatrixGame& game, const SimplexStrategy& x,
                     const SimplexStrategy& y) {
  CheckDimension(x.size(), game.rows(), "row strategy");
  CheckDimension(y.size(), game.cols(), "column strategy");
  return {game.RowLoss(y.probs()), game.ColGain(x.probs())};
}

double duality_gap(const MatrixGame& game, const SimplexStrategy& x,
                   const SimplexStrategy& y) {
  const JointLoss loss = joint_loss(game, x, y);
  const double best_col = *std::max_element(loss.g.begin(), loss.g.end());
  const double best_row = *std::min_element(loss.f.begin(), loss.f.end());
  return best_col - best_row;
}

std::vector<double> instantaneous_regret(std::span<const double> strategy,
                                         std::span<const double> loss) {
  CheckDimension(loss.size(), strategy.size(), "loss vector");
  const double value = Dot(strategy, loss);
  std::vector<double> r(loss.size());
  for (std::size_t i = 0; i < loss.size(); ++i) r[i] = value - loss[i];
  return r;
}

void RegretLedger::Append(std::vector<double> loss, SimplexStrategy play) {
  CheckDimension(loss.size(), play.size(), "ledger loss");
  if (!losses_.empty()) CheckDimension(loss.size(), losses_.front().size(),
                                       "ledger loss");
  losses_.push_back(std::move(loss));
  plays_.push_back(std::move(play));
}

double external_regret(const RegretLedger& ledger) {
  if (ledger.length() == 0) Fail(ErrorKind::kEmptyHistory, "empty ledger");
  const std::size_t dim = ledger.losses().front().size();
  std::vector<double> cumulative(dim, 0.0);
  double incurred = 0.0;
  for (std::size_t t = 0; t < ledger.length(); ++t) {
    const auto& loss = ledger.losses()[t];
    incurred += Dot(loss, ledger.plays()[t].probs());
    for (std::size_t i = 0; i < dim; ++i) cumulative[i] += loss[i];
  }
  return incurred - *std::min_element(cumulative.begin(), cumulative.end());
}

MatrixGame random_nfg(std::uint64_t seed, std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0) Fail(ErrorKind::kInvalidGame, "empty matrix");
  Xoshiro256 rng(seed);
  std::vector<double> entries(rows * cols);
  for (double& v : entries) v = rng.Gaussian();
  return make_matrix_game(rows, cols, std::move(entries), /*normalize=*/true);
}

std::string matrix_to_csv(const MatrixGame& game) {
  std::string out = "# matrix " + std::to_string(game.rows()) + " " +
                    std::to_string(game.cols()) + "\n";
  for (std::size_t i = 0; i < game.rows(); ++i) {
    for (std::size_t j = 0; j < game.cols(); ++j) {
      if (j > 0) out += ',';
      out += FormatDouble(game.at(i, j));
    }
    out += '\n';
  }
  return out;
}

MatrixGame matrix_from_csv(const std::string& text, bool normalize) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) Fail(ErrorKind::kParse, "missing header");
  std::istringstream header(line);
  std::string hash, tag;
  long long rows = 0, cols = 0;
  if (!(header >> hash >> tag >> rows >> cols) || hash != "#" ||
      tag != "matrix" || rows <= 0 || cols <= 0) {
    Fail(ErrorKind::kParse, "expected '# matrix M N' header");
  }
  std::vector<double> entries;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    std::size_t start = 0;
    std::size_t count = 0;
    while (true) {
      const auto comma = line.find(',', start);
      entries.push_back(ParseDouble(std::string_view(line).substr(
          start, comma == std::string::npos ? std::string::npos
                                            : comma - start)));
      ++count;
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (count != static_cast<std::size_t>(cols)) {
      Fail(ErrorKind::kParse,
           "line " + std::to_string(line_no) + ": expected " +
               std::to_string(cols) + " entries");
    }
  }
  if (entries.size() != static_cast<std::size_t>(rows * cols)) {
    Fail(ErrorKind::kParse, "row count does not match header");
  }
  return make_matrix_game(rows, cols, std::move(entries), normalize);
}

}  // namespace nmsolve
