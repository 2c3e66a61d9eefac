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

#ifndef NMSOLVE_NFG_H_
#define NMSOLVE_NFG_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace nmsolve {

// Default tolerances: exact linear-algebra identities vs. results of
// iterative procedures.
struct Tolerances {
  double exact = 1e-12;
  double iterative = 1e-9;
};

// A point of the probability simplex. Construction validates and
// renormalizes, so every instance sums to one up to rounding.
class SimplexStrategy {
 public:
  SimplexStrategy() = default;
  // Entries must be finite, nonnegative and sum to 1 within `tol`.
  explicit SimplexStrategy(std::vector<double> probs, double tol = 1e-9);

  static SimplexStrategy Uniform(std::size_t dim);
  // Normalizes any nonnegative vector with a positive sum.
  static SimplexStrategy FromWeights(std::span<const double> weights);
  static SimplexStrategy Vertex(std::size_t dim, std::size_t index);

  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  std::span<const double> probs() const { return probs_; }
  auto begin() const { return probs_.begin(); }
  auto end() const { return probs_.end(); }

  friend bool operator==(const SimplexStrategy&,
                         const SimplexStrategy&) = default;

 private:
  std::vector<double> probs_;
};

// Payoff matrix of  min_x max_y  x^T G y  (x is the row player and minimizes).
class MatrixGame {
 public:
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool normalized() const { return normalized_; }
  // max |entry| of the matrix as supplied, before normalization.
  double scale() const { return scale_; }
  double at(std::size_t i, std::size_t j) const { return g_[i * cols_ + j]; }
  std::span<const double> entries() const { return g_; }

  // f = G y
  std::vector<double> RowLoss(std::span<const double> y) const;
  // g = G^T x
  std::vector<double> ColGain(std::span<const double> x) const;

  friend MatrixGame make_matrix_game(std::size_t rows, std::size_t cols,
                                     std::vector<double> row_major,
                                     bool normalize);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> g_;
  bool normalized_ = false;
  double scale_ = 0.0;
};

MatrixGame make_matrix_game(std::size_t rows, std::size_t cols,
                            std::vector<double> row_major, bool normalize);
MatrixGame make_matrix_game(const std::vector<std::vector<double>>& entries,
                            bool normalize);

struct JointLoss {
  std::vector<double> f;  // G y, loss of the row player
  std::vector<double> g;  // G^T x, gain of the column player
};

JointLoss joint_loss(const MatrixGame& game, const SimplexStrategy& x,
                     const SimplexStrategy& y);

// max_{y'} x^T G y' - min_{x'} x'^T G y, by vertex enumeration.
double duality_gap(const MatrixGame& game, const SimplexStrategy& x,
                   const SimplexStrategy& y);

// <x, l> 1 - l
std::vector<double> instantaneous_regret(std::span<const double> strategy,
                                         std::span<const double> loss);

class RegretLedger {
 public:
  void Append(std::vector<double> loss, SimplexStrategy play);
  std::size_t length() const { return losses_.size(); }
  const std::vector<std::vector<double>>& losses() const { return losses_; }
  const std::vector<SimplexStrategy>& plays() const { return plays_; }

 private:
  std::vector<std::vector<double>> losses_;
  std::vector<SimplexStrategy> plays_;
};

// sum_t <l_t, x_t> - min over vertices e of sum_t <l_t, e>.
double external_regret(const RegretLedger& ledger);

// i.i.d. standard Gaussian entries drawn row-major from Xoshiro256(seed),
// then divided by the largest magnitude.
MatrixGame random_nfg(std::uint64_t seed, std::size_t rows, std::size_t cols);

// Row-major CSV with a "# matrix M N" header line.
std::string matrix_to_csv(const MatrixGame& game);
MatrixGame matrix_from_csv(const std::string& text, bool normalize);

double Dot(std::span<const double> a, std::span<const double> b);

}  // namespace nmsolve

#endif  // NMSOLVE_NFG_H_
