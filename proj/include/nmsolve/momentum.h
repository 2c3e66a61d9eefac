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

#ifndef NMSOLVE_MOMENTUM_H_
#define NMSOLVE_MOMENTUM_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace nmsolve {

// Restart interval k of the aggregated momentum buffer; may be infinite.
class RestartInterval {
 public:
  static RestartInterval Every(std::int64_t k);
  static RestartInterval Infinite() { return RestartInterval(); }

  bool infinite() const { return !k_.has_value(); }
  std::int64_t value() const { return k_.value_or(0); }
  // True when the 0-based iteration t is an attachment/restart iteration.
  bool Triggers(std::int64_t t) const { return k_ && t % *k_ == 0; }

  std::string ToString() const;
  static RestartInterval Parse(const std::string& text);

  friend bool operator==(const RestartInterval&,
                         const RestartInterval&) = default;

 private:
  RestartInterval() = default;
  std::optional<std::int64_t> k_;
};

// Restarting aggregated momentum. Only the aggregate of the snapshot profile
// matters for the update, so the profile is held as (sum, length).
class MomentumState {
 public:
  MomentumState(double beta, RestartInterval k) : beta_(beta), k_(k) {}

  double beta() const { return beta_; }
  RestartInterval k() const { return k_; }
  std::int64_t t() const { return t_; }
  std::size_t profile_length() const { return profile_length_; }
  std::span<const double> profile_sum() const { return profile_sum_; }
  std::span<const double> last_mu() const { return last_mu_; }

 private:
  friend std::span<const double> ram_momentum_update(MomentumState&,
                                                     std::span<const double>);
  double beta_;
  RestartInterval k_;
  std::vector<double> profile_sum_;
  std::size_t profile_length_ = 0;
  std::vector<double> last_mu_;
  std::int64_t t_ = 0;
};

// mu_t = beta * sum(profile) - loss; the profile is cleared when it already
// holds k snapshots, then mu_t is appended.
std::span<const double> ram_momentum_update(MomentumState& state,
                                            std::span<const double> loss);

// Cumulative-loss form of the same recursion:
//   L_t = L_{t-1} + loss - beta (L_att - L_{t-1}),  L_att <- L_{t-1} if t%k==0
// with the attachment refreshed after L_t is formed.
class CumulativeLossState {
 public:
  CumulativeLossState(double beta, RestartInterval k) : beta_(beta), k_(k) {}

  double beta() const { return beta_; }
  RestartInterval k() const { return k_; }
  std::int64_t t() const { return t_; }
  std::span<const double> cumulative() const { return cumulative_; }
  std::span<const double> attachment() const { return attachment_; }

 private:
  friend std::span<const double> attachment_loss_update(
      CumulativeLossState&, std::span<const double>);
  double beta_;
  RestartInterval k_;
  std::vector<double> cumulative_;
  std::vector<double> attachment_;
  std::int64_t t_ = 0;
};

std::span<const double> attachment_loss_update(CumulativeLossState& state,
                                               std::span<const double> loss);

// Unconstrained heavy-ball step z_curr - eta loss + beta (z_curr - z_prev).
std::vector<double> gdam_step(std::span<const double> z_prev,
                              std::span<const double> z_curr,
                              std::span<const double> loss, double eta,
                              double beta);

// Momentum coefficient of the friction discretization, 1 - mu * delta.
inline double friction_beta(double friction, double delta) {
  return 1.0 - friction * delta;
}

using VectorField =
    std::function<std::vector<double>(std::span<const double>)>;

// Classical RK4 integration of  z'' = -F(z) - friction z'  starting at rest
// from z0. Returns the positions at times 0, sample_dt, 2 sample_dt, ...,
// horizon; each sample interval is split into `substeps` RK4 steps.
std::vector<std::vector<double>> integrate_friction_ode(
    const VectorField& field, double friction, std::span<const double> z0,
    double horizon, double sample_dt, int substeps);

// Heavy-ball trajectory with eta = delta^2, beta = 1 - friction * delta,
// z_{-1} = z_0, sampled at every step up to `horizon / delta` steps.
std::vector<std::vector<double>> gdam_trajectory(const VectorField& field,
                                                 double friction, double delta,
                                                 std::span<const double> z0,
                                                 double horizon);

}  // namespace nmsolve

#endif  // NMSOLVE_MOMENTUM_H_
