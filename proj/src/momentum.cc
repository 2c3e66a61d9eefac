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

#include "nmsolve/momentum.h"

#include <cmath>

#include "nmsolve/error.h"
#include "nmsolve/format.h"

namespace nmsolve {

RestartInterval RestartInterval::Every(std::int64_t k) {
  if (k <= 0) Fail(ErrorKind::kConfig, "restart interval k must be positive");
  RestartInterval r;
  r.k_ = k;
  return r;
}

std::string RestartInterval::ToString() const {
  return k_ ? std::to_string(*k_) : std::string("inf");
}

RestartInterval RestartInterval::Parse(const std::string& text) {
  const auto t = Trim(text);
  if (t == "inf" || t == "infinite" || t == "infinity") return Infinite();
  return Every(ParseInt(t));
}

std::span<const double> ram_momentum_update(MomentumState& state,
                                            std::span<const double> loss) {
  if (state.t_ == 0 && state.profile_sum_.empty()) {
    state.profile_sum_.assign(loss.size(), 0.0);
    state.last_mu_.assign(loss.size(), 0.0);
  }
  CheckDimension(loss.size(), state.profile_sum_.size(), "momentum loss");
  for (std::size_t i = 0; i < loss.size(); ++i) {
    state.last_mu_[i] = state.beta_ * state.profile_sum_[i] - loss[i];
  }
  if (!state.k_.infinite() &&
      state.profile_length_ == static_cast<std::size_t>(state.k_.value())) {
    std::fill(state.profile_sum_.begin(), state.profile_sum_.end(), 0.0);
    state.profile_length_ = 0;
  }
  for (std::size_t i = 0; i < loss.size(); ++i) {
    state.profile_sum_[i] += state.last_mu_[i];
  }
  ++state.profile_length_;
  ++state.t_;
  return state.last_mu_;
}

std::span<const double> attachment_loss_update(CumulativeLossState& state,
                                               std::span<const double> loss) {
  if (state.t_ == 0 && state.cumulative_.empty()) {
    state.cumulative_.assign(loss.size(), 0.0);
    state.attachment_.assign(loss.size(), 0.0);
  }
  CheckDimension(loss.size(), state.cumulative_.size(), "cumulative loss");
  const bool refresh = state.k_.Triggers(state.t_);
  for (std::size_t i = 0; i < loss.size(); ++i) {
    const double previous = state.cumulative_[i];
    state.cumulative_[i] =
        previous + loss[i] - state.beta_ * (state.attachment_[i] - previous);
    if (refresh) state.attachment_[i] = previous;
  }
  ++state.t_;
  return state.cumulative_;
}

std::vector<double> gdam_step(std::span<const double> z_prev,
                              std::span<const double> z_curr,
                              std::span<const double> loss, double eta,
                              double beta) {
  CheckDimension(z_prev.size(), z_curr.size(), "previous iterate");
  CheckDimension(loss.size(), z_curr.size(), "loss vector");
  if (!(eta > 0.0)) Fail(ErrorKind::kInvalidInput, "eta must be positive");
  std::vector<double> next(z_curr.size());
  for (std::size_t i = 0; i < next.size(); ++i) {
    next[i] = z_curr[i] - eta * loss[i] + beta * (z_curr[i] - z_prev[i]);
  }
  return next;
}

std::vector<std::vector<double>> integrate_friction_ode(
    const VectorField& field, double friction, std::span<const double> z0,
    double horizon, double sample_dt, int substeps) {
  const std::size_t n = z0.size();
  std::vector<double> state(2 * n, 0.0);
  std::copy(z0.begin(), z0.end(), state.begin());
  const auto deriv = [&](const std::vector<double>& s) {
    std::vector<double> d(2 * n);
    const auto force = field(std::span<const double>(s.data(), n));
    for (std::size_t i = 0; i < n; ++i) {
      d[i] = s[n + i];
      d[n + i] = -force[i] - friction * s[n + i];
    }
    return d;
  };
  const double h = sample_dt / substeps;
  const auto samples = static_cast<std::size_t>(std::llround(horizon / sample_dt));
  std::vector<std::vector<double>> out;
  out.reserve(samples + 1);
  out.emplace_back(z0.begin(), z0.end());
  std::vector<double> tmp(2 * n);
  for (std::size_t s = 0; s < samples; ++s) {
    for (int sub = 0; sub < substeps; ++sub) {
      const auto k1 = deriv(state);
      for (std::size_t i = 0; i < 2 * n; ++i) tmp[i] = state[i] + 0.5 * h * k1[i];
      const auto k2 = deriv(tmp);
      for (std::size_t i = 0; i < 2 * n; ++i) tmp[i] = state[i] + 0.5 * h * k2[i];
      const auto k3 = deriv(tmp);
      for (std::size_t i = 0; i < 2 * n; ++i) tmp[i] = state[i] + h * k3[i];
      const auto k4 = deriv(tmp);
      for (std::size_t i = 0; i < 2 * n; ++i) {
        state[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
      }
    }
    out.emplace_back(state.begin(), state.begin() + n);
  }
  return out;
}

std::vector<std::vector<double>> gdam_trajectory(const VectorField& field,
                                                 double friction, double delta,
                                                 std::span<const double> z0,
                                                 double horizon) {
  const double eta = delta * delta;
  const double beta = friction_beta(friction, delta);
  const auto steps = static_cast<std::size_t>(std::llround(horizon / delta));
  std::vector<std::vector<double>> out;
  out.reserve(steps + 1);
  std::vector<double> prev(z0.begin(), z0.end());
  std::vector<double> curr = prev;
  out.push_back(curr);
  for (std::size_t s = 0; s < steps; ++s) {
    auto next = gdam_step(prev, curr, field(curr), eta, beta);
    prev = std::move(curr);
    curr = std::move(next);
    out.push_back(curr);
  }
  return out;
}

}  // namespace nmsolve
