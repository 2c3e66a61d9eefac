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

#include "nmsolve/simplex_learners.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "nmsolve/error.h"

namespace nmsolve {
namespace {

void CheckFinite(std::span<const double> v, const char* what) {
  if (v.empty()) Fail(ErrorKind::kInvalidInput, std::string(what) + " is empty");
  for (double x : v) {
    if (!std::isfinite(x)) {
      Fail(ErrorKind::kInvalidInput, std::string(what) + " is not finite");
    }
  }
}

void CheckSetup(const ProxSetup& setup) {
  if (!(setup.eta > 0.0) || !std::isfinite(setup.eta)) {
    Fail(ErrorKind::kInvalidInput, "eta must be positive");
  }
}

}  // namespace

SimplexStrategy project_simplex(std::span<const double> v) {
  CheckFinite(v, "projection input");
  std::vector<double> sorted(v.begin(), v.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double cumsum = 0.0;
  double theta = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    cumsum += sorted[i];
    const double candidate = (cumsum - 1.0) / static_cast<double>(i + 1);
    if (sorted[i] - candidate > 0.0) theta = candidate;
  }
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::max(v[i] - theta, 0.0);
  return SimplexStrategy::FromWeights(out);
}

SimplexStrategy softmax(std::span<const double> v) {
  CheckFinite(v, "softmax input");
  const double m = *std::max_element(v.begin(), v.end());
  std::vector<double> w(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) w[i] = std::exp(v[i] - m);
  return SimplexStrategy::FromWeights(w);
}

SimplexStrategy local_prox(const SimplexStrategy& z, std::span<const double> g,
                           const ProxSetup& setup) {
  CheckDimension(g.size(), z.size(), "prox gradient");
  CheckSetup(setup);
  if (setup.regularizer == Regularizer::kHalfSquaredL2) {
    std::vector<double> v(z.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = z[i] - setup.eta * g[i];
    return project_simplex(v);
  }
  // Work in log space so that large accumulated gradients do not overflow.
  std::vector<double> a(z.size(), -std::numeric_limits<double>::infinity());
  double m = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (z[i] > 0.0) {
      a[i] = std::log(z[i]) - setup.eta * g[i];
      m = std::max(m, a[i]);
    }
  }
  std::vector<double> w(a.size(), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (z[i] > 0.0) w[i] = std::exp(a[i] - m);
  }
  return SimplexStrategy::FromWeights(w);
}

SimplexStrategy momd_step(const SimplexStrategy& z,
                          std::span<const double> momentum,
                          const ProxSetup& setup) {
  std::vector<double> g(momentum.size());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = -momentum[i];
  return local_prox(z, g, setup);
}

SimplexStrategy moftrl_step(std::span<const double> cumulative_loss,
                            const ProxSetup& setup) {
  CheckSetup(setup);
  std::vector<double> v(cumulative_loss.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = -setup.eta * cumulative_loss[i];
  if (setup.regularizer == Regularizer::kHalfSquaredL2) return project_simplex(v);
  return softmax(v);
}

SimplexStrategy positive_part_strategy(std::span<const double> v) {
  std::vector<double> w(v.size());
  double total = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    w[i] = std::max(v[i], 0.0);
    total += w[i];
  }
  if (!(total > 0.0)) return SimplexStrategy::Uniform(v.size());
  for (double& x : w) x /= total;
  return SimplexStrategy(std::move(w));
}

RegretMatcherState::RegretMatcherState(std::size_t dim, RegretMatcherMode mode,
                                       double beta, RestartInterval k)
    : mode_(mode),
      beta_(beta),
      k_(k),
      r_(dim, 0.0),
      r_prev_(dim, 0.0),
      r_att_(dim, 0.0) {
  if (dim == 0) Fail(ErrorKind::kInvalidInput, "regret matcher needs actions");
}

SimplexStrategy RegretMatcherState::Strategy() const {
  return positive_part_strategy(r_);
}

SimplexStrategy regret_matcher_step(RegretMatcherState& state,
                                    std::span<const double> loss,
                                    const SimplexStrategy& current) {
  CheckDimension(loss.size(), state.size(), "regret matcher loss");
  CheckDimension(current.size(), state.size(), "regret matcher strategy");
  const auto r = instantaneous_regret(current.probs(), loss);
  const std::size_t n = state.size();
  std::vector<double> next(n);
  switch (state.mode_) {
    case RegretMatcherMode::kRM:
      for (std::size_t i = 0; i < n; ++i) next[i] = state.r_[i] + r[i];
      break;
    case RegretMatcherMode::kRMPlus:
      for (std::size_t i = 0; i < n; ++i) {
        next[i] = std::max(state.r_[i] + r[i], 0.0);
      }
      break;
    case RegretMatcherMode::kMoRMPlus:
      for (std::size_t i = 0; i < n; ++i) {
        const double pull = state.beta_ * (state.r_att_[i] - state.r_[i]);
        next[i] = std::max(state.r_[i] + r[i] - pull, 0.0);
      }
      // Attachment takes R_{t-1}; at t = 0 that is the zero vector.
      if (state.k_.Triggers(state.t_)) state.r_att_ = state.r_prev_;
      break;
  }
  state.r_prev_ = std::move(state.r_);
  state.r_ = std::move(next);
  ++state.t_;
  return state.Strategy();
}

const SimplexStrategy& optimistic_step(OptimisticState& state,
                                       std::span<const double> loss,
                                       const ProxSetup& setup) {
  CheckDimension(loss.size(), state.current_.size(), "optimistic loss");
  std::vector<double> g(loss.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    g[i] = 2.0 * loss[i] - state.prev_loss_[i];
  }
  state.current_ = local_prox(state.current_, g, setup);
  state.prev_loss_.assign(loss.begin(), loss.end());
  return state.current_;
}

std::string AveragingName(AveragingScheme scheme) {
  switch (scheme) {
    case AveragingScheme::kUniform: return "uniform";
    case AveragingScheme::kLinear: return "linear";
    case AveragingScheme::kQuadratic: return "quadratic";
    case AveragingScheme::kLastIterate: return "last";
  }
  return "last";
}

AveragingScheme ParseAveraging(const std::string& name) {
  if (name == "uniform") return AveragingScheme::kUniform;
  if (name == "linear") return AveragingScheme::kLinear;
  if (name == "quadratic") return AveragingScheme::kQuadratic;
  if (name == "last" || name == "last-iterate") {
    return AveragingScheme::kLastIterate;
  }
  Fail(ErrorKind::kConfig, "unknown averaging scheme '" + name + "'");
}

double AveragingWeight(AveragingScheme scheme, std::int64_t t) {
  const auto d = static_cast<double>(t);
  switch (scheme) {
    case AveragingScheme::kUniform: return 1.0;
    case AveragingScheme::kLinear: return d;
    case AveragingScheme::kQuadratic: return d * d;
    case AveragingScheme::kLastIterate: return 1.0;
  }
  return 1.0;
}

SimplexStrategy averaged_strategy(std::span<const SimplexStrategy> history,
                                  AveragingScheme scheme) {
  if (history.empty()) Fail(ErrorKind::kEmptyHistory, "no iterates to average");
  if (scheme == AveragingScheme::kLastIterate) return history.back();
  const std::size_t n = history.front().size();
  std::vector<double> sum(n, 0.0);
  for (std::size_t t = 0; t < history.size(); ++t) {
    CheckDimension(history[t].size(), n, "averaged iterate");
    const double w = AveragingWeight(scheme, static_cast<std::int64_t>(t + 1));
    for (std::size_t i = 0; i < n; ++i) sum[i] += w * history[t][i];
  }
  return SimplexStrategy::FromWeights(sum);
}

void RunningAverage::Add(std::span<const double> value) {
  ++count_;
  if (mean_.empty()) mean_.assign(value.size(), 0.0);
  CheckDimension(value.size(), mean_.size(), "averaged iterate");
  if (scheme_ == AveragingScheme::kLastIterate) {
    std::copy(value.begin(), value.end(), mean_.begin());
    return;
  }
  const double w = AveragingWeight(scheme_, count_);
  total_weight_ += w;
  const double step = w / total_weight_;
  for (std::size_t i = 0; i < mean_.size(); ++i) {
    mean_[i] += step * (value[i] - mean_[i]);
  }
}

}  // namespace nmsolve
