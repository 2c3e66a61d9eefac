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

#include "nmsolve/treeplex.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nmsolve/error.h"
#include "nmsolve/format.h"

namespace nmsolve {
namespace {

void CheckFlow(const Treeplex& t, std::span<const double> x, double tol) {
  CheckDimension(x.size(), t.seq_count(), "sequence-form vector");
  if (std::abs(x[0] - 1.0) > tol) {
    Fail(ErrorKind::kInvalidSequenceForm, "empty sequence must have mass 1");
  }
  for (double v : x) {
    if (!std::isfinite(v) || v < -tol || v > 1.0 + tol) {
      Fail(ErrorKind::kInvalidSequenceForm, "entries must lie in [0, 1]");
    }
  }
  for (std::size_t j = 0; j < t.num_decision_points(); ++j) {
    double sum = 0.0;
    for (std::size_t a = 0; a < t.actions(j); ++a) sum += x[t.seq(j, a)];
    if (std::abs(sum - x[t.parent_seq(j)]) > tol) {
      Fail(ErrorKind::kInvalidSequenceForm,
           "flow conservation fails at decision point " + std::to_string(j));
    }
  }
}

std::vector<std::string> Lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto t = Trim(line);
    if (!t.empty()) out.emplace_back(t);
  }
  return out;
}

std::vector<std::string> Words(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

std::size_t ParseIndex(std::string_view text) {
  const long long v = ParseInt(text);
  if (v < 0) Fail(ErrorKind::kParse, "negative index '" + std::string(text) + "'");
  return static_cast<std::size_t>(v);
}

}  // namespace

Treeplex validate_treeplex(const std::vector<RawDecisionPoint>& points) {
  const std::size_t n = points.size();
  if (n == 0) Fail(ErrorKind::kMalformedTree, "treeplex has no decision points");
  std::vector<const RawDecisionPoint*> by_id(n, nullptr);
  for (const auto& p : points) {
    if (p.id >= n) {
      Fail(ErrorKind::kMalformedTree,
           "decision point ids must be 0.." + std::to_string(n - 1));
    }
    if (by_id[p.id] != nullptr) {
      Fail(ErrorKind::kPerfectRecallViolation,
           "decision point " + std::to_string(p.id) + " has two parents");
    }
    by_id[p.id] = &p;
  }
  Treeplex t;
  t.actions_.resize(n);
  t.parents_.resize(n);
  t.first_seq_.resize(n);
  t.parent_seq_.resize(n);
  std::size_t next = 1;
  for (std::size_t j = 0; j < n; ++j) {
    const auto& p = *by_id[j];
    if (p.actions == 0) {
      Fail(ErrorKind::kMalformedTree,
           "decision point " + std::to_string(j) + " has no actions");
    }
    t.actions_[j] = p.actions;
    t.parents_[j] = p.parent;
    t.first_seq_[j] = next;
    next += p.actions;
    t.max_actions_ = std::max(t.max_actions_, p.actions);
  }
  t.seq_count_ = next;
  t.seq_owner_.assign(next, 0);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t a = 0; a < t.actions_[j]; ++a) t.seq_owner_[t.seq(j, a)] = j;
  }
  std::vector<std::size_t> counts(next + 1, 0);
  for (std::size_t j = 0; j < n; ++j) {
    if (const auto& par = t.parents_[j]) {
      if (par->decision_point >= n || par->action >= t.actions_[par->decision_point]) {
        Fail(ErrorKind::kMalformedTree,
             "decision point " + std::to_string(j) + " has a dangling parent");
      }
      t.parent_seq_[j] = t.seq(par->decision_point, par->action);
    } else {
      t.parent_seq_[j] = 0;
    }
    ++counts[t.parent_seq_[j] + 1];
  }
  t.child_begin_.assign(next + 1, 0);
  for (std::size_t s = 0; s < next; ++s) {
    t.child_begin_[s + 1] = t.child_begin_[s] + counts[s + 1];
  }
  t.child_list_.assign(n, 0);
  std::vector<std::size_t> fill(t.child_begin_.begin(), t.child_begin_.end() - 1);
  for (std::size_t j = 0; j < n; ++j) t.child_list_[fill[t.parent_seq_[j]]++] = j;

  // Breadth-first from the empty sequence; anything unreached sits on a cycle.
  t.top_down_.reserve(n);
  for (std::size_t j : t.children_of_seq(0)) t.top_down_.push_back(j);
  for (std::size_t head = 0; head < t.top_down_.size(); ++head) {
    const std::size_t j = t.top_down_[head];
    for (std::size_t a = 0; a < t.actions_[j]; ++a) {
      for (std::size_t c : t.children(j, a)) t.top_down_.push_back(c);
    }
  }
  if (t.top_down_.size() != n) {
    Fail(ErrorKind::kMalformedTree, "parent links contain a cycle");
  }
  t.bottom_up_.assign(t.top_down_.rbegin(), t.top_down_.rend());
  return t;
}

std::vector<RawDecisionPoint> raw_decision_points(const Treeplex& t) {
  std::vector<RawDecisionPoint> out(t.num_decision_points());
  for (std::size_t j = 0; j < out.size(); ++j) {
    out[j] = {j, t.parent(j), t.actions(j)};
  }
  return out;
}

std::string treeplex_to_text(const Treeplex& t) {
  std::string out = "# treeplex " + std::to_string(t.num_decision_points()) + "\n";
  for (std::size_t j = 0; j < t.num_decision_points(); ++j) {
    out += "dp " + std::to_string(j) + " ";
    if (auto p = t.parent(j)) {
      out += std::to_string(p->decision_point) + ":" + std::to_string(p->action);
    } else {
      out += "root";
    }
    out += " " + std::to_string(t.actions(j)) + "\n";
  }
  return out;
}

Treeplex treeplex_from_text(const std::string& text) {
  const auto lines = Lines(text);
  if (lines.empty()) Fail(ErrorKind::kParse, "empty treeplex text");
  const auto head = Words(lines[0]);
  if (head.size() != 3 || head[0] != "#" || head[1] != "treeplex") {
    Fail(ErrorKind::kParse, "expected '# treeplex N' header");
  }
  const std::size_t n = ParseIndex(head[2]);
  if (lines.size() != n + 1) {
    Fail(ErrorKind::kParse, "expected " + std::to_string(n) + " decision points");
  }
  std::vector<RawDecisionPoint> raw;
  raw.reserve(n);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto w = Words(lines[i]);
    if (w.size() != 4 || w[0] != "dp") {
      Fail(ErrorKind::kParse, "line " + std::to_string(i + 1) + ": bad decision point");
    }
    RawDecisionPoint p;
    p.id = ParseIndex(w[1]);
    if (w[2] != "root") {
      const auto colon = w[2].find(':');
      if (colon == std::string::npos) {
        Fail(ErrorKind::kParse, "line " + std::to_string(i + 1) + ": bad parent");
      }
      p.parent = ParentRef{ParseIndex(std::string_view(w[2]).substr(0, colon)),
                           ParseIndex(std::string_view(w[2]).substr(colon + 1))};
    }
    p.actions = ParseIndex(w[3]);
    raw.push_back(p);
  }
  return validate_treeplex(raw);
}

SequenceFormStrategy::SequenceFormStrategy(const Treeplex& t,
                                           std::vector<double> values,
                                           double tol)
    : x_(std::move(values)) {
  CheckFlow(t, x_, tol);
}

SequenceFormStrategy SequenceFormStrategy::Trusted(std::vector<double> values) {
  SequenceFormStrategy s;
  s.x_ = std::move(values);
  return s;
}

Behavior uniform_behavior(const Treeplex& t) {
  Behavior b;
  b.reserve(t.num_decision_points());
  for (std::size_t j = 0; j < t.num_decision_points(); ++j) {
    b.push_back(SimplexStrategy::Uniform(t.actions(j)));
  }
  return b;
}

std::vector<double> flat_behavior(const Treeplex& t, const Behavior& behavior) {
  if (behavior.size() != t.num_decision_points()) {
    Fail(ErrorKind::kIncompleteStrategy,
         "behavior covers " + std::to_string(behavior.size()) + " of " +
             std::to_string(t.num_decision_points()) + " decision points");
  }
  std::vector<double> b(t.seq_count(), 0.0);
  b[0] = 1.0;
  for (std::size_t j = 0; j < behavior.size(); ++j) {
    if (behavior[j].size() != t.actions(j)) {
      Fail(ErrorKind::kIncompleteStrategy,
           "behavior at decision point " + std::to_string(j) + " has wrong size");
    }
    for (std::size_t a = 0; a < t.actions(j); ++a) b[t.seq(j, a)] = behavior[j][a];
  }
  return b;
}

void flat_behavior_to_sequence(const Treeplex& t, std::span<const double> b,
                               std::span<double> x) {
  CheckDimension(b.size(), t.seq_count(), "flat behavior");
  CheckDimension(x.size(), t.seq_count(), "sequence-form output");
  x[0] = 1.0;
  for (std::size_t j : t.top_down()) {
    const double reach = x[t.parent_seq(j)];
    const std::size_t first = t.first_seq(j);
    for (std::size_t a = 0; a < t.actions(j); ++a) x[first + a] = reach * b[first + a];
  }
}

void sequence_to_flat_behavior(const Treeplex& t, std::span<const double> x,
                               std::span<double> b) {
  CheckDimension(x.size(), t.seq_count(), "sequence-form vector");
  CheckDimension(b.size(), t.seq_count(), "flat behavior output");
  b[0] = 1.0;
  for (std::size_t j = 0; j < t.num_decision_points(); ++j) {
    const std::size_t first = t.first_seq(j), n = t.actions(j);
    double sum = 0.0;
    for (std::size_t a = 0; a < n; ++a) sum += std::max(x[first + a], 0.0);
    for (std::size_t a = 0; a < n; ++a) {
      b[first + a] = sum > 0.0 ? std::max(x[first + a], 0.0) / sum
                               : 1.0 / static_cast<double>(n);
    }
  }
}

SequenceFormStrategy behavior_to_sequence(const Treeplex& t,
                                          const Behavior& behavior) {
  const auto b = flat_behavior(t, behavior);
  std::vector<double> x(t.seq_count());
  flat_behavior_to_sequence(t, b, x);
  return SequenceFormStrategy::Trusted(std::move(x));
}

Behavior sequence_to_behavior(const Treeplex& t, const SequenceFormStrategy& x) {
  CheckFlow(t, x.values(), 1e-9);
  std::vector<double> b(t.seq_count());
  sequence_to_flat_behavior(t, x.values(), b);
  Behavior out;
  out.reserve(t.num_decision_points());
  for (std::size_t j = 0; j < t.num_decision_points(); ++j) {
    if (x[t.parent_seq(j)] > 0.0) {
      out.push_back(SimplexStrategy::FromWeights(
          std::span<const double>(b).subspan(t.first_seq(j), t.actions(j))));
    } else {
      out.push_back(SimplexStrategy::Uniform(t.actions(j)));
    }
  }
  return out;
}

double counterfactual_values_flat(const Treeplex& t,
                                  std::span<const double> loss,
                                  std::span<const double> behavior,
                                  std::span<double> local_loss,
                                  std::span<double> node_value) {
  CheckDimension(loss.size(), t.seq_count(), "sequence loss");
  CheckDimension(behavior.size(), t.seq_count(), "flat behavior");
  CheckDimension(local_loss.size(), t.seq_count(), "local loss output");
  CheckDimension(node_value.size(), t.num_decision_points(), "node value output");
  for (std::size_t j : t.bottom_up()) {
    const std::size_t first = t.first_seq(j);
    double v = 0.0;
    for (std::size_t a = 0; a < t.actions(j); ++a) {
      const std::size_t s = first + a;
      double l = loss[s];
      for (std::size_t c : t.children_of_seq(s)) l += node_value[c];
      local_loss[s] = l;
      v += behavior[s] * l;
    }
    node_value[j] = v;
  }
  double root = loss[0];
  for (std::size_t j : t.roots()) root += node_value[j];
  local_loss[0] = root;
  return root;
}

CounterfactualValues counterfactual_values(const Treeplex& t,
                                           std::span<const double> loss,
                                           const Behavior& behavior) {
  const auto b = flat_behavior(t, behavior);
  std::vector<double> local(t.seq_count());
  CounterfactualValues out;
  out.value.assign(t.num_decision_points(), 0.0);
  out.root_value = counterfactual_values_flat(t, loss, b, local, out.value);
  out.local_loss.resize(t.num_decision_points());
  for (std::size_t j = 0; j < t.num_decision_points(); ++j) {
    out.local_loss[j].assign(local.begin() + t.first_seq(j),
                             local.begin() + t.first_seq(j) + t.actions(j));
  }
  return out;
}

namespace {

// Fills best[j] and choice[j]; returns the optimal value.
double BestResponseTables(const Treeplex& t, std::span<const double> loss,
                          std::vector<double>& best,
                          std::vector<std::size_t>* choice) {
  CheckDimension(loss.size(), t.seq_count(), "sequence loss");
  best.assign(t.num_decision_points(), 0.0);
  if (choice) choice->assign(t.num_decision_points(), 0);
  for (std::size_t j : t.bottom_up()) {
    double v = 0.0;
    std::size_t arg = 0;
    for (std::size_t a = 0; a < t.actions(j); ++a) {
      const std::size_t s = t.seq(j, a);
      double l = loss[s];
      for (std::size_t c : t.children_of_seq(s)) l += best[c];
      if (a == 0 || l < v) {
        v = l;
        arg = a;
      }
    }
    best[j] = v;
    if (choice) (*choice)[j] = arg;
  }
  double root = loss[0];
  for (std::size_t j : t.roots()) root += best[j];
  return root;
}

}  // namespace

BestResponse best_response(const Treeplex& t, std::span<const double> loss) {
  std::vector<double> best;
  std::vector<std::size_t> choice;
  BestResponse out;
  out.value = BestResponseTables(t, loss, best, &choice);
  std::vector<double> x(t.seq_count(), 0.0);
  x[0] = 1.0;
  for (std::size_t j : t.top_down()) x[t.seq(j, choice[j])] = x[t.parent_seq(j)];
  out.strategy = SequenceFormStrategy::Trusted(std::move(x));
  return out;
}

double best_response_value(const Treeplex& t, std::span<const double> loss) {
  std::vector<double> best;
  return BestResponseTables(t, loss, best, nullptr);
}

SparsePayoff::SparsePayoff(std::size_t x_dim, std::size_t y_dim,
                           std::vector<Entry> entries)
    : x_dim_(x_dim), y_dim_(y_dim) {
  for (const auto& e : entries) {
    if (e.x >= x_dim || e.y >= y_dim) {
      Fail(ErrorKind::kDimension, "payoff entry references a missing sequence");
    }
    if (!std::isfinite(e.value)) Fail(ErrorKind::kInvalidGame, "non-finite payoff");
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return a.x != b.x ? a.x < b.x : a.y < b.y;
  });
  for (const auto& e : entries) {
    if (!entries_.empty() && entries_.back().x == e.x && entries_.back().y == e.y) {
      entries_.back().value += e.value;
    } else {
      entries_.push_back(e);
    }
  }
}

double SparsePayoff::max_abs() const {
  double m = 0.0;
  for (const auto& e : entries_) m = std::max(m, std::abs(e.value));
  return m;
}

void SparsePayoff::LossX(std::span<const double> y, std::span<double> out) const {
  CheckDimension(y.size(), y_dim_, "y strategy");
  CheckDimension(out.size(), x_dim_, "x loss output");
  std::fill(out.begin(), out.end(), 0.0);
  for (const auto& e : entries_) out[e.x] += e.value * y[e.y];
}

std::vector<double> SparsePayoff::LossX(std::span<const double> y) const {
  std::vector<double> out(x_dim_);
  LossX(y, out);
  return out;
}

void SparsePayoff::GainY(std::span<const double> x, std::span<double> out) const {
  CheckDimension(x.size(), x_dim_, "x strategy");
  CheckDimension(out.size(), y_dim_, "y gain output");
  std::fill(out.begin(), out.end(), 0.0);
  for (const auto& e : entries_) out[e.y] += e.value * x[e.x];
}

std::vector<double> SparsePayoff::GainY(std::span<const double> x) const {
  std::vector<double> out(y_dim_);
  GainY(x, out);
  return out;
}

double SparsePayoff::Value(std::span<const double> x,
                           std::span<const double> y) const {
  CheckDimension(x.size(), x_dim_, "x strategy");
  CheckDimension(y.size(), y_dim_, "y strategy");
  double v = 0.0;
  for (const auto& e : entries_) v += x[e.x] * e.value * y[e.y];
  return v;
}

SparsePayoff SparsePayoff::Scaled(double factor) const {
  SparsePayoff p = *this;
  for (auto& e : p.entries_) e.value *= factor;
  return p;
}

SparsePayoff SparsePayoff::Transposed() const {
  std::vector<Entry> entries;
  entries.reserve(entries_.size());
  for (const auto& e : entries_) entries.push_back({e.y, e.x, -e.value});
  return SparsePayoff(y_dim_, x_dim_, std::move(entries));
}

std::string payoff_to_text(const SparsePayoff& p) {
  std::string out = "# payoff " + std::to_string(p.x_dim()) + " " +
                    std::to_string(p.y_dim()) + " " +
                    std::to_string(p.entries().size()) + "\n";
  for (const auto& e : p.entries()) {
    out += std::to_string(e.x) + " " + std::to_string(e.y) + " " +
           FormatDouble(e.value) + "\n";
  }
  return out;
}

SparsePayoff payoff_from_text(const std::string& text) {
  const auto lines = Lines(text);
  if (lines.empty()) Fail(ErrorKind::kParse, "empty payoff text");
  const auto head = Words(lines[0]);
  if (head.size() != 5 || head[0] != "#" || head[1] != "payoff") {
    Fail(ErrorKind::kParse, "expected '# payoff X Y E' header");
  }
  const std::size_t count = ParseIndex(head[4]);
  if (lines.size() != count + 1) {
    Fail(ErrorKind::kParse, "expected " + std::to_string(count) + " payoff entries");
  }
  std::vector<SparsePayoff::Entry> entries;
  entries.reserve(count);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto w = Words(lines[i]);
    if (w.size() != 3) {
      Fail(ErrorKind::kParse, "line " + std::to_string(i + 1) + ": bad payoff entry");
    }
    entries.push_back({ParseIndex(w[0]), ParseIndex(w[1]), ParseDouble(w[2])});
  }
  return SparsePayoff(ParseIndex(head[2]), ParseIndex(head[3]), std::move(entries));
}

double efg_exploitability(const SparsePayoff& payoff, const Treeplex& tx,
                          const Treeplex& ty, std::span<const double> x,
                          std::span<const double> y) {
  CheckDimension(x.size(), tx.seq_count(), "x strategy");
  CheckDimension(y.size(), ty.seq_count(), "y strategy");
  CheckDimension(payoff.x_dim(), tx.seq_count(), "payoff rows");
  CheckDimension(payoff.y_dim(), ty.seq_count(), "payoff columns");
  const auto lx = payoff.LossX(y);
  auto gy = payoff.GainY(x);
  for (double& v : gy) v = -v;
  const double y_best = -best_response_value(ty, gy);
  const double x_best = best_response_value(tx, lx);
  return y_best - x_best;
}

double efg_exploitability(const SparsePayoff& payoff, const Treeplex& tx,
                          const Treeplex& ty, const SequenceFormStrategy& x,
                          const SequenceFormStrategy& y) {
  return efg_exploitability(payoff, tx, ty, x.values(), y.values());
}

}  // namespace nmsolve
