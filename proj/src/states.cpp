// Copyright 2026 The tsp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tsp/states.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "tsp/events.hpp"

namespace tsp {

State State::exact(std::vector<Rational> values) {
  for (const auto& v : values) {
    if (v < 0 || v > 1) throw InvalidInput("state values must lie in [0,1]");
  }
  State s;
  s.exact_ = true;
  s.rational_ = std::move(values);
  return s;
}

State State::approximate(std::vector<double> values, double tolerance) {
  if (!(tolerance >= 0)) throw InvalidInput("state tolerance must be non-negative");
  for (double v : values) {
    if (!std::isfinite(v) || v < -tolerance || v > 1 + tolerance) {
      throw InvalidInput("state values must lie in [0,1]");
    }
  }
  State s;
  s.exact_ = false;
  s.real_ = std::move(values);
  s.tolerance_ = tolerance;
  return s;
}

double State::value(std::size_t i) const {
  if (exact_) return rational_.at(i).convert_to<double>();
  return real_.at(i);
}

const std::vector<Rational>& State::exact_values() const {
  if (!exact_) throw InvalidInput("state is not exact");
  return rational_;
}

OutcomeSet State::support_of_one() const {
  OutcomeSet out;
  for (std::size_t i = 0; i < size(); ++i) {
    const bool one = exact_ ? rational_[i] == 1 : std::abs(real_[i] - 1.0) <= tolerance_;
    if (one) out.push_back(static_cast<OutcomeIndex>(i));
  }
  return out;
}

std::string format_rational(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

std::string format_state(const TestSpace& ts, const State& state) {
  if (state.size() != ts.outcome_count()) throw InvalidInput("state does not match the test space");
  std::string out = "state";
  char buf[40];
  for (std::size_t i = 0; i < state.size(); ++i) {
    out += ' ';
    out += ts.id(i);
    out += '=';
    if (state.is_exact()) {
      out += format_rational(state.exact_values()[i]);
    } else {
      std::snprintf(buf, sizeof buf, "%.12f", state.value(i));
      out += buf;
    }
  }
  return out;
}

StateCheck verify_state(const TestSpace& ts, const State& state) {
  if (state.size() != ts.outcome_count()) throw InvalidInput("state has no value for some outcome");
  StateCheck out;
  out.valid = true;
  for (std::size_t t = 0; t < ts.test_count(); ++t) {
    double residual = 0.0;
    bool ok = true;
    if (state.is_exact()) {
      Rational sum = 0;
      for (auto x : ts.test(t)) sum += state.exact_values()[x];
      ok = sum == 1;
      residual = abs(Rational(sum - 1)).convert_to<double>();
    } else {
      double sum = 0.0;
      for (auto x : ts.test(t)) sum += state.value(x);
      residual = std::abs(sum - 1.0);
      ok = residual <= state.tolerance();
    }
    if (!ok) out.valid = false;
    if (!out.worst_test || residual > out.worst_residual) {
      out.worst_residual = residual;
      out.worst_test = t;
    }
  }
  return out;
}

Feasibility find_state(const TestSpace& ts) {
  // Phase one of the simplex method with Bland's rule on
  //   A w + s = 1,  w >= 0,  s >= 0,  minimize sum(s)
  // where A is the test/outcome incidence matrix and s are artificial slacks.
  const std::size_t m = ts.test_count();
  const std::size_t n = ts.outcome_count();
  const std::size_t cols = n + m;
  std::vector<std::vector<Rational>> tab(m, std::vector<Rational>(cols + 1));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (auto x : ts.test(i)) tab[i][x] = 1;
    tab[i][n + i] = 1;
    tab[i][cols] = 1;
    basis[i] = n + i;
  }
  auto cost = [&](std::size_t j) { return j >= n ? Rational(1) : Rational(0); };
  std::vector<Rational> reduced(cols);
  for (std::size_t j = 0; j < cols; ++j) {
    reduced[j] = cost(j);
    for (std::size_t i = 0; i < m; ++i) reduced[j] -= cost(basis[i]) * tab[i][j];
  }

  for (;;) {
    std::size_t enter = cols;
    for (std::size_t j = 0; j < cols; ++j) {
      if (reduced[j] < 0) {
        enter = j;
        break;
      }
    }
    if (enter == cols) break;
    std::size_t leave = m;
    Rational best;
    for (std::size_t i = 0; i < m; ++i) {
      if (tab[i][enter] <= 0) continue;
      Rational ratio = tab[i][cols] / tab[i][enter];
      if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    // Phase one is bounded below by zero, so some row always qualifies.
    if (leave == m) throw AxiomViolation("phase one simplex became unbounded");
    const Rational pivot = tab[leave][enter];
    for (auto& v : tab[leave]) v /= pivot;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || tab[i][enter] == 0) continue;
      const Rational f = tab[i][enter];
      for (std::size_t j = 0; j <= cols; ++j) {
        if (tab[leave][j] != 0) tab[i][j] -= f * tab[leave][j];
      }
    }
    const Rational f = reduced[enter];
    for (std::size_t j = 0; j < cols; ++j) {
      if (tab[leave][j] != 0) reduced[j] -= f * tab[leave][j];
    }
    basis[leave] = enter;
  }

  Rational objective = 0;
  for (std::size_t i = 0; i < m; ++i) objective += cost(basis[i]) * tab[i][cols];
  Feasibility out;
  if (objective > 0) {
    std::vector<Rational> z(m);
    for (std::size_t k = 0; k < m; ++k) {
      Rational y = 0;
      for (std::size_t i = 0; i < m; ++i) y += cost(basis[i]) * tab[i][n + k];
      z[k] = -y;
    }
    if (!verify_infeasibility_certificate(ts, z)) throw AxiomViolation("infeasibility certificate failed to verify");
    out.certificate = std::move(z);
    return out;
  }
  std::vector<Rational> w(n);
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < n) w[basis[i]] = tab[i][cols];
  }
  State s = State::exact(std::move(w));
  if (!verify_state(ts, s).valid) throw AxiomViolation("simplex returned an invalid state");
  out.state = std::move(s);
  return out;
}

bool verify_infeasibility_certificate(const TestSpace& ts, const std::vector<Rational>& z) {
  if (z.size() != ts.test_count()) return false;
  Rational total = 0;
  for (const auto& v : z) total += v;
  if (total >= 0) return false;
  for (std::size_t x = 0; x < ts.outcome_count(); ++x) {
    Rational column = 0;
    for (auto t : ts.tests_containing(x)) column += z[t];
    if (column < 0) return false;
  }
  return true;
}

Rational extend_exact(const TestSpace& ts, const State& state, const OutcomeSet& event) {
  if (!is_event(ts, event)) throw InvalidInput(ts.format_set(event) + " is not an event");
  Rational sum = 0;
  for (auto x : event) sum += state.exact_values().at(x);
  return sum;
}

double extend_to_event(const TestSpace& ts, const State& state, const OutcomeSet& event) {
  if (!is_event(ts, event)) throw InvalidInput(ts.format_set(event) + " is not an event");
  if (state.is_exact()) return extend_exact(ts, state, event).convert_to<double>();
  double sum = 0.0;
  for (auto x : event) sum += state.value(x);
  return sum;
}

namespace {

/// Exactly-one-per-test search; the callback returns false to stop.
class DispersionFreeSearch {
 public:
  explicit DispersionFreeSearch(const TestSpace& ts) : ts_(ts), value_(ts.outcome_count(), -1) {}

  bool force(OutcomeIndex x) { return set_one(x); }

  void run(const std::function<bool(const OutcomeSet&)>& found) { descend(found); }

 private:
  bool set_one(OutcomeIndex x) {
    if (value_[x] == 0) return false;
    if (value_[x] == 1) return true;
    value_[x] = 1;
    trail_.push_back(x);
    for (auto t : ts_.tests_containing(x)) {
      for (auto y : ts_.test(t)) {
        if (y == x) continue;
        if (value_[y] == 1) return false;
        if (value_[y] == -1) {
          value_[y] = 0;
          trail_.push_back(y);
        }
      }
    }
    return true;
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      value_[trail_.back()] = -1;
      trail_.pop_back();
    }
  }

  bool descend(const std::function<bool(const OutcomeSet&)>& found) {
    std::size_t best_test = ts_.test_count();
    std::size_t best_free = 0;
    for (std::size_t t = 0; t < ts_.test_count(); ++t) {
      std::size_t free = 0;
      bool satisfied = false;
      for (auto x : ts_.test(t)) {
        if (value_[x] == 1) satisfied = true;
        if (value_[x] == -1) ++free;
      }
      if (satisfied) continue;
      if (free == 0) return true;
      if (best_test == ts_.test_count() || free < best_free) {
        best_test = t;
        best_free = free;
      }
    }
    if (best_test == ts_.test_count()) {
      OutcomeSet support;
      for (std::size_t x = 0; x < value_.size(); ++x) {
        if (value_[x] == 1) support.push_back(static_cast<OutcomeIndex>(x));
      }
      return found(support);
    }
    for (auto x : ts_.test(best_test)) {
      if (value_[x] != -1) continue;
      const std::size_t mark = trail_.size();
      const bool keep_going = !set_one(x) || descend(found);
      undo(mark);
      if (!keep_going) return false;
    }
    return true;
  }

  const TestSpace& ts_;
  std::vector<int> value_;
  std::vector<OutcomeIndex> trail_;
};

void check_cap(const TestSpace& ts, const DispersionFreeOptions& options) {
  if (ts.outcome_count() > options.max_outcomes) {
    throw CapExceeded("dispersion-free search is capped at " + std::to_string(options.max_outcomes) +
                      " outcomes; the space has " + std::to_string(ts.outcome_count()));
  }
}

State indicator(std::size_t n, const OutcomeSet& support) {
  std::vector<Rational> v(n);
  for (auto x : support) v[x] = 1;
  return State::exact(std::move(v));
}

}  // namespace

std::vector<State> dispersion_free_states(const TestSpace& ts, const DispersionFreeOptions& options) {
  check_cap(ts, options);
  std::vector<OutcomeSet> supports;
  DispersionFreeSearch search(ts);
  search.run([&](const OutcomeSet& s) {
    if (supports.size() >= options.max_states) {
      throw CapExceeded("more than " + std::to_string(options.max_states) + " dispersion-free states");
    }
    supports.push_back(s);
    return true;
  });
  std::sort(supports.begin(), supports.end());
  std::vector<State> out;
  out.reserve(supports.size());
  for (const auto& s : supports) out.push_back(indicator(ts.outcome_count(), s));
  return out;
}

UdfResult is_udf(const TestSpace& ts, const DispersionFreeOptions& options) {
  check_cap(ts, options);
  std::vector<bool> covered(ts.outcome_count(), false);
  for (OutcomeIndex x = 0; x < ts.outcome_count(); ++x) {
    if (covered[x]) continue;
    DispersionFreeSearch search(ts);
    bool hit = false;
    if (search.force(x)) {
      search.run([&](const OutcomeSet& s) {
        for (auto y : s) covered[y] = true;
        hit = true;
        return false;
      });
    }
    if (!hit) return {false, x};
  }
  return {true, std::nullopt};
}

DensityMatrix::DensityMatrix(Eigen::MatrixXcd entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() < 1) {
    throw InvalidInput("density matrix must be square and nonempty");
  }
  if ((entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
    throw InvalidInput("density matrix is not Hermitian");
  }
  if (std::abs(entries_.trace() - std::complex<double>(1.0, 0.0)) > 1e-12) {
    throw InvalidInput("density matrix does not have unit trace");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(entries_, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < -1e-12) throw InvalidInput("density matrix is not positive semidefinite");
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dimension) {
  if (dimension < 1) throw InvalidInput("dimension must be positive");
  const auto d = static_cast<Eigen::Index>(dimension);
  return DensityMatrix(Eigen::MatrixXcd::Identity(d, d) / static_cast<double>(dimension));
}

DensityMatrix DensityMatrix::pure(const Eigen::VectorXcd& psi) {
  const double norm = psi.norm();
  if (!(norm > 0)) throw InvalidInput("pure state needs a nonzero vector");
  const Eigen::VectorXcd u = psi / norm;
  Eigen::MatrixXcd w = u * u.adjoint();
  w /= w.trace().real();
  return DensityMatrix((w + w.adjoint()) / 2.0);
}

DensityMatrix DensityMatrix::random(std::size_t dimension, std::mt19937_64& rng) {
  if (dimension < 1) throw InvalidInput("dimension must be positive");
  const auto d = static_cast<Eigen::Index>(dimension);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXcd g(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index i = 0; i < d; ++i) g(i, j) = {normal(rng), normal(rng)};
  }
  Eigen::MatrixXcd w = g * g.adjoint();
  w /= w.trace().real();
  return DensityMatrix((w + w.adjoint()) / 2.0);
}

State gleason_state(const MetricSample& sample, const DensityMatrix& w) {
  if (w.dimension() != sample.dimension()) throw InvalidInput("density matrix dimension does not match the sample");
  const Eigen::MatrixXd re = w.entries().real();
  std::vector<double> values(sample.size());
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const Point& x = sample.point(i);
    values[i] = x.dot(re * x);
  }
  return State::approximate(std::move(values), 1e-9);
}

PerpSeparation perp_separating(const TestSpace& ts, std::span<const State> states) {
  for (const auto& s : states) {
    if (s.size() != ts.outcome_count()) throw InvalidInput("state does not match the test space");
  }
  auto exceeds = [&](const State& s, OutcomeIndex p, OutcomeIndex q) {
    if (s.is_exact()) return s.exact_values()[p] + s.exact_values()[q] > 1;
    return s.value(p) + s.value(q) > 1 + s.tolerance();
  };
  for (OutcomeIndex p = 0; p < ts.outcome_count(); ++p) {
    for (OutcomeIndex q = p + 1; q < ts.outcome_count(); ++q) {
      const bool any = std::any_of(states.begin(), states.end(), [&](const State& s) { return exceeds(s, p, q); });
      if (any == orthogonal(ts, p, q)) return {false, std::make_pair(p, q)};
    }
  }
  return {true, std::nullopt};
}

}  // namespace tsp
