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

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

#include "tsp/errors.hpp"
#include "tsp/metric.hpp"
#include "tsp/test_space.hpp"

namespace tsp {

using Rational = boost::multiprecision::cpp_rational;

/// Probability weight on the outcomes of a test space, indexed like its outcomes.
class State {
 public:
  static State exact(std::vector<Rational> values);
  static State approximate(std::vector<double> values, double tolerance = 1e-9);

  bool is_exact() const noexcept { return exact_; }
  std::size_t size() const noexcept { return exact_ ? rational_.size() : real_.size(); }
  double value(std::size_t i) const;
  const std::vector<Rational>& exact_values() const;
  double tolerance() const noexcept { return tolerance_; }

  /// Outcomes with value 1 (exact) or within tolerance of 1.
  OutcomeSet support_of_one() const;

 private:
  State() = default;
  bool exact_ = true;
  std::vector<Rational> rational_;
  std::vector<double> real_;
  double tolerance_ = 0.0;
};

std::string format_rational(const Rational& q);

/// `state a=1/2 b=0 ...` with ids in outcome order.
std::string format_state(const TestSpace& ts, const State& state);

struct StateCheck {
  bool valid = false;
  double worst_residual = 0.0;
  std::optional<std::size_t> worst_test;
};

StateCheck verify_state(const TestSpace& ts, const State& state);

struct Feasibility {
  std::optional<State> state;
  /// Farkas vector z over tests: every outcome column has nonnegative weight, and the weights of 1 sum below 0.
  std::optional<std::vector<Rational>> certificate;
};

Feasibility find_state(const TestSpace& ts);

bool verify_infeasibility_certificate(const TestSpace& ts, const std::vector<Rational>& z);

Rational extend_exact(const TestSpace& ts, const State& state, const OutcomeSet& event);
double extend_to_event(const TestSpace& ts, const State& state, const OutcomeSet& event);

struct DispersionFreeOptions {
  std::size_t max_outcomes = 24;
  std::size_t max_states = std::size_t{1} << 20;
};

std::vector<State> dispersion_free_states(const TestSpace& ts, const DispersionFreeOptions& options = {});

struct UdfResult {
  bool udf = false;
  std::optional<OutcomeIndex> uncovered;
};

UdfResult is_udf(const TestSpace& ts, const DispersionFreeOptions& options = {});

class DensityMatrix {
 public:
  explicit DensityMatrix(Eigen::MatrixXcd entries);

  static DensityMatrix maximally_mixed(std::size_t dimension);
  static DensityMatrix pure(const Eigen::VectorXcd& psi);
  static DensityMatrix random(std::size_t dimension, std::mt19937_64& rng);

  std::size_t dimension() const noexcept { return static_cast<std::size_t>(entries_.rows()); }
  const Eigen::MatrixXcd& entries() const noexcept { return entries_; }

 private:
  Eigen::MatrixXcd entries_;
};

/// The state x -> <Wx, x> on a sample of real unit vectors.
State gleason_state(const MetricSample& sample, const DensityMatrix& w);

struct PerpSeparation {
  bool separating = false;
  std::optional<std::pair<OutcomeIndex, OutcomeIndex>> failing_pair;
};

PerpSeparation perp_separating(const TestSpace& ts, std::span<const State> states);

}  // namespace tsp
