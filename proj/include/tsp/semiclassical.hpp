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
#include <string_view>
#include <utility>
#include <vector>

#include "tsp/metric.hpp"
#include "tsp/states.hpp"
#include "tsp/test_space.hpp"

namespace tsp {

struct SemiclassicalCheck {
  bool semiclassical = false;
  std::optional<std::pair<std::size_t, std::size_t>> overlapping;
};

SemiclassicalCheck is_semiclassical(const TestSpace& ts);

/// Size of the horizontal sum of the Boolean algebras 2^E over the tests E.
std::uint64_t horizontal_sum_size(const TestSpace& ts);

std::vector<std::size_t> disjoint_tests(const TestSpace& ts, std::size_t test);

/// Tests sharing no outcome with `test` and keeping every point pair at least `margin` apart.
std::vector<std::size_t> disjoint_tests(const MetricSample& sample, std::size_t test, double margin = 0.0);

struct AutoBasis {
  std::vector<VietorisBasicOpen> opens;
  std::vector<std::size_t> seeds;
};

/// Opens <B(c1,r),...,B(cd,r)> around seed frames spread by farthest-point traversal.
AutoBasis auto_basis(const MetricSample& sample, std::size_t count, double radius);

std::vector<VietorisBasicOpen> parse_basis(std::string_view text);

struct ExtractionOptions {
  double margin = 1e-6;
  /// Points the coverage radius is measured against; empty means the sample's own outcomes.
  PointSet probes;
};

struct ExtractionResult {
  std::vector<std::size_t> selected;
  /// For each basis open, the position in `selected` of the test chosen for it.
  std::vector<std::optional<std::size_t>> basis_hits;
  std::vector<std::size_t> failures;
  double coverage_radius = 0.0;
  double density_target = 0.0;
  std::size_t hit_count() const noexcept { return basis_hits.size() - failures.size(); }
  bool density_met() const noexcept { return coverage_radius <= density_target; }
};

ExtractionResult extract_semiclassical(const MetricSample& sample, const std::vector<VietorisBasicOpen>& basis,
                                       double density_target, const ExtractionOptions& options = {});

/// The sub-test-space spanned by the selected tests.
TestSpace induced_test_space(const MetricSample& sample, const ExtractionResult& result);

struct HiddenVariableModel {
  TestSpace space;
  State state;
};

HiddenVariableModel hidden_variable_state(const MetricSample& sample, const ExtractionResult& result,
                                          std::uint64_t seed);

}  // namespace tsp
