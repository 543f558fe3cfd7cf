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
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "tsp/errors.hpp"
#include "tsp/test_space.hpp"

namespace tsp {

using Point = Eigen::VectorXd;
using PointSet = std::vector<Point>;

/// Euclidean distance.
double distance(const Point& a, const Point& b);

/// Chord length of a spherical cap with the given angular radius.
double chord_from_angle(double radians);

/// Outcomes embedded as unit vectors of R^d, with sampled tests (frames).
///
/// Point i belongs to outcome index i of the underlying TestSpace.
/// Orthogonality between points is tolerance based: x ⊥ y iff x != y and
/// |<x,y>| <= sin(ortho_tol). Construction checks unit norms (1e-12), that
/// every test is pairwise orthogonal, and that no test exceeds d points.
class MetricSample {
 public:
  MetricSample(TestSpace space, PointSet points, double ortho_tol = 1e-9);

  const TestSpace& space() const noexcept { return space_; }
  std::size_t dimension() const noexcept { return dimension_; }
  std::size_t size() const noexcept { return points_.size(); }
  const Point& point(std::size_t i) const { return points_.at(i); }
  const PointSet& points() const noexcept { return points_; }
  double ortho_tol() const noexcept { return ortho_tol_; }

  /// Geometric orthogonality within the tolerance.
  bool orthogonal(std::size_t i, std::size_t j) const;
  PointSet test_points(std::size_t t) const;

  /// Pairs (i < j) that share a sampled test.
  std::vector<std::pair<std::size_t, std::size_t>> test_pairs() const;

 private:
  TestSpace space_;
  PointSet points_;
  std::size_t dimension_;
  double ortho_tol_;
};

/// `count` frames, each a seeded uniformly random rotation of the standard
/// basis of R^d. Outcome ids are `f<frame>.<axis>` with zero-padded frame
/// numbers, so id order matches generation order and a larger count with the
/// same seed extends a smaller one.
MetricSample sample_frames(std::size_t dimension, std::size_t count, std::uint64_t seed);

/// `count` more frames continuing the random stream of sample_frames(d, first, seed).
MetricSample extend_frames(const MetricSample& sample, std::size_t count, std::uint64_t seed);

/// Sidecar coordinate file: one `outcome <id> <x1> ... <xd>` line per outcome.
std::string format_coordinates(const MetricSample& sample);
MetricSample parse_metric_sample(const TestSpace& space, std::string_view coordinates, double ortho_tol = 1e-9);

struct Ball {
  Point center;
  double radius;
};

/// Vietoris basic open <B1, ..., Bn>: the sets inside the union of the balls
/// that meet every ball. Balls are open.
class VietorisBasicOpen {
 public:
  explicit VietorisBasicOpen(std::vector<Ball> balls);
  const std::vector<Ball>& balls() const noexcept { return balls_; }

 private:
  std::vector<Ball> balls_;
};

bool vietoris_member(std::span<const Point> set, const VietorisBasicOpen& open);

/// Throws InvalidInput if either set is empty.
double hausdorff_distance(std::span<const Point> a, std::span<const Point> b);

/// Bottleneck distance min over bijections of the largest matched distance.
/// Exhaustive over permutations for n <= 8, threshold matching above.
/// Throws InvalidInput on a cardinality mismatch or n > max_size.
double matching_distance(std::span<const Point> a, std::span<const Point> b, std::size_t max_size = 64);

/// Smallest pairwise distance within a set; +inf for fewer than two points.
double separation(std::span<const Point> set);

/// Largest r such that the open ball B(x, r) holds no orthogonal pair of the
/// sample's tests. +inf when the sample has no orthogonal pairs.
double tno_radius(const MetricSample& sample, std::size_t x);
double tno_radius(const MetricSample& sample, std::string_view id);

/// A cap of the rank-bound cover contains an orthogonal pair.
class NotTotallyNonOrthogonal : public Error {
 public:
  NotTotallyNonOrthogonal(const std::string& what, std::size_t center, std::size_t a, std::size_t b)
      : Error(what), center_(center), a_(a), b_(b) {}
  std::size_t center() const noexcept { return center_; }
  std::pair<std::size_t, std::size_t> pair() const noexcept { return {a_, b_}; }

 private:
  std::size_t center_, a_, b_;
};

struct RankBound {
  std::size_t bound = 0;
  /// Indices of the sample points used as cap centers.
  std::vector<std::size_t> centers;
};

/// Greedy cover of the sample by open balls of `cap_radius` centered at
/// sample points. Every cap is checked to be totally non-orthogonal, so the
/// number of caps bounds the size of every pairwise orthogonal subset.
/// Throws NotTotallyNonOrthogonal naming an offending pair otherwise.
RankBound rank_bound(const MetricSample& sample, double cap_radius);

/// All maximal pairwise-orthogonal subsets of the sample (geometric ⊥) with at
/// least two points, grown from orthogonal pairs.
std::vector<OutcomeSet> maximal_orthogonal_subsets(const MetricSample& sample);

/// When d_H(A, B) < sep/2 the two sets must have equal size and
/// matching and Hausdorff distances must agree. True if that holds or the
/// guard is not met.
bool event_cardinality_locally_constant(std::span<const Point> a, std::span<const Point> b);

struct ClosureResult {
  bool passed = false;
  bool pairwise_orthogonal = false;
  bool cardinality_preserved = false;
  double final_distance = 0.0;
  std::size_t eventual_cardinality = 0;
};

/// Checks a caller-built sequence of frames F_k converging to `limit`: the
/// limit must be pairwise orthogonal (|<x,y>| <= tol) and have the cardinality
/// of the tail terms. Throws InvalidInput when d_H(F_last, limit) > tol.
ClosureResult closure_check(std::span<const PointSet> sequence, const PointSet& limit, double tol);

struct LipschitzCheck {
  double difference = 0.0;
  double bound = 0.0;
  bool holds = false;
};

/// |sum f(A) - sum f(B)| <= n * lipschitz * matching_distance(A, B) for |A| = |B| = n.
LipschitzCheck sum_map_lipschitz(const std::function<double(const Point&)>& f, double lipschitz,
                                 std::span<const Point> a, std::span<const Point> b);

}  // namespace tsp
