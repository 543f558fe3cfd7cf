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

#include "tsp/metric.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <unordered_map>

namespace tsp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kFrameIdWidth = 8;

double ortho_bound(double tol) { return std::sin(tol); }

std::string frame_id(std::size_t frame, std::size_t axis, std::size_t dimension) {
  std::string f = std::to_string(frame);
  std::string a = std::to_string(axis);
  const std::size_t axis_width = std::to_string(dimension - 1).size();
  return "f" + std::string(kFrameIdWidth - f.size(), '0') + f + "." + std::string(axis_width - a.size(), '0') + a;
}

/// One frame from its own substream of the seed, so frames do not depend on how many are drawn.
Eigen::MatrixXd random_rotation(std::size_t dimension, std::uint64_t seed, std::uint64_t frame) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(frame), static_cast<std::uint32_t>(frame >> 32)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd g(dimension, dimension);
  for (Eigen::Index j = 0; j < g.cols(); ++j) {
    for (Eigen::Index i = 0; i < g.rows(); ++i) g(i, j) = normal(rng);
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd& r = qr.matrixQR();
  for (Eigen::Index i = 0; i < q.cols(); ++i) {
    if (r(i, i) < 0) q.col(i) = -q.col(i);
  }
  if (q.determinant() < 0) q.col(0) = -q.col(0);
  return q;
}

void append_frames(std::size_t dimension, std::size_t first, std::size_t count, std::uint64_t seed,
                   std::vector<std::string>& ids, std::vector<std::vector<std::string>>& tests,
                   std::unordered_map<std::string, Point>& coords) {
  if (first + count >= 100000000) throw InvalidInput("at most 10^8 frames are supported");
  for (std::size_t k = first; k < first + count; ++k) {
    const Eigen::MatrixXd q = random_rotation(dimension, seed, k);
    std::vector<std::string> test;
    for (std::size_t axis = 0; axis < dimension; ++axis) {
      std::string id = frame_id(k, axis, dimension);
      coords.emplace(id, q.col(static_cast<Eigen::Index>(axis)));
      ids.push_back(id);
      test.push_back(std::move(id));
    }
    tests.push_back(std::move(test));
  }
}

MetricSample assemble(std::vector<std::string> ids, const std::vector<std::vector<std::string>>& tests,
                      std::unordered_map<std::string, Point>& coords, double tol) {
  TestSpace space(std::move(ids), tests);
  PointSet points;
  points.reserve(space.outcome_count());
  for (const auto& id : space.ids()) points.push_back(std::move(coords.at(id)));
  return MetricSample(std::move(space), std::move(points), tol);
}

}  // namespace

double distance(const Point& a, const Point& b) { return (a - b).norm(); }

double chord_from_angle(double radians) { return 2.0 * std::sin(radians / 2.0); }

MetricSample::MetricSample(TestSpace space, PointSet points, double ortho_tol)
    : space_(std::move(space)), points_(std::move(points)), ortho_tol_(ortho_tol) {
  if (points_.size() != space_.outcome_count()) throw InvalidInput("one point per outcome is required");
  dimension_ = static_cast<std::size_t>(points_.front().size());
  if (dimension_ < 2) throw InvalidInput("points must live in R^d with d >= 2");
  if (!(ortho_tol_ >= 0)) throw InvalidInput("orthogonality tolerance must be non-negative");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (static_cast<std::size_t>(points_[i].size()) != dimension_) {
      throw InvalidInput("point for '" + space_.id(i) + "' has the wrong dimension");
    }
    if (std::abs(points_[i].norm() - 1.0) > 1e-12) {
      throw InvalidInput("point for '" + space_.id(i) + "' is not a unit vector");
    }
  }
  for (std::size_t t = 0; t < space_.test_count(); ++t) {
    const auto& test = space_.test(t);
    if (test.size() > dimension_) throw InvalidInput("test " + space_.format_set(test) + " has more than d points");
    for (std::size_t i = 0; i < test.size(); ++i) {
      for (std::size_t j = i + 1; j < test.size(); ++j) {
        if (!orthogonal(test[i], test[j])) {
          throw InvalidInput("test " + space_.format_set(test) + " is not pairwise orthogonal");
        }
      }
    }
  }
}

bool MetricSample::orthogonal(std::size_t i, std::size_t j) const {
  if (i == j) return false;
  return std::abs(points_.at(i).dot(points_.at(j))) <= ortho_bound(ortho_tol_);
}

PointSet MetricSample::test_points(std::size_t t) const {
  PointSet out;
  for (auto x : space_.test(t)) out.push_back(points_[x]);
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> MetricSample::test_pairs() const {
  std::set<std::pair<std::size_t, std::size_t>> pairs;
  for (const auto& t : space_.tests()) {
    for (std::size_t i = 0; i < t.size(); ++i) {
      for (std::size_t j = i + 1; j < t.size(); ++j) pairs.emplace(t[i], t[j]);
    }
  }
  return {pairs.begin(), pairs.end()};
}

MetricSample sample_frames(std::size_t dimension, std::size_t count, std::uint64_t seed) {
  if (dimension < 2) throw InvalidInput("frames need dimension >= 2");
  if (count < 1) throw InvalidInput("frame count must be >= 1");
  std::vector<std::string> ids;
  std::vector<std::vector<std::string>> tests;
  std::unordered_map<std::string, Point> coords;
  append_frames(dimension, 0, count, seed, ids, tests, coords);
  return assemble(std::move(ids), tests, coords, 1e-9);
}

MetricSample extend_frames(const MetricSample& sample, std::size_t count, std::uint64_t seed) {
  const TestSpace& space = sample.space();
  std::vector<std::string> ids = space.ids();
  std::vector<std::vector<std::string>> tests;
  std::unordered_map<std::string, Point> coords;
  for (std::size_t i = 0; i < space.outcome_count(); ++i) coords.emplace(space.id(i), sample.point(i));
  for (const auto& t : space.tests()) {
    std::vector<std::string> row;
    for (auto x : t) row.push_back(space.id(x));
    tests.push_back(std::move(row));
  }
  append_frames(sample.dimension(), space.test_count(), count, seed, ids, tests, coords);
  return assemble(std::move(ids), tests, coords, sample.ortho_tol());
}

std::string format_coordinates(const MetricSample& sample) {
  std::string out;
  char buf[64];
  for (std::size_t i = 0; i < sample.size(); ++i) {
    out += "outcome ";
    out += sample.space().id(i);
    for (Eigen::Index k = 0; k < sample.point(i).size(); ++k) {
      std::snprintf(buf, sizeof buf, " %.17g", sample.point(i)(k));
      out += buf;
    }
    out += '\n';
  }
  return out;
}

MetricSample parse_metric_sample(const TestSpace& space, std::string_view coordinates, double ortho_tol) {
  PointSet points(space.outcome_count());
  std::vector<bool> seen(space.outcome_count(), false);
  std::istringstream in{std::string(coordinates)};
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::size_t> dimension;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream words(line);
    std::string keyword;
    if (!(words >> keyword)) continue;
    if (keyword != "outcome") throw ParseError(line_no, 1, "expected 'outcome'");
    std::string id;
    if (!(words >> id)) throw ParseError(line_no, keyword.size() + 2, "missing outcome id");
    std::vector<double> xs;
    for (std::string w; words >> w;) {
      try {
        std::size_t used = 0;
        xs.push_back(std::stod(w, &used));
        if (used != w.size()) throw std::invalid_argument(w);
      } catch (const std::exception&) {
        throw ParseError(line_no, line.find(w) + 1, "bad coordinate '" + w + "'");
      }
    }
    if (!dimension) dimension = xs.size();
    if (xs.size() != *dimension || xs.size() < 2) throw ParseError(line_no, 1, "inconsistent dimension");
    auto x = space.find(id);
    if (!x) throw ParseError(line_no, keyword.size() + 2, "unknown outcome '" + id + "'");
    if (seen[*x]) throw ParseError(line_no, keyword.size() + 2, "duplicate coordinates for '" + id + "'");
    seen[*x] = true;
    points[*x] = Eigen::Map<const Eigen::VectorXd>(xs.data(), static_cast<Eigen::Index>(xs.size()));
  }
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (!seen[i]) throw InvalidInput("no coordinates for outcome '" + space.id(i) + "'");
  }
  return MetricSample(space, std::move(points), ortho_tol);
}

VietorisBasicOpen::VietorisBasicOpen(std::vector<Ball> balls) : balls_(std::move(balls)) {
  if (balls_.empty()) throw InvalidInput("a basic open needs at least one ball");
  for (const auto& b : balls_) {
    if (!(b.radius > 0)) throw InvalidInput("ball radii must be positive");
  }
}

bool vietoris_member(std::span<const Point> set, const VietorisBasicOpen& open) {
  const auto& balls = open.balls();
  std::vector<bool> met(balls.size(), false);
  for (const auto& x : set) {
    bool inside = false;
    for (std::size_t i = 0; i < balls.size(); ++i) {
      if (distance(x, balls[i].center) < balls[i].radius) {
        inside = true;
        met[i] = true;
      }
    }
    if (!inside) return false;
  }
  return std::all_of(met.begin(), met.end(), [](bool m) { return m; });
}

double hausdorff_distance(std::span<const Point> a, std::span<const Point> b) {
  if (a.empty() || b.empty()) throw InvalidInput("Hausdorff distance of an empty set");
  auto directed = [](std::span<const Point> from, std::span<const Point> to) {
    double worst = 0.0;
    for (const auto& x : from) {
      double best = kInf;
      for (const auto& y : to) best = std::min(best, distance(x, y));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

namespace {

bool perfect_matching(const std::vector<std::vector<double>>& d, double threshold) {
  const std::size_t n = d.size();
  std::vector<std::size_t> match(n, n);
  std::vector<bool> visited;
  std::function<bool(std::size_t)> augment = [&](std::size_t i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (d[i][j] > threshold || visited[j]) continue;
      visited[j] = true;
      if (match[j] == n || augment(match[j])) {
        match[j] = i;
        return true;
      }
    }
    return false;
  };
  for (std::size_t i = 0; i < n; ++i) {
    visited.assign(n, false);
    if (!augment(i)) return false;
  }
  return true;
}

}  // namespace

double matching_distance(std::span<const Point> a, std::span<const Point> b, std::size_t max_size) {
  if (a.size() != b.size()) throw InvalidInput("matching distance needs sets of equal cardinality");
  if (a.size() > max_size) throw InvalidInput("set too large for matching distance");
  const std::size_t n = a.size();
  if (n == 0) return 0.0;
  std::vector<std::vector<double>> d(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) d[i][j] = distance(a[i], b[j]);
  }
  if (n <= 8) {
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    double best = kInf;
    do {
      double worst = 0.0;
      for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, d[i][perm[i]]);
      best = std::min(best, worst);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
  }
  std::vector<double> values;
  for (const auto& row : d) values.insert(values.end(), row.begin(), row.end());
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  std::size_t lo = 0;
  std::size_t hi = values.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (perfect_matching(d, values[mid])) hi = mid; else lo = mid + 1;
  }
  return values[lo];
}

double separation(std::span<const Point> set) {
  double best = kInf;
  for (std::size_t i = 0; i < set.size(); ++i) {
    for (std::size_t j = i + 1; j < set.size(); ++j) best = std::min(best, distance(set[i], set[j]));
  }
  return best;
}

double tno_radius(const MetricSample& sample, std::size_t x) {
  if (x >= sample.size()) throw InvalidInput("unknown outcome index");
  double r = kInf;
  for (const auto& [u, v] : sample.test_pairs()) {
    r = std::min(r, std::max(distance(sample.point(x), sample.point(u)), distance(sample.point(x), sample.point(v))));
  }
  return r;
}

double tno_radius(const MetricSample& sample, std::string_view id) {
  return tno_radius(sample, sample.space().index_of(id));
}

RankBound rank_bound(const MetricSample& sample, double cap_radius) {
  if (!(cap_radius > 0)) throw InvalidInput("cap radius must be positive");
  RankBound out;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const bool covered = std::any_of(out.centers.begin(), out.centers.end(), [&](std::size_t c) {
      return distance(sample.point(c), sample.point(i)) < cap_radius;
    });
    if (!covered) out.centers.push_back(i);
  }
  auto fail = [&](std::size_t c, std::size_t u, std::size_t v) {
    throw NotTotallyNonOrthogonal("cap around " + sample.space().id(c) + " contains orthogonal pair " +
                                      sample.space().id(u) + ", " + sample.space().id(v),
                                  c, u, v);
  };
  for (const auto& [u, v] : sample.test_pairs()) {
    for (std::size_t c : out.centers) {
      if (distance(sample.point(c), sample.point(u)) < cap_radius &&
          distance(sample.point(c), sample.point(v)) < cap_radius) {
        fail(c, u, v);
      }
    }
  }
  // Two points of one cap are closer than 2r; geometrically orthogonal unit
  // vectors are at least sqrt(2 - 2 sin(tol)) apart.
  const double min_orth_chord_sq = 2.0 - 2.0 * ortho_bound(sample.ortho_tol());
  if (4.0 * cap_radius * cap_radius > min_orth_chord_sq) {
    for (std::size_t c : out.centers) {
      std::vector<std::size_t> inside;
      for (std::size_t i = 0; i < sample.size(); ++i) {
        if (distance(sample.point(c), sample.point(i)) < cap_radius) inside.push_back(i);
      }
      for (std::size_t i = 0; i < inside.size(); ++i) {
        for (std::size_t j = i + 1; j < inside.size(); ++j) {
          if (sample.orthogonal(inside[i], inside[j])) fail(c, inside[i], inside[j]);
        }
      }
    }
  }
  out.bound = out.centers.size();
  return out;
}

std::vector<OutcomeSet> maximal_orthogonal_subsets(const MetricSample& sample) {
  const std::size_t n = sample.size();
  const std::size_t d = sample.dimension();
  std::vector<double> flat(n * d);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < d; ++k) flat[i * d + k] = sample.point(i)(static_cast<Eigen::Index>(k));
  }
  const double bound = ortho_bound(sample.ortho_tol());
  std::vector<std::vector<OutcomeIndex>> adj(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double* xi = &flat[i * d];
    for (std::size_t j = i + 1; j < n; ++j) {
      const double* xj = &flat[j * d];
      double dot = 0.0;
      for (std::size_t k = 0; k < d; ++k) dot += xi[k] * xj[k];
      if (std::abs(dot) <= bound) {
        adj[i].push_back(static_cast<OutcomeIndex>(j));
        adj[j].push_back(static_cast<OutcomeIndex>(i));
      }
    }
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());

  // Bron-Kerbosch with pivoting, seeded from each vertex with its later neighbours.
  std::vector<OutcomeSet> cliques;
  auto intersect = [&](const std::vector<OutcomeIndex>& s, OutcomeIndex v) {
    std::vector<OutcomeIndex> out;
    std::set_intersection(s.begin(), s.end(), adj[v].begin(), adj[v].end(), std::back_inserter(out));
    return out;
  };
  std::function<void(OutcomeSet&, std::vector<OutcomeIndex>, std::vector<OutcomeIndex>)> expand =
      [&](OutcomeSet& r, std::vector<OutcomeIndex> p, std::vector<OutcomeIndex> x) {
        if (p.empty()) {
          if (x.empty() && r.size() >= 2) {
            OutcomeSet c = r;
            std::sort(c.begin(), c.end());
            cliques.push_back(std::move(c));
          }
          return;
        }
        OutcomeIndex pivot = p.front();
        std::size_t best = 0;
        for (auto u : p) {
          auto k = intersect(p, u).size();
          if (k >= best) {
            best = k;
            pivot = u;
          }
        }
        std::vector<OutcomeIndex> candidates;
        std::set_difference(p.begin(), p.end(), adj[pivot].begin(), adj[pivot].end(), std::back_inserter(candidates));
        for (auto v : candidates) {
          r.push_back(v);
          expand(r, intersect(p, v), intersect(x, v));
          r.pop_back();
          p.erase(std::lower_bound(p.begin(), p.end(), v));
          x.insert(std::lower_bound(x.begin(), x.end(), v), v);
        }
      };
  for (OutcomeIndex v = 0; v < n; ++v) {
    if (adj[v].empty()) continue;
    std::vector<OutcomeIndex> later, earlier;
    for (auto u : adj[v]) (u > v ? later : earlier).push_back(u);
    OutcomeSet r{v};
    expand(r, later, earlier);
  }
  std::sort(cliques.begin(), cliques.end());
  return cliques;
}

bool event_cardinality_locally_constant(std::span<const Point> a, std::span<const Point> b) {
  const double h = hausdorff_distance(a, b);
  const double guard = 0.5 * std::min(separation(a), separation(b));
  if (!(h < guard)) return true;
  return a.size() == b.size() && matching_distance(a, b) == h;
}

ClosureResult closure_check(std::span<const PointSet> sequence, const PointSet& limit, double tol) {
  if (sequence.empty()) throw InvalidInput("closure check needs a non-empty sequence");
  if (limit.empty()) throw InvalidInput("closure check needs a non-empty limit");
  ClosureResult out;
  out.final_distance = hausdorff_distance(sequence.back(), limit);
  if (out.final_distance > tol) {
    throw InvalidInput("sequence does not converge to the limit within tolerance");
  }
  out.pairwise_orthogonal = true;
  const double ortho = std::max(tol, ortho_bound(1e-9));
  for (std::size_t i = 0; i < limit.size(); ++i) {
    for (std::size_t j = i + 1; j < limit.size(); ++j) {
      if (std::abs(limit[i].dot(limit[j])) > ortho) out.pairwise_orthogonal = false;
    }
  }
  // Terms inside the cardinality-forcing neighbourhood of the limit.
  const double guard = 0.5 * separation(limit);
  out.eventual_cardinality = sequence.back().size();
  out.cardinality_preserved = true;
  for (const auto& f : sequence) {
    if (hausdorff_distance(f, limit) < guard && f.size() != limit.size()) out.cardinality_preserved = false;
  }
  out.cardinality_preserved = out.cardinality_preserved && out.eventual_cardinality == limit.size();
  out.passed = out.pairwise_orthogonal && out.cardinality_preserved;
  return out;
}

LipschitzCheck sum_map_lipschitz(const std::function<double(const Point&)>& f, double lipschitz,
                                 std::span<const Point> a, std::span<const Point> b) {
  LipschitzCheck out;
  double sa = 0.0;
  double sb = 0.0;
  for (const auto& x : a) sa += f(x);
  for (const auto& x : b) sb += f(x);
  out.difference = std::abs(sa - sb);
  out.bound = static_cast<double>(a.size()) * lipschitz * matching_distance(a, b);
  // Absolute slack for the rounding of the two sums.
  out.holds = out.difference <= out.bound + 1e-12;
  return out;
}

}  // namespace tsp
