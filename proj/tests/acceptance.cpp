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

// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <Eigen/Geometry>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "oracles.hpp"
#include "tsp/corpus.hpp"
#include "tsp/logic.hpp"
#include "tsp/metric.hpp"
#include "tsp/semiclassical.hpp"
#include "tsp/states.hpp"

using namespace tsp;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Verdict {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, const std::function<Verdict()>& body) {
  const auto t0 = Clock::now();
  Verdict v;
  try {
    v = body();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  if (!v.pass) ++failures;
  std::printf("[%s] %2d %s: %s (%.2f s)\n", v.pass ? "PASS" : "FAIL", id, title, v.detail.c_str(), seconds_since(t0));
  std::fflush(stdout);
}

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

struct Named {
  const char* name;
  TestSpace space;
};

std::vector<Named> corpus_spaces() {
  return {{"T1", corpus::classical(3)},
          {"T2", corpus::two_disjoint()},
          {"T4", corpus::mo2()},
          {"T6", corpus::glued_pair()},
          {"triangle", corpus::triangle()}};
}

PointSet rotate(const PointSet& s, const Eigen::Vector3d& axis, double angle) {
  const Eigen::Matrix3d r = Eigen::AngleAxisd(angle, axis.normalized()).toRotationMatrix();
  PointSet out;
  for (const auto& p : s) out.push_back(r * Eigen::Vector3d(p));
  return out;
}

Eigen::Vector3d random_axis(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  return Eigen::Vector3d(g(rng), g(rng), g(rng)).normalized();
}

Verdict logic_class_counts() {
  Verdict v;
  const std::size_t expected[] = {8, 6, 6, 12, 14};
  std::size_t i = 0;
  for (const auto& [name, ts] : corpus_spaces()) {
    const auto t0 = Clock::now();
    const auto got = build_logic(ts).size();
    const double dt = seconds_since(t0);
    const auto want = oracle::perspectivity_closure_classes(ts);
    if (got != want || got != expected[i] || dt >= 1.0) v.pass = false;
    v.detail += std::string(v.detail.empty() ? "" : " ") + name + "=" + std::to_string(got) + "/" +
                std::to_string(want);
    ++i;
  }
  v.detail += " (library/oracle)";
  return v;
}

Verdict roundtrips() {
  Verdict v;
  const auto t0 = Clock::now();
  std::vector<std::pair<std::string, OrthoalgebraTable>> algebras;
  for (std::size_t n = 1; n <= 4; ++n) algebras.emplace_back("2^" + std::to_string(n), boolean_algebra(n));
  algebras.emplace_back("MO2", mo2_algebra());
  for (const auto& [name, ts] : corpus_spaces()) algebras.emplace_back(std::string("logic(") + name + ")", build_logic(ts).algebra());
  std::size_t ok = 0;
  for (const auto& [name, a] : algebras) {
    const auto iso = roundtrip_logic(a);
    if (iso && is_isomorphism(build_logic(oa_to_test_space(a)).algebra(), a, *iso)) {
      ++ok;
    } else {
      v.pass = false;
      v.detail += "missing " + name + "; ";
    }
  }
  const double dt = seconds_since(t0);
  if (dt >= 10.0) v.pass = false;
  v.detail += std::to_string(ok) + "/" + std::to_string(algebras.size()) + " isomorphisms found";
  return v;
}

Verdict coherence() {
  Verdict v;
  std::size_t logics = 0, violations = 0, negative = 0;
  auto check = [&](const TestSpace& ts) {
    const auto flags = check_coherence(build_logic(ts).algebra());
    ++logics;
    if (!flags.consistent()) ++violations;
    if (!flags.orthocoherent) ++negative;
  };
  for (const auto& [name, ts] : corpus_spaces()) check(ts);
  std::mt19937_64 rng(2024);
  std::size_t random_logics = 0, tried = 0;
  while (random_logics < 100) {
    const auto ts = oracle::random_space(rng, 10, 4, 1, 4);
    ++tried;
    if (!is_algebraic(ts).algebraic) continue;
    check(ts);
    ++random_logics;
  }
  v.pass = violations == 0;
  v.detail = std::to_string(logics) + " logics (" + std::to_string(random_logics) + " random algebraic of " +
             std::to_string(tried) + " drawn), " + std::to_string(negative) + " non-orthocoherent, " +
             std::to_string(violations) + " flag disagreements";
  return v;
}

Verdict state_engine() {
  Verdict v;
  std::size_t exact_states = 0, exact_bad = 0;
  for (const auto& [name, ts] : corpus_spaces()) {
    auto states = dispersion_free_states(ts);
    if (auto r = find_state(ts); r.state) states.push_back(*r.state);
    for (const auto& s : states) {
      ++exact_states;
      const auto c = verify_state(ts, s);
      if (!c.valid || c.worst_residual != 0.0) ++exact_bad;
    }
  }
  const auto t0 = Clock::now();
  const auto sample = sample_frames(3, 1000, 4);
  std::mt19937_64 rng(4);
  double worst = 0.0;
  for (int k = 0; k < 10; ++k) {
    const auto s = gleason_state(sample, DensityMatrix::random(3, rng));
    worst = std::max(worst, verify_state(sample.space(), s).worst_residual);
  }
  const double dt = seconds_since(t0);
  v.pass = exact_bad == 0 && worst <= 1e-9 && dt < 5.0;
  v.detail = std::to_string(exact_states) + " rational states with exact sums (" + std::to_string(exact_bad) +
             " bad); gleason max |sum-1| = " + fmt("%.3e", worst) + " over 1000 frames x 10 W";
  return v;
}

Verdict dispersion_free_counts() {
  Verdict v;
  const auto t1 = dispersion_free_states(corpus::classical(3)).size();
  const auto t2 = dispersion_free_states(corpus::two_disjoint()).size();
  if (t1 != 3 || t2 != 4) v.pass = false;
  v.detail = "T1=" + std::to_string(t1) + " T2=" + std::to_string(t2);
  for (const auto& [name, ts] : {Named{"T6", corpus::glued_pair()}, Named{"triangle", corpus::triangle()}}) {
    std::vector<oracle::Mask> got;
    for (const auto& s : dispersion_free_states(ts)) got.push_back(oracle::mask_of(s.support_of_one()));
    std::sort(got.begin(), got.end());
    const auto want = oracle::dispersion_free(ts);
    if (got != want) v.pass = false;
    v.detail += std::string(" ") + name + "=" + std::to_string(got.size()) + "/" + std::to_string(want.size());
  }
  v.detail += " (T6, triangle: library/2^|X| scan)";
  return v;
}

Verdict metric_identities() {
  Verdict v;
  const auto sample = sample_frames(3, 1000, 6);
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<std::size_t> pick(0, sample.space().test_count() - 1);
  std::uniform_real_distribution<double> small(0.0, 0.3);
  std::size_t order_bad = 0, guarded = 0, guard_bad = 0, union_bad = 0;
  for (int k = 0; k < 500; ++k) {
    const PointSet a = sample.test_points(pick(rng));
    // Half the pairs are independent frames, half are small rotations of the first frame.
    PointSet b = (k % 2 == 0) ? sample.test_points(pick(rng)) : rotate(a, random_axis(rng), small(rng));
    std::shuffle(b.begin(), b.end(), rng);
    const double h = hausdorff_distance(a, b);
    const double m = matching_distance(a, b);
    if (h > m) ++order_bad;
    if (h < 0.5 * std::min(separation(a), separation(b))) {
      ++guarded;
      if (h != m || a.size() != b.size()) ++guard_bad;
    }
  }
  for (int k = 0; k < 500; ++k) {
    const PointSet a = sample.test_points(pick(rng));
    const PointSet b = sample.test_points(pick(rng));
    const PointSet c = sample.test_points(pick(rng));
    PointSet ab = a, ac = a;
    ab.insert(ab.end(), b.begin(), b.end());
    ac.insert(ac.end(), c.begin(), c.end());
    if (hausdorff_distance(ab, ac) > hausdorff_distance(b, c)) ++union_bad;
  }
  v.pass = order_bad == 0 && guard_bad == 0 && union_bad == 0 && guarded > 0;
  v.detail = "500 pairs: dH>dmatch " + std::to_string(order_bad) + ", guarded " + std::to_string(guarded) +
             " with " + std::to_string(guard_bad) + " inequalities; 500 union triples: " + std::to_string(union_bad) +
             " violations";
  return v;
}

Verdict rank_bound_check() {
  Verdict v;
  const auto t0 = Clock::now();
  const auto sample = sample_frames(3, 10000, 7);
  std::size_t largest = 0;
  const auto subsets = maximal_orthogonal_subsets(sample);
  for (const auto& s : subsets) largest = std::max(largest, s.size());
  const auto bound = rank_bound(sample, chord_from_angle(M_PI / 6));
  const double dt = seconds_since(t0);
  v.pass = largest <= 3 && bound.bound >= largest && dt < 30.0;
  v.detail = std::to_string(subsets.size()) + " maximal orthogonal subsets, largest " + std::to_string(largest) +
             "; 30-degree caps: bound " + std::to_string(bound.bound) + ", totally non-orthogonal";
  return v;
}

Verdict closure() {
  Verdict v;
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> skew(0.05, 0.3);
  const auto frames = sample_frames(3, 40, 8);
  std::size_t passed = 0, rejected = 0;
  for (std::size_t i = 0; i < 20; ++i) {
    const PointSet limit = frames.test_points(i);
    const auto axis = random_axis(rng);
    std::vector<PointSet> seq;
    for (int k = 1; k <= 2000; ++k) seq.push_back(rotate(limit, axis, 1.0 / k));
    if (closure_check(seq, limit, 1e-3).passed) ++passed;
  }
  for (std::size_t i = 20; i < 40; ++i) {
    PointSet limit = frames.test_points(i);
    limit[1] = rotate({limit[1]}, limit[2], skew(rng))[0];  // tilt one axis toward another
    const auto axis = random_axis(rng);
    std::vector<PointSet> seq;
    for (int k = 1; k <= 2000; ++k) seq.push_back(rotate(limit, axis, 1.0 / k));
    if (!closure_check(seq, limit, 1e-3).passed) ++rejected;
  }
  v.pass = passed == 20 && rejected == 20;
  v.detail = std::to_string(passed) + "/20 convergent sequences pass, " + std::to_string(rejected) +
             "/20 perturbed limits rejected";
  return v;
}

Verdict extraction() {
  Verdict v;
  const auto t0 = Clock::now();
  const double delta = 0.3;
  const auto sample = sample_frames(3, 10000, 9);
  const auto basis = auto_basis(sample, 50, delta / 4.0);
  const auto r = extract_semiclassical(sample, basis.opens, delta);

  bool disjoint_ok = true;
  for (std::size_t i = 0; i < r.selected.size(); ++i) {
    for (std::size_t j = i + 1; j < r.selected.size(); ++j) {
      for (auto x : sample.space().test(r.selected[i])) {
        for (auto y : sample.space().test(r.selected[j])) {
          if (x == y || distance(sample.point(x), sample.point(y)) < 1e-6) disjoint_ok = false;
        }
      }
    }
  }
  bool members_ok = true;
  for (std::size_t k = 0; k < r.basis_hits.size(); ++k) {
    if (r.basis_hits[k] && !vietoris_member(sample.test_points(r.selected[*r.basis_hits[k]]), basis.opens[k])) {
      members_ok = false;
    }
  }

  const auto doubled = extend_frames(sample, 10000, 9);
  ExtractionOptions fixed;
  fixed.probes = sample.points();
  const auto r2 = extract_semiclassical(doubled, basis.opens, delta, fixed);
  const auto r2_all = extract_semiclassical(doubled, basis.opens, delta);
  bool prefix_kept = true;
  for (std::size_t k = 0; k < r.basis_hits.size(); ++k) {
    if (r.basis_hits[k] && !r2.basis_hits[k]) prefix_kept = false;
  }
  const auto model = hidden_variable_state(sample, r, 9);
  const bool state_ok = verify_state(model.space, model.state).valid && is_semiclassical(model.space).semiclassical;
  const double dt = seconds_since(t0);

  const double hit_rate = static_cast<double>(r.hit_count()) / static_cast<double>(basis.opens.size());
  v.pass = disjoint_ok && members_ok && hit_rate >= 0.95 && r.coverage_radius <= 0.35 &&
           r2.coverage_radius <= r.coverage_radius && prefix_kept && state_ok && dt < 60.0;
  v.detail = "hits " + std::to_string(r.hit_count()) + "/50, coverage " + fmt("%.4f", r.coverage_radius) +
             "; doubled: hits " + std::to_string(r2.hit_count()) + "/50, coverage " + fmt("%.4f", r2.coverage_radius) +
             " on the original probes (" + fmt("%.4f", r2_all.coverage_radius) + " on all doubled outcomes)" +
             (prefix_kept ? ", hit prefix kept" : ", hit LOST") + (disjoint_ok ? "" : ", overlap found") +
             (members_ok ? "" : ", non-member hit") + (state_ok ? ", hidden-variable state valid" : ", bad state");
  return v;
}

Verdict horizontal_sums() {
  Verdict v;
  std::mt19937_64 rng(10);
  std::size_t agree = 0, largest = 0;
  for (int it = 0; it < 50; ++it) {
    const auto ts = oracle::random_semiclassical(rng, 4, 2, 5);
    const auto predicted = horizontal_sum_size(ts);
    const auto built = build_logic(ts).size();
    if (predicted == built) ++agree;
    largest = std::max<std::size_t>(largest, built);
  }
  v.pass = agree == 50;
  v.detail = std::to_string(agree) + "/50 random semi-classical spaces agree (largest logic " +
             std::to_string(largest) + ")";
  return v;
}

}  // namespace

int main() {
  criterion(1, "logic class counts vs closure oracle", logic_class_counts);
  criterion(2, "orthoalgebra roundtrip", roundtrips);
  criterion(3, "orthocoherence flag equivalence", coherence);
  criterion(4, "state engine sums", state_engine);
  criterion(5, "dispersion-free counts", dispersion_free_counts);
  criterion(6, "hyperspace metric identities", metric_identities);
  criterion(7, "rank bound on 10^4 frames", rank_bound_check);
  criterion(8, "closure of frame sequences", closure);
  criterion(9, "semi-classical extraction", extraction);
  criterion(10, "horizontal sum size", horizontal_sums);
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
