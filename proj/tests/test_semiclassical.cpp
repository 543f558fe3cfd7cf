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

#include <gtest/gtest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "tsp/corpus.hpp"
#include "tsp/logic.hpp"
#include "tsp/semiclassical.hpp"

using namespace tsp;

namespace {

Point v3(double x, double y, double z) {
  Point p(3);
  p << x, y, z;
  return p.normalized();
}

/// {a,b},{c,d},{a,c} embedded with a=e1, b=e2, c=e3, d=(e1+e2)/sqrt2.
MetricSample small_embedding() {
  const auto ts = parse_test_space("outcomes a b c d\ntest a b\ntest c d\ntest a c\n");
  return MetricSample(ts, {v3(1, 0, 0), v3(0, 1, 0), v3(0, 0, 1), v3(1, 1, 0)});
}

VietorisBasicOpen whole_sphere() { return VietorisBasicOpen({{v3(1, 0, 0), 2.5}}); }

}  // namespace

TEST(Semiclassical, Examples) {
  EXPECT_TRUE(is_semiclassical(corpus::two_disjoint()).semiclassical);
  EXPECT_TRUE(is_semiclassical(corpus::classical(3)).semiclassical);
  const auto t6 = is_semiclassical(corpus::glued_pair());
  EXPECT_FALSE(t6.semiclassical);
  EXPECT_EQ(t6.overlapping, (std::pair<std::size_t, std::size_t>{0, 1}));
}

TEST(HorizontalSum, Examples) {
  EXPECT_EQ(horizontal_sum_size(corpus::two_disjoint()), 6u);
  EXPECT_EQ(horizontal_sum_size(corpus::mo2()), 6u);
  EXPECT_EQ(horizontal_sum_size(corpus::classical(3)), 8u);
  EXPECT_THROW(horizontal_sum_size(corpus::glued_pair()), InvalidInput);
  EXPECT_THROW(horizontal_sum_size(parse_test_space("outcomes a b c\ntest a b\ntest c\n")), InvalidInput);
}

TEST(HorizontalSum, MatchesLogicAndClosureOracle) {
  std::mt19937_64 rng(31);
  for (int it = 0; it < 60; ++it) {
    const auto ts = oracle::random_semiclassical(rng, 4, 2, 5);
    const auto predicted = horizontal_sum_size(ts);
    EXPECT_EQ(predicted, build_logic(ts).size());
    if (ts.outcome_count() <= 14) EXPECT_EQ(predicted, oracle::perspectivity_closure_classes(ts));
  }
}

TEST(DisjointTests, Combinatorial) {
  const auto ts = parse_test_space("outcomes a b c d\ntest a b\ntest c d\ntest a c\n");
  EXPECT_EQ(disjoint_tests(ts, 0), (std::vector<std::size_t>{1}));
  const auto t2 = corpus::two_disjoint();
  EXPECT_EQ(disjoint_tests(t2, 0), (std::vector<std::size_t>{1}));
}

TEST(DisjointTests, FramesById) {
  const auto s = sample_frames(3, 30, 4);
  const auto others = disjoint_tests(s, 0);
  EXPECT_EQ(others.size(), 29u);
  EXPECT_EQ(disjoint_tests(s, 0, 1e-6).size(), 29u);
}

TEST(DisjointTests, MarginSeparatesCoincidentPoints) {
  // Two frames sharing a point under different ids.
  const auto ts = parse_test_space("outcomes a b c d e f\ntest a b c\ntest d e f\n");
  const MetricSample s(ts, {v3(1, 0, 0), v3(0, 1, 0), v3(0, 0, 1), v3(1, 1, 0), v3(1, -1, 0), v3(0, 0, 1)});
  EXPECT_EQ(disjoint_tests(s, 0).size(), 1u);
  EXPECT_TRUE(disjoint_tests(s, 0, 1e-6).empty());
}

TEST(Extract, HandTracedGreedy) {
  const auto s = small_embedding();
  const std::vector<VietorisBasicOpen> basis{whole_sphere(),
                                             VietorisBasicOpen({{v3(0, 0, 1), 0.5}, {v3(1, 1, 0), 0.5}})};
  const auto r = extract_semiclassical(s, basis, 1.0);
  EXPECT_EQ(r.selected, (std::vector<std::size_t>{0, 1}));
  EXPECT_TRUE(r.failures.empty());
  EXPECT_EQ(r.hit_count(), 2u);
  EXPECT_EQ(r.basis_hits[1], 1u);
  EXPECT_EQ(r.coverage_radius, 0.0);
  EXPECT_TRUE(r.density_met());
}

TEST(Extract, OverlappingOpenLandsInFailures) {
  const auto s = small_embedding();
  const std::vector<VietorisBasicOpen> basis{whole_sphere(),
                                             VietorisBasicOpen({{v3(1, 0, 0), 0.5}, {v3(0, 0, 1), 0.5}})};
  const auto r = extract_semiclassical(s, basis, 0.1);
  EXPECT_EQ(r.selected, (std::vector<std::size_t>{0}));
  EXPECT_EQ(r.failures, (std::vector<std::size_t>{1}));
  EXPECT_FALSE(r.basis_hits[1]);
  // c is at distance sqrt2 from a and b; d is at distance 0.765 from both
  EXPECT_NEAR(r.coverage_radius, std::sqrt(2.0), 1e-15);
  EXPECT_FALSE(r.density_met());
}

TEST(Extract, EmptyBasisAndMismatchedDimension) {
  const auto s = small_embedding();
  EXPECT_THROW(extract_semiclassical(s, {}, 0.3), InvalidInput);
  Point p2(2);
  p2 << 1, 0;
  EXPECT_THROW(extract_semiclassical(s, {VietorisBasicOpen({{p2, 1.0}})}, 0.3), InvalidInput);
}

TEST(Extract, FrameSampleInvariants) {
  const auto s = sample_frames(3, 2000, 17);
  const auto basis = auto_basis(s, 20, 0.1);
  const auto r = extract_semiclassical(s, basis.opens, 0.5);
  EXPECT_EQ(r.basis_hits.size(), 20u);
  for (std::size_t k = 0; k < r.basis_hits.size(); ++k) {
    if (!r.basis_hits[k]) continue;
    EXPECT_TRUE(vietoris_member(s.test_points(r.selected[*r.basis_hits[k]]), basis.opens[k]));
  }
  for (std::size_t i = 0; i < r.selected.size(); ++i) {
    for (std::size_t j = i + 1; j < r.selected.size(); ++j) {
      EXPECT_GE(hausdorff_distance(s.test_points(r.selected[i]), s.test_points(r.selected[j])), 1e-6);
      for (auto x : s.space().test(r.selected[i])) {
        for (auto y : s.space().test(r.selected[j])) EXPECT_GE(distance(s.point(x), s.point(y)), 1e-6);
      }
    }
  }
  const auto sub = induced_test_space(s, r);
  EXPECT_TRUE(is_semiclassical(sub).semiclassical);
  EXPECT_EQ(sub.test_count(), r.selected.size());
}

TEST(Extract, NestedSamplesKeepHits) {
  const auto small = sample_frames(3, 1000, 23);
  const auto basis = auto_basis(small, 25, 0.1);
  const auto a = extract_semiclassical(small, basis.opens, 0.5);
  const auto big = extend_frames(small, 1000, 23);
  ExtractionOptions fixed;
  fixed.probes = small.points();
  const auto b = extract_semiclassical(big, basis.opens, 0.5, fixed);
  for (std::size_t k = 0; k < a.basis_hits.size(); ++k) {
    if (a.basis_hits[k]) EXPECT_TRUE(b.basis_hits[k]) << k;
  }
  EXPECT_LE(b.coverage_radius, a.coverage_radius);
}

TEST(AutoBasis, SeedsAreDistinctMembers) {
  const auto s = sample_frames(3, 500, 2);
  const auto b = auto_basis(s, 30, 0.05);
  ASSERT_EQ(b.opens.size(), 30u);
  EXPECT_EQ(std::set<std::size_t>(b.seeds.begin(), b.seeds.end()).size(), 30u);
  for (std::size_t k = 0; k < 30; ++k) EXPECT_TRUE(vietoris_member(s.test_points(b.seeds[k]), b.opens[k]));
  EXPECT_THROW(auto_basis(s, 501, 0.1), InvalidInput);
  EXPECT_THROW(auto_basis(s, 3, 0.0), InvalidInput);
}

TEST(ParseBasis, FormatAndErrors) {
  const auto b = parse_basis("# two opens\nopen\nball 0.5 1 0 0\nball 0.5 0 1 0\nopen\nball 2 0 0 1\n");
  ASSERT_EQ(b.size(), 2u);
  EXPECT_EQ(b[0].balls().size(), 2u);
  EXPECT_EQ(b[1].balls()[0].radius, 2.0);
  EXPECT_THROW(parse_basis("ball 0.5 1 0 0\n"), ParseError);
  EXPECT_THROW(parse_basis("open\nball 0.5 1 0\nball 0.5 1 0 0\n"), ParseError);
  EXPECT_THROW(parse_basis("open\nball x 1 0\n"), ParseError);
  EXPECT_THROW(parse_basis("open\n"), InvalidInput);
  EXPECT_THROW(parse_basis("# nothing\n"), InvalidInput);
}

TEST(HiddenVariable, SingleTestPicksOneOutcome) {
  const auto ts = parse_test_space("outcomes a b\ntest a b\n");
  const MetricSample s(ts, {v3(1, 0, 0), v3(0, 1, 0)});
  const auto r = extract_semiclassical(s, {whole_sphere()}, 2.0);
  std::set<std::string> seen;
  for (std::uint64_t seed = 0; seed < 16; ++seed) {
    const auto m = hidden_variable_state(s, r, seed);
    EXPECT_TRUE(verify_state(m.space, m.state).valid);
    const auto one = m.state.support_of_one();
    ASSERT_EQ(one.size(), 1u);
    seen.insert(m.space.id(one[0]));
  }
  EXPECT_EQ(seen, (std::set<std::string>{"a", "b"}));
}

TEST(HiddenVariable, DeterministicPerSeedAndValidOnFrames) {
  const auto s = sample_frames(3, 800, 5);
  const auto r = extract_semiclassical(s, auto_basis(s, 15, 0.1).opens, 0.5);
  const auto m1 = hidden_variable_state(s, r, 77);
  const auto m2 = hidden_variable_state(s, r, 77);
  EXPECT_EQ(format_state(m1.space, m1.state), format_state(m2.space, m2.state));
  EXPECT_TRUE(verify_state(m1.space, m1.state).valid);
  EXPECT_EQ(m1.state.support_of_one().size(), r.selected.size());
  ExtractionResult empty;
  EXPECT_THROW(hidden_variable_state(s, empty, 0), InvalidInput);
}
