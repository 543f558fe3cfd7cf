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

#include "oracles.hpp"
#include "tsp/corpus.hpp"
#include "tsp/logic.hpp"

using namespace tsp;

namespace {

TestSpace stateless_space() {
  return parse_test_space(
      "outcomes a b c d e\n"
      "test a b\ntest b c\ntest a c\ntest a d\ntest b e\ntest c d e\n");
}

}  // namespace

TEST(IsAlgebraic, CorpusMatchesTripleScan) {
  EXPECT_TRUE(is_algebraic(corpus::classical(3)).algebraic);
  EXPECT_TRUE(is_algebraic(corpus::glued_pair()).algebraic);
  // Ground truth from an exhaustive triple scan: the triangle is algebraic.
  EXPECT_TRUE(is_algebraic(corpus::triangle()).algebraic);
  for (const auto& ts : {corpus::classical(3), corpus::two_disjoint(), corpus::glued_pair(), corpus::triangle(),
                         corpus::mo2(), stateless_space()}) {
    EXPECT_EQ(is_algebraic(ts).algebraic, oracle::algebraic(ts));
  }
}

TEST(IsAlgebraic, CounterexampleIsGenuine) {
  auto ts = stateless_space();
  auto r = is_algebraic(ts);
  ASSERT_FALSE(r.algebraic);
  ASSERT_TRUE(r.counterexample);
  const auto& w = *r.counterexample;
  EXPECT_TRUE(perspective(ts, w.a, w.b));
  EXPECT_TRUE(complementary(ts, w.b, w.c));
  EXPECT_FALSE(complementary(ts, w.a, w.c));
  EXPECT_THROW(build_logic(ts), NotAlgebraic);
}

TEST(BuildLogic, ClassCounts) {
  EXPECT_EQ(build_logic(corpus::classical(3)).size(), 8u);
  EXPECT_EQ(build_logic(corpus::two_disjoint()).size(), 6u);
  EXPECT_EQ(build_logic(corpus::mo2()).size(), 6u);
  EXPECT_EQ(build_logic(corpus::glued_pair()).size(), 12u);
  EXPECT_EQ(build_logic(corpus::triangle()).size(), 14u);
  for (const auto& ts : {corpus::classical(3), corpus::two_disjoint(), corpus::glued_pair(), corpus::triangle()}) {
    EXPECT_EQ(build_logic(ts).size(), oracle::perspectivity_closure_classes(ts));
  }
}

TEST(BuildLogic, BooleanSumIsDisjointUnion) {
  auto ts = corpus::classical(3);
  auto logic = build_logic(ts);
  const auto& L = logic.algebra();
  for (std::size_t p = 0; p < L.size(); ++p) {
    for (std::size_t q = 0; q < L.size(); ++q) {
      const auto& a = logic.representative(p).members;
      const auto& b = logic.representative(q).members;
      auto s = L.sum(p, q);
      ASSERT_EQ(s.has_value(), disjoint(a, b));
      if (s) EXPECT_EQ(logic.representative(*s).members, set_union(a, b));
    }
  }
}

TEST(BuildLogic, GluedPairIdentifiesPerspectiveEvents) {
  auto ts = corpus::glued_pair();
  auto logic = build_logic(ts);
  auto cls = [&](std::vector<std::string> ids) { return logic.class_of(ts.make_set(ids)); };
  EXPECT_EQ(cls({"a", "b"}), cls({"d", "e"}));
  EXPECT_EQ(cls({"a", "b", "c"}), cls({"c", "d", "e"}));
  EXPECT_EQ(cls({"a", "b", "c"}), logic.algebra().one());
  EXPECT_EQ(cls({}), logic.algebra().zero());
  EXPECT_NE(cls({"a"}), cls({"d"}));
  EXPECT_EQ(logic.algebra().complement(cls({"c"})), cls({"a", "b"}));
  EXPECT_EQ(logic.algebra().sum(cls({"a"}), cls({"b"})), cls({"d", "e"}));
}

TEST(BuildLogic, EventCapPropagates) {
  LogicOptions opts;
  opts.events.cap = 4;
  EXPECT_THROW(build_logic(corpus::glued_pair(), opts), CapExceeded);
  opts = {};
  opts.max_classes = 5;
  EXPECT_THROW(build_logic(corpus::glued_pair(), opts), CapExceeded);
}

TEST(NaturalOrder, Examples) {
  auto t4 = corpus::mo2();
  auto logic = build_logic(t4);
  const auto& L = logic.algebra();
  auto a = logic.class_of(t4.make_set({"a"}));
  auto b = logic.class_of(t4.make_set({"b"}));
  for (std::size_t p = 0; p < L.size(); ++p) EXPECT_TRUE(natural_order(L, L.zero(), p));
  EXPECT_FALSE(natural_order(L, a, b));

  auto t1 = corpus::classical(3);
  auto l1 = build_logic(t1);
  EXPECT_TRUE(natural_order(l1.algebra(), l1.class_of(t1.make_set({"a"})), l1.class_of(t1.make_set({"a", "b"}))));
}

TEST(NaturalOrder, AgreesWithComplementCriterion) {
  for (const auto& ts : {corpus::classical(3), corpus::glued_pair(), corpus::triangle(), corpus::mo2()}) {
    const auto logic = build_logic(ts);
    const auto& L = logic.algebra();
    for (std::size_t p = 0; p < L.size(); ++p) {
      for (std::size_t q = 0; q < L.size(); ++q) {
        EXPECT_EQ(natural_order(L, p, q), order_by_complement(L, p, q));
        EXPECT_EQ(natural_order(L, p, q), L.leq(p, q));
      }
    }
  }
}

TEST(Coherence, Corpus) {
  auto f1 = check_coherence(build_logic(corpus::classical(3)).algebra());
  EXPECT_TRUE(f1.orthocoherent && f1.osum_is_join && f1.omp);
  auto f4 = check_coherence(build_logic(corpus::mo2()).algebra());
  EXPECT_TRUE(f4.orthocoherent && f4.osum_is_join && f4.omp);
  auto f6 = check_coherence(build_logic(corpus::glued_pair()).algebra());
  EXPECT_TRUE(f6.orthocoherent && f6.osum_is_join && f6.omp);
  // a, b, c pairwise orthogonal in the triangle but a ⊕ b ⊕ c is undefined.
  auto f3 = check_coherence(build_logic(corpus::triangle()).algebra());
  EXPECT_TRUE(f3.consistent());
  EXPECT_FALSE(f3.orthocoherent);
  EXPECT_TRUE(f3.missing_join.has_value());
}

TEST(Orthoalgebra, ParseAndAxioms) {
  auto L = parse_orthoalgebra("elements 0 a a' b b' 1\nzero 0\none 1\nsum a a' 1\nsum b b' 1\n");
  EXPECT_EQ(L.size(), 6u);
  EXPECT_EQ(L.complement(*L.index_of("a")), *L.index_of("a'"));
  EXPECT_EQ(format_orthoalgebra(parse_orthoalgebra(format_orthoalgebra(L))), format_orthoalgebra(L));
  // a has no complement
  EXPECT_THROW(parse_orthoalgebra("elements 0 a 1\nzero 0\none 1\n"), AxiomViolation);
  // a ⊕ a defined
  EXPECT_THROW(parse_orthoalgebra("elements 0 a 1\nzero 0\none 1\nsum a a 1\n"), AxiomViolation);
  // two complements for a
  EXPECT_THROW(parse_orthoalgebra("elements 0 a b c 1\nzero 0\none 1\nsum a b 1\nsum a c 1\nsum b c 1\n"),
               AxiomViolation);
  // conflicting entries
  EXPECT_THROW(parse_orthoalgebra("elements 0 a b 1\nzero 0\none 1\nsum a b 1\nsum b a b\n"), AxiomViolation);
  EXPECT_THROW(parse_orthoalgebra("elements 0 1\nzero 0\none 2\n"), ParseError);
  EXPECT_THROW(parse_orthoalgebra("zero 0\n"), ParseError);
}

TEST(Orthoalgebra, NonAssociativeTableRejected) {
  // Atoms a, b, c with a⊕b = x, x⊕c = 1, but b⊕c undefined.
  EXPECT_THROW(parse_orthoalgebra("elements 0 a b c x y z 1\nzero 0\none 1\n"
                                  "sum a b x\nsum x c 1\nsum a y 1\nsum y z 1\n"),
               AxiomViolation);
}

TEST(OaToTestSpace, Examples) {
  auto two = boolean_algebra(1);
  auto ts2 = oa_to_test_space(two);
  EXPECT_EQ(ts2.test_count(), 1u);
  EXPECT_EQ(ts2.test(0).size(), 1u);

  auto b3 = oa_to_test_space(boolean_algebra(3));
  // Partitions of a 3-set into nonempty blocks: Bell(3) = 5.
  EXPECT_EQ(b3.test_count(), 5u);
  EXPECT_TRUE(b3.find_test(b3.make_set({"{1}", "{2}", "{3}"})));
  EXPECT_TRUE(b3.find_test(b3.make_set({"{1}", "{2,3}"})));
  EXPECT_TRUE(b3.find_test(b3.make_set({"1"})));

  auto m = oa_to_test_space(mo2_algebra());
  EXPECT_EQ(m.test_count(), 3u);
  EXPECT_TRUE(m.find_test(m.make_set({"a", "a'"})));
  EXPECT_TRUE(m.find_test(m.make_set({"b", "b'"})));
  EXPECT_TRUE(m.find_test(m.make_set({"1"})));
  EXPECT_EQ(oa_to_test_space(boolean_algebra(4)).test_count(), 15u);  // Bell(4)
}

TEST(Roundtrip, BooleanAndMo2) {
  for (std::size_t n = 1; n <= 4; ++n) {
    auto L = boolean_algebra(n);
    auto iso = roundtrip_logic(L);
    ASSERT_TRUE(iso) << n;
    EXPECT_TRUE(is_isomorphism(build_logic(oa_to_test_space(L)).algebra(), L, *iso));
  }
  EXPECT_TRUE(roundtrip_logic(mo2_algebra()));
}

TEST(Roundtrip, CanonicalMapAgreesWithBacktrackingSearch) {
  for (const auto& L : {boolean_algebra(3), mo2_algebra(), build_logic(corpus::glued_pair()).algebra(),
                        build_logic(corpus::triangle()).algebra()}) {
    auto rebuilt = build_logic(oa_to_test_space(L));
    auto canonical = roundtrip_logic(L);
    auto searched = find_isomorphism(rebuilt.algebra(), L);
    ASSERT_TRUE(canonical);
    ASSERT_TRUE(searched);
    EXPECT_TRUE(is_isomorphism(rebuilt.algebra(), L, *searched));
  }
  EXPECT_FALSE(find_isomorphism(boolean_algebra(2), mo2_algebra()));
}

// Algebraic-space consequences, checked exhaustively on random spaces.
TEST(LogicProperties, RandomAlgebraicSpaces) {
  std::mt19937_64 rng(11);
  int algebraic = 0;
  for (int iter = 0; iter < 150; ++iter) {
    auto ts = oracle::random_space(rng, 7, 4);
    auto verdict = is_algebraic(ts);
    ASSERT_EQ(verdict.algebraic, oracle::algebraic(ts));
    if (!verdict.algebraic) continue;
    ++algebraic;
    auto logic = build_logic(ts);
    EXPECT_EQ(logic.size(), oracle::perspectivity_closure_classes(ts));
    const auto& events = logic.events();
    for (const auto& a : events) {
      for (const auto& b : events) {
        const bool ab = perspective(ts, a.members, b.members);
        EXPECT_EQ(ab, logic.class_of(a.members) == logic.class_of(b.members));
        if (!orthogonal_events(ts, a.members, b.members)) continue;
        for (const auto& c : events) {
          if (!perspective(ts, b.members, c.members)) continue;
          EXPECT_TRUE(orthogonal_events(ts, a.members, c.members));
          EXPECT_TRUE(perspective(ts, set_union(a.members, b.members), set_union(a.members, c.members)));
        }
      }
    }
    EXPECT_TRUE(check_coherence(logic.algebra()).consistent());
  }
  EXPECT_GT(algebraic, 30);
}
