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

#include "tsp/logic.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <unordered_map>

namespace tsp {

namespace {

/// Events together with the oc relation, which is symmetric: comps[a] lists
/// every event complementary to event a.
struct ComplementGraph {
  EventSet events;
  std::vector<std::vector<std::size_t>> comps;
};

OutcomeSet subset_of(const OutcomeSet& base, std::uint64_t mask) {
  OutcomeSet out;
  for (std::size_t i = 0; i < base.size(); ++i) {
    if (mask >> i & 1U) out.push_back(base[i]);
  }
  return out;
}

ComplementGraph complement_graph(const TestSpace& ts, const EventOptions& options) {
  ComplementGraph g{enumerate_events(ts, options), {}};
  g.comps.resize(g.events.size());
  for (const auto& test : ts.tests()) {
    const std::uint64_t full = (std::uint64_t{1} << test.size()) - 1;
    std::vector<std::size_t> index(full + 1);
    for (std::uint64_t mask = 0; mask <= full; ++mask) index[mask] = *g.events.find(subset_of(test, mask));
    for (std::uint64_t mask = 0; mask <= full; ++mask) g.comps[index[mask]].push_back(index[full ^ mask]);
  }
  for (auto& c : g.comps) {
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
  }
  return g;
}

std::optional<AlgebraicityCounterexample> find_violation(const ComplementGraph& g) {
  // A ~ B iff both lie in comps[C] for some C. Algebraicity says every member of
  // comps[C] has the same complements.
  for (std::size_t c = 0; c < g.events.size(); ++c) {
    const auto& group = g.comps[c];
    const std::size_t first = group.front();
    for (std::size_t m : group) {
      if (g.comps[m] == g.comps[first]) continue;
      auto witness = [&](std::size_t a, std::size_t b) -> std::optional<AlgebraicityCounterexample> {
        for (std::size_t c2 : g.comps[b]) {
          if (!std::binary_search(g.comps[a].begin(), g.comps[a].end(), c2)) {
            return AlgebraicityCounterexample{g.events[a].members, g.events[b].members, g.events[c2].members};
          }
        }
        return std::nullopt;
      };
      if (auto w = witness(first, m)) return w;
      if (auto w = witness(m, first)) return w;
    }
  }
  return std::nullopt;
}

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

}  // namespace

AlgebraicityResult is_algebraic(const TestSpace& ts, const EventOptions& options) {
  auto g = complement_graph(ts, options);
  auto violation = find_violation(g);
  return {!violation.has_value(), std::move(violation)};
}

Logic::Logic(EventSet events, std::vector<std::size_t> class_of_event, OrthoalgebraTable algebra)
    : events_(std::move(events)), class_of_event_(std::move(class_of_event)), algebra_(std::move(algebra)) {
  members_.resize(algebra_.size());
  for (std::size_t e = 0; e < class_of_event_.size(); ++e) members_.at(class_of_event_[e]).push_back(e);
}

std::size_t Logic::class_of(const OutcomeSet& members) const {
  auto e = events_.find(members);
  if (!e) throw InvalidInput("not an event of this logic");
  return class_of_event_[*e];
}

Logic build_logic(const TestSpace& ts, const LogicOptions& options) {
  auto g = complement_graph(ts, options.events);
  if (auto violation = find_violation(g)) {
    throw NotAlgebraic("test space is not algebraic: " + ts.format_set(violation->a) + " ~ " +
                           ts.format_set(violation->b) + " and " + ts.format_set(violation->b) + " oc " +
                           ts.format_set(violation->c) + ", but not " + ts.format_set(violation->a) + " oc " +
                           ts.format_set(violation->c),
                       *violation);
  }
  const std::size_t n_events = g.events.size();

  std::vector<std::size_t> parent(n_events);
  std::iota(parent.begin(), parent.end(), 0);
  for (const auto& group : g.comps) {
    for (std::size_t m : group) parent[find_root(parent, m)] = find_root(parent, group.front());
  }
  std::vector<std::size_t> class_of_event(n_events);
  std::unordered_map<std::size_t, std::size_t> class_of_root;
  std::vector<std::size_t> class_size;
  for (std::size_t e = 0; e < n_events; ++e) {
    auto [it, inserted] = class_of_root.emplace(find_root(parent, e), class_of_root.size());
    if (inserted) class_size.push_back(0);
    class_of_event[e] = it->second;
    ++class_size[it->second];
  }
  const std::size_t n = class_size.size();
  if (n > options.max_classes) {
    throw CapExceeded("logic has " + std::to_string(n) + " classes, cap is " + std::to_string(options.max_classes));
  }

  // p(A) ⊕ p(B) = p(A ∪ B) over all orthogonal pairs; every pair of
  // representatives of a defined sum must itself be orthogonal.
  struct Cell {
    std::size_t result;
    std::size_t count;
  };
  std::unordered_map<std::uint64_t, Cell> cells;
  for (std::size_t u = 0; u < n_events; ++u) {
    const OutcomeSet& whole = g.events[u].members;
    const std::size_t pu = class_of_event[u];
    const std::uint64_t full = (std::uint64_t{1} << whole.size()) - 1;
    for (std::uint64_t mask = 0; mask <= full; ++mask) {
      const std::size_t pa = class_of_event[*g.events.find(subset_of(whole, mask))];
      const std::size_t pb = class_of_event[*g.events.find(subset_of(whole, full ^ mask))];
      auto [it, inserted] = cells.emplace(static_cast<std::uint64_t>(pa) * n + pb, Cell{pu, 0});
      if (it->second.result != pu) throw AxiomViolation("orthogonal sum depends on the choice of representatives");
      ++it->second.count;
    }
  }
  std::vector<OrthoalgebraTable::SumEntry> sums;
  sums.reserve(cells.size());
  for (const auto& [key, cell] : cells) {
    const std::size_t pa = key / n;
    const std::size_t pb = key % n;
    if (cell.count != class_size[pa] * class_size[pb]) {
      throw AxiomViolation("orthogonality of classes depends on the choice of representatives");
    }
    sums.push_back({pa, pb, cell.result});
  }
  std::sort(sums.begin(), sums.end(), [](const auto& x, const auto& y) { return std::tie(x.p, x.q) < std::tie(y.p, y.q); });

  std::vector<std::string> labels(n);
  std::vector<bool> labelled(n, false);
  for (std::size_t e = 0; e < n_events; ++e) {
    if (!labelled[class_of_event[e]]) {
      labels[class_of_event[e]] = ts.format_set(g.events[e].members);
      labelled[class_of_event[e]] = true;
    }
  }
  const std::size_t one = class_of_event[*g.events.find(ts.test(0))];
  for (const auto& t : ts.tests()) {
    if (class_of_event[*g.events.find(t)] != one) throw AxiomViolation("tests fall into different classes");
  }
  OrthoalgebraTable algebra(std::move(labels), class_of_event[0], one, sums);
  for (std::size_t e = 0; e < n_events; ++e) {
    for (std::size_t c : g.comps[e]) {
      if (algebra.complement(class_of_event[e]) != class_of_event[c]) {
        throw AxiomViolation("orthocomplement disagrees with event complements");
      }
    }
  }
  return Logic(std::move(g.events), std::move(class_of_event), std::move(algebra));
}

bool natural_order(const OrthoalgebraTable& algebra, std::size_t p, std::size_t q) {
  for (std::size_t r : algebra.partners(p)) {
    if (*algebra.sum(p, r) == q) return true;
  }
  return false;
}

bool order_by_complement(const OrthoalgebraTable& algebra, std::size_t p, std::size_t q) {
  return algebra.orthogonal(p, algebra.complement(q));
}

CoherenceFlags check_coherence(const OrthoalgebraTable& L) {
  const std::size_t n = L.size();
  CoherenceFlags flags;

  // Every pairwise orthogonal triple has a defined sum.
  flags.orthocoherent = true;
  for (std::size_t p = 0; p < n && flags.orthocoherent; ++p) {
    for (std::size_t q : L.partners(p)) {
      const auto both = L.orthogonal_set(p) & L.orthogonal_set(q);
      if (!both.is_subset_of(L.orthogonal_set(*L.sum(p, q)))) {
        flags.orthocoherent = false;
        break;
      }
    }
  }

  // p ⊕ q is the least upper bound of p and q.
  flags.osum_is_join = true;
  for (std::size_t p = 0; p < n && flags.osum_is_join; ++p) {
    for (std::size_t q : L.partners(p)) {
      auto j = L.join(p, q);
      if (!j) {
        flags.missing_join = std::make_pair(p, q);
        flags.osum_is_join = false;
        break;
      }
      if (*j != *L.sum(p, q)) {
        flags.osum_is_join = false;
        break;
      }
    }
  }

  // Orthomodular poset: bounded orthoposet, orthogonal joins exist, and
  // p ≤ q ⇒ q = p ∨ (q ∧ p').
  auto omp = [&]() {
    for (std::size_t p = 0; p < n; ++p) {
      const std::size_t pc = L.complement(p);
      if (!L.leq(L.zero(), p) || !L.leq(p, L.one())) return false;
      if (L.complement(pc) != p) return false;
      if (L.join(p, pc) != L.one() || L.meet(p, pc) != L.zero()) return false;
      for (std::size_t q = 0; q < n; ++q) {
        if (L.leq(p, L.complement(q)) && !L.join(p, q)) return false;
        if (!L.leq(p, q)) continue;
        if (!L.leq(L.complement(q), pc)) return false;
        auto m = L.meet(q, pc);
        if (!m) return false;
        auto j = L.join(p, *m);
        if (!j || *j != q) return false;
      }
    }
    return true;
  };
  flags.omp = omp();
  return flags;
}

TestSpace oa_to_test_space(const OrthoalgebraTable& L, const OaTestSpaceOptions& options) {
  std::vector<std::string> outcomes;
  std::vector<std::size_t> nonzero;
  for (std::size_t p = 0; p < L.size(); ++p) {
    if (p != L.zero()) {
      nonzero.push_back(p);
      outcomes.push_back(L.label(p));
    }
  }
  std::vector<std::vector<std::string>> tests;
  std::vector<std::size_t> chosen;
  // Elements are taken in increasing index order; any order gives the same
  // total by associativity and commutativity.
  std::function<void(std::size_t, std::size_t)> extend = [&](std::size_t start, std::size_t total) {
    if (total == L.one() && !chosen.empty()) {
      if (tests.size() >= options.max_tests) {
        throw CapExceeded("more than " + std::to_string(options.max_tests) + " tests");
      }
      std::vector<std::string> t;
      for (std::size_t p : chosen) t.push_back(L.label(p));
      tests.push_back(std::move(t));
      return;  // 1 ⊕ x is defined only for x = 0
    }
    for (std::size_t i = start; i < nonzero.size(); ++i) {
      if (auto next = L.sum(total, nonzero[i])) {
        chosen.push_back(nonzero[i]);
        extend(i + 1, *next);
        chosen.pop_back();
      }
    }
  };
  extend(0, L.zero());
  return TestSpace(std::move(outcomes), tests);
}

bool is_isomorphism(const OrthoalgebraTable& from, const OrthoalgebraTable& to, const std::vector<std::size_t>& map) {
  const std::size_t n = from.size();
  if (to.size() != n || map.size() != n) return false;
  std::vector<bool> hit(n, false);
  for (std::size_t v : map) {
    if (v >= n || hit[v]) return false;
    hit[v] = true;
  }
  if (map[from.zero()] != to.zero() || map[from.one()] != to.one()) return false;
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      auto a = from.sum(p, q);
      auto b = to.sum(map[p], map[q]);
      if (a.has_value() != b.has_value()) return false;
      if (a && map[*a] != *b) return false;
    }
  }
  return true;
}

std::optional<std::vector<std::size_t>> find_isomorphism(const OrthoalgebraTable& from, const OrthoalgebraTable& to) {
  const std::size_t n = from.size();
  if (to.size() != n) return std::nullopt;
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  auto signature = [](const OrthoalgebraTable& L, std::size_t p) {
    return std::make_tuple(L.partners(p).size(), L.down_set(p).count(), L.up_set(p).count());
  };
  std::vector<std::size_t> map(n, kUnset);
  std::vector<std::size_t> inverse(n, kUnset);
  std::vector<std::size_t> assigned;
  auto assign = [&](std::size_t p, std::size_t q) {
    map[p] = q;
    inverse[q] = p;
    assigned.push_back(p);
  };
  if (signature(from, from.zero()) != signature(to, to.zero()) || signature(from, from.one()) != signature(to, to.one())) {
    return std::nullopt;
  }
  assign(from.zero(), to.zero());
  assign(from.one(), to.one());

  std::vector<std::size_t> order;
  for (std::size_t p = 0; p < n; ++p) {
    if (map[p] == kUnset) order.push_back(p);
  }
  // Most-connected elements first constrain the search fastest.
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return from.partners(a).size() > from.partners(b).size(); });

  auto consistent = [&](std::size_t p, std::size_t q) {
    for (std::size_t p2 : assigned) {
      const std::size_t q2 = map[p2];
      auto a = from.sum(p, p2);
      auto b = to.sum(q, q2);
      if (a.has_value() != b.has_value()) return false;
      if (!a) continue;
      if (map[*a] != kUnset && map[*a] != *b) return false;
      if (inverse[*b] != kUnset && inverse[*b] != *a) return false;
    }
    return from.orthogonal(p, p) == to.orthogonal(q, q);
  };

  std::function<bool(std::size_t)> search = [&](std::size_t k) -> bool {
    if (k == order.size()) return is_isomorphism(from, to, map);
    const std::size_t p = order[k];
    const auto sig = signature(from, p);
    for (std::size_t q = 0; q < n; ++q) {
      if (inverse[q] != kUnset || signature(to, q) != sig || !consistent(p, q)) continue;
      assign(p, q);
      if (search(k + 1)) return true;
      assigned.pop_back();
      map[p] = kUnset;
      inverse[q] = kUnset;
    }
    return false;
  };
  if (!search(0)) return std::nullopt;
  return map;
}

std::optional<std::vector<std::size_t>> roundtrip_logic(const OrthoalgebraTable& L, const LogicOptions& options) {
  const TestSpace ts = oa_to_test_space(L);
  const Logic logic = build_logic(ts, options);
  std::vector<std::size_t> map(logic.size());
  for (std::size_t p = 0; p < logic.size(); ++p) {
    std::size_t total = L.zero();
    for (OutcomeIndex x : logic.representative(p).members) {
      auto next = L.sum(total, *L.index_of(ts.id(x)));
      if (!next) return std::nullopt;
      total = *next;
    }
    map[p] = total;
  }
  if (!is_isomorphism(logic.algebra(), L, map)) return std::nullopt;
  return map;
}

}  // namespace tsp
