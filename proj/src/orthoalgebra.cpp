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

#include "tsp/orthoalgebra.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "tsp/errors.hpp"

namespace tsp {

namespace {

[[noreturn]] void axiom_failure(const std::string& what) { throw AxiomViolation(what); }

}  // namespace

OrthoalgebraTable::OrthoalgebraTable(std::vector<std::string> labels, std::size_t zero, std::size_t one,
                                     const std::vector<SumEntry>& sums)
    : labels_(std::move(labels)), zero_(zero), one_(one) {
  const std::size_t n = labels_.size();
  if (n < 2) axiom_failure("an orthoalgebra needs distinct 0 and 1");
  if (zero_ >= n || one_ >= n) axiom_failure("zero/one index out of range");
  if (zero_ == one_) axiom_failure("0 and 1 coincide");
  for (std::size_t i = 0; i < n; ++i) {
    if (!index_.emplace(labels_[i], i).second) axiom_failure("duplicate element label '" + labels_[i] + "'");
  }

  table_.assign(n * n, -1);
  auto set = [&](std::size_t p, std::size_t q, std::size_t r) {
    auto& cell = table_[p * n + q];
    if (cell >= 0 && static_cast<std::size_t>(cell) != r) {
      axiom_failure("conflicting sums for " + labels_[p] + " ⊕ " + labels_[q] + ": " + labels_[cell] + " and " +
                    labels_[r]);
    }
    cell = static_cast<std::int32_t>(r);
  };
  for (std::size_t p = 0; p < n; ++p) {
    set(p, zero_, p);
    set(zero_, p, p);
  }
  for (const auto& e : sums) {
    if (e.p >= n || e.q >= n || e.r >= n) axiom_failure("sum entry refers to an unknown element");
    set(e.p, e.q, e.r);
    set(e.q, e.p, e.r);
  }

  partners_.resize(n);
  orth_.assign(n, boost::dynamic_bitset<>(n));
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      if (table_[p * n + q] >= 0) {
        partners_[p].push_back(q);
        orth_[p].set(q);
      }
    }
  }
  check_axioms();
  build_order();
}

void OrthoalgebraTable::check_axioms() const {
  const std::size_t n = size();
  // (1) associativity, one side defined iff the other is. Commutativity holds by
  // construction, so checking (p⊕q)⊕r ⇒ p⊕(q⊕r) covers both directions.
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q : partners_[p]) {
      const std::size_t s = *sum(p, q);
      for (std::size_t r : partners_[s]) {
        const std::size_t t = *sum(s, r);
        auto u = sum(q, r);
        if (!u || !sum(p, *u) || *sum(p, *u) != t) {
          axiom_failure("associativity fails for (" + labels_[p] + ", " + labels_[q] + ", " + labels_[r] + ")");
        }
      }
    }
  }
  // (2) p ⊕ p only for p = 0.
  for (std::size_t p = 0; p < n; ++p) {
    if (p != zero_ && orthogonal(p, p)) axiom_failure(labels_[p] + " ⊕ " + labels_[p] + " is defined");
  }
  // (4) unique orthocomplement.
  for (std::size_t p = 0; p < n; ++p) {
    std::size_t count = 0;
    for (std::size_t q : partners_[p]) count += (*sum(p, q) == one_);
    if (count != 1) {
      axiom_failure(labels_[p] + " has " + std::to_string(count) + " elements summing with it to 1");
    }
  }
}

void OrthoalgebraTable::build_order() {
  const std::size_t n = size();
  complement_.assign(n, 0);
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q : partners_[p]) {
      if (*sum(p, q) == one_) complement_[p] = q;
    }
  }
  up_.assign(n, boost::dynamic_bitset<>(n));
  down_.assign(n, boost::dynamic_bitset<>(n));
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t r : partners_[p]) {
      const std::size_t q = *sum(p, r);
      up_[p].set(q);
      down_[q].set(p);
    }
  }
  down_size_.resize(n);
  for (std::size_t p = 0; p < n; ++p) {
    down_size_[p] = down_[p].count();
    if (!up_[zero_].test(p) || !up_[p].test(one_)) axiom_failure("order is not bounded at " + labels_[p]);
    for (std::size_t q = up_[p].find_first(); q != boost::dynamic_bitset<>::npos; q = up_[p].find_next(q)) {
      if (q != p && up_[q].test(p)) axiom_failure("order is not antisymmetric at " + labels_[p] + ", " + labels_[q]);
      if (!up_[q].is_subset_of(up_[p])) axiom_failure("order is not transitive above " + labels_[p]);
    }
  }
}

std::optional<std::size_t> OrthoalgebraTable::index_of(std::string_view label) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> OrthoalgebraTable::join(std::size_t p, std::size_t q) const {
  boost::dynamic_bitset<> upper = up_.at(p) & up_.at(q);
  // A least element of the upper bounds has strictly the smallest down-set.
  std::size_t best = boost::dynamic_bitset<>::npos;
  for (std::size_t u = upper.find_first(); u != boost::dynamic_bitset<>::npos; u = upper.find_next(u)) {
    if (best == boost::dynamic_bitset<>::npos || down_size_[u] < down_size_[best]) best = u;
  }
  if (best == boost::dynamic_bitset<>::npos || !upper.is_subset_of(up_[best])) return std::nullopt;
  return best;
}

std::optional<std::size_t> OrthoalgebraTable::meet(std::size_t p, std::size_t q) const {
  boost::dynamic_bitset<> lower = down_.at(p) & down_.at(q);
  std::size_t best = boost::dynamic_bitset<>::npos;
  for (std::size_t u = lower.find_first(); u != boost::dynamic_bitset<>::npos; u = lower.find_next(u)) {
    if (best == boost::dynamic_bitset<>::npos || down_size_[u] > down_size_[best]) best = u;
  }
  if (best == boost::dynamic_bitset<>::npos || !lower.is_subset_of(down_[best])) return std::nullopt;
  return best;
}

std::size_t OrthoalgebraTable::defined_pairs() const noexcept {
  return static_cast<std::size_t>(std::count_if(table_.begin(), table_.end(), [](auto c) { return c >= 0; }));
}

std::uint64_t OrthoalgebraTable::digest() const noexcept {
  std::uint64_t h = 14695981039346656037ULL;
  auto mix = [&h](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xffU;
      h *= 1099511628211ULL;
    }
  };
  mix(size());
  mix(zero_);
  mix(one_);
  for (auto c : table_) mix(static_cast<std::uint64_t>(static_cast<std::int64_t>(c)));
  return h;
}

OrthoalgebraTable parse_orthoalgebra(std::string_view text) {
  std::vector<std::string> labels;
  std::unordered_map<std::string, std::size_t> index;
  std::optional<std::size_t> zero;
  std::optional<std::size_t> one;
  std::vector<OrthoalgebraTable::SumEntry> sums;

  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream words(line);
    std::vector<std::string> tokens;
    for (std::string w; words >> w;) tokens.push_back(w);
    if (tokens.empty()) continue;
    const std::size_t col = line.find(tokens[0]) + 1;
    auto lookup = [&](const std::string& label) {
      auto it = index.find(label);
      if (it == index.end()) throw ParseError(line_no, line.find(label) + 1, "unknown element '" + label + "'");
      return it->second;
    };
    const std::string& head = tokens[0];
    if (head == "elements") {
      if (!labels.empty()) throw ParseError(line_no, col, "second 'elements' line");
      for (std::size_t i = 1; i < tokens.size(); ++i) {
        if (!index.emplace(tokens[i], labels.size()).second) {
          throw ParseError(line_no, line.find(tokens[i]) + 1, "duplicate element '" + tokens[i] + "'");
        }
        labels.push_back(tokens[i]);
      }
    } else if (labels.empty()) {
      throw ParseError(line_no, col, "'elements' line must come first");
    } else if (head == "zero" || head == "one") {
      if (tokens.size() != 2) throw ParseError(line_no, col, "'" + head + "' takes exactly one element");
      (head == "zero" ? zero : one) = lookup(tokens[1]);
    } else if (head == "sum") {
      if (tokens.size() != 4) throw ParseError(line_no, col, "'sum' takes three elements: p q p⊕q");
      sums.push_back({lookup(tokens[1]), lookup(tokens[2]), lookup(tokens[3])});
    } else {
      throw ParseError(line_no, col, "unexpected keyword '" + head + "'");
    }
  }
  if (labels.empty()) throw ParseError(line_no + 1, 1, "missing 'elements' line");
  if (!zero) throw ParseError(line_no + 1, 1, "missing 'zero' line");
  if (!one) throw ParseError(line_no + 1, 1, "missing 'one' line");
  return OrthoalgebraTable(std::move(labels), *zero, *one, sums);
}

std::string format_orthoalgebra(const OrthoalgebraTable& algebra) {
  std::ostringstream out;
  out << "elements";
  for (const auto& l : algebra.labels()) out << ' ' << l;
  out << "\nzero " << algebra.label(algebra.zero()) << "\none " << algebra.label(algebra.one()) << '\n';
  for (std::size_t p = 0; p < algebra.size(); ++p) {
    if (p == algebra.zero()) continue;
    for (std::size_t q : algebra.partners(p)) {
      if (q < p || q == algebra.zero()) continue;
      out << "sum " << algebra.label(p) << ' ' << algebra.label(q) << ' ' << algebra.label(*algebra.sum(p, q)) << '\n';
    }
  }
  return out.str();
}

OrthoalgebraTable boolean_algebra(std::size_t n) {
  if (n == 0 || n > 16) throw InvalidInput("boolean_algebra: n must be in 1..16");
  const std::size_t size = std::size_t{1} << n;
  std::vector<std::string> labels(size);
  for (std::size_t m = 0; m < size; ++m) {
    if (m == 0) {
      labels[m] = "0";
    } else if (m == size - 1) {
      labels[m] = "1";
    } else {
      std::string s = "{";
      for (std::size_t i = 0; i < n; ++i) {
        if (m >> i & 1U) {
          if (s.size() > 1) s += ',';
          s += std::to_string(i + 1);
        }
      }
      labels[m] = s + "}";
    }
  }
  std::vector<OrthoalgebraTable::SumEntry> sums;
  for (std::size_t p = 1; p < size; ++p) {
    for (std::size_t q = p + 1; q < size; ++q) {
      if ((p & q) == 0) sums.push_back({p, q, p | q});
    }
  }
  return OrthoalgebraTable(std::move(labels), 0, size - 1, sums);
}

OrthoalgebraTable mo2_algebra() {
  return OrthoalgebraTable({"0", "a", "a'", "b", "b'", "1"}, 0, 5, {{1, 2, 5}, {3, 4, 5}});
}

}  // namespace tsp
