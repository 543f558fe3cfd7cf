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

#include "tsp/semiclassical.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <sstream>

namespace tsp {

SemiclassicalCheck is_semiclassical(const TestSpace& ts) {
  for (std::size_t i = 0; i < ts.test_count(); ++i) {
    for (std::size_t j = i + 1; j < ts.test_count(); ++j) {
      if (!disjoint(ts.test(i), ts.test(j))) return {false, std::make_pair(i, j)};
    }
  }
  return {true, std::nullopt};
}

std::uint64_t horizontal_sum_size(const TestSpace& ts) {
  const auto check = is_semiclassical(ts);
  if (!check.semiclassical) {
    throw InvalidInput("tests " + ts.format_set(ts.test(check.overlapping->first)) + " and " +
                       ts.format_set(ts.test(check.overlapping->second)) + " overlap");
  }
  std::uint64_t total = 2;
  for (const auto& t : ts.tests()) {
    if (t.size() < 2) throw InvalidInput("test " + ts.format_set(t) + " has a single outcome");
    if (t.size() > 62) throw CapExceeded("test " + ts.format_set(t) + " is too large");
    total += (std::uint64_t{1} << t.size()) - 2;
  }
  return total;
}

std::vector<std::size_t> disjoint_tests(const TestSpace& ts, std::size_t test) {
  const auto& e = ts.test(test);
  std::vector<std::size_t> out;
  for (std::size_t t = 0; t < ts.test_count(); ++t) {
    if (t != test && disjoint(e, ts.test(t))) out.push_back(t);
  }
  return out;
}

namespace {

bool separated(const MetricSample& sample, const OutcomeSet& a, const OutcomeSet& b, double margin) {
  if (!disjoint(a, b)) return false;
  for (auto x : a) {
    for (auto y : b) {
      if (distance(sample.point(x), sample.point(y)) < margin) return false;
    }
  }
  return true;
}

}  // namespace

std::vector<std::size_t> disjoint_tests(const MetricSample& sample, std::size_t test, double margin) {
  const auto& space = sample.space();
  std::vector<std::size_t> out;
  for (std::size_t t = 0; t < space.test_count(); ++t) {
    if (t != test && separated(sample, space.test(test), space.test(t), margin)) out.push_back(t);
  }
  return out;
}

AutoBasis auto_basis(const MetricSample& sample, std::size_t count, double radius) {
  if (count < 1) throw InvalidInput("basis size must be positive");
  if (!(radius > 0)) throw InvalidInput("basis radius must be positive");
  const auto& space = sample.space();
  if (count > space.test_count()) throw InvalidInput("basis larger than the number of tests");
  AutoBasis out;
  std::vector<double> gap(sample.size(), std::numeric_limits<double>::infinity());
  std::vector<bool> used(space.test_count(), false);
  std::size_t next = 0;
  while (out.seeds.size() < count) {
    used[next] = true;
    out.seeds.push_back(next);
    std::vector<Ball> balls;
    for (auto x : space.test(next)) {
      balls.push_back({sample.point(x), radius});
      for (std::size_t i = 0; i < sample.size(); ++i) gap[i] = std::min(gap[i], distance(sample.point(i), sample.point(x)));
    }
    out.opens.emplace_back(std::move(balls));
    // The next seed is an unused test through the point farthest from all seed points.
    std::size_t far = sample.size();
    for (std::size_t i = 0; i < sample.size(); ++i) {
      const auto& through = space.tests_containing(i);
      const bool open = std::any_of(through.begin(), through.end(), [&](std::size_t t) { return !used[t]; });
      if (open && (far == sample.size() || gap[i] > gap[far])) far = i;
    }
    if (far == sample.size()) break;
    for (auto t : space.tests_containing(far)) {
      if (!used[t]) {
        next = t;
        break;
      }
    }
  }
  return out;
}

std::vector<VietorisBasicOpen> parse_basis(std::string_view text) {
  std::vector<VietorisBasicOpen> out;
  std::vector<Ball> current;
  bool in_open = false;
  std::optional<Eigen::Index> dimension;
  auto flush = [&]() {
    if (in_open) out.emplace_back(std::move(current));
    current.clear();
  };
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream words(line);
    std::string keyword;
    if (!(words >> keyword)) continue;
    if (keyword == "open") {
      flush();
      in_open = true;
      continue;
    }
    if (keyword != "ball") throw ParseError(line_no, 1, "expected 'open' or 'ball'");
    if (!in_open) throw ParseError(line_no, 1, "'ball' before any 'open'");
    std::vector<double> xs;
    for (std::string w; words >> w;) {
      try {
        std::size_t used = 0;
        xs.push_back(std::stod(w, &used));
        if (used != w.size()) throw std::invalid_argument(w);
      } catch (const std::exception&) {
        throw ParseError(line_no, line.find(w) + 1, "bad number '" + w + "'");
      }
    }
    if (xs.size() < 3) throw ParseError(line_no, 1, "'ball' needs a radius and a center");
    const auto d = static_cast<Eigen::Index>(xs.size() - 1);
    if (dimension && *dimension != d) throw ParseError(line_no, 1, "inconsistent dimension");
    dimension = d;
    current.push_back({Eigen::Map<const Eigen::VectorXd>(xs.data() + 1, d), xs[0]});
  }
  flush();
  if (out.empty()) throw InvalidInput("basis file has no opens");
  return out;
}

ExtractionResult extract_semiclassical(const MetricSample& sample, const std::vector<VietorisBasicOpen>& basis,
                                       double density_target, const ExtractionOptions& options) {
  if (basis.empty()) throw InvalidInput("extraction needs a non-empty basis");
  if (!(options.margin >= 0)) throw InvalidInput("margin must be non-negative");
  for (const auto& open : basis) {
    for (const auto& b : open.balls()) {
      if (static_cast<std::size_t>(b.center.size()) != sample.dimension()) {
        throw InvalidInput("basis dimension does not match the sample");
      }
    }
  }
  const auto& space = sample.space();
  ExtractionResult out;
  out.density_target = density_target;
  std::vector<bool> taken(space.test_count(), false);
  for (std::size_t k = 0; k < basis.size(); ++k) {
    std::optional<std::size_t> choice;
    for (std::size_t t = 0; t < space.test_count() && !choice; ++t) {
      if (taken[t] || !vietoris_member(sample.test_points(t), basis[k])) continue;
      const bool clear = std::all_of(out.selected.begin(), out.selected.end(), [&](std::size_t s) {
        return separated(sample, space.test(s), space.test(t), options.margin);
      });
      if (clear) choice = t;
    }
    if (choice) {
      taken[*choice] = true;
      out.basis_hits.push_back(out.selected.size());
      out.selected.push_back(*choice);
    } else {
      out.basis_hits.push_back(std::nullopt);
      out.failures.push_back(k);
    }
  }

  const PointSet& probes = options.probes.empty() ? sample.points() : options.probes;
  out.coverage_radius = 0.0;
  if (out.selected.empty()) {
    out.coverage_radius = std::numeric_limits<double>::infinity();
    return out;
  }
  for (const auto& p : probes) {
    double nearest = std::numeric_limits<double>::infinity();
    for (auto s : out.selected) {
      for (auto x : space.test(s)) nearest = std::min(nearest, distance(p, sample.point(x)));
    }
    out.coverage_radius = std::max(out.coverage_radius, nearest);
  }
  return out;
}

TestSpace induced_test_space(const MetricSample& sample, const ExtractionResult& result) {
  if (result.selected.empty()) throw InvalidInput("extraction selected no tests");
  const auto& space = sample.space();
  std::vector<std::string> ids;
  std::vector<std::vector<std::string>> tests;
  for (auto s : result.selected) {
    std::vector<std::string> row;
    for (auto x : space.test(s)) {
      ids.push_back(space.id(x));
      row.push_back(space.id(x));
    }
    tests.push_back(std::move(row));
  }
  return TestSpace(std::move(ids), tests);
}

HiddenVariableModel hidden_variable_state(const MetricSample& sample, const ExtractionResult& result,
                                          std::uint64_t seed) {
  TestSpace sub = induced_test_space(sample, result);
  std::mt19937_64 rng(seed);
  std::vector<Rational> values(sub.outcome_count());
  for (const auto& t : sub.tests()) {
    std::uniform_int_distribution<std::size_t> pick(0, t.size() - 1);
    values[t[pick(rng)]] = 1;
  }
  return {std::move(sub), State::exact(std::move(values))};
}

}  // namespace tsp
