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

#include "tsp/events.hpp"

#include <algorithm>
#include <limits>

#include "tsp/errors.hpp"

namespace tsp {

namespace {

bool event_order(const Event& a, const Event& b) {
  if (a.members.size() != b.members.size()) return a.members.size() < b.members.size();
  return a.members < b.members;
}

void require_event(const TestSpace& ts, const OutcomeSet& a, const char* name) {
  for (OutcomeIndex x : a) {
    if (x >= ts.outcome_count()) throw InvalidInput(std::string(name) + " refers to an unknown outcome");
  }
  if (!std::is_sorted(a.begin(), a.end()) || std::adjacent_find(a.begin(), a.end()) != a.end()) {
    throw InvalidInput(std::string(name) + " is not a sorted outcome set");
  }
  if (!is_event(ts, a)) throw InvalidInput(std::string(name) + " " + ts.format_set(a) + " is not an event");
}

}  // namespace

EventSet::EventSet(std::vector<Event> events) : events_(std::move(events)) {
  std::sort(events_.begin(), events_.end(), event_order);
  for (std::size_t i = 0; i < events_.size(); ++i) {
    if (!lookup_.emplace(events_[i].members, i).second) throw InvalidInput("duplicate event in event set");
  }
}

std::optional<std::size_t> EventSet::find(const OutcomeSet& members) const {
  auto it = lookup_.find(members);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

std::size_t event_budget(const TestSpace& ts) {
  constexpr std::size_t kMax = std::numeric_limits<std::size_t>::max();
  std::size_t total = 0;
  for (const auto& t : ts.tests()) {
    if (t.size() >= 63) return kMax;
    std::size_t n = std::size_t{1} << t.size();
    if (total > kMax - n) return kMax;
    total += n;
  }
  return total;
}

EventSet enumerate_events(const TestSpace& ts, const EventOptions& options) {
  const std::size_t budget = event_budget(ts);
  if (budget > options.cap) {
    throw CapExceeded("event enumeration needs " + std::to_string(budget) + " subsets, cap is " +
                      std::to_string(options.cap));
  }
  std::map<OutcomeSet, std::size_t> seen;
  for (std::size_t t = 0; t < ts.test_count(); ++t) {
    const OutcomeSet& test = ts.test(t);
    const std::uint64_t limit = std::uint64_t{1} << test.size();
    for (std::uint64_t mask = 0; mask < limit; ++mask) {
      OutcomeSet members;
      for (std::size_t i = 0; i < test.size(); ++i) {
        if (mask >> i & 1U) members.push_back(test[i]);
      }
      seen.emplace(std::move(members), t);
    }
  }
  std::vector<Event> events;
  events.reserve(seen.size());
  for (auto& [members, witness] : seen) events.push_back({members, witness});
  return EventSet(std::move(events));
}

bool is_event(const TestSpace& ts, const OutcomeSet& a) {
  if (a.empty()) return true;
  for (std::size_t t : ts.tests_containing(a.front())) {
    if (is_subset(a, ts.test(t))) return true;
  }
  return false;
}

bool orthogonal(const TestSpace& ts, OutcomeIndex x, OutcomeIndex y) {
  if (x >= ts.outcome_count() || y >= ts.outcome_count()) throw InvalidInput("unknown outcome index");
  if (x == y) return false;
  const auto& tx = ts.tests_containing(x);
  const auto& ty = ts.tests_containing(y);
  auto i = tx.begin();
  auto j = ty.begin();
  while (i != tx.end() && j != ty.end()) {
    if (*i == *j) return true;
    if (*i < *j) ++i; else ++j;
  }
  return false;
}

bool orthogonal(const TestSpace& ts, std::string_view x, std::string_view y) {
  return orthogonal(ts, ts.index_of(x), ts.index_of(y));
}

bool complementary(const TestSpace& ts, const OutcomeSet& a, const OutcomeSet& c) {
  require_event(ts, a, "A");
  require_event(ts, c, "C");
  return disjoint(a, c) && ts.find_test(set_union(a, c)).has_value();
}

std::vector<OutcomeSet> complements_of(const TestSpace& ts, const OutcomeSet& a) {
  std::vector<OutcomeSet> out;
  auto add = [&](std::size_t t) {
    if (is_subset(a, ts.test(t))) out.push_back(set_difference(ts.test(t), a));
  };
  if (a.empty()) {
    for (std::size_t t = 0; t < ts.test_count(); ++t) add(t);
  } else {
    for (std::size_t t : ts.tests_containing(a.front())) add(t);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool perspective(const TestSpace& ts, const OutcomeSet& a, const OutcomeSet& b) {
  require_event(ts, a, "A");
  require_event(ts, b, "B");
  for (const auto& c : complements_of(ts, a)) {
    if (disjoint(b, c) && ts.find_test(set_union(b, c))) return true;
  }
  return false;
}

bool orthogonal_events(const TestSpace& ts, const OutcomeSet& a, const OutcomeSet& b) {
  require_event(ts, a, "A");
  require_event(ts, b, "B");
  return disjoint(a, b) && is_event(ts, set_union(a, b));
}

}  // namespace tsp
