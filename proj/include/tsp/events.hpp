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
#include <map>
#include <optional>
#include <vector>

#include "tsp/test_space.hpp"

namespace tsp {

/// A subset of some test, together with the first test that contains it.
struct Event {
  OutcomeSet members;
  std::size_t witness_test = 0;

  bool operator==(const Event&) const = default;
};

struct EventOptions {
  /// Upper bound on the sum over tests of 2^|E|.
  std::size_t cap = std::size_t{1} << 20;
};

/// The deduplicated event set E(X, A) with index lookup.
///
/// Ordering: by cardinality, then lexicographically by member indices. The
/// empty event is always index 0.
class EventSet {
 public:
  EventSet() = default;
  explicit EventSet(std::vector<Event> events);

  std::size_t size() const noexcept { return events_.size(); }
  const Event& operator[](std::size_t i) const { return events_[i]; }
  const std::vector<Event>& events() const noexcept { return events_; }
  auto begin() const noexcept { return events_.begin(); }
  auto end() const noexcept { return events_.end(); }

  std::optional<std::size_t> find(const OutcomeSet& members) const;

 private:
  std::vector<Event> events_;
  std::map<OutcomeSet, std::size_t> lookup_;
};

/// Sum over tests of 2^|E|, saturating.
std::size_t event_budget(const TestSpace& ts);

/// Throws CapExceeded when event_budget(ts) > options.cap.
EventSet enumerate_events(const TestSpace& ts, const EventOptions& options = {});

bool is_event(const TestSpace& ts, const OutcomeSet& a);

/// x ⊥ y: distinct and in a common test.
bool orthogonal(const TestSpace& ts, OutcomeIndex x, OutcomeIndex y);
/// Id-based overload; throws InvalidInput on unknown ids.
bool orthogonal(const TestSpace& ts, std::string_view x, std::string_view y);

/// A oc C: disjoint with union a test. Throws InvalidInput if either is not an event.
bool complementary(const TestSpace& ts, const OutcomeSet& a, const OutcomeSet& c);

/// A ~ B: some event is complementary to both.
bool perspective(const TestSpace& ts, const OutcomeSet& a, const OutcomeSet& b);

/// A ⊥ B: disjoint with union an event.
bool orthogonal_events(const TestSpace& ts, const OutcomeSet& a, const OutcomeSet& b);

/// The events complementary to A: {E \ A : E a test containing A}, deduplicated.
std::vector<OutcomeSet> complements_of(const TestSpace& ts, const OutcomeSet& a);

}  // namespace tsp
