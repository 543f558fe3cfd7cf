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
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tsp/errors.hpp"
#include "tsp/events.hpp"
#include "tsp/orthoalgebra.hpp"
#include "tsp/test_space.hpp"

namespace tsp {

/// Witness that a space is not algebraic: A ~ B and B oc C, but not A oc C.
struct AlgebraicityCounterexample {
  OutcomeSet a;
  OutcomeSet b;
  OutcomeSet c;
};

struct AlgebraicityResult {
  bool algebraic = true;
  std::optional<AlgebraicityCounterexample> counterexample;
};

AlgebraicityResult is_algebraic(const TestSpace& ts, const EventOptions& options = {});

class NotAlgebraic : public Error {
 public:
  NotAlgebraic(const std::string& what, AlgebraicityCounterexample witness)
      : Error(what), witness_(std::move(witness)) {}
  const AlgebraicityCounterexample& witness() const noexcept { return witness_; }

 private:
  AlgebraicityCounterexample witness_;
};

struct LogicOptions {
  EventOptions events;
  /// Refuse to build logics with more perspectivity classes than this.
  std::size_t max_classes = 4096;
};

/// The logic of an algebraic test space: perspectivity classes of events with
/// their orthoalgebra structure.
///
/// Class 0 is the class of the empty event. Classes are ordered by their
/// lowest-indexed member event, so ids are stable across runs.
class Logic {
 public:
  Logic(EventSet events, std::vector<std::size_t> class_of_event, OrthoalgebraTable algebra);

  std::size_t size() const noexcept { return algebra_.size(); }
  const OrthoalgebraTable& algebra() const noexcept { return algebra_; }
  const EventSet& events() const noexcept { return events_; }

  std::size_t class_of_event(std::size_t event) const { return class_of_event_.at(event); }
  /// Throws InvalidInput when `members` is not an event.
  std::size_t class_of(const OutcomeSet& members) const;
  /// Event indices in class p, ascending.
  const std::vector<std::size_t>& members(std::size_t p) const { return members_.at(p); }
  const Event& representative(std::size_t p) const { return events_[members_.at(p).front()]; }

 private:
  EventSet events_;
  std::vector<std::size_t> class_of_event_;
  std::vector<std::vector<std::size_t>> members_;
  OrthoalgebraTable algebra_;
};

/// Builds Π(X, A). Throws NotAlgebraic (with a counterexample) on non-algebraic
/// spaces, CapExceeded when the events or classes exceed their caps, and
/// AxiomViolation if the constructed structure fails an internal check.
Logic build_logic(const TestSpace& ts, const LogicOptions& options = {});

/// p ≤ q in the natural order: some r has p ⊕ r = q.
bool natural_order(const OrthoalgebraTable& algebra, std::size_t p, std::size_t q);
/// The same order read off orthogonality: p ≤ q iff p ⊥ q'.
bool order_by_complement(const OrthoalgebraTable& algebra, std::size_t p, std::size_t q);

struct CoherenceFlags {
  bool orthocoherent = false;
  bool osum_is_join = false;
  bool omp = false;
  /// First orthogonal pair whose join does not exist, if any.
  std::optional<std::pair<std::size_t, std::size_t>> missing_join;

  bool consistent() const noexcept { return orthocoherent == osum_is_join && osum_is_join == omp; }
};

/// Evaluates orthocoherence, "⊕ is the join", and the orthomodular-poset
/// axioms independently of each other.
CoherenceFlags check_coherence(const OrthoalgebraTable& algebra);

struct OaTestSpaceOptions {
  std::size_t max_tests = std::size_t{1} << 20;
};

/// Test space on the nonzero elements whose tests are the finite sets summing to 1.
TestSpace oa_to_test_space(const OrthoalgebraTable& algebra, const OaTestSpaceOptions& options = {});

/// True when `map` (indices of `from` to indices of `to`) is a bijection that
/// preserves 0, 1, definedness of ⊕ and its values.
bool is_isomorphism(const OrthoalgebraTable& from, const OrthoalgebraTable& to, const std::vector<std::size_t>& map);

/// Backtracking search for an isomorphism between two finite orthoalgebras.
std::optional<std::vector<std::size_t>> find_isomorphism(const OrthoalgebraTable& from, const OrthoalgebraTable& to);

/// Rebuilds the logic of oa_to_test_space(algebra) and returns the canonical map
/// p(A) ↦ ⊕A into `algebra`, if it is an isomorphism.
std::optional<std::vector<std::size_t>> roundtrip_logic(const OrthoalgebraTable& algebra,
                                                        const LogicOptions& options = {});

}  // namespace tsp
