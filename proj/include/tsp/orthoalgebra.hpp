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
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace tsp {

/// A finite orthoalgebra given by an explicit partial-sum table.
///
/// Construction fills in commutative partners and the p ⊕ 0 = p entries, then
/// checks the four orthoalgebra axioms and that the natural order is a bounded
/// partial order. Any failure throws AxiomViolation naming the offending
/// elements. Once built the table is immutable.
class OrthoalgebraTable {
 public:
  struct SumEntry {
    std::size_t p;
    std::size_t q;
    std::size_t r;
  };

  OrthoalgebraTable(std::vector<std::string> labels, std::size_t zero, std::size_t one,
                    const std::vector<SumEntry>& sums);

  std::size_t size() const noexcept { return labels_.size(); }
  std::size_t zero() const noexcept { return zero_; }
  std::size_t one() const noexcept { return one_; }
  const std::string& label(std::size_t p) const { return labels_.at(p); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::optional<std::size_t> index_of(std::string_view label) const;

  std::optional<std::size_t> sum(std::size_t p, std::size_t q) const {
    auto r = table_[p * size() + q];
    if (r < 0) return std::nullopt;
    return static_cast<std::size_t>(r);
  }
  bool orthogonal(std::size_t p, std::size_t q) const { return table_[p * size() + q] >= 0; }
  /// The unique q with p ⊕ q = 1.
  std::size_t complement(std::size_t p) const { return complement_.at(p); }
  /// Elements orthogonal to p, ascending.
  const std::vector<std::size_t>& partners(std::size_t p) const { return partners_.at(p); }

  /// Natural order: p ≤ q iff p ⊕ r = q for some r.
  bool leq(std::size_t p, std::size_t q) const { return up_[p].test(q); }
  const boost::dynamic_bitset<>& up_set(std::size_t p) const { return up_.at(p); }
  const boost::dynamic_bitset<>& down_set(std::size_t p) const { return down_.at(p); }
  const boost::dynamic_bitset<>& orthogonal_set(std::size_t p) const { return orth_.at(p); }

  /// Least upper bound in the natural order, when one exists.
  std::optional<std::size_t> join(std::size_t p, std::size_t q) const;
  /// Greatest lower bound in the natural order, when one exists.
  std::optional<std::size_t> meet(std::size_t p, std::size_t q) const;

  /// Number of defined (ordered) pairs in the sum table.
  std::size_t defined_pairs() const noexcept;
  /// FNV-1a digest of the sum table, stable across runs.
  std::uint64_t digest() const noexcept;

 private:
  void check_axioms() const;
  void build_order();

  std::vector<std::string> labels_;
  std::unordered_map<std::string, std::size_t> index_;
  std::size_t zero_;
  std::size_t one_;
  std::vector<std::int32_t> table_;
  std::vector<std::vector<std::size_t>> partners_;
  std::vector<std::size_t> complement_;
  std::vector<boost::dynamic_bitset<>> up_;
  std::vector<boost::dynamic_bitset<>> down_;
  std::vector<boost::dynamic_bitset<>> orth_;
  std::vector<std::size_t> down_size_;
};

/// Parses the orthoalgebra text format:
///
///     elements 0 a b 1
///     zero 0
///     one 1
///     sum a b 1
///
/// Commutative partners and sums with zero may be omitted.
OrthoalgebraTable parse_orthoalgebra(std::string_view text);
std::string format_orthoalgebra(const OrthoalgebraTable& algebra);

/// Boolean algebra of subsets of an n-element set (n ≤ 16). Labels are
/// "0", "1" and member lists such as "{1,3}".
OrthoalgebraTable boolean_algebra(std::size_t n);
/// MO2: 0, a, a', b, b', 1 with a ⊕ a' = b ⊕ b' = 1.
OrthoalgebraTable mo2_algebra();

}  // namespace tsp
