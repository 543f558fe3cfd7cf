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

#include "tsp/corpus.hpp"

#include <algorithm>
#include <charconv>

#include "tsp/errors.hpp"

namespace tsp::corpus {

namespace {

TestSpace make(std::vector<std::vector<std::string>> tests) {
  std::vector<std::string> outcomes;
  for (const auto& t : tests) {
    for (const auto& x : t) {
      if (std::find(outcomes.begin(), outcomes.end(), x) == outcomes.end()) outcomes.push_back(x);
    }
  }
  return TestSpace(std::move(outcomes), tests);
}

}  // namespace

TestSpace classical(std::size_t n) {
  if (n == 0) throw InvalidInput("classical space needs at least one outcome");
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < n; ++i) {
    if (n <= 26) {
      ids.emplace_back(1, static_cast<char>('a' + i));
    } else {
      std::string num = std::to_string(i + 1);
      ids.push_back("x" + std::string(std::to_string(n).size() - num.size(), '0') + num);
    }
  }
  return make({ids});
}

TestSpace two_disjoint() { return make({{"a", "b"}, {"c", "d"}}); }
TestSpace glued_pair() { return make({{"a", "b", "c"}, {"c", "d", "e"}}); }
TestSpace triangle() { return make({{"a", "x", "b"}, {"b", "y", "c"}, {"c", "z", "a"}}); }
TestSpace mo2() { return make({{"a", "a'"}, {"b", "b'"}}); }

TestSpace by_name(std::string_view name) {
  if (name == "two-disjoint") return two_disjoint();
  if (name == "glued-pair") return glued_pair();
  if (name == "triangle") return triangle();
  if (name == "mo2") return mo2();
  constexpr std::string_view kClassical = "classical-";
  if (name.starts_with(kClassical)) {
    std::string_view digits = name.substr(kClassical.size());
    std::size_t n = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
    if (ec == std::errc() && ptr == digits.data() + digits.size() && n >= 1 && n <= 64) return classical(n);
  }
  throw InvalidInput("unknown corpus instance '" + std::string(name) + "' (known: classical-<n>, two-disjoint, "
                     "glued-pair, triangle, mo2)");
}

std::vector<std::string> names() { return {"classical-<n>", "two-disjoint", "glued-pair", "triangle", "mo2"}; }

}  // namespace tsp::corpus
