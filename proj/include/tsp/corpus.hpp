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
#include <string>
#include <string_view>
#include <vector>

#include "tsp/test_space.hpp"

namespace tsp::corpus {

/// One test with n outcomes (a, b, c, ... for n ≤ 26, x01, x02, ... above).
TestSpace classical(std::size_t n);
/// {a,b}, {c,d}.
TestSpace two_disjoint();
/// {a,b,c}, {c,d,e}: two tests glued along c.
TestSpace glued_pair();
/// {a,x,b}, {b,y,c}, {c,z,a}.
TestSpace triangle();
/// {a,a'}, {b,b'}: logic is MO2.
TestSpace mo2();

/// Looks up a corpus instance by name: classical-<n>, two-disjoint,
/// glued-pair, triangle, mo2. Throws InvalidInput for unknown names.
TestSpace by_name(std::string_view name);
std::vector<std::string> names();

}  // namespace tsp::corpus
