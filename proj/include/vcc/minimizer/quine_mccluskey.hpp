// Copyright 2026 The vcc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace vcc::minimizer {

inline constexpr unsigned kMaxVariables = 16;

// Product term over num_vars variables. Bit i of a minterm index is the value
// of variable i. A set bit in `mask` marks variable i as don't-care.
struct Implicant {
  std::uint32_t value = 0;
  std::uint32_t mask = 0;
  unsigned num_vars = 0;

  bool covers(std::uint32_t minterm) const { return (minterm & ~mask) == value; }
  unsigned literals() const;
  std::vector<std::uint32_t> minterms() const;
  // One character per variable, variable 0 first: '0', '1' or '-'.
  std::string pattern() const;

  bool operator==(const Implicant&) const = default;
  bool operator<(const Implicant& o) const;
};

// Number of variables of a truth table of length 2^n. Throws
// Error(TooManyVariables) above kMaxVariables and Error(InvalidConfig) when the
// length is not a power of two.
unsigned num_variables(const std::vector<bool>& truth_table);

// All prime implicants of the function, sorted by literal count and then by
// (mask, value). Throws Error(TooManyVariables) for more than 16 variables.
std::vector<Implicant> quine_mccluskey(const std::vector<bool>& truth_table);

}  // namespace vcc::minimizer
