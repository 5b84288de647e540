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

#include <cstddef>
#include <cstdint>
#include <vector>

#include "vcc/minimizer/quine_mccluskey.hpp"

namespace vcc::minimizer {

using Label = std::uint32_t;
// Product of labels, sorted and duplicate free.
using Term = std::vector<Label>;
// Sum of products, sorted, absorbed.
using Sop = std::vector<Term>;

// Product of sums over prime-implicant labels, one sum per minterm.
struct PetrickExpression {
  std::vector<std::vector<Label>> sums;
};

// sums[i] lists the labels (indices into implicants) covering minterms[i].
PetrickExpression petrick_chart(const std::vector<Implicant>& implicants,
                                const std::vector<std::uint32_t>& minterms);

enum class PetrickRule { None, Absorption, Complement, Distribution };

struct PetrickStep {
  std::size_t left = 0;
  std::size_t right = 0;
  PetrickRule rule = PetrickRule::None;
};

struct PetrickResult {
  Term cover;
  std::size_t steps = 0;
  // M(M-1)/2 for the chart.
  std::size_t step_bound = 0;
  std::vector<PetrickStep> trace;
  // Members left after the pairwise traversal.
  std::vector<Sop> residual;
  // Number of products in the expanded residual.
  std::size_t expanded_terms = 0;
  // False when the expansion exceeded kMaxExpandedTerms and a greedy cover
  // was returned instead.
  bool exact = true;
};

inline constexpr std::size_t kMaxExpandedTerms = 1 << 12;

// Pairwise left/right traversal of the sums with the rules
//   u(u+v) = u,  u(u'+v) = uv,  (u+v)(u+w) = u+vw
// tried in that order, then expansion into a sum of products and selection
// of the product with the fewest labels (ties: lexicographically smallest).
// Throws Error(EmptyChart) when there are no sums or a sum is empty.
PetrickResult petrick_reduce(const PetrickExpression& chart);

}  // namespace vcc::minimizer
