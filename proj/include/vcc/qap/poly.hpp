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

#include <utility>
#include <vector>

#include "vcc/field.hpp"

namespace vcc::qap {

// Polynomial over F_p with coefficients in ascending degree. Canonical form
// has no trailing zero coefficient; the zero polynomial is empty.
struct FieldPoly {
  std::vector<Fe> coeffs;

  FieldPoly() = default;
  explicit FieldPoly(std::vector<Fe> c);

  bool is_zero() const { return coeffs.empty(); }
  // -1 for the zero polynomial.
  long degree() const { return static_cast<long>(coeffs.size()) - 1; }
  void trim();

  bool operator==(const FieldPoly&) const = default;
};

FieldPoly add(const PrimeField& f, const FieldPoly& p, const FieldPoly& q);
FieldPoly sub(const PrimeField& f, const FieldPoly& p, const FieldPoly& q);
FieldPoly mul(const PrimeField& f, const FieldPoly& p, const FieldPoly& q);
FieldPoly scale(const PrimeField& f, const FieldPoly& p, Fe c);
Fe eval(const PrimeField& f, const FieldPoly& p, Fe x);

// p += c * q, in place.
void add_scaled(const PrimeField& f, FieldPoly& p, const FieldPoly& q, Fe c);

// Unique polynomial of degree < points.size() through the points (Lagrange).
// Throws Error(DuplicateAbscissa).
FieldPoly interpolate(const PrimeField& f, const std::vector<std::pair<Fe, Fe>>& points);

// Quotient and remainder of p / d; d must be nonzero.
std::pair<FieldPoly, FieldPoly> divmod(const PrimeField& f, const FieldPoly& p,
                                       const FieldPoly& d);

// prod (x - r_i).
FieldPoly vanishing(const PrimeField& f, const std::vector<Fe>& roots);

}  // namespace vcc::qap
