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
#include <string>
#include <vector>

#include "vcc/circuit/circuit.hpp"
#include "vcc/error.hpp"
#include "vcc/qap/poly.hpp"

namespace vcc::qap {

using circuit::WireId;

// QAP variable: a circuit wire, or a bit of an EXPAND input that the gate
// does not list as an output.
struct QapVariable {
  enum class Kind { Wire, Bit };
  Kind kind = Kind::Wire;
  WireId wire = 0;
  unsigned bit = 0;

  bool operator==(const QapVariable&) const = default;
};

inline constexpr std::int64_t kOne = -1;

// Sparse linear combination; index kOne is the constant 1.
using LinearCombination = std::vector<std::pair<std::int64_t, Fe>>;

// lhs * rhs = out.
struct Constraint {
  LinearCombination left, right, out;

  bool operator==(const Constraint&) const = default;
};

// Variables are ordered inputs, outputs, then internal. A hidden constant
// term (v0, w0, y0) multiplies the implicit value 1.
struct Qap {
  std::uint64_t modulus = kDefaultModulus;
  std::size_t n_inputs = 0;
  std::size_t n_io = 0;
  std::size_t num_mul_gates = 0;
  std::vector<QapVariable> vars;
  std::vector<Constraint> constraints;  // one per root
  std::vector<Fe> roots;
  FieldPoly v0, w0, y0;
  std::vector<FieldPoly> v, w, y;
  FieldPoly t;

  std::size_t k() const { return vars.size(); }
  std::size_t d() const { return roots.size(); }
  bool operator==(const Qap&) const = default;
};

// One constraint per MUL gate; each EXPAND adds a_i * a_i = a_i per bit and
// one recomposition constraint; each output computed by a linear gate adds
// (combination) * 1 = output. A circuit with no constraint gets 1 * 1 = 1.
// Roots are 1..d and t = prod (x - r).
Qap build_qap(const circuit::Circuit& c);

// Witness in QAP variable order. Throws Error(InconsistentAssignment) unless
// the assignment satisfies every gate.
std::vector<Fe> witness(const circuit::Circuit& c, const Qap& q, const circuit::Assignment& a);

// (sum a_i v_i)(sum a_i w_i) - (sum a_i y_i), constant terms included.
// Throws Error(DimensionMismatch) when |a| != k.
FieldPoly compute_p(const Qap& q, const std::vector<Fe>& a);

// Error(NotDivisible) carrying the nonzero remainder.
class NotDivisibleError : public Error {
 public:
  explicit NotDivisibleError(FieldPoly remainder);
  const FieldPoly& remainder() const { return remainder_; }

 private:
  FieldPoly remainder_;
};

// h with h * t = p. Throws NotDivisibleError.
FieldPoly divide_by_t(const Qap& q, const FieldPoly& p);
FieldPoly divide_by_t(const PrimeField& f, const FieldPoly& p, const FieldPoly& t);

std::string serialize(const Qap& q);
// Throws Error(ParseError).
Qap parse_qap(const std::string& text);

}  // namespace vcc::qap
