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

#include <map>
#include <vector>

#include "vcc/circuit/circuit.hpp"

namespace vcc::circuit {

enum class BoolOp { AND, OR, XOR };
enum class Relation { LT, GT, LE, GE };

// Incremental circuit construction with the gate gadgets. Wire ids are
// assigned densely in creation order.
class Builder {
 public:
  // Throws Error(FieldTooSmall) unless 2^(2*bit_width) < modulus.
  Builder(unsigned bit_width, std::uint64_t modulus);

  WireId add_input(unsigned width, bool is_signed);
  void add_output(WireId w, bool is_signed = false);

  // Zero and one are always synthesized; each further constant costs one
  // MUL-CONST gate applied to the one-wire. Requires an input wire.
  void emit_constants(const std::vector<Fe>& needed);
  WireId zero() const;
  WireId one() const;
  // Wire carrying constant c; c must have been passed to emit_constants.
  WireId constant(Fe c) const;
  bool has_constant(Fe c) const;
  // Value of w if it is a synthesized constant wire.
  bool constant_value(WireId w, Fe& out) const;

  // Raw gates.
  WireId add(WireId a, WireId b);
  WireId mul(WireId a, WireId b);
  WireId mul_const(WireId a, Fe c);
  std::vector<WireId> expand(WireId a, const std::vector<unsigned>& positions);
  WireId compress(const std::vector<WireId>& bits);

  // Low n bits of a (identity when a already fits).
  WireId truncate(WireId a, unsigned n);

  WireId emit_not(WireId a);
  WireId emit_bool(WireId a, WireId b, BoolOp op);
  // Two's-complement negation on bit_width bits.
  WireId emit_negate(WireId a);
  // 1 iff the low `bits` bits of a are all zero (bits = 0 means bit_width).
  WireId emit_is_zero(WireId a, unsigned bits = 0);
  WireId emit_equal(WireId a, WireId b);
  WireId emit_compare(WireId a, WireId b, Relation rel, bool is_signed);
  WireId emit_mux(WireId cond, WireId a, WireId b);

  unsigned width(WireId w) const { return c_.widths.at(w); }
  unsigned bit_width() const { return c_.bit_width; }
  const PrimeField& field() const { return f_; }
  const Circuit& circuit() const { return c_; }
  Circuit finish();

 private:
  WireId new_wire(unsigned width);
  WireId emit(GateKind kind, std::vector<WireId> in, unsigned out_width, Fe constant = 0);
  unsigned cap(unsigned w) const;

  Circuit c_;
  PrimeField f_;
  std::map<Fe, WireId> consts_;
  std::map<WireId, Fe> const_of_;
  WireId zero_ = 0, one_ = 0;
  bool have_consts_ = false;
};

}  // namespace vcc::circuit
