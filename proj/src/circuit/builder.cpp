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

#include "vcc/circuit/builder.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include "vcc/error.hpp"

namespace vcc::circuit {

Builder::Builder(unsigned bit_width, std::uint64_t modulus) : f_(modulus) {
  if (bit_width == 0 || 2 * bit_width >= 64 || (1ULL << (2 * bit_width)) >= modulus) {
    throw Error(ErrorCode::FieldTooSmall,
                "2^(2*" + std::to_string(bit_width) + ") must be below the field modulus " +
                    std::to_string(modulus));
  }
  c_.bit_width = bit_width;
  c_.field_modulus = modulus;
}

unsigned Builder::cap(unsigned w) const { return std::min(w, f_.bits()); }

WireId Builder::new_wire(unsigned width) {
  c_.widths.push_back(width);
  c_.is_signed.push_back(false);
  return static_cast<WireId>(c_.widths.size() - 1);
}

WireId Builder::emit(GateKind kind, std::vector<WireId> in, unsigned out_width, Fe constant) {
  Gate g;
  g.kind = kind;
  g.inputs = std::move(in);
  g.constant = constant;
  WireId out = new_wire(out_width);
  g.outputs = {out};
  c_.gates.push_back(std::move(g));
  return out;
}

WireId Builder::add_input(unsigned width, bool is_signed) {
  WireId w = new_wire(width);
  c_.is_signed[w] = is_signed;
  c_.input_wires.push_back(w);
  return w;
}

void Builder::add_output(WireId w, bool is_signed) {
  c_.output_wires.push_back(w);
  if (is_signed) c_.is_signed[w] = true;
}

void Builder::emit_constants(const std::vector<Fe>& needed) {
  if (c_.input_wires.empty()) {
    throw Error(ErrorCode::NoInputWire, "constant synthesis needs at least one input wire");
  }
  zero_ = emit(GateKind::ZERO, {c_.input_wires.front()}, 1);
  one_ = emit(GateKind::ONE, {zero_}, 1);
  consts_[0] = zero_;
  consts_[1] = one_;
  const_of_[zero_] = 0;
  const_of_[one_] = 1;
  std::set<Fe> sorted;
  for (Fe c : needed) sorted.insert(f_.reduce(c));
  for (Fe c : sorted) {
    if (c == 0 || c == 1) continue;
    WireId w = emit(GateKind::MUL_CONST, {one_}, static_cast<unsigned>(std::bit_width(c)), c);
    consts_[c] = w;
    const_of_[w] = c;
  }
  have_consts_ = true;
}

WireId Builder::zero() const {
  if (!have_consts_) throw Error(ErrorCode::InvalidCircuit, "constants not synthesized");
  return zero_;
}

WireId Builder::one() const {
  if (!have_consts_) throw Error(ErrorCode::InvalidCircuit, "constants not synthesized");
  return one_;
}

WireId Builder::constant(Fe c) const {
  auto it = consts_.find(f_.reduce(c));
  if (it == consts_.end()) {
    throw Error(ErrorCode::InvalidCircuit, "constant " + std::to_string(c) + " not synthesized");
  }
  return it->second;
}

bool Builder::has_constant(Fe c) const { return consts_.count(f_.reduce(c)) != 0; }

bool Builder::constant_value(WireId w, Fe& out) const {
  auto it = const_of_.find(w);
  if (it == const_of_.end()) return false;
  out = it->second;
  return true;
}

WireId Builder::add(WireId a, WireId b) {
  return emit(GateKind::ADD, {a, b}, cap(std::max(width(a), width(b)) + 1));
}

WireId Builder::mul(WireId a, WireId b) {
  const unsigned wa = width(a), wb = width(b);
  const unsigned w = (wa == 1 || wb == 1) ? std::max(wa, wb) : wa + wb;
  return emit(GateKind::MUL, {a, b}, cap(w));
}

WireId Builder::mul_const(WireId a, Fe c) {
  c = f_.reduce(c);
  unsigned w = c == 0 ? 1 : c == 1 ? width(a) : width(a) + static_cast<unsigned>(std::bit_width(c));
  return emit(GateKind::MUL_CONST, {a}, cap(w), c);
}

std::vector<WireId> Builder::expand(WireId a, const std::vector<unsigned>& positions) {
  for (unsigned p : positions) {
    if (p >= width(a)) {
      throw Error(ErrorCode::WidthMismatch, "EXPAND position " + std::to_string(p) +
                                                " beyond width of wire " + std::to_string(a));
    }
  }
  Gate g;
  g.kind = GateKind::EXPAND;
  g.inputs = {a};
  g.positions = positions;
  for (std::size_t i = 0; i < positions.size(); ++i) g.outputs.push_back(new_wire(1));
  std::vector<WireId> outs = g.outputs;
  c_.gates.push_back(std::move(g));
  return outs;
}

WireId Builder::compress(const std::vector<WireId>& bits) {
  for (WireId b : bits) {
    if (width(b) != 1) throw Error(ErrorCode::WidthMismatch, "COMPRESS of a non-bit wire");
  }
  if (bits.size() == 1) return bits[0];
  Gate g;
  g.kind = GateKind::COMPRESS;
  g.inputs = bits;
  WireId out = new_wire(static_cast<unsigned>(bits.size()));
  g.outputs = {out};
  c_.gates.push_back(std::move(g));
  return out;
}

WireId Builder::truncate(WireId a, unsigned n) {
  if (width(a) <= n) return a;
  std::vector<unsigned> pos(n);
  for (unsigned i = 0; i < n; ++i) pos[i] = i;
  return compress(expand(a, pos));
}

WireId Builder::emit_not(WireId a) {
  if (width(a) != 1) throw Error(ErrorCode::WidthMismatch, "NOT of a non-bit wire");
  Fe v;
  if (constant_value(a, v)) return v ? zero() : one();
  WireId neg = mul_const(a, f_.modulus() - 1);
  return emit(GateKind::ADD, {one(), neg}, 1);
}

WireId Builder::emit_bool(WireId a, WireId b, BoolOp op) {
  if (width(a) != 1 || width(b) != 1) {
    throw Error(ErrorCode::WidthMismatch, "Boolean gadget needs 1-bit operands");
  }
  WireId prod = mul(a, b);
  if (op == BoolOp::AND) return prod;
  const Fe k = op == BoolOp::OR ? f_.modulus() - 1 : f_.modulus() - 2;
  WireId scaled = mul_const(prod, k);
  WireId sum = add(a, b);
  return emit(GateKind::ADD, {sum, scaled}, 1);
}

WireId Builder::emit_negate(WireId a) {
  const unsigned n = c_.bit_width;
  WireId t = truncate(a, n);
  if (t == zero()) return t;
  WireId m = mul_const(t, (n >= 64 ? ~0ULL : (1ULL << n) - 1));
  return truncate(m, n);
}

WireId Builder::emit_is_zero(WireId a, unsigned bits) {
  if (bits == 0) bits = c_.bit_width;
  if (width(a) == 1) return emit_not(a);
  const unsigned m = std::min(bits, width(a));
  std::vector<unsigned> pos(m);
  for (unsigned i = 0; i < m; ++i) pos[i] = i;
  std::vector<WireId> b = expand(a, pos);
  WireId acc = emit_not(b[0]);
  for (unsigned i = 1; i < m; ++i) acc = mul(acc, emit_not(b[i]));
  return acc;
}

WireId Builder::emit_equal(WireId a, WireId b) {
  if (a == zero()) return emit_is_zero(b);
  if (b == zero()) return emit_is_zero(a);
  if (width(a) == 1 && width(b) == 1) return emit_not(emit_bool(a, b, BoolOp::XOR));
  const unsigned n = c_.bit_width;
  WireId diff = add(truncate(a, n), emit_negate(b));
  return emit_is_zero(diff, n);
}

WireId Builder::emit_compare(WireId a, WireId b, Relation rel, bool is_signed) {
  if (rel == Relation::GT || rel == Relation::GE) {
    std::swap(a, b);
    rel = rel == Relation::GT ? Relation::LT : Relation::LE;
  }
  const unsigned n = c_.bit_width;
  WireId ta = truncate(a, n);
  WireId tb = truncate(b, n);

  // a widened to n+1 bits.
  WireId aw = ta;
  if (is_signed && width(ta) >= n) {
    WireId alpha = expand(ta, {n - 1})[0];
    aw = add(ta, mul_const(alpha, 1ULL << n));
  }
  // Bitwise complement of b widened to n+1 bits.
  const unsigned wb = std::min(width(tb), n);
  std::vector<WireId> bbits;
  if (width(tb) == 1) {
    bbits = {tb};
  } else {
    std::vector<unsigned> pos(wb);
    for (unsigned i = 0; i < wb; ++i) pos[i] = i;
    bbits = expand(tb, pos);
  }
  std::vector<WireId> nb;
  for (unsigned i = 0; i < n; ++i) nb.push_back(i < bbits.size() ? emit_not(bbits[i]) : one());
  nb.push_back(is_signed && bbits.size() == n ? nb[n - 1] : one());
  WireId nbw = compress(nb);

  WireId c = add(add(aw, nbw), one());
  if (rel == Relation::LT) return expand(c, {n})[0];
  std::vector<unsigned> pos(n + 1);
  for (unsigned i = 0; i <= n; ++i) pos[i] = i;
  std::vector<WireId> cb = expand(c, pos);
  WireId eq = emit_not(cb[0]);
  for (unsigned i = 1; i <= n; ++i) eq = mul(eq, emit_not(cb[i]));
  return emit_bool(cb[n], eq, BoolOp::OR);
}

WireId Builder::emit_mux(WireId cond, WireId a, WireId b) {
  if (width(cond) != 1) throw Error(ErrorCode::WidthMismatch, "MUX condition must be 1 bit");
  WireId diff = add(a, mul_const(b, f_.modulus() - 1));
  WireId sel = mul(cond, diff);
  return emit(GateKind::ADD, {b, sel}, std::max(width(a), width(b)));
}

Circuit Builder::finish() {
  validate(c_);
  return c_;
}

}  // namespace vcc::circuit
