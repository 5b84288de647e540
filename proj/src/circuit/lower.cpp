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

#include "vcc/circuit/lower.hpp"

#include <bit>
#include <map>
#include <optional>
#include <set>

#include "vcc/circuit/builder.hpp"
#include "vcc/error.hpp"

namespace vcc::circuit {
namespace {

using frontend::PrimExpr;
using frontend::PrimOp;

// A single bit that is either a wire or a known constant.
struct BitRef {
  std::optional<WireId> wire;
  bool value = false;
};

class Lowering {
 public:
  Lowering(const frontend::FlatProgram& prog, std::uint64_t modulus)
      : prog_(prog), b_(prog.bit_width, modulus), n_(prog.bit_width) {}

  Circuit run() {
    for (const auto& in : prog_.inputs) wires_[in.name] = b_.add_input(n_, in.is_signed);
    std::vector<Fe> consts;
    for (const PrimExpr& e : prog_.exprs) {
      if (e.op == PrimOp::CONST) consts.push_back(e.imm & frontend::mask_bits(n_));
    }
    b_.emit_constants(consts);
    for (const PrimExpr& e : prog_.exprs) wires_[e.dest] = lower_expr(e);

    std::set<WireId> inputs(b_.circuit().input_wires.begin(), b_.circuit().input_wires.end());
    std::set<WireId> used;
    for (std::size_t i = 0; i < prog_.bindings.size(); ++i) {
      WireId w = b_.truncate(wire(prog_.bindings[i].source), n_);
      Fe v;
      if (inputs.count(w) || b_.constant_value(w, v) || used.count(w)) w = b_.mul_const(w, 1);
      used.insert(w);
      b_.add_output(w, prog_.outputs[i].is_signed);
    }
    return b_.finish();
  }

 private:
  WireId wire(const std::string& name) const {
    auto it = wires_.find(name);
    if (it == wires_.end()) throw Error(ErrorCode::InvalidCircuit, "undefined value " + name);
    return it->second;
  }

  WireId trunc(WireId w) { return b_.truncate(w, n_); }

  WireId arith_add(WireId a, WireId c) {
    while (std::max(b_.width(a), b_.width(c)) + 1 > 2 * n_) {
      if (b_.width(a) >= b_.width(c)) {
        a = trunc(a);
      } else {
        c = trunc(c);
      }
    }
    return b_.add(a, c);
  }

  WireId arith_mul(WireId a, WireId c) {
    if (b_.width(a) != 1) a = trunc(a);
    if (b_.width(c) != 1) c = trunc(c);
    return b_.mul(a, c);
  }

  WireId arith_mul_const(WireId a, std::uint64_t k) {
    k &= frontend::mask_bits(n_);
    if (k == 0) return b_.zero();
    if (k == 1) return a;
    if (b_.width(a) + static_cast<unsigned>(std::bit_width(k)) > 2 * n_) a = trunc(a);
    return b_.mul_const(a, k);
  }

  std::vector<BitRef> bits_of(WireId w) {
    std::vector<BitRef> bits(n_);
    Fe v;
    if (b_.constant_value(w, v)) {
      for (unsigned i = 0; i < n_; ++i) bits[i].value = (v >> i) & 1;
      return bits;
    }
    if (b_.width(w) == 1) {
      bits[0].wire = w;
      return bits;
    }
    const unsigned m = std::min(n_, b_.width(w));
    std::vector<unsigned> pos(m);
    for (unsigned i = 0; i < m; ++i) pos[i] = i;
    std::vector<WireId> ws = b_.expand(w, pos);
    for (unsigned i = 0; i < m; ++i) bits[i].wire = ws[i];
    return bits;
  }

  WireId bit_wire(const BitRef& r) { return r.wire ? *r.wire : (r.value ? b_.one() : b_.zero()); }

  WireId compress_bits(std::vector<BitRef> bits) {
    while (!bits.empty() && !bits.back().wire && !bits.back().value) bits.pop_back();
    if (bits.empty()) return b_.zero();
    std::vector<WireId> ws;
    for (const BitRef& r : bits) ws.push_back(bit_wire(r));
    return b_.compress(ws);
  }

  BitRef bit_op(const BitRef& x, const BitRef& y, BoolOp op) {
    if (!x.wire && !y.wire) {
      bool v = op == BoolOp::AND ? (x.value && y.value)
               : op == BoolOp::OR ? (x.value || y.value)
                                  : (x.value != y.value);
      return {std::nullopt, v};
    }
    if (!x.wire || !y.wire) {
      const BitRef& k = x.wire ? y : x;
      const BitRef& w = x.wire ? x : y;
      switch (op) {
        case BoolOp::AND:
          return k.value ? w : BitRef{std::nullopt, false};
        case BoolOp::OR:
          return k.value ? BitRef{std::nullopt, true} : w;
        case BoolOp::XOR:
          return k.value ? BitRef{b_.emit_not(*w.wire), false} : w;
      }
    }
    if (*x.wire == *y.wire) {
      if (op == BoolOp::XOR) return {std::nullopt, false};
      return x;
    }
    return {b_.emit_bool(*x.wire, *y.wire, op), false};
  }

  WireId bitwise(WireId a, WireId c, BoolOp op) {
    if (b_.width(a) == 1 && b_.width(c) == 1) {
      BitRef x{a, false}, y{c, false};
      Fe v;
      if (b_.constant_value(a, v)) x = {std::nullopt, v != 0};
      if (b_.constant_value(c, v)) y = {std::nullopt, v != 0};
      return compress_bits({bit_op(x, y, op)});
    }
    std::vector<BitRef> xa = bits_of(a), xc = bits_of(c), out(n_);
    for (unsigned i = 0; i < n_; ++i) out[i] = bit_op(xa[i], xc[i], op);
    return compress_bits(out);
  }

  WireId lnot(WireId a) {
    std::vector<BitRef> x = bits_of(a);
    for (BitRef& r : x) r = r.wire ? BitRef{b_.emit_not(*r.wire), false} : BitRef{std::nullopt, !r.value};
    return compress_bits(x);
  }

  WireId shr(WireId a, unsigned k, bool is_signed) {
    if (k >= n_ && !is_signed) return b_.zero();
    std::vector<BitRef> x = bits_of(a), out(n_);
    for (unsigned i = 0; i < n_; ++i) {
      unsigned src = i + k;
      out[i] = src < n_ ? x[src] : (is_signed ? x[n_ - 1] : BitRef{});
    }
    return compress_bits(out);
  }

  WireId to_bit(WireId c) {
    if (b_.width(c) == 1) return c;
    return b_.emit_not(b_.emit_is_zero(c, n_));
  }

  WireId equal(WireId a, WireId c) {
    return b_.emit_equal(b_.width(a) == 1 ? a : trunc(a), b_.width(c) == 1 ? c : trunc(c));
  }

  WireId lower_expr(const PrimExpr& e) {
    std::vector<WireId> a;
    for (const auto& name : e.args) a.push_back(wire(name));
    switch (e.op) {
      case PrimOp::CONST:
        return b_.constant(e.imm & frontend::mask_bits(n_));
      case PrimOp::ADD:
        return arith_add(a[0], a[1]);
      case PrimOp::SUB:
        return arith_add(a[0], b_.emit_negate(a[1]));
      case PrimOp::MUL:
        return arith_mul(a[0], a[1]);
      case PrimOp::MUL_CONST:
        return arith_mul_const(a[0], e.imm);
      case PrimOp::AND:
        return bitwise(a[0], a[1], BoolOp::AND);
      case PrimOp::OR:
        return bitwise(a[0], a[1], BoolOp::OR);
      case PrimOp::XOR:
        return bitwise(a[0], a[1], BoolOp::XOR);
      case PrimOp::NOT:
        return lnot(a[0]);
      case PrimOp::SHL_CONST:
        if (e.imm >= n_) return b_.zero();
        return arith_mul_const(a[0], 1ULL << e.imm);
      case PrimOp::SHR_CONST:
        return shr(a[0], static_cast<unsigned>(std::min<std::uint64_t>(e.imm, n_)), e.is_signed);
      case PrimOp::LT:
        return b_.emit_compare(a[0], a[1], Relation::LT, e.is_signed);
      case PrimOp::GT:
        return b_.emit_compare(a[0], a[1], Relation::GT, e.is_signed);
      case PrimOp::LE:
        return b_.emit_compare(a[0], a[1], Relation::LE, e.is_signed);
      case PrimOp::GE:
        return b_.emit_compare(a[0], a[1], Relation::GE, e.is_signed);
      case PrimOp::EQ:
        return equal(a[0], a[1]);
      case PrimOp::NEQ: {
        WireId x = b_.width(a[0]) == 1 ? a[0] : trunc(a[0]);
        WireId y = b_.width(a[1]) == 1 ? a[1] : trunc(a[1]);
        if (b_.width(x) == 1 && b_.width(y) == 1) return bitwise(x, y, BoolOp::XOR);
        return b_.emit_not(b_.emit_equal(x, y));
      }
      case PrimOp::MUX: {
        WireId cond = to_bit(a[0]);
        Fe v;
        if (b_.constant_value(cond, v)) return v ? a[1] : a[2];
        if (a[1] == a[2]) return a[1];
        return b_.emit_mux(cond, a[1], a[2]);
      }
    }
    throw Error(ErrorCode::InvalidCircuit, "unknown operation");
  }

  const frontend::FlatProgram& prog_;
  Builder b_;
  unsigned n_;
  std::map<std::string, WireId> wires_;
};

}  // namespace

Circuit lower(const frontend::FlatProgram& prog, std::uint64_t modulus) {
  frontend::validate(prog);
  return Lowering(prog, modulus).run();
}

}  // namespace vcc::circuit
