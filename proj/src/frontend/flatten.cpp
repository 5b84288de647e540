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

#include "vcc/frontend/flatten.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <memory>
#include <optional>
#include <regex>
#include <set>
#include <variant>

namespace vcc::frontend {

namespace {

struct CType;
using CTypePtr = std::shared_ptr<const CType>;

struct StructInfo {
  std::string name;
  std::vector<std::string> names;
  std::vector<CTypePtr> types;
  std::vector<std::size_t> offsets;
  std::size_t slots = 0;
};

struct CType {
  enum class K { Void, Scalar, Struct, Array };
  K k = K::Scalar;
  bool is_signed = true;
  bool is_bool = false;
  const StructInfo* st = nullptr;
  CTypePtr elem;
  std::size_t count = 0;
  std::size_t slots = 1;
};

struct Val {
  bool is_const = true;
  std::uint64_t c = 0;
  int wire = -1;
  bool is_bool = false;

  bool same(const Val& o) const {
    return is_const == o.is_const && (is_const ? c == o.c : wire == o.wire);
  }
};

Val konst(std::uint64_t c, bool is_bool = false) { return Val{true, c, -1, is_bool}; }

struct RV {
  Val v;
  bool is_signed = true;
};

struct LV {
  int obj = -1;
  std::size_t offset = 0;
  CTypePtr type;
};

struct Binding {
  bool pointer = false;
  int obj = -1;
  std::size_t offset = 0;
  CTypePtr type;  // pointee type for pointers
};

struct State {
  std::vector<std::vector<Val>> objects;
  Val returned = konst(0, true);
  Val broke = konst(0, true);
  Val continued = konst(0, true);
  Val ret = konst(0);
};

struct Node {
  bool input = false;
  std::string name;
  PrimOp op = PrimOp::CONST;
  std::vector<int> args;
  std::uint64_t imm = 0;
  bool is_signed = false;
};

using Scope = std::map<std::string, Binding>;

class Flattener {
 public:
  Flattener(const SymbolTable& table, const FlattenConfig& cfg)
      : table_(table), cfg_(cfg), n_(cfg.bit_width), mask_(mask_bits(cfg.bit_width)) {
    if (n_ == 0 || n_ > 62) {
      throw Error(ErrorCode::InvalidConfig, "bit width must be in [1, 62]");
    }
    if (cfg.max_unroll == 0) throw Error(ErrorCode::InvalidConfig, "max_unroll must be positive");
  }

  FlatProgram run() {
    const Program& prog = table_.program();
    State s;
    frames_.emplace_back();
    frames_.back().emplace_back();
    for (const auto& g : prog.globals) {
      CTypePtr t = resolve(g.type, g.line, s);
      if (g.type.pointer) fail(ErrorCode::UnsupportedConstruct, "global pointer", g.line);
      LV lv{new_object(s, *t), 0, t};
      if (g.init) init_object(lv, *g.init, s, g.line);
      globals_[g.name] = Binding{false, lv.obj, 0, t};
    }
    frames_.clear();

    const FunctionDef& entry = definition(table_.entry_name(), 0);
    frames_.emplace_back();
    frames_.back().emplace_back();
    CTypePtr in_t = struct_type(entry.params[0].type.struct_name, entry.line, s);
    CTypePtr out_t = struct_type(entry.params[1].type.struct_name, entry.line, s);

    std::vector<std::pair<std::string, CTypePtr>> in_leaves, out_leaves;
    leaves(*in_t, "", in_leaves);
    leaves(*out_t, "", out_leaves);
    check_io_names(in_leaves, out_leaves, entry.line);

    int in_obj = new_object(s, *in_t);
    for (std::size_t i = 0; i < in_leaves.size(); ++i) {
      Node node;
      node.input = true;
      node.name = in_leaves[i].first;
      nodes_.push_back(node);
      Val v{false, 0, static_cast<int>(nodes_.size() - 1), false};
      if (in_leaves[i].second->is_bool) v = to_bool(RV{v, false});
      s.objects[in_obj][i] = v;
      inputs_.push_back({in_leaves[i].first, in_leaves[i].second->is_signed});
    }
    int out_obj = new_object(s, *out_t);

    frames_.back().back()[entry.params[0].name] = Binding{true, in_obj, 0, in_t};
    frames_.back().back()[entry.params[1].name] = Binding{true, out_obj, 0, out_t};
    calls_.push_back(&entry);
    ret_types_.push_back(resolve(entry.ret, entry.line, s));
    run_body(entry, s);
    ret_types_.pop_back();
    calls_.pop_back();
    frames_.pop_back();

    std::vector<int> out_wires;
    for (std::size_t i = 0; i < out_leaves.size(); ++i) {
      out_wires.push_back(wire_of(s.objects[out_obj][i]));
    }
    return finish(out_leaves, out_wires);
  }

 private:
  [[noreturn]] void fail(ErrorCode code, const std::string& msg, std::uint32_t line) const {
    throw Error(code, msg, table_.locate(line));
  }

  // ---- types -------------------------------------------------------------

  const StructInfo& struct_info(const std::string& name, std::uint32_t line, State& s) {
    auto it = structs_.find(name);
    if (it != structs_.end()) {
      if (!it->second) fail(ErrorCode::TypeError, "struct '" + name + "' contains itself", line);
      return *it->second;
    }
    const Symbol* sym = table_.find(name);
    if (!sym || sym->kind != SymbolKind::Struct) {
      fail(ErrorCode::UndefinedSymbol, "unknown struct '" + name + "'", line);
    }
    structs_[name] = nullptr;
    auto info = std::make_unique<StructInfo>();
    info->name = name;
    for (const auto& f : sym->structure->fields) {
      if (f.type.pointer) fail(ErrorCode::UnsupportedConstruct, "pointer field '" + f.name + "'", f.line);
      CTypePtr t = resolve(f.type, f.line, s);
      if (t->k == CType::K::Void) fail(ErrorCode::TypeError, "void field", f.line);
      info->names.push_back(f.name);
      info->types.push_back(t);
      info->offsets.push_back(info->slots);
      info->slots += t->slots;
    }
    const StructInfo& ref = *info;
    structs_[name] = std::move(info);
    return ref;
  }

  CTypePtr struct_type(const std::string& name, std::uint32_t line, State& s) {
    auto t = std::make_shared<CType>();
    t->k = CType::K::Struct;
    t->st = &struct_info(name, line, s);
    t->slots = t->st->slots;
    return t;
  }

  // Type of the declared object, ignoring a pointer qualifier.
  CTypePtr resolve(const TypeSpec& ts, std::uint32_t line, State& s) {
    CTypePtr base;
    switch (ts.base) {
      case TypeSpec::Base::Void: {
        auto t = std::make_shared<CType>();
        t->k = CType::K::Void;
        t->slots = 0;
        base = t;
        break;
      }
      case TypeSpec::Base::Int:
      case TypeSpec::Base::Bool: {
        auto t = std::make_shared<CType>();
        t->is_bool = ts.base == TypeSpec::Base::Bool;
        t->is_signed = ts.base == TypeSpec::Base::Int && ts.is_signed;
        base = t;
        break;
      }
      case TypeSpec::Base::Struct: base = struct_type(ts.struct_name, line, s); break;
    }
    for (auto it = ts.dims.rbegin(); it != ts.dims.rend(); ++it) {
      RV d = eval(**it, s);
      if (!d.v.is_const) fail(ErrorCode::TypeError, "array size is not a constant", line);
      std::int64_t count = d.is_signed ? to_signed(d.v.c, n_) : static_cast<std::int64_t>(d.v.c);
      if (count <= 0) fail(ErrorCode::TypeError, "array size must be positive", line);
      auto t = std::make_shared<CType>();
      t->k = CType::K::Array;
      t->elem = base;
      t->count = static_cast<std::size_t>(count);
      t->slots = t->count * base->slots;
      base = t;
    }
    return base;
  }

  static bool compatible(const CType& a, const CType& b) {
    if (a.k != b.k) return false;
    if (a.k == CType::K::Struct) return a.st == b.st;
    if (a.k == CType::K::Array) return a.count == b.count && compatible(*a.elem, *b.elem);
    return true;
  }

  void leaves(const CType& t, const std::string& prefix,
              std::vector<std::pair<std::string, CTypePtr>>& out) {
    if (t.k == CType::K::Struct) {
      for (std::size_t i = 0; i < t.st->names.size(); ++i) {
        std::string p = prefix.empty() ? t.st->names[i] : prefix + "." + t.st->names[i];
        if (t.st->types[i]->k == CType::K::Scalar) {
          out.emplace_back(p, t.st->types[i]);
        } else {
          leaves(*t.st->types[i], p, out);
        }
      }
    } else if (t.k == CType::K::Array) {
      for (std::size_t i = 0; i < t.count; ++i) {
        std::string p = prefix + "[" + std::to_string(i) + "]";
        if (t.elem->k == CType::K::Scalar) {
          out.emplace_back(p, t.elem);
        } else {
          leaves(*t.elem, p, out);
        }
      }
    }
  }

  void check_io_names(const std::vector<std::pair<std::string, CTypePtr>>& in,
                      const std::vector<std::pair<std::string, CTypePtr>>& out,
                      std::uint32_t line) const {
    static const std::regex kTemp("t[0-9]+");
    std::set<std::string> seen;
    for (const auto* list : {&in, &out}) {
      for (const auto& [name, t] : *list) {
        if (std::regex_match(name, kTemp)) {
          fail(ErrorCode::TypeError, "field name '" + name + "' clashes with temporary names", line);
        }
        if (!seen.insert(name).second) {
          fail(ErrorCode::TypeError, "field path '" + name + "' appears in both in_T and out_T",
               line);
        }
      }
    }
  }

  // ---- emission ------------------------------------------------------------

  int wire_of(const Val& v) {
    if (!v.is_const) return v.wire;
    const std::uint64_t c = v.c & mask_;
    auto it = consts_.find(c);
    if (it != consts_.end()) return it->second;
    Node node;
    node.op = PrimOp::CONST;
    node.imm = c;
    nodes_.push_back(node);
    int w = static_cast<int>(nodes_.size() - 1);
    consts_[c] = w;
    return w;
  }

  Val emit(PrimOp op, std::initializer_list<Val> args, std::uint64_t imm = 0,
           bool is_signed = false, bool result_bool = false) {
    Node node;
    node.op = op;
    node.imm = imm;
    node.is_signed = is_signed;
    for (const Val& a : args) node.args.push_back(wire_of(a));
    nodes_.push_back(std::move(node));
    return Val{false, 0, static_cast<int>(nodes_.size() - 1), result_bool};
  }

  Val mux(const Val& c, const Val& a, const Val& b) {
    if (a.same(b)) return a;
    if (c.is_const) return c.c ? a : b;
    if (a.is_bool && b.is_bool && a.is_const && b.is_const && a.c == 1 && b.c == 0) return c;
    return emit(PrimOp::MUX, {c, a, b}, 0, false, a.is_bool && b.is_bool);
  }

  Val flag_or(const Val& a, const Val& b) {
    if (a.is_const) return a.c ? a : b;
    if (b.is_const) return b.c ? b : a;
    return emit(PrimOp::OR, {a, b}, 0, false, true);
  }

  Val to_bool(const RV& r) {
    if (r.v.is_bool) return r.v;
    if (r.v.is_const) return konst((r.v.c & mask_) != 0, true);
    return emit(PrimOp::NEQ, {r.v, konst(0)}, 0, false, true);
  }

  Val convert(const RV& r, const CType& t) {
    if (t.is_bool) return to_bool(r);
    Val v = r.v;
    if (v.is_const) v.c &= mask_;
    return v;
  }

  bool is_pow2(std::uint64_t v, unsigned& k) const {
    if (v == 0 || (v & (v - 1))) return false;
    k = static_cast<unsigned>(std::countr_zero(v));
    return true;
  }

  RV arith(const std::string& op, const RV& a, const RV& b, std::uint32_t line) {
    const bool sgn = a.is_signed && b.is_signed;
    const bool both = a.v.is_const && b.v.is_const;
    auto fold2 = [&](PrimOp p, bool s, bool boolean) {
      return konst(eval_prim(p, {a.v.c, b.v.c}, 0, s, n_), boolean);
    };
    auto simple = [&](PrimOp p, bool boolean, bool flag) -> RV {
      if (both) return {fold2(p, flag, boolean), boolean ? true : sgn};
      return {emit(p, {a.v, b.v}, 0, flag, boolean), boolean ? true : sgn};
    };
    if (op == "+") return simple(PrimOp::ADD, false, false);
    if (op == "-") return simple(PrimOp::SUB, false, false);
    if (op == "*") {
      if (both) return {fold2(PrimOp::MUL, false, false), sgn};
      if (a.v.is_const) return {emit(PrimOp::MUL_CONST, {b.v}, a.v.c & mask_), sgn};
      if (b.v.is_const) return {emit(PrimOp::MUL_CONST, {a.v}, b.v.c & mask_), sgn};
      return {emit(PrimOp::MUL, {a.v, b.v}), sgn};
    }
    if (op == "&" || op == "|" || op == "^") {
      PrimOp p = op == "&" ? PrimOp::AND : op == "|" ? PrimOp::OR : PrimOp::XOR;
      const bool boolean = a.v.is_bool && b.v.is_bool;
      RV r = simple(p, false, false);
      r.v.is_bool = boolean;
      r.is_signed = sgn;
      return r;
    }
    if (op == "<" || op == ">" || op == "<=" || op == ">=") {
      PrimOp p = op == "<" ? PrimOp::LT : op == ">" ? PrimOp::GT : op == "<=" ? PrimOp::LE : PrimOp::GE;
      return simple(p, true, sgn);
    }
    if (op == "==") return simple(PrimOp::EQ, true, false);
    if (op == "!=") return simple(PrimOp::NEQ, true, false);
    if (op == "<<" || op == ">>") {
      if (!b.v.is_const) {
        fail(ErrorCode::UnsupportedConstruct, "shift by a non-constant amount", line);
      }
      if (b.is_signed && to_signed(b.v.c, n_) < 0) {
        fail(ErrorCode::UnsupportedConstruct, "shift by a negative amount", line);
      }
      const std::uint64_t k = b.v.c & mask_;
      PrimOp p = op == "<<" ? PrimOp::SHL_CONST : PrimOp::SHR_CONST;
      const bool flag = p == PrimOp::SHR_CONST && a.is_signed;
      if (a.v.is_const) return {konst(eval_prim(p, {a.v.c}, k, flag, n_)), a.is_signed};
      return {emit(p, {a.v}, k, flag), a.is_signed};
    }
    if (op == "/" || op == "%") return divide(op == "/", a, b, sgn, line);
    fail(ErrorCode::UnsupportedConstruct, "operator '" + op + "'", line);
  }

  RV divide(bool quotient, const RV& a, const RV& b, bool sgn, std::uint32_t line) {
    if (!b.v.is_const) fail(ErrorCode::UnsupportedConstruct, "division by a non-constant", line);
    const std::uint64_t d = b.v.c & mask_;
    if (d == 0) fail(ErrorCode::TypeError, "division by zero", line);
    if (a.v.is_const) {
      std::uint64_t r;
      if (sgn) {
        std::int64_t x = to_signed(a.v.c, n_), y = to_signed(d, n_);
        if (y == -1) {
          r = quotient ? static_cast<std::uint64_t>(-x) : 0;
        } else {
          r = static_cast<std::uint64_t>(quotient ? x / y : x % y);
        }
      } else {
        std::uint64_t x = a.v.c & mask_;
        r = quotient ? x / d : x % d;
      }
      return {konst(r & mask_), sgn};
    }
    unsigned k = 0;
    if ((sgn && to_signed(d, n_) < 0) || !is_pow2(d, k)) {
      fail(ErrorCode::UnsupportedConstruct,
           "division by a constant that is not a positive power of two", line);
    }
    if (!sgn) {
      if (quotient) return {k == 0 ? a.v : emit(PrimOp::SHR_CONST, {a.v}, k), false};
      return {emit(PrimOp::AND, {a.v, konst(d - 1)}), false};
    }
    Val q = a.v;
    if (k > 0) {
      Val sign = emit(PrimOp::SHR_CONST, {a.v}, n_ - 1, true);
      Val bias = emit(PrimOp::SHR_CONST, {sign}, n_ - k, false);
      Val sum = emit(PrimOp::ADD, {a.v, bias});
      q = emit(PrimOp::SHR_CONST, {sum}, k, true);
    }
    if (quotient) return {q, true};
    if (k == 0) return {konst(0), true};
    Val back = emit(PrimOp::SHL_CONST, {q}, k);
    return {emit(PrimOp::SUB, {a.v, back}), true};
  }

  // ---- storage -------------------------------------------------------------

  int new_object(State& s, const CType& t) {
    s.objects.emplace_back(t.slots, konst(0));
    return static_cast<int>(s.objects.size() - 1);
  }

  const Binding* lookup(const std::string& name) const {
    if (!frames_.empty()) {
      const auto& scopes = frames_.back();
      for (auto it = scopes.rbegin(); it != scopes.rend(); ++it) {
        auto f = it->find(name);
        if (f != it->end()) return &f->second;
      }
    }
    auto g = globals_.find(name);
    return g == globals_.end() ? nullptr : &g->second;
  }

  RV load(const LV& lv, const State& s, std::uint32_t line) const {
    if (lv.type->k != CType::K::Scalar) {
      fail(ErrorCode::TypeError, "aggregate used as a value", line);
    }
    return {s.objects[lv.obj][lv.offset], lv.type->is_signed || lv.type->is_bool};
  }

  void store(const LV& lv, const RV& r, State& s) {
    s.objects[lv.obj][lv.offset] = convert(r, *lv.type);
  }

  void copy_object(const LV& dst, const LV& src, State& s, std::uint32_t line) {
    if (!compatible(*dst.type, *src.type)) fail(ErrorCode::TypeError, "incompatible aggregate assignment", line);
    for (std::size_t i = 0; i < dst.type->slots; ++i) {
      s.objects[dst.obj][dst.offset + i] = s.objects[src.obj][src.offset + i];
    }
  }

  void init_object(const LV& lv, const Expr& init, State& s, std::uint32_t line) {
    const CType& t = *lv.type;
    if (t.k == CType::K::Scalar) {
      if (init.kind == ExprKind::InitList) {
        if (init.kids.size() > 1) fail(ErrorCode::TypeError, "too many initializers", line);
        if (!init.kids.empty()) init_object(lv, *init.kids[0], s, line);
        return;
      }
      store(lv, eval(init, s), s);
      return;
    }
    if (init.kind != ExprKind::InitList) {
      copy_object(lv, eval_lv(init, s), s, line);
      return;
    }
    if (t.k == CType::K::Array) {
      if (init.kids.size() > t.count) fail(ErrorCode::TypeError, "too many initializers", line);
      for (std::size_t i = 0; i < init.kids.size(); ++i) {
        init_object(LV{lv.obj, lv.offset + i * t.elem->slots, t.elem}, *init.kids[i], s, line);
      }
      return;
    }
    if (init.kids.size() > t.st->names.size()) fail(ErrorCode::TypeError, "too many initializers", line);
    for (std::size_t i = 0; i < init.kids.size(); ++i) {
      init_object(LV{lv.obj, lv.offset + t.st->offsets[i], t.st->types[i]}, *init.kids[i], s, line);
    }
  }

  // Target of a pointer-valued expression: a pointer parameter, &lvalue or an
  // array decaying to its first element.
  std::optional<LV> pointer_target(const Expr& e, State& s) {
    if (e.kind == ExprKind::Ident) {
      const Binding* b = lookup(e.name);
      if (b && b->pointer) return LV{b->obj, b->offset, b->type};
      if (b && b->type->k == CType::K::Array) return LV{b->obj, b->offset, b->type->elem};
      return std::nullopt;
    }
    if (e.kind == ExprKind::Unary && e.op == "&") return eval_lv(*e.kids[0], s);
    if (e.kind == ExprKind::Member || e.kind == ExprKind::Index) {
      LV lv = eval_lv(e, s);
      if (lv.type->k == CType::K::Array) return LV{lv.obj, lv.offset, lv.type->elem};
    }
    return std::nullopt;
  }

  std::uint64_t const_index(const Expr& e, State& s) {
    RV ix = eval(e, s);
    if (!ix.v.is_const) fail(ErrorCode::DynamicIndex, "array index depends on input values", e.line);
    if (ix.is_signed && to_signed(ix.v.c, n_) < 0) {
      fail(ErrorCode::TypeError, "negative array index", e.line);
    }
    return ix.v.c & mask_;
  }

  LV eval_lv(const Expr& e, State& s) {
    switch (e.kind) {
      case ExprKind::Ident: {
        const Binding* b = lookup(e.name);
        if (!b) fail(ErrorCode::UndefinedSymbol, "undefined identifier '" + e.name + "'", e.line);
        if (b->pointer) fail(ErrorCode::TypeError, "pointer '" + e.name + "' used as an object", e.line);
        return LV{b->obj, b->offset, b->type};
      }
      case ExprKind::Member: {
        LV base;
        if (e.arrow) {
          auto p = pointer_target(*e.kids[0], s);
          if (!p) fail(ErrorCode::DynamicIndex, "'->' applied to a non-pointer", e.line);
          base = *p;
        } else {
          base = eval_lv(*e.kids[0], s);
        }
        if (base.type->k != CType::K::Struct) fail(ErrorCode::TypeError, "member access on non-struct", e.line);
        const StructInfo& st = *base.type->st;
        for (std::size_t i = 0; i < st.names.size(); ++i) {
          if (st.names[i] == e.name) return LV{base.obj, base.offset + st.offsets[i], st.types[i]};
        }
        fail(ErrorCode::UndefinedSymbol, "struct " + st.name + " has no field '" + e.name + "'", e.line);
      }
      case ExprKind::Index: {
        const Expr& b = *e.kids[0];
        const Binding* ptr = b.kind == ExprKind::Ident ? lookup(b.name) : nullptr;
        if (ptr && ptr->pointer) {
          const std::uint64_t ix = const_index(*e.kids[1], s);
          const std::size_t off = ptr->offset + ix * ptr->type->slots;
          if (off + ptr->type->slots > s.objects[ptr->obj].size()) {
            fail(ErrorCode::TypeError, "index out of bounds", e.line);
          }
          return LV{ptr->obj, off, ptr->type};
        }
        LV base = eval_lv(b, s);
        if (base.type->k != CType::K::Array) fail(ErrorCode::TypeError, "subscript of non-array", e.line);
        const std::uint64_t ix = const_index(*e.kids[1], s);
        if (ix >= base.type->count) fail(ErrorCode::TypeError, "index out of bounds", e.line);
        return LV{base.obj, base.offset + ix * base.type->elem->slots, base.type->elem};
      }
      case ExprKind::Unary:
        if (e.op == "*") {
          auto p = pointer_target(*e.kids[0], s);
          if (!p) fail(ErrorCode::DynamicIndex, "dereference of a non-pointer", e.line);
          return *p;
        }
        break;
      default:
        break;
    }
    fail(ErrorCode::TypeError, "expression is not an lvalue", e.line);
  }

  // ---- expressions ---------------------------------------------------------

  RV eval(const Expr& e, State& s) {
    switch (e.kind) {
      case ExprKind::IntLit: {
        const std::uint64_t v = e.value & mask_;
        const bool uns = e.lit_unsigned || e.value > (mask_ >> 1);
        return {konst(v), !uns};
      }
      case ExprKind::Ident: {
        const Binding* b = lookup(e.name);
        if (!b) fail(ErrorCode::UndefinedSymbol, "undefined identifier '" + e.name + "'", e.line);
        if (b->pointer) fail(ErrorCode::TypeError, "pointer '" + e.name + "' used as a value", e.line);
        return load(LV{b->obj, b->offset, b->type}, s, e.line);
      }
      case ExprKind::Unary: {
        if (e.op == "*") return load(eval_lv(e, s), s, e.line);
        if (e.op == "&") fail(ErrorCode::UnsupportedConstruct, "address-of outside a call argument", e.line);
        RV x = eval(*e.kids[0], s);
        if (e.op == "+") return x;
        if (e.op == "-") return arith("-", RV{konst(0), true}, x, e.line);
        if (e.op == "~") {
          if (x.v.is_const) return {konst(~x.v.c & mask_), x.is_signed};
          return {emit(PrimOp::NOT, {x.v}), x.is_signed};
        }
        if (e.op == "!") {
          if (x.v.is_const) return {konst((x.v.c & mask_) == 0, true), true};
          return {emit(PrimOp::EQ, {x.v, konst(0)}, 0, false, true), true};
        }
        break;
      }
      case ExprKind::Binary: {
        if (e.op == "&&" || e.op == "||") return logical(e, s);
        RV a = eval(*e.kids[0], s);
        RV b = eval(*e.kids[1], s);
        return arith(e.op, a, b, e.line);
      }
      case ExprKind::Assign: return assign(e, s);
      case ExprKind::Ternary: {
        Val c = to_bool(eval(*e.kids[0], s));
        if (c.is_const) {
          RV r = eval(*e.kids[c.c ? 1 : 2], s);
          return r;
        }
        State sa = s, sb = s;
        RV a = eval(*e.kids[1], sa);
        RV b = eval(*e.kids[2], sb);
        s = merge(c, sa, sb);
        return {mux(c, a.v, b.v), a.is_signed && b.is_signed};
      }
      case ExprKind::Call: return call(e, s);
      case ExprKind::Index:
      case ExprKind::Member: return load(eval_lv(e, s), s, e.line);
      case ExprKind::Cast: {
        RV x = eval(*e.kids[0], s);
        if (e.type.pointer) fail(ErrorCode::UnsupportedConstruct, "pointer cast", e.line);
        CTypePtr t = resolve(e.type, e.line, s);
        if (t->k == CType::K::Void) return {konst(0), true};
        if (t->k != CType::K::Scalar) fail(ErrorCode::TypeError, "cast to aggregate", e.line);
        return {convert(x, *t), t->is_signed || t->is_bool};
      }
      case ExprKind::SizeofType: {
        std::size_t slots = 1;
        if (!e.type.pointer) slots = resolve(e.type, e.line, s)->slots;
        return {konst(slots * ((n_ + 7) / 8)), false};
      }
      case ExprKind::SizeofExpr: {
        State scratch = s;
        std::size_t slots = 1;
        const Expr& k = *e.kids[0];
        if (k.kind == ExprKind::Ident || k.kind == ExprKind::Member || k.kind == ExprKind::Index ||
            (k.kind == ExprKind::Unary && k.op == "*")) {
          const Binding* b = k.kind == ExprKind::Ident ? lookup(k.name) : nullptr;
          if (!(b && b->pointer)) slots = eval_lv(k, scratch).type->slots;
        }
        return {konst(slots * ((n_ + 7) / 8)), false};
      }
      case ExprKind::Comma:
        eval(*e.kids[0], s);
        return eval(*e.kids[1], s);
      case ExprKind::PreInc:
      case ExprKind::PreDec:
      case ExprKind::PostInc:
      case ExprKind::PostDec: {
        LV lv = eval_lv(*e.kids[0], s);
        RV old = load(lv, s, e.line);
        const bool inc = e.kind == ExprKind::PreInc || e.kind == ExprKind::PostInc;
        RV upd = arith(inc ? "+" : "-", old, RV{konst(1), true}, e.line);
        store(lv, upd, s);
        const bool pre = e.kind == ExprKind::PreInc || e.kind == ExprKind::PreDec;
        return pre ? load(lv, s, e.line) : old;
      }
      case ExprKind::InitList:
        fail(ErrorCode::TypeError, "initializer list outside a declaration", e.line);
    }
    fail(ErrorCode::UnsupportedConstruct, "unsupported expression", e.line);
  }

  RV logical(const Expr& e, State& s) {
    const bool is_and = e.op == "&&";
    Val a = to_bool(eval(*e.kids[0], s));
    if (a.is_const) {
      if (is_and ? a.c == 0 : a.c != 0) return {konst(is_and ? 0 : 1, true), true};
      return {to_bool(eval(*e.kids[1], s)), true};
    }
    State sb = s;
    Val b = to_bool(eval(*e.kids[1], sb));
    // The right operand only runs when the left one does not decide.
    s = is_and ? merge(a, sb, s) : merge(a, s, sb);
    if (b.is_const) {
      if (is_and) return {b.c ? a : konst(0, true), true};
      return {b.c ? konst(1, true) : a, true};
    }
    return {emit(is_and ? PrimOp::AND : PrimOp::OR, {a, b}, 0, false, true), true};
  }

  RV assign(const Expr& e, State& s) {
    LV lv = eval_lv(*e.kids[0], s);
    if (lv.type->k != CType::K::Scalar) {
      if (e.op != "=") fail(ErrorCode::TypeError, "compound assignment to aggregate", e.line);
      LV src = eval_lv(*e.kids[1], s);
      copy_object(lv, src, s, e.line);
      return {konst(0), true};
    }
    RV rhs = eval(*e.kids[1], s);
    if (e.op != "=") {
      RV cur = load(lv, s, e.line);
      rhs = arith(e.op.substr(0, e.op.size() - 1), cur, rhs, e.line);
    }
    store(lv, rhs, s);
    return load(lv, s, e.line);
  }

  const FunctionDef& definition(const std::string& name, std::uint32_t line) const {
    for (const auto& fn : table_.program().functions) {
      if (fn.name == name && fn.body) return fn;
    }
    fail(ErrorCode::UndefinedSymbol, "function '" + name + "' has no definition", line);
  }

  RV call(const Expr& e, State& s) {
    const FunctionDef& fn = definition(e.name, e.line);
    if (std::find(calls_.begin(), calls_.end(), &fn) != calls_.end()) {
      fail(ErrorCode::UnsupportedConstruct, "recursive call to '" + fn.name + "'", e.line);
    }
    if (fn.params.size() != e.kids.size()) {
      fail(ErrorCode::TypeError, "wrong number of arguments to '" + fn.name + "'", e.line);
    }
    // Arguments are evaluated in the caller's scope.
    std::vector<Binding> bound;
    std::vector<std::pair<CTypePtr, std::variant<RV, LV>>> values;
    for (std::size_t i = 0; i < fn.params.size(); ++i) {
      const Param& p = fn.params[i];
      const Expr& arg = *e.kids[i];
      if (p.type.pointer || !p.type.dims.empty()) {
        TypeSpec pointee = p.type;
        pointee.pointer = false;
        if (!p.type.dims.empty()) pointee.dims.erase(pointee.dims.begin());
        CTypePtr pt = resolve(pointee, p.line, s);
        auto target = pointer_target(arg, s);
        if (!target) fail(ErrorCode::DynamicIndex, "argument for pointer parameter '" + p.name + "' is not an addressable object", arg.line);
        if (pt->k != CType::K::Void && !compatible(*pt, *target->type)) {
          fail(ErrorCode::TypeError, "incompatible pointer argument for '" + p.name + "'", arg.line);
        }
        bound.push_back(Binding{true, target->obj, target->offset, pt->k == CType::K::Void ? target->type : pt});
        values.emplace_back(pt, RV{});
        continue;
      }
      CTypePtr pt = resolve(p.type, p.line, s);
      bound.push_back(Binding{false, -1, 0, pt});
      if (pt->k == CType::K::Scalar) {
        values.emplace_back(pt, eval(arg, s));
      } else {
        values.emplace_back(pt, eval_lv(arg, s));
      }
    }
    const std::size_t mark = s.objects.size();
    frames_.emplace_back();
    frames_.back().emplace_back();
    for (std::size_t i = 0; i < fn.params.size(); ++i) {
      Binding b = bound[i];
      if (!b.pointer) {
        b.obj = new_object(s, *b.type);
        LV dst{b.obj, 0, b.type};
        if (b.type->k == CType::K::Scalar) {
          store(dst, std::get<RV>(values[i].second), s);
        } else {
          copy_object(dst, std::get<LV>(values[i].second), s, e.line);
        }
      }
      if (!fn.params[i].name.empty()) frames_.back().back()[fn.params[i].name] = b;
    }
    CTypePtr rt = resolve(fn.ret, fn.line, s);
    if (fn.ret.pointer || (rt->k != CType::K::Scalar && rt->k != CType::K::Void)) {
      fail(ErrorCode::UnsupportedConstruct, "functions must return a scalar or void", fn.line);
    }
    const Val saved_ret = s.ret;
    s.ret = konst(0);
    calls_.push_back(&fn);
    ret_types_.push_back(rt);
    run_body(fn, s);
    ret_types_.pop_back();
    calls_.pop_back();
    Val result = s.ret;
    s.ret = saved_ret;
    s.returned = konst(0, true);
    frames_.pop_back();
    s.objects.resize(mark);
    return {result, rt->is_signed || rt->is_bool};
  }

  void run_body(const FunctionDef& fn, State& s) {
    const int saved_loops = loop_depth_;
    loop_depth_ = 0;
    exec_block(fn.body->stmts, s);
    loop_depth_ = saved_loops;
  }

  // ---- statements ----------------------------------------------------------

  State merge(const Val& c, const State& a, const State& b) {
    if (c.is_const) return c.c ? a : b;
    State r;
    const std::size_t n = std::min(a.objects.size(), b.objects.size());
    r.objects.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto& oa = a.objects[i];
      const auto& ob = b.objects[i];
      r.objects[i].resize(oa.size());
      for (std::size_t j = 0; j < oa.size(); ++j) r.objects[i][j] = mux(c, oa[j], ob[j]);
    }
    r.returned = mux(c, a.returned, b.returned);
    r.broke = mux(c, a.broke, b.broke);
    r.continued = mux(c, a.continued, b.continued);
    r.ret = mux(c, a.ret, b.ret);
    return r;
  }

  Val exit_pred(const State& s) { return flag_or(s.returned, flag_or(s.broke, s.continued)); }

  // Runs fn only on the paths where `exited` is false.
  template <typename F>
  void guarded(State& s, const Val& exited, F&& fn) {
    if (exited.is_const) {
      if (!exited.c) fn(s);
      return;
    }
    State live = s;
    live.returned = live.broke = live.continued = konst(0, true);
    fn(live);
    s = merge(exited, s, live);
  }

  void exec_seq(const std::vector<StmtPtr>& stmts, std::size_t from, State& s) {
    for (std::size_t i = from; i < stmts.size(); ++i) {
      Val pred = exit_pred(s);
      if (pred.is_const && pred.c) return;
      if (!pred.is_const) {
        guarded(s, pred, [&](State& live) { exec_seq(stmts, i, live); });
        return;
      }
      exec(*stmts[i], s);
    }
  }

  void exec_block(const std::vector<StmtPtr>& stmts, State& s) {
    const std::size_t mark = s.objects.size();
    frames_.back().emplace_back();
    exec_seq(stmts, 0, s);
    frames_.back().pop_back();
    if (s.objects.size() > mark) s.objects.resize(mark);
  }

  void declare(const VarDecl& d, State& s) {
    if (d.type.pointer) fail(ErrorCode::UnsupportedConstruct, "pointer variable '" + d.name + "'", d.line);
    CTypePtr t = resolve(d.type, d.line, s);
    if (t->k == CType::K::Void) fail(ErrorCode::TypeError, "void variable", d.line);
    LV lv{new_object(s, *t), 0, t};
    if (d.init) init_object(lv, *d.init, s, d.line);
    frames_.back().back()[d.name] = Binding{false, lv.obj, 0, t};
  }

  void exec(const Stmt& st, State& s) {
    switch (st.kind) {
      case StmtKind::Empty: return;
      case StmtKind::Expr: eval(*st.expr, s); return;
      case StmtKind::Decl:
        for (const auto& d : st.decls) declare(d, s);
        return;
      case StmtKind::Block: exec_block(st.stmts, s); return;
      case StmtKind::If: {
        Val c = to_bool(eval(*st.expr, s));
        if (c.is_const) {
          if (c.c) {
            exec_branch(*st.body, s);
          } else if (st.other) {
            exec_branch(*st.other, s);
          }
          return;
        }
        State st_then = s, st_else = s;
        exec_branch(*st.body, st_then);
        if (st.other) exec_branch(*st.other, st_else);
        s = merge(c, st_then, st_else);
        return;
      }
      case StmtKind::Return: {
        const CType& rt = *ret_types_.back();
        if (st.expr) {
          RV v = eval(*st.expr, s);
          if (rt.k == CType::K::Void) fail(ErrorCode::TypeError, "value returned from void function", st.line);
          s.ret = convert(v, rt);
        }
        s.returned = konst(1, true);
        return;
      }
      case StmtKind::Break:
        if (loop_depth_ == 0) fail(ErrorCode::SyntaxError, "break outside a loop", st.line);
        s.broke = konst(1, true);
        return;
      case StmtKind::Continue:
        if (loop_depth_ == 0) fail(ErrorCode::SyntaxError, "continue outside a loop", st.line);
        s.continued = konst(1, true);
        return;
      case StmtKind::For:
      case StmtKind::While:
      case StmtKind::DoWhile: {
        const std::size_t mark = s.objects.size();
        frames_.back().emplace_back();
        if (st.init) exec(*st.init, s);
        std::size_t iterations = 0;
        ++loop_depth_;
        loop(st, s, st.kind == StmtKind::DoWhile, iterations);
        --loop_depth_;
        s.broke = konst(0, true);
        s.continued = konst(0, true);
        frames_.back().pop_back();
        if (s.objects.size() > mark) s.objects.resize(mark);
        return;
      }
    }
  }

  void exec_branch(const Stmt& st, State& s) {
    frames_.back().emplace_back();
    const std::size_t mark = s.objects.size();
    exec(st, s);
    frames_.back().pop_back();
    if (s.objects.size() > mark) s.objects.resize(mark);
  }

  void loop(const Stmt& st, State& s, bool skip_cond, std::size_t& iterations) {
    for (;;) {
      if (!skip_cond && st.expr) {
        Val c = to_bool(eval(*st.expr, s));
        if (!c.is_const) {
          fail(ErrorCode::UnboundedLoop, "loop condition depends on input values", st.line);
        }
        if (!c.c) return;
      }
      skip_cond = false;
      if (++iterations > cfg_.max_unroll) {
        fail(ErrorCode::UnboundedLoop,
             "loop exceeds max_unroll = " + std::to_string(cfg_.max_unroll) + " iterations", st.line);
      }
      exec_branch(*st.body, s);
      s.continued = konst(0, true);
      Val stop = flag_or(s.returned, s.broke);
      if (stop.is_const && stop.c) return;
      auto tail = [&](State& live) {
        if (st.step) eval(*st.step, live);
        loop(st, live, false, iterations);
        live.broke = konst(0, true);
      };
      if (!stop.is_const) {
        guarded(s, stop, tail);
        return;
      }
      if (st.step) eval(*st.step, s);
    }
  }

  // ---- output --------------------------------------------------------------

  FlatProgram finish(const std::vector<std::pair<std::string, CTypePtr>>& out_leaves,
                     const std::vector<int>& out_wires) {
    std::vector<bool> live(nodes_.size(), false);
    for (int w : out_wires) live[w] = true;
    for (std::size_t i = nodes_.size(); i-- > 0;) {
      if (!live[i]) continue;
      for (int a : nodes_[i].args) live[a] = true;
    }
    std::vector<std::string> names(nodes_.size());
    FlatProgram prog;
    prog.bit_width = n_;
    prog.inputs = inputs_;
    std::size_t next = 0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      if (nodes_[i].input) {
        names[i] = nodes_[i].name;
        continue;
      }
      if (!live[i]) continue;
      names[i] = "t" + std::to_string(next++);
      PrimExpr pe;
      pe.dest = names[i];
      pe.op = nodes_[i].op;
      pe.imm = nodes_[i].imm;
      pe.is_signed = nodes_[i].is_signed;
      for (int a : nodes_[i].args) pe.args.push_back(names[a]);
      prog.exprs.push_back(std::move(pe));
    }
    for (std::size_t i = 0; i < out_leaves.size(); ++i) {
      prog.outputs.push_back({out_leaves[i].first, out_leaves[i].second->is_signed});
      prog.bindings.push_back({out_leaves[i].first, names[out_wires[i]]});
    }
    validate(prog);
    return prog;
  }

  const SymbolTable& table_;
  FlattenConfig cfg_;
  unsigned n_;
  std::uint64_t mask_;
  std::map<std::string, std::unique_ptr<StructInfo>> structs_;
  std::vector<Node> nodes_;
  std::map<std::uint64_t, int> consts_;
  std::vector<IoWire> inputs_;
  std::vector<std::vector<Scope>> frames_;
  Scope globals_;
  std::vector<const FunctionDef*> calls_;
  std::vector<CTypePtr> ret_types_;
  int loop_depth_ = 0;
};

}  // namespace

FlatProgram flatten(const SymbolTable& table, const FlattenConfig& cfg) {
  return Flattener(table, cfg).run();
}

FlatProgram compile_contract(const SourceUnit& unit, const FlattenConfig& cfg,
                             const Defines& defines) {
  return flatten(build_symbol_table(preprocess(unit, defines)), cfg);
}

}  // namespace vcc::frontend
