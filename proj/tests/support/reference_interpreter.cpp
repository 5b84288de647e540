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

#include "reference_interpreter.hpp"

#include <map>
#include <memory>
#include <stdexcept>
#include <utility>

#include "vcc/frontend/ast.hpp"

namespace vcc::testing {
namespace {

using namespace frontend;

struct RType;
using RTypePtr = std::shared_ptr<const RType>;

struct RType {
  enum class K { Void, Scalar, Array, Struct } k = K::Scalar;
  bool is_signed = true;
  bool is_bool = false;
  std::size_t count = 0;
  RTypePtr elem;
  std::vector<std::string> names;
  std::vector<RTypePtr> fields;
  std::vector<std::size_t> offsets;
  std::size_t slots = 1;
};

struct Object {
  std::vector<std::uint64_t> slots;
};

struct Ref {
  std::shared_ptr<Object> obj;
  std::size_t offset = 0;
  RTypePtr type;
};

struct Binding {
  bool pointer = false;
  Ref ref;
};

struct Value {
  std::uint64_t v = 0;
  bool is_signed = true;
};

struct Flow {
  bool returned = false, broke = false, continued = false;
  Value ret;
};

class Interp {
 public:
  Interp(const Program& p, std::string entry, unsigned n)
      : p_(p), entry_(std::move(entry)), n_(n), mask_(n >= 64 ? ~0ULL : (1ULL << n) - 1) {}

  std::vector<std::uint64_t> run(const std::vector<std::uint64_t>& inputs) {
    scopes_.emplace_back();
    for (const auto& g : p_.globals) {
      RTypePtr t = resolve(g.type);
      Ref r{std::make_shared<Object>(Object{std::vector<std::uint64_t>(t->slots, 0)}), 0, t};
      if (g.init) init(r, *g.init);
      globals_[g.name] = {false, r};
    }
    scopes_.clear();
    const FunctionDef& entry = fn(entry_);
    RTypePtr in_t = struct_type(entry.params[0].type.struct_name);
    RTypePtr out_t = struct_type(entry.params[1].type.struct_name);
    std::vector<RTypePtr> in_leaves;
    leaves(in_t, in_leaves);
    if (in_leaves.size() != inputs.size()) throw std::runtime_error("input count mismatch");
    auto in = std::make_shared<Object>(Object{std::vector<std::uint64_t>(in_t->slots, 0)});
    for (std::size_t i = 0; i < inputs.size(); ++i) {
      in->slots[i] = in_leaves[i]->is_bool ? (inputs[i] & mask_) != 0 : inputs[i] & mask_;
    }
    auto out = std::make_shared<Object>(Object{std::vector<std::uint64_t>(out_t->slots, 0)});
    scopes_.emplace_back();
    scopes_.back()[entry.params[0].name] = {true, {in, 0, in_t}};
    scopes_.back()[entry.params[1].name] = {true, {out, 0, out_t}};
    Flow f;
    block(entry.body->stmts, f);
    return out->slots;
  }

 private:
  using Scope = std::map<std::string, Binding>;

  const FunctionDef& fn(const std::string& name) const {
    for (const auto& f : p_.functions) {
      if (f.name == name && f.body) return f;
    }
    throw std::runtime_error("no function " + name);
  }

  std::int64_t sval(std::uint64_t v) const {
    v &= mask_;
    if (n_ < 64 && (v >> (n_ - 1)) & 1) return static_cast<std::int64_t>(v | ~mask_);
    return static_cast<std::int64_t>(v);
  }

  RTypePtr struct_type(const std::string& name) {
    for (const auto& s : p_.structs) {
      if (s.name != name) continue;
      auto t = std::make_shared<RType>();
      t->k = RType::K::Struct;
      t->slots = 0;
      for (const auto& f : s.fields) {
        RTypePtr ft = resolve(f.type);
        t->names.push_back(f.name);
        t->fields.push_back(ft);
        t->offsets.push_back(t->slots);
        t->slots += ft->slots;
      }
      return t;
    }
    throw std::runtime_error("no struct " + name);
  }

  RTypePtr resolve(const TypeSpec& ts) {
    RTypePtr base;
    if (ts.base == TypeSpec::Base::Void) {
      auto t = std::make_shared<RType>();
      t->k = RType::K::Void;
      t->slots = 0;
      base = t;
    } else if (ts.base == TypeSpec::Base::Struct) {
      base = struct_type(ts.struct_name);
    } else {
      auto t = std::make_shared<RType>();
      t->is_bool = ts.base == TypeSpec::Base::Bool;
      t->is_signed = ts.base == TypeSpec::Base::Int && ts.is_signed;
      base = t;
    }
    for (auto it = ts.dims.rbegin(); it != ts.dims.rend(); ++it) {
      Flow f;
      Value d = eval(**it, f);
      auto t = std::make_shared<RType>();
      t->k = RType::K::Array;
      t->elem = base;
      t->count = d.is_signed ? static_cast<std::size_t>(sval(d.v)) : d.v;
      t->slots = t->count * base->slots;
      base = t;
    }
    return base;
  }

  void leaves(const RTypePtr& t, std::vector<RTypePtr>& out) {
    if (t->k == RType::K::Scalar) {
      out.push_back(t);
    } else if (t->k == RType::K::Struct) {
      for (const auto& f : t->fields) leaves(f, out);
    } else if (t->k == RType::K::Array) {
      for (std::size_t i = 0; i < t->count; ++i) leaves(t->elem, out);
    }
  }

  const Binding& lookup(const std::string& name) const {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
      auto f = it->find(name);
      if (f != it->end()) return f->second;
    }
    auto g = globals_.find(name);
    if (g == globals_.end()) throw std::runtime_error("undefined " + name);
    return g->second;
  }

  std::uint64_t store_conv(const Value& v, const RType& t) const {
    return t.is_bool ? (v.v & mask_) != 0 : v.v & mask_;
  }

  Value load(const Ref& r) const {
    return {r.obj->slots[r.offset], r.type->is_signed || r.type->is_bool};
  }

  void store(const Ref& r, const Value& v) { r.obj->slots[r.offset] = store_conv(v, *r.type); }

  void copy(const Ref& dst, const Ref& src) {
    for (std::size_t i = 0; i < dst.type->slots; ++i) {
      dst.obj->slots[dst.offset + i] = src.obj->slots[src.offset + i];
    }
  }

  void init(const Ref& r, const Expr& e) {
    Flow f;
    if (r.type->k == RType::K::Scalar) {
      if (e.kind == ExprKind::InitList) {
        if (!e.kids.empty()) init(r, *e.kids[0]);
        return;
      }
      store(r, eval(e, f));
      return;
    }
    if (e.kind != ExprKind::InitList) {
      copy(r, lvalue(e, f));
      return;
    }
    for (std::size_t i = 0; i < e.kids.size(); ++i) {
      if (r.type->k == RType::K::Array) {
        init({r.obj, r.offset + i * r.type->elem->slots, r.type->elem}, *e.kids[i]);
      } else {
        init({r.obj, r.offset + r.type->offsets[i], r.type->fields[i]}, *e.kids[i]);
      }
    }
  }

  Ref pointer_target(const Expr& e, Flow& f) {
    if (e.kind == ExprKind::Ident) {
      const Binding& b = lookup(e.name);
      if (b.pointer) return b.ref;
      return {b.ref.obj, b.ref.offset, b.ref.type->elem};
    }
    if (e.kind == ExprKind::Unary && e.op == "&") return lvalue(*e.kids[0], f);
    Ref r = lvalue(e, f);
    return {r.obj, r.offset, r.type->elem};
  }

  Ref lvalue(const Expr& e, Flow& f) {
    switch (e.kind) {
      case ExprKind::Ident: return lookup(e.name).ref;
      case ExprKind::Member: {
        Ref base = e.arrow ? pointer_target(*e.kids[0], f) : lvalue(*e.kids[0], f);
        for (std::size_t i = 0; i < base.type->names.size(); ++i) {
          if (base.type->names[i] == e.name) {
            return {base.obj, base.offset + base.type->offsets[i], base.type->fields[i]};
          }
        }
        throw std::runtime_error("no field " + e.name);
      }
      case ExprKind::Index: {
        const Expr& b = *e.kids[0];
        if (b.kind == ExprKind::Ident && lookup(b.name).pointer) {
          const Ref& p = lookup(b.name).ref;
          const std::uint64_t ix = eval(*e.kids[1], f).v & mask_;
          return {p.obj, p.offset + ix * p.type->slots, p.type};
        }
        Ref base = lvalue(b, f);
        const std::uint64_t ix = eval(*e.kids[1], f).v & mask_;
        return {base.obj, base.offset + ix * base.type->elem->slots, base.type->elem};
      }
      case ExprKind::Unary:
        if (e.op == "*") return pointer_target(*e.kids[0], f);
        break;
      default:
        break;
    }
    throw std::runtime_error("not an lvalue");
  }

  Value binop(const std::string& op, Value a, Value b) const {
    const bool sgn = a.is_signed && b.is_signed;
    const std::uint64_t x = a.v & mask_, y = b.v & mask_;
    auto V = [&](std::uint64_t r, bool s) { return Value{r & mask_, s}; };
    if (op == "+") return V(x + y, sgn);
    if (op == "-") return V(x - y, sgn);
    if (op == "*") return V(x * y, sgn);
    if (op == "&") return V(x & y, sgn);
    if (op == "|") return V(x | y, sgn);
    if (op == "^") return V(x ^ y, sgn);
    if (op == "/" || op == "%") {
      if (sgn) {
        const std::int64_t sx = sval(x), sy = sval(y);
        if (sy == -1) return V(op == "/" ? static_cast<std::uint64_t>(-sx) : 0, true);
        return V(static_cast<std::uint64_t>(op == "/" ? sx / sy : sx % sy), true);
      }
      return V(op == "/" ? x / y : x % y, false);
    }
    if (op == "<<") return V(y >= n_ ? 0 : x << y, a.is_signed);
    if (op == ">>") {
      if (a.is_signed) {
        const std::int64_t sx = sval(x);
        return V(static_cast<std::uint64_t>(y >= n_ ? (sx < 0 ? -1 : 0) : sx >> y), true);
      }
      return V(y >= n_ ? 0 : x >> y, false);
    }
    bool r;
    if (op == "==") {
      r = x == y;
    } else if (op == "!=") {
      r = x != y;
    } else if (sgn) {
      const std::int64_t sx = sval(x), sy = sval(y);
      r = op == "<" ? sx < sy : op == ">" ? sx > sy : op == "<=" ? sx <= sy : sx >= sy;
    } else {
      r = op == "<" ? x < y : op == ">" ? x > y : op == "<=" ? x <= y : x >= y;
    }
    return {r, true};
  }

  Value eval(const Expr& e, Flow& f) {
    switch (e.kind) {
      case ExprKind::IntLit:
        return {e.value & mask_, !(e.lit_unsigned || e.value > (mask_ >> 1))};
      case ExprKind::Ident:
      case ExprKind::Index:
      case ExprKind::Member:
        return load(lvalue(e, f));
      case ExprKind::Unary: {
        if (e.op == "*") return load(lvalue(e, f));
        Value x = eval(*e.kids[0], f);
        if (e.op == "+") return x;
        if (e.op == "-") return binop("-", {0, true}, x);
        if (e.op == "~") return {~x.v & mask_, x.is_signed};
        if (e.op == "!") return {(x.v & mask_) == 0, true};
        break;
      }
      case ExprKind::Binary: {
        if (e.op == "&&" || e.op == "||") {
          const bool a = (eval(*e.kids[0], f).v & mask_) != 0;
          if (e.op == "&&" ? !a : a) return {a, true};
          return {(eval(*e.kids[1], f).v & mask_) != 0, true};
        }
        Value a = eval(*e.kids[0], f);
        Value b = eval(*e.kids[1], f);
        return binop(e.op, a, b);
      }
      case ExprKind::Assign: {
        Ref r = lvalue(*e.kids[0], f);
        if (r.type->k != RType::K::Scalar) {
          copy(r, lvalue(*e.kids[1], f));
          return {0, true};
        }
        Value v = eval(*e.kids[1], f);
        if (e.op != "=") v = binop(e.op.substr(0, e.op.size() - 1), load(r), v);
        store(r, v);
        return load(r);
      }
      case ExprKind::Ternary: {
        const bool c = (eval(*e.kids[0], f).v & mask_) != 0;
        Value a = eval(*e.kids[c ? 1 : 2], f);
        // Signedness is that of the combined branch types.
        const bool other = static_signed(*e.kids[c ? 2 : 1]);
        return {a.v, a.is_signed && other};
      }
      case ExprKind::Call: return call(e, f);
      case ExprKind::Cast: {
        Value x = eval(*e.kids[0], f);
        RTypePtr t = resolve(e.type);
        if (t->k == RType::K::Void) return {0, true};
        return {store_conv(x, *t), t->is_signed || t->is_bool};
      }
      case ExprKind::SizeofType: {
        const std::size_t slots = e.type.pointer ? 1 : resolve(e.type)->slots;
        return {(slots * ((n_ + 7) / 8)) & mask_, false};
      }
      case ExprKind::SizeofExpr: {
        const Expr& k = *e.kids[0];
        std::size_t slots = 1;
        if (k.kind == ExprKind::Ident || k.kind == ExprKind::Member || k.kind == ExprKind::Index ||
            (k.kind == ExprKind::Unary && k.op == "*")) {
          const bool ptr = k.kind == ExprKind::Ident && lookup(k.name).pointer;
          if (!ptr) slots = snapshot_type(k)->slots;
        }
        return {(slots * ((n_ + 7) / 8)) & mask_, false};
      }
      case ExprKind::Comma:
        eval(*e.kids[0], f);
        return eval(*e.kids[1], f);
      case ExprKind::PreInc:
      case ExprKind::PreDec:
      case ExprKind::PostInc:
      case ExprKind::PostDec: {
        Ref r = lvalue(*e.kids[0], f);
        Value old = load(r);
        const bool inc = e.kind == ExprKind::PreInc || e.kind == ExprKind::PostInc;
        store(r, binop(inc ? "+" : "-", old, {1, true}));
        const bool pre = e.kind == ExprKind::PreInc || e.kind == ExprKind::PreDec;
        return pre ? load(r) : old;
      }
      case ExprKind::InitList: break;
    }
    throw std::runtime_error("unsupported expression");
  }

  // Type of an lvalue expression without running side effects that matter
  // for sizeof operands.
  RTypePtr snapshot_type(const Expr& e) {
    Flow f;
    return lvalue(e, f).type;
  }

  // Signedness of an expression's type, which C fixes statically.
  bool static_signed(const Expr& e) {
    switch (e.kind) {
      case ExprKind::IntLit: return !(e.lit_unsigned || e.value > (mask_ >> 1));
      case ExprKind::Ident:
      case ExprKind::Index:
      case ExprKind::Member: {
        RTypePtr t = snapshot_type(e);
        return t->is_signed || t->is_bool;
      }
      case ExprKind::Unary:
        if (e.op == "!") return true;
        if (e.op == "*") {
          RTypePtr t = snapshot_type(e);
          return t->is_signed || t->is_bool;
        }
        return static_signed(*e.kids[0]);
      case ExprKind::Binary:
        if (e.op == "&&" || e.op == "||" || e.op == "==" || e.op == "!=" || e.op == "<" ||
            e.op == ">" || e.op == "<=" || e.op == ">=") {
          return true;
        }
        if (e.op == "<<" || e.op == ">>") return static_signed(*e.kids[0]);
        return static_signed(*e.kids[0]) && static_signed(*e.kids[1]);
      case ExprKind::Assign:
      case ExprKind::PreInc:
      case ExprKind::PreDec:
      case ExprKind::PostInc:
      case ExprKind::PostDec: {
        RTypePtr t = snapshot_type(*e.kids[0]);
        return t->is_signed || t->is_bool;
      }
      case ExprKind::Ternary: return static_signed(*e.kids[1]) && static_signed(*e.kids[2]);
      case ExprKind::Call: {
        const FunctionDef& d = fn(e.name);
        return d.ret.base == TypeSpec::Base::Bool ||
               (d.ret.base == TypeSpec::Base::Int && d.ret.is_signed);
      }
      case ExprKind::Cast: {
        RTypePtr t = resolve(e.type);
        return t->k == RType::K::Void || t->is_signed || t->is_bool;
      }
      case ExprKind::SizeofType:
      case ExprKind::SizeofExpr: return false;
      case ExprKind::Comma: return static_signed(*e.kids[1]);
      case ExprKind::InitList: return true;
    }
    return true;
  }

  Value call(const Expr& e, Flow&) {
    const FunctionDef& d = fn(e.name);
    Scope frame;
    Flow outer;
    for (std::size_t i = 0; i < d.params.size(); ++i) {
      const Param& p = d.params[i];
      const Expr& arg = *e.kids[i];
      if (p.type.pointer || !p.type.dims.empty()) {
        TypeSpec pointee = p.type;
        pointee.pointer = false;
        if (!p.type.dims.empty()) pointee.dims.erase(pointee.dims.begin());
        RTypePtr pt = resolve(pointee);
        Ref target = pointer_target(arg, outer);
        if (pt->k != RType::K::Void) target.type = pt;
        frame[p.name] = {true, target};
        continue;
      }
      RTypePtr pt = resolve(p.type);
      Ref local{std::make_shared<Object>(Object{std::vector<std::uint64_t>(pt->slots, 0)}), 0, pt};
      if (pt->k == RType::K::Scalar) {
        store(local, eval(arg, outer));
      } else {
        copy(local, lvalue(arg, outer));
      }
      frame[p.name] = {false, local};
    }
    RTypePtr rt = resolve(d.ret);
    auto saved = std::move(scopes_);
    scopes_.clear();
    scopes_.push_back(std::move(frame));
    Flow f;
    block(d.body->stmts, f);
    scopes_ = std::move(saved);
    if (rt->k == RType::K::Void) return {0, true};
    return {f.returned ? store_conv(f.ret, *rt) : 0, rt->is_signed || rt->is_bool};
  }

  void block(const std::vector<StmtPtr>& stmts, Flow& f) {
    scopes_.emplace_back();
    for (const auto& s : stmts) {
      exec(*s, f);
      if (f.returned || f.broke || f.continued) break;
    }
    scopes_.pop_back();
  }

  void branch(const Stmt& s, Flow& f) {
    scopes_.emplace_back();
    exec(s, f);
    scopes_.pop_back();
  }

  void exec(const Stmt& s, Flow& f) {
    switch (s.kind) {
      case StmtKind::Empty: return;
      case StmtKind::Expr: eval(*s.expr, f); return;
      case StmtKind::Decl:
        for (const auto& d : s.decls) {
          RTypePtr t = resolve(d.type);
          Ref r{std::make_shared<Object>(Object{std::vector<std::uint64_t>(t->slots, 0)}), 0, t};
          if (d.init) init(r, *d.init);
          scopes_.back()[d.name] = {false, r};
        }
        return;
      case StmtKind::Block: block(s.stmts, f); return;
      case StmtKind::If:
        if ((eval(*s.expr, f).v & mask_) != 0) {
          branch(*s.body, f);
        } else if (s.other) {
          branch(*s.other, f);
        }
        return;
      case StmtKind::Return:
        if (s.expr) f.ret = eval(*s.expr, f);
        f.returned = true;
        return;
      case StmtKind::Break: f.broke = true; return;
      case StmtKind::Continue: f.continued = true; return;
      case StmtKind::For:
      case StmtKind::While:
      case StmtKind::DoWhile: {
        scopes_.emplace_back();
        if (s.init) exec(*s.init, f);
        bool first = s.kind == StmtKind::DoWhile;
        for (std::size_t guard = 0;; ++guard) {
          if (guard > 1'000'000) throw std::runtime_error("runaway loop");
          if (!first && s.expr && (eval(*s.expr, f).v & mask_) == 0) break;
          first = false;
          branch(*s.body, f);
          f.continued = false;
          if (f.returned || f.broke) break;
          if (s.step) eval(*s.step, f);
        }
        f.broke = false;
        scopes_.pop_back();
        return;
      }
    }
  }

  const Program& p_;
  std::string entry_;
  unsigned n_;
  std::uint64_t mask_;
  Scope globals_;
  std::vector<Scope> scopes_;
};

}  // namespace

std::vector<std::uint64_t> reference_run(const frontend::SourceUnit& unit,
                                         const frontend::Defines& defines, unsigned bit_width,
                                         const std::vector<std::uint64_t>& inputs) {
  const MergedSource merged = preprocess(unit, defines);
  const Program prog = parse_program(merged.text);
  return Interp(prog, merged.entry_name, bit_width).run(inputs);
}

}  // namespace vcc::testing
