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

#include "vcc/frontend/symbol_table.hpp"

#include <set>

namespace vcc::frontend {

std::string_view to_string(SymbolKind kind) {
  switch (kind) {
    case SymbolKind::Function: return "function";
    case SymbolKind::Struct: return "struct";
    case SymbolKind::Constant: return "constant";
    case SymbolKind::GlobalVar: return "global-var";
  }
  return "?";
}

SymbolTable::SymbolTable(std::shared_ptr<const Program> program, MergedSource source,
                         std::map<std::string, Symbol> globals)
    : program_(std::move(program)), source_(std::move(source)), globals_(std::move(globals)) {}

const Symbol* SymbolTable::find(const std::string& name) const {
  auto it = globals_.find(name);
  return it == globals_.end() ? nullptr : &it->second;
}

const Symbol& SymbolTable::entry() const {
  const Symbol* s = find(entry_name());
  if (!s || s->kind != SymbolKind::Function) {
    throw Error(ErrorCode::MissingEntryPoint, "no entry function '" + entry_name() + "'");
  }
  return *s;
}

void rethrow_located(const Error& e, const MergedSource& merged) {
  if (!e.where().file.empty() || e.where().line == 0) throw e;
  std::string msg = e.what();
  // Strip the "line: Code: " prefix produced for a bare merged line.
  const std::string prefix = ":" + std::to_string(e.where().line) + ": ";
  if (msg.rfind(prefix, 0) == 0) msg = msg.substr(prefix.size());
  const std::string code = std::string(to_string(e.code())) + ": ";
  if (msg.rfind(code, 0) == 0) msg = msg.substr(code.size());
  throw Error(e.code(), msg, merged.locate(e.where().line));
}

namespace {

std::optional<std::int64_t> const_eval(const Expr& e,
                                       const std::map<std::string, Symbol>& globals) {
  switch (e.kind) {
    case ExprKind::IntLit: return static_cast<std::int64_t>(e.value);
    case ExprKind::Ident: {
      auto it = globals.find(e.name);
      if (it != globals.end() && it->second.kind == SymbolKind::Constant) return it->second.value;
      return std::nullopt;
    }
    case ExprKind::Unary: {
      auto v = const_eval(*e.kids[0], globals);
      if (!v) return std::nullopt;
      if (e.op == "-") return -*v;
      if (e.op == "+") return *v;
      if (e.op == "~") return ~*v;
      if (e.op == "!") return static_cast<std::int64_t>(*v == 0);
      return std::nullopt;
    }
    case ExprKind::Binary: {
      auto a = const_eval(*e.kids[0], globals);
      auto b = const_eval(*e.kids[1], globals);
      if (!a || !b) return std::nullopt;
      const std::string& op = e.op;
      if (op == "+") return *a + *b;
      if (op == "-") return *a - *b;
      if (op == "*") return *a * *b;
      if (op == "/") return *b == 0 ? std::nullopt : std::optional<std::int64_t>(*a / *b);
      if (op == "%") return *b == 0 ? std::nullopt : std::optional<std::int64_t>(*a % *b);
      if (op == "<<") return (*b < 0 || *b > 62) ? std::nullopt : std::optional<std::int64_t>(*a << *b);
      if (op == ">>") return (*b < 0 || *b > 62) ? std::nullopt : std::optional<std::int64_t>(*a >> *b);
      if (op == "&") return *a & *b;
      if (op == "|") return *a | *b;
      if (op == "^") return *a ^ *b;
      if (op == "<") return static_cast<std::int64_t>(*a < *b);
      if (op == ">") return static_cast<std::int64_t>(*a > *b);
      if (op == "<=") return static_cast<std::int64_t>(*a <= *b);
      if (op == ">=") return static_cast<std::int64_t>(*a >= *b);
      if (op == "==") return static_cast<std::int64_t>(*a == *b);
      if (op == "!=") return static_cast<std::int64_t>(*a != *b);
      if (op == "&&") return static_cast<std::int64_t>(*a && *b);
      if (op == "||") return static_cast<std::int64_t>(*a || *b);
      return std::nullopt;
    }
    case ExprKind::Ternary: {
      auto c = const_eval(*e.kids[0], globals);
      if (!c) return std::nullopt;
      return const_eval(*e.kids[*c ? 1 : 2], globals);
    }
    case ExprKind::Cast: return const_eval(*e.kids[0], globals);
    default: return std::nullopt;
  }
}

class Builder {
 public:
  Builder(const Program& prog, const MergedSource& src) : prog_(prog), src_(src) {}

  std::map<std::string, Symbol> run() {
    for (const auto& sd : prog_.structs) {
      std::set<std::string> fields;
      for (const auto& f : sd.fields) {
        if (!fields.insert(f.name).second) {
          fail(ErrorCode::DuplicateSymbol, "duplicate field '" + f.name + "' in struct " + sd.name,
               f.line);
        }
      }
      Symbol s;
      s.kind = SymbolKind::Struct;
      s.name = sd.name;
      s.where = src_.locate(sd.line);
      s.structure = &sd;
      add(std::move(s), sd.line);
    }
    for (const auto& sd : prog_.structs) {
      for (const auto& f : sd.fields) check_type(f.type, f.line);
    }
    for (const auto& fn : prog_.functions) {
      auto it = globals_.find(fn.name);
      if (it != globals_.end() && it->second.kind == SymbolKind::Function) {
        const FunctionDef* prev = it->second.function;
        if (prev->body && fn.body) {
          fail(ErrorCode::DuplicateSymbol, "function '" + fn.name + "' defined twice", fn.line);
        }
        if (prev->params.size() != fn.params.size()) {
          fail(ErrorCode::DuplicateSymbol,
               "conflicting declarations of function '" + fn.name + "'", fn.line);
        }
        if (fn.body) {
          it->second.function = &fn;
          it->second.where = src_.locate(fn.line);
        }
        continue;
      }
      Symbol s;
      s.kind = SymbolKind::Function;
      s.name = fn.name;
      s.where = src_.locate(fn.line);
      s.function = &fn;
      add(std::move(s), fn.line);
    }
    for (const auto& g : prog_.globals) {
      check_type(g.type, g.line);
      Symbol s;
      s.name = g.name;
      s.where = src_.locate(g.line);
      s.var = &g;
      s.kind = SymbolKind::GlobalVar;
      if (g.type.is_const && g.type.dims.empty() && !g.type.pointer && g.init &&
          g.init->kind != ExprKind::InitList) {
        auto v = const_eval(*g.init, globals_);
        if (v) {
          s.kind = SymbolKind::Constant;
          s.value = v;
        }
      }
      if (g.init) check_expr(*g.init, nullptr);
      add(std::move(s), g.line);
    }
    for (auto& [name, sym] : globals_) {
      if (sym.kind != SymbolKind::Function || !sym.function->body) continue;
      const FunctionDef& fn = *sym.function;
      scopes_.clear();
      scopes_.push_back(&sym.locals);
      check_type(fn.ret, fn.line);
      for (const auto& p : fn.params) {
        check_type(p.type, p.line);
        declare(p.name, &p.type, p.line);
      }
      LocalScope& body_scope = sym.locals.children.emplace_back();
      scopes_.push_back(&body_scope);
      for (const auto& st : fn.body->stmts) check_stmt(*st);
      scopes_.clear();
    }
    return std::move(globals_);
  }

 private:
  [[noreturn]] void fail(ErrorCode code, const std::string& msg, std::uint32_t line) const {
    throw Error(code, msg, src_.locate(line));
  }

  void add(Symbol s, std::uint32_t line) {
    std::string name = s.name;
    if (!globals_.emplace(name, std::move(s)).second) {
      fail(ErrorCode::DuplicateSymbol, "duplicate global symbol '" + name + "'", line);
    }
  }

  void check_type(const TypeSpec& t, std::uint32_t line) {
    if (t.base == TypeSpec::Base::Struct) {
      auto it = globals_.find(t.struct_name);
      if (it == globals_.end() || it->second.kind != SymbolKind::Struct) {
        fail(ErrorCode::UndefinedSymbol, "unknown struct '" + t.struct_name + "'", line);
      }
    }
    for (const auto& d : t.dims) check_expr(*d, nullptr);
  }

  void declare(const std::string& name, const TypeSpec* type, std::uint32_t line) {
    if (name.empty()) return;
    LocalScope& cur = *scopes_.back();
    for (const auto& s : cur.symbols) {
      if (s.name == name) fail(ErrorCode::DuplicateSymbol, "redeclaration of '" + name + "'", line);
    }
    cur.symbols.push_back({name, type, line});
  }

  bool visible(const std::string& name) const {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
      for (const auto& s : (*it)->symbols) {
        if (s.name == name) return true;
      }
    }
    auto g = globals_.find(name);
    return g != globals_.end() &&
           (g->second.kind == SymbolKind::Constant || g->second.kind == SymbolKind::GlobalVar);
  }

  void check_expr(const Expr& e, const void*) {
    if (e.kind == ExprKind::Ident) {
      if (!scopes_.empty() ? !visible(e.name)
                           : (globals_.count(e.name) == 0 ||
                              globals_.at(e.name).kind == SymbolKind::Struct)) {
        fail(ErrorCode::UndefinedSymbol, "undefined identifier '" + e.name + "'", e.line);
      }
    }
    if (e.kind == ExprKind::Call) {
      auto g = globals_.find(e.name);
      if (g == globals_.end() || g->second.kind != SymbolKind::Function) {
        fail(ErrorCode::UndefinedSymbol, "call to undefined function '" + e.name + "'", e.line);
      }
      if (!g->second.function->body) {
        // A later definition may still replace the prototype.
        const FunctionDef* def = nullptr;
        for (const auto& fn : prog_.functions) {
          if (fn.name == e.name && fn.body) def = &fn;
        }
        if (!def) {
          fail(ErrorCode::UndefinedSymbol, "function '" + e.name + "' has no definition", e.line);
        }
      }
      if (g->second.function->params.size() != e.kids.size()) {
        fail(ErrorCode::TypeError,
             "function '" + e.name + "' expects " +
                 std::to_string(g->second.function->params.size()) + " arguments",
             e.line);
      }
    }
    if (e.kind == ExprKind::Cast || e.kind == ExprKind::SizeofType) check_type(e.type, e.line);
    for (const auto& k : e.kids) check_expr(*k, nullptr);
  }

  void check_stmt(const Stmt& s) {
    switch (s.kind) {
      case StmtKind::Block: {
        LocalScope& child = scopes_.back()->children.emplace_back();
        scopes_.push_back(&child);
        for (const auto& st : s.stmts) check_stmt(*st);
        scopes_.pop_back();
        return;
      }
      case StmtKind::Decl:
        for (const auto& d : s.decls) {
          check_type(d.type, d.line);
          if (d.init) check_expr(*d.init, nullptr);
          declare(d.name, &d.type, d.line);
        }
        return;
      case StmtKind::For: {
        LocalScope& child = scopes_.back()->children.emplace_back();
        scopes_.push_back(&child);
        if (s.init) check_stmt(*s.init);
        if (s.expr) check_expr(*s.expr, nullptr);
        if (s.step) check_expr(*s.step, nullptr);
        check_stmt(*s.body);
        scopes_.pop_back();
        return;
      }
      default:
        break;
    }
    if (s.expr) check_expr(*s.expr, nullptr);
    if (s.body) check_stmt(*s.body);
    if (s.other) check_stmt(*s.other);
  }

  const Program& prog_;
  const MergedSource& src_;
  std::map<std::string, Symbol> globals_;
  std::vector<LocalScope*> scopes_;
};

}  // namespace

SymbolTable build_symbol_table(const MergedSource& merged) {
  std::shared_ptr<Program> prog;
  try {
    prog = std::make_shared<Program>(parse_program(merged.text));
  } catch (const Error& e) {
    rethrow_located(e, merged);
  }
  auto globals = Builder(*prog, merged).run();

  const std::string& entry = merged.entry_name;
  auto it = globals.find(entry);
  if (it == globals.end() || it->second.kind != SymbolKind::Function ||
      !it->second.function->body) {
    throw Error(ErrorCode::MissingEntryPoint, "no definition of entry function '" + entry + "'");
  }
  const FunctionDef& fn = *it->second.function;
  auto is_struct_ptr = [](const TypeSpec& t) {
    return t.base == TypeSpec::Base::Struct && t.pointer && t.dims.empty();
  };
  if (fn.ret.base != TypeSpec::Base::Void || fn.ret.pointer || fn.params.size() != 2 ||
      !is_struct_ptr(fn.params[0].type) || !is_struct_ptr(fn.params[1].type)) {
    throw Error(ErrorCode::EntrySignatureMismatch,
                "entry '" + entry + "' must be declared void " + entry +
                    "(struct in_T *, struct out_T *)",
                merged.locate(fn.line));
  }
  return SymbolTable(std::move(prog), merged, std::move(globals));
}

}  // namespace vcc::frontend
