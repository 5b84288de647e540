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
#include <memory>
#include <string>
#include <vector>

namespace vcc::frontend {

struct Expr;
struct Stmt;
using ExprPtr = std::unique_ptr<Expr>;
using StmtPtr = std::unique_ptr<Stmt>;

// A declared type before array sizes are evaluated.
struct TypeSpec {
  enum class Base { Void, Int, Bool, Struct };
  Base base = Base::Int;
  bool is_signed = true;
  std::string struct_name;
  bool pointer = false;
  bool is_const = false;
  // Outermost dimension first; each entry is a constant expression.
  std::vector<std::shared_ptr<Expr>> dims;
};

enum class ExprKind {
  IntLit,
  Ident,
  Unary,     // op in {"-", "+", "!", "~", "*", "&"}
  Binary,    // arithmetic, bitwise, comparison and logical operators
  Assign,    // op in {"=", "+=", "-=", ...}
  Ternary,
  Call,
  Index,
  Member,    // arrow selects between "." and "->"
  Cast,
  SizeofType,
  SizeofExpr,
  Comma,
  PreInc,
  PreDec,
  PostInc,
  PostDec,
  InitList,
};

struct Expr {
  ExprKind kind = ExprKind::IntLit;
  std::uint32_t line = 0;
  std::string op;
  std::uint64_t value = 0;
  bool lit_unsigned = false;
  std::string name;
  bool arrow = false;
  TypeSpec type;
  std::vector<ExprPtr> kids;
};

struct VarDecl {
  TypeSpec type;
  std::string name;
  ExprPtr init;
  std::uint32_t line = 0;
};

enum class StmtKind { Expr, Decl, If, For, While, DoWhile, Return, Break, Continue, Block, Empty };

struct Stmt {
  StmtKind kind = StmtKind::Empty;
  std::uint32_t line = 0;
  ExprPtr expr;  // expression, condition or return value
  std::vector<VarDecl> decls;
  StmtPtr init;  // for-loop initializer
  ExprPtr step;  // for-loop increment
  StmtPtr body;  // then-branch or loop body
  StmtPtr other; // else-branch
  std::vector<StmtPtr> stmts;
};

struct Field {
  TypeSpec type;
  std::string name;
  std::uint32_t line = 0;
};

struct StructDef {
  std::string name;
  std::vector<Field> fields;
  std::uint32_t line = 0;
};

struct Param {
  TypeSpec type;
  std::string name;
  std::uint32_t line = 0;
};

struct FunctionDef {
  TypeSpec ret;
  std::string name;
  std::vector<Param> params;
  StmtPtr body;  // null for a prototype
  std::uint32_t line = 0;
};

struct Program {
  std::vector<StructDef> structs;
  std::vector<FunctionDef> functions;
  std::vector<VarDecl> globals;
};

// Parses preprocessed text. Line numbers in the AST refer to `text`.
Program parse_program(const std::string& text);

}  // namespace vcc::frontend
