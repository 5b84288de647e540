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
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "vcc/frontend/ast.hpp"
#include "vcc/frontend/source.hpp"

namespace vcc::frontend {

enum class SymbolKind { Function, Struct, Constant, GlobalVar };

std::string_view to_string(SymbolKind kind);

struct LocalSymbol {
  std::string name;
  const TypeSpec* type = nullptr;
  std::uint32_t line = 0;
};

struct LocalScope {
  std::vector<LocalSymbol> symbols;
  std::vector<LocalScope> children;
};

struct Symbol {
  SymbolKind kind = SymbolKind::GlobalVar;
  std::string name;
  SourceLocation where;
  const FunctionDef* function = nullptr;
  const StructDef* structure = nullptr;
  const VarDecl* var = nullptr;
  // Value of an integer constant, when its initializer is a constant expression.
  std::optional<std::int64_t> value;
  // Functions only: parameters form the outermost scope.
  LocalScope locals;
};

class SymbolTable {
 public:
  SymbolTable(std::shared_ptr<const Program> program, MergedSource source,
              std::map<std::string, Symbol> globals);

  const Symbol* find(const std::string& name) const;
  const std::map<std::string, Symbol>& globals() const { return globals_; }
  const Program& program() const { return *program_; }
  const MergedSource& source() const { return source_; }
  const std::string& entry_name() const { return source_.entry_name; }
  const Symbol& entry() const;
  SourceLocation locate(std::uint32_t merged_line) const { return source_.locate(merged_line); }

 private:
  std::shared_ptr<const Program> program_;
  MergedSource source_;
  std::map<std::string, Symbol> globals_;
};

// Parses the merged text, collects global symbols and per-function scope
// trees, and checks the entry point against
// `void <entry>(struct in_T*, struct out_T*)`.
SymbolTable build_symbol_table(const MergedSource& merged);

// Rethrows an Error whose location is a bare merged-text line with the
// originating file:line.
[[noreturn]] void rethrow_located(const Error& e, const MergedSource& merged);

}  // namespace vcc::frontend
