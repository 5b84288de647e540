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

#include "vcc/frontend/flat_program.hpp"
#include "vcc/frontend/source.hpp"
#include "vcc/frontend/symbol_table.hpp"

namespace vcc::frontend {

struct FlattenConfig {
  unsigned bit_width = 32;
  std::size_t max_unroll = 1024;
};

// Symbolically executes the entry function: calls are inlined, loops with
// compile-time conditions are unrolled, input-dependent branches become
// per-variable MUX selections and input-independent subexpressions are
// folded. Inputs and outputs are named after the in_T / out_T field paths.
FlatProgram flatten(const SymbolTable& table, const FlattenConfig& cfg = {});

// preprocess + build_symbol_table + flatten.
FlatProgram compile_contract(const SourceUnit& unit, const FlattenConfig& cfg = {},
                             const Defines& defines = {});

}  // namespace vcc::frontend
