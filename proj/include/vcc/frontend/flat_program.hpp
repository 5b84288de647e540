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
#include <map>
#include <string>
#include <vector>

namespace vcc::frontend {

enum class PrimOp {
  ADD,
  SUB,
  MUL,
  MUL_CONST,
  AND,
  OR,
  XOR,
  NOT,
  SHL_CONST,
  SHR_CONST,
  LT,
  GT,
  LE,
  GE,
  EQ,
  NEQ,
  MUX,
  CONST,
};

std::string_view to_string(PrimOp op);
bool parse_prim_op(std::string_view text, PrimOp& out);
// Number of wire operands taken by op.
int arity(PrimOp op);
bool has_immediate(PrimOp op);

struct PrimExpr {
  std::string dest;
  PrimOp op = PrimOp::CONST;
  std::vector<std::string> args;
  std::uint64_t imm = 0;
  // Comparisons and right shifts: interpret operands as two's complement.
  bool is_signed = false;

  bool operator==(const PrimExpr&) const = default;
};

struct IoWire {
  std::string name;
  bool is_signed = false;

  bool operator==(const IoWire&) const = default;
};

struct OutputBinding {
  std::string name;
  // Input name or expression dest carrying the value.
  std::string source;

  bool operator==(const OutputBinding&) const = default;
};

// Straight-line single-assignment program over n-bit two's-complement
// integers. Expression dests are named t0, t1, ... in order.
struct FlatProgram {
  unsigned bit_width = 32;
  std::vector<IoWire> inputs;
  std::vector<IoWire> outputs;
  std::vector<PrimExpr> exprs;
  std::vector<OutputBinding> bindings;  // one per output, same order

  bool operator==(const FlatProgram&) const = default;
};

std::string serialize(const FlatProgram& prog);
// Throws Error(ParseError) with the offending line number.
FlatProgram parse_flat_program(const std::string& text);

// Throws Error(InvalidCircuit) when single assignment, topological order,
// arities or output bindings are violated.
void validate(const FlatProgram& prog);

// Values are n-bit patterns (unsigned representation). Output order follows
// prog.outputs.
std::vector<std::uint64_t> interpret(const FlatProgram& prog,
                                     const std::vector<std::uint64_t>& inputs);
std::map<std::string, std::uint64_t> interpret_all(const FlatProgram& prog,
                                                   const std::vector<std::uint64_t>& inputs);

// n-bit helpers shared with the circuit lowering and the tests.
std::uint64_t mask_bits(unsigned n);
std::int64_t to_signed(std::uint64_t v, unsigned n);
std::uint64_t eval_prim(PrimOp op, const std::vector<std::uint64_t>& a, std::uint64_t imm,
                        bool is_signed, unsigned n);

}  // namespace vcc::frontend
