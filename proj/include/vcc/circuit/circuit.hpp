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

#include "vcc/field.hpp"

namespace vcc::circuit {

using WireId = std::uint32_t;

enum class GateKind { ADD, MUL, MUL_CONST, EXPAND, COMPRESS, ZERO, ONE };

std::string_view to_string(GateKind kind);

// ADD, MUL: 2 inputs, 1 output.
// MUL_CONST: out = constant * in.
// EXPAND: outputs[i] = bit positions[i] of the input.
// COMPRESS: out = sum_i 2^i * inputs[i] (a wire may appear several times).
// ZERO: out = 0 * in.  ONE: out = in + 1, applied to the zero wire.
struct Gate {
  GateKind kind = GateKind::ADD;
  std::vector<WireId> inputs;
  std::vector<WireId> outputs;
  Fe constant = 0;
  std::vector<unsigned> positions;

  bool operator==(const Gate&) const = default;
};

struct Circuit {
  unsigned bit_width = 32;
  std::uint64_t field_modulus = kDefaultModulus;
  std::vector<Gate> gates;
  std::vector<WireId> input_wires;
  std::vector<WireId> output_wires;
  // Indexed by wire id: maximal number of bits carried.
  std::vector<unsigned> widths;
  // Indexed by wire id: two's-complement interpretation (IO wires).
  std::vector<bool> is_signed;

  std::size_t num_wires() const { return widths.size(); }
  std::size_t num_mul_gates() const;
  bool operator==(const Circuit&) const = default;
};

// Structural checks: dense ids, single definition, topological order, gate
// arities, EXPAND positions within the input width. Throws
// Error(InvalidCircuit).
void validate(const Circuit& c);

// Number of leading constant-synthesis gates (ZERO, ONE, MUL-CONST on the
// one-wire).
std::size_t count_constant_gates(const Circuit& c);

// Text format, one directive per line after the header.
std::string serialize(const Circuit& c);
// Throws Error(ParseError) carrying the line number.
Circuit parse_circuit(const std::string& text);

// Witness: values indexed by wire id.
struct Assignment {
  std::vector<Fe> values;

  bool operator==(const Assignment&) const = default;
};

// Evaluates every gate. `inputs` maps input wire ids to values.
// Throws Error(MissingInput) when an input is absent or a non-input wire is
// given, and Error(ValueOutOfRange) when a value does not fit its width.
Assignment evaluate(const Circuit& c, const std::map<WireId, Fe>& inputs);
// Same, with values in input_wires order.
Assignment evaluate(const Circuit& c, const std::vector<Fe>& inputs);

// True when every gate's outputs equal the gate function of its inputs.
bool is_consistent(const Circuit& c, const Assignment& a);

std::vector<Fe> output_values(const Circuit& c, const Assignment& a);

}  // namespace vcc::circuit
