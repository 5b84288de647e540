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

#include "vcc/circuit/circuit.hpp"
#include "vcc/frontend/flat_program.hpp"

namespace vcc::circuit {

// Translates a flat program into an arithmetic circuit over F_p. Inputs keep
// their declared order, outputs are fresh wires in binding order, and every
// output wire carries the bit_width-bit value of its binding.
//
// Throws Error(FieldTooSmall) when 2^(2n) >= modulus and Error(NoInputWire)
// for programs without inputs.
Circuit lower(const frontend::FlatProgram& prog, std::uint64_t modulus = kDefaultModulus);

}  // namespace vcc::circuit
