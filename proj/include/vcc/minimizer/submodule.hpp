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
#include <vector>

#include "vcc/circuit/circuit.hpp"

namespace vcc::minimizer {

using circuit::WireId;

// Connected group of gates computing 1-bit values from 1-bit boundary wires.
// Internal wires may be wider (e.g. the scaled term inside a negation) but
// never leave the group.
struct LogicSubmodule {
  std::size_t id = 0;
  std::vector<std::size_t> gates;  // ascending gate indices
  std::vector<WireId> boundary_inputs;
  std::vector<WireId> boundary_outputs;
  std::size_t g = 0;  // initial gate count
  bool minimizable = true;
};

// Partitions the logic gates of c into maximal components. Components with
// more than 16 boundary inputs, or whose outputs are not Boolean on every
// Boolean input, are returned with minimizable = false.
std::vector<LogicSubmodule> extract_submodules(const circuit::Circuit& c);

// Truth table of each boundary output over all 2^k boundary assignments;
// bit i of the index is boundary_inputs[i]. Entries are field values.
std::vector<std::vector<Fe>> submodule_tables(const circuit::Circuit& c,
                                              const LogicSubmodule& sub);

}  // namespace vcc::minimizer
