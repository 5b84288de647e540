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
#include <string>
#include <vector>

#include "vcc/circuit/circuit.hpp"
#include "vcc/minimizer/petrick.hpp"
#include "vcc/minimizer/quine_mccluskey.hpp"
#include "vcc/minimizer/schedule.hpp"
#include "vcc/minimizer/submodule.hpp"

namespace vcc::minimizer {

struct MinimizeConfig {
  std::size_t cores = 1;
  Strategy strategy = Strategy::LPT;
};

// Sum of products realizing one boundary output. When `complemented` holds,
// the products realize the negated function and a NOT follows.
struct OutputCover {
  std::vector<Implicant> terms;
  bool complemented = false;
};

struct SubmoduleResult {
  LogicSubmodule sub;
  std::vector<OutputCover> covers;
  std::size_t original_gates = 0;
  std::size_t minimized_gates = 0;
  std::size_t petrick_steps = 0;
  std::size_t petrick_bound = 0;
  bool petrick_exact = true;
  bool replaced = false;
};

struct MinimizeReport {
  MinimizeConfig config;
  std::vector<SubmoduleResult> submodules;
  ScheduleState schedule;
  std::size_t gates_before = 0;
  std::size_t gates_after = 0;

  std::size_t total_steps() const;
  std::string str() const;
};

// Minimizes each submodule's boundary outputs separately (covers of equal
// functions are shared) and realizes the cheaper of f and NOT f'.
SubmoduleResult minimize_submodule(const circuit::Circuit& c, const LogicSubmodule& sub);

// Gates realizing `covers` over the boundary wires of `sub`. groups[j] holds
// the gates for boundary output j and may use wires made by earlier groups.
// Fresh wires are numbered from first_fresh.
struct Resynthesis {
  std::vector<std::vector<circuit::Gate>> groups;
  std::vector<WireId> out_wires;
  std::vector<unsigned> fresh_widths;

  std::size_t gate_count() const;
};

// Requires zero and one constant wires in c.
Resynthesis resynthesize(const circuit::Circuit& c, const LogicSubmodule& sub,
                         const std::vector<OutputCover>& covers, WireId first_fresh);

// Functionally identical circuit with every minimizable submodule replaced by
// its minimized realization when that is strictly smaller. Output does not
// depend on the core count.
circuit::Circuit minimize(const circuit::Circuit& c, const MinimizeConfig& cfg = {},
                          MinimizeReport* report = nullptr);

}  // namespace vcc::minimizer
