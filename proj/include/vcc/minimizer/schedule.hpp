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
#include <cstdint>
#include <string_view>
#include <vector>

namespace vcc::minimizer {

enum class Strategy { LPT, RoundRobin };

std::string_view to_string(Strategy s);
// Accepts "lpt" and "round-robin". Throws Error(InvalidConfig).
Strategy parse_strategy(std::string_view text);

struct ScheduleStep {
  std::size_t job = 0;
  std::size_t core = 0;
  // Per-core aggregates just before the assignment.
  std::vector<std::uint64_t> aggregates_before;
};

struct ScheduleState {
  std::size_t cores = 1;
  std::vector<std::vector<std::size_t>> lists;
  std::vector<std::uint64_t> aggregates;
  std::vector<ScheduleStep> log;

  std::uint64_t makespan() const;
};

// Assigns job i (size sizes[i]) to a core. LPT visits jobs by decreasing size
// (stable) and picks the lowest-index core of minimum aggregate. Round-robin
// puts job i on core i mod N. Throws Error(InvalidConfig) when cores == 0.
ScheduleState schedule(const std::vector<std::uint64_t>& sizes, std::size_t cores,
                       Strategy strategy);

}  // namespace vcc::minimizer
