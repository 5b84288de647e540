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

#include "vcc/minimizer/schedule.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "vcc/error.hpp"

namespace vcc::minimizer {

std::string_view to_string(Strategy s) { return s == Strategy::LPT ? "lpt" : "round-robin"; }

Strategy parse_strategy(std::string_view text) {
  if (text == "lpt") return Strategy::LPT;
  if (text == "round-robin") return Strategy::RoundRobin;
  throw Error(ErrorCode::InvalidConfig, "unknown strategy '" + std::string(text) + "'");
}

std::uint64_t ScheduleState::makespan() const {
  return aggregates.empty() ? 0 : *std::max_element(aggregates.begin(), aggregates.end());
}

ScheduleState schedule(const std::vector<std::uint64_t>& sizes, std::size_t cores,
                       Strategy strategy) {
  if (cores == 0) throw Error(ErrorCode::InvalidConfig, "core count must be at least 1");
  ScheduleState st;
  st.cores = cores;
  st.lists.resize(cores);
  st.aggregates.assign(cores, 0);

  std::vector<std::size_t> order(sizes.size());
  std::iota(order.begin(), order.end(), 0);
  if (strategy == Strategy::LPT) {
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return sizes[a] > sizes[b]; });
  }
  for (std::size_t job : order) {
    std::size_t core = job % cores;
    if (strategy == Strategy::LPT) {
      core = static_cast<std::size_t>(
          std::min_element(st.aggregates.begin(), st.aggregates.end()) - st.aggregates.begin());
    }
    st.log.push_back({job, core, st.aggregates});
    st.lists[core].push_back(job);
    st.aggregates[core] += sizes[job];
  }
  return st;
}

}  // namespace vcc::minimizer
