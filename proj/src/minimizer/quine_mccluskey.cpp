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

#include "vcc/minimizer/quine_mccluskey.hpp"

#include <algorithm>
#include <bit>
#include <tuple>
#include <unordered_set>

#include "vcc/error.hpp"

namespace vcc::minimizer {

unsigned Implicant::literals() const {
  return num_vars - static_cast<unsigned>(std::popcount(mask));
}

std::vector<std::uint32_t> Implicant::minterms() const {
  std::vector<std::uint32_t> out;
  // Enumerate the subsets of mask.
  std::uint32_t sub = 0;
  do {
    out.push_back(value | sub);
    sub = (sub - mask) & mask;
  } while (sub != 0);
  std::sort(out.begin(), out.end());
  return out;
}

std::string Implicant::pattern() const {
  std::string s;
  for (unsigned i = 0; i < num_vars; ++i) {
    s += (mask >> i) & 1 ? '-' : (value >> i) & 1 ? '1' : '0';
  }
  return s;
}

bool Implicant::operator<(const Implicant& o) const {
  return std::make_tuple(literals(), mask, value) < std::make_tuple(o.literals(), o.mask, o.value);
}

unsigned num_variables(const std::vector<bool>& truth_table) {
  const std::size_t len = truth_table.size();
  if (len == 0 || !std::has_single_bit(len)) {
    throw Error(ErrorCode::InvalidConfig,
                "truth table length " + std::to_string(len) + " is not a power of two");
  }
  const auto n = static_cast<unsigned>(std::countr_zero(len));
  if (n > kMaxVariables) {
    throw Error(ErrorCode::TooManyVariables,
                std::to_string(n) + " variables exceed the limit of " +
                    std::to_string(kMaxVariables));
  }
  return n;
}

namespace {

// Tabular merging rounds over hashed (value, mask) pairs; suits sparse tables.
std::vector<Implicant> merge_rounds(const std::vector<bool>& truth_table, unsigned n) {
  auto key = [](std::uint32_t v, std::uint32_t m) {
    return (static_cast<std::uint64_t>(m) << 32) | v;
  };
  std::vector<std::pair<std::uint32_t, std::uint32_t>> current;
  for (std::uint32_t m = 0; m < truth_table.size(); ++m) {
    if (truth_table[m]) current.emplace_back(m, 0);
  }
  std::vector<Implicant> primes;
  while (!current.empty()) {
    std::unordered_set<std::uint64_t> present, used, emitted;
    present.reserve(current.size() * 2);
    for (auto [v, m] : current) present.insert(key(v, m));
    std::vector<std::pair<std::uint32_t, std::uint32_t>> next;
    for (auto [v, m] : current) {
      for (unsigned b = 0; b < n; ++b) {
        const std::uint32_t bit = 1u << b;
        if ((m & bit) || (v & bit)) continue;
        if (!present.count(key(v | bit, m))) continue;
        used.insert(key(v, m));
        used.insert(key(v | bit, m));
        if (emitted.insert(key(v, m | bit)).second) next.emplace_back(v, m | bit);
      }
    }
    for (auto [v, m] : current) {
      if (!used.count(key(v, m))) primes.push_back({v, m, n});
    }
    current = std::move(next);
  }
  return primes;
}

// Same result via a table over all 3^n cubes (trit 2 = don't-care); suits
// dense tables. A cube is an implicant iff both halves along any of its
// don't-care positions are.
std::vector<Implicant> cube_table(const std::vector<bool>& truth_table, unsigned n) {
  std::vector<std::uint32_t> pow3(n + 1, 1);
  for (unsigned i = 1; i <= n; ++i) pow3[i] = pow3[i - 1] * 3;
  const std::uint32_t total = pow3[n];
  std::vector<std::uint8_t> imp(total, 0);
  std::vector<std::uint32_t> value(total, 0), mask(total, 0);
  for (std::uint32_t t = 0; t < total; ++t) {
    std::uint32_t x = t, v = 0, m = 0;
    int dash = -1;
    for (unsigned i = 0; i < n; ++i, x /= 3) {
      const std::uint32_t d = x % 3;
      if (d == 1) v |= 1u << i;
      if (d == 2) {
        m |= 1u << i;
        if (dash < 0) dash = static_cast<int>(i);
      }
    }
    value[t] = v;
    mask[t] = m;
    if (dash < 0) {
      imp[t] = truth_table[v];
    } else {
      const std::uint32_t p = pow3[dash];
      imp[t] = imp[t - 2 * p] && imp[t - p];
    }
  }
  std::vector<Implicant> primes;
  for (std::uint32_t t = 0; t < total; ++t) {
    if (!imp[t]) continue;
    bool prime = true;
    std::uint32_t x = t;
    for (unsigned i = 0; i < n && prime; ++i, x /= 3) {
      const std::uint32_t d = x % 3;
      if (d != 2 && imp[t + (2 - d) * pow3[i]]) prime = false;
    }
    if (prime) primes.push_back({value[t], mask[t], n});
  }
  return primes;
}

}  // namespace

std::vector<Implicant> quine_mccluskey(const std::vector<bool>& truth_table) {
  if (truth_table.size() > (std::size_t{1} << kMaxVariables)) {
    throw Error(ErrorCode::TooManyVariables, "truth table exceeds 16 variables");
  }
  const unsigned n = num_variables(truth_table);
  const std::size_t ones = static_cast<std::size_t>(
      std::count(truth_table.begin(), truth_table.end(), true));
  std::vector<Implicant> primes = (n <= 12 || ones * 16 > truth_table.size())
                                      ? cube_table(truth_table, n)
                                      : merge_rounds(truth_table, n);
  std::vector<std::tuple<unsigned, std::uint32_t, std::uint32_t>> keys;
  keys.reserve(primes.size());
  for (const Implicant& p : primes) keys.emplace_back(p.literals(), p.mask, p.value);
  std::sort(keys.begin(), keys.end());
  for (std::size_t i = 0; i < keys.size(); ++i) {
    primes[i] = {std::get<2>(keys[i]), std::get<1>(keys[i]), n};
  }
  return primes;
}

}  // namespace vcc::minimizer
