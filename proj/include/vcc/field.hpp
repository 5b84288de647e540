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
#include <random>
#include <string>
#include <string_view>

namespace vcc {

// Elements of F_p are plain residues in [0, p). All arithmetic goes through a
// PrimeField so that the modulus stays a runtime parameter.
using Fe = std::uint64_t;

// 2^61 - 1.
inline constexpr std::uint64_t kDefaultModulus = 2305843009213693951ULL;

bool is_prime(std::uint64_t n);

class PrimeField {
 public:
  // Throws Error(NotPrime) when p is not prime or p < 3, and
  // Error(InvalidConfig) when p >= 2^63 (sums must fit in 64 bits).
  explicit PrimeField(std::uint64_t p = kDefaultModulus);

  std::uint64_t modulus() const noexcept { return p_; }
  // Number of bits of p.
  unsigned bits() const noexcept { return bits_; }

  Fe reduce(std::uint64_t x) const noexcept { return x % p_; }
  // Maps a signed integer onto its residue.
  Fe from_int(std::int64_t x) const noexcept;

  Fe add(Fe a, Fe b) const noexcept {
    Fe s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Fe sub(Fe a, Fe b) const noexcept { return a >= b ? a - b : a + (p_ - b); }
  Fe neg(Fe a) const noexcept { return a == 0 ? 0 : p_ - a; }
  Fe mul(Fe a, Fe b) const noexcept {
    return static_cast<Fe>((static_cast<unsigned __int128>(a) * b) % p_);
  }
  Fe pow(Fe base, std::uint64_t exp) const noexcept;
  // Throws Error(DimensionMismatch) for a == 0.
  Fe inv(Fe a) const;

  // Uniform element of [lo, p) drawn by rejection from raw 64-bit words, so
  // that a seeded std::mt19937_64 gives the same stream on every platform.
  Fe sample(std::mt19937_64& rng, Fe lo = 0) const;

  bool operator==(const PrimeField& other) const noexcept {
    return p_ == other.p_;
  }

 private:
  std::uint64_t p_;
  unsigned bits_;
};

std::string to_hex(std::uint64_t v);
// Accepts lowercase or uppercase hex without prefix. Returns false on junk or
// overflow.
bool parse_hex(std::string_view text, std::uint64_t& out);
bool parse_u64(std::string_view text, std::uint64_t& out);
bool parse_i64(std::string_view text, std::int64_t& out);

}  // namespace vcc
