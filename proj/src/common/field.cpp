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

#include "vcc/field.hpp"

#include <array>
#include <bit>
#include <charconv>

#include "vcc/error.hpp"

namespace vcc {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e != 0) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  static constexpr std::array<std::uint64_t, 12> kBases = {
      2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (std::uint64_t p : kBases) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These bases are a deterministic witness set for all n < 2^64.
  for (std::uint64_t a : kBases) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

PrimeField::PrimeField(std::uint64_t p) : p_(p), bits_(0) {
  if (p < 3 || !is_prime(p)) {
    throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not an odd prime");
  }
  if (p >> 63) {
    throw Error(ErrorCode::InvalidConfig, "modulus must be below 2^63");
  }
  bits_ = static_cast<unsigned>(std::bit_width(p));
}

Fe PrimeField::from_int(std::int64_t x) const noexcept {
  if (x >= 0) return static_cast<std::uint64_t>(x) % p_;
  // Negate in unsigned arithmetic to survive INT64_MIN.
  std::uint64_t mag = ~static_cast<std::uint64_t>(x) + 1;
  return neg(mag % p_);
}

Fe PrimeField::pow(Fe base, std::uint64_t exp) const noexcept {
  return powmod(base, exp, p_);
}

Fe PrimeField::inv(Fe a) const {
  if (a % p_ == 0) {
    throw Error(ErrorCode::DimensionMismatch, "inverse of zero");
  }
  return powmod(a, p_ - 2, p_);
}

Fe PrimeField::sample(std::mt19937_64& rng, Fe lo) const {
  const std::uint64_t span = p_ - lo;
  const std::uint64_t mask =
      std::bit_width(span) >= 64 ? ~0ULL : (1ULL << std::bit_width(span)) - 1;
  for (;;) {
    std::uint64_t x = rng() & mask;
    if (x < span) return lo + x;
  }
}

std::string to_hex(std::uint64_t v) {
  std::array<char, 17> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v, 16);
  (void)ec;
  return std::string(buf.data(), end);
}

bool parse_hex(std::string_view text, std::uint64_t& out) {
  if (text.empty()) return false;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out, 16);
  return ec == std::errc() && ptr == text.data() + text.size();
}

bool parse_u64(std::string_view text, std::uint64_t& out) {
  if (text.empty()) return false;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out, 10);
  return ec == std::errc() && ptr == text.data() + text.size();
}

bool parse_i64(std::string_view text, std::int64_t& out) {
  if (text.empty()) return false;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out, 10);
  return ec == std::errc() && ptr == text.data() + text.size();
}

}  // namespace vcc
