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

#include "vcc/chain/hash.hpp"

#include <openssl/ripemd.h>
#include <openssl/sha.h>

namespace vcc::chain {

std::array<std::uint8_t, 32> sha256(const Bytes& data) {
  std::array<std::uint8_t, 32> out{};
  SHA256(data.data(), data.size(), out.data());
  return out;
}

Digest hash160(const Bytes& data) {
  const auto inner = sha256(data);
  Digest out{};
  RIPEMD160(inner.data(), inner.size(), out.data());
  return out;
}

Bytes to_bytes(std::string_view text) { return Bytes(text.begin(), text.end()); }

Bytes to_bytes(const Digest& d) { return Bytes(d.begin(), d.end()); }

std::string hex(const std::uint8_t* data, std::size_t n) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string s;
  s.reserve(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    s += kDigits[data[i] >> 4];
    s += kDigits[data[i] & 15];
  }
  return s;
}

std::string hex(const Bytes& data) { return hex(data.data(), data.size()); }

std::string hex(const Digest& d) { return hex(d.data(), d.size()); }

bool parse_hex_bytes(std::string_view text, Bytes& out) {
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
  };
  if (text.size() % 2) return false;
  Bytes b;
  b.reserve(text.size() / 2);
  for (std::size_t i = 0; i < text.size(); i += 2) {
    const int hi = nibble(text[i]), lo = nibble(text[i + 1]);
    if (hi < 0 || lo < 0) return false;
    b.push_back(static_cast<std::uint8_t>(hi << 4 | lo));
  }
  out = std::move(b);
  return true;
}

}  // namespace vcc::chain
