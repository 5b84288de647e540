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

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace vcc::chain {

using Bytes = std::vector<std::uint8_t>;
using Digest = std::array<std::uint8_t, 20>;

// RIPEMD-160(SHA-256(data)).
Digest hash160(const Bytes& data);
std::array<std::uint8_t, 32> sha256(const Bytes& data);

Bytes to_bytes(std::string_view text);
Bytes to_bytes(const Digest& d);
std::string hex(const std::uint8_t* data, std::size_t n);
std::string hex(const Bytes& data);
std::string hex(const Digest& d);
// Lowercase or uppercase hex with an even number of digits.
bool parse_hex_bytes(std::string_view text, Bytes& out);

}  // namespace vcc::chain
