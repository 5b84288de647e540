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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vcc/chain/hash.hpp"

namespace vcc::chain {

// Byte values follow Bitcoin Script where an opcode exists there;
// OP_VERIFY_POC occupies the OP_NOP10 slot.
enum class Opcode : std::uint8_t {
  OP_TOALTSTACK = 0x6b,
  OP_DUP = 0x76,
  OP_EQUAL = 0x87,
  OP_EQUALVERIFY = 0x88,
  OP_HASH160 = 0xa9,
  OP_CHECKSIG = 0xac,
  OP_CHECKSIGVERIFY = 0xad,
  OP_VERIFY_POC = 0xb9,
};

std::string_view to_string(Opcode op);
std::optional<Opcode> parse_opcode(std::string_view name);

struct ScriptItem {
  bool is_push = false;
  Opcode op = Opcode::OP_EQUAL;
  Bytes data;

  static ScriptItem push(Bytes data);
  static ScriptItem opcode(Opcode op);
  bool operator==(const ScriptItem&) const = default;
};

struct Script {
  std::vector<ScriptItem> items;

  bool push_only() const;
  bool operator==(const Script&) const = default;
};

struct ScriptLimits {
  std::size_t max_push = 520;
  std::size_t max_script = 1461;
};

// Push encoding: a direct length byte up to 75, then OP_PUSHDATA1 (0x4c)
// and OP_PUSHDATA2 (0x4d, little-endian length).
Bytes serialize(const Script& s);
// Throws Error(DeserializeError).
Script parse_script(const Bytes& bytes);

// One item per line: "PUSH <hex>" or an opcode name.
std::string to_text(const Script& s);
// Throws Error(ParseError).
Script parse_script_text(const std::string& text);

// Throws Error(PushTooLarge) or Error(ScriptTooLarge).
void check_pushes(const Script& s, const ScriptLimits& limits);
void check_limits(const Script& s, const ScriptLimits& limits);

}  // namespace vcc::chain
