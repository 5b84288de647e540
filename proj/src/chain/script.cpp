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

#include "vcc/chain/script.hpp"

#include <array>
#include <sstream>

#include "vcc/error.hpp"

namespace vcc::chain {
namespace {

constexpr std::uint8_t kPushData1 = 0x4c;
constexpr std::uint8_t kPushData2 = 0x4d;

constexpr std::array<std::pair<Opcode, std::string_view>, 8> kNames{{
    {Opcode::OP_TOALTSTACK, "OP_TOALTSTACK"},
    {Opcode::OP_DUP, "OP_DUP"},
    {Opcode::OP_EQUAL, "OP_EQUAL"},
    {Opcode::OP_EQUALVERIFY, "OP_EQUALVERIFY"},
    {Opcode::OP_HASH160, "OP_HASH160"},
    {Opcode::OP_CHECKSIG, "OP_CHECKSIG"},
    {Opcode::OP_CHECKSIGVERIFY, "OP_CHECKSIGVERIFY"},
    {Opcode::OP_VERIFY_POC, "OP_VERIFY_POC"},
}};

}  // namespace

std::string_view to_string(Opcode op) {
  for (const auto& [o, name] : kNames) {
    if (o == op) return name;
  }
  return "OP_UNKNOWN";
}

std::optional<Opcode> parse_opcode(std::string_view name) {
  for (const auto& [o, n] : kNames) {
    if (n == name) return o;
  }
  return std::nullopt;
}

ScriptItem ScriptItem::push(Bytes data) {
  ScriptItem it;
  it.is_push = true;
  it.data = std::move(data);
  return it;
}

ScriptItem ScriptItem::opcode(Opcode op) {
  ScriptItem it;
  it.op = op;
  return it;
}

bool Script::push_only() const {
  for (const ScriptItem& it : items) {
    if (!it.is_push) return false;
  }
  return true;
}

Bytes serialize(const Script& s) {
  Bytes out;
  for (const ScriptItem& it : s.items) {
    if (!it.is_push) {
      out.push_back(static_cast<std::uint8_t>(it.op));
      continue;
    }
    const std::size_t n = it.data.size();
    if (n <= 75) {
      out.push_back(static_cast<std::uint8_t>(n));
    } else if (n <= 0xff) {
      out.push_back(kPushData1);
      out.push_back(static_cast<std::uint8_t>(n));
    } else if (n <= 0xffff) {
      out.push_back(kPushData2);
      out.push_back(static_cast<std::uint8_t>(n & 0xff));
      out.push_back(static_cast<std::uint8_t>(n >> 8));
    } else {
      throw Error(ErrorCode::PushTooLarge, "push of " + std::to_string(n) + " bytes not encodable");
    }
    out.insert(out.end(), it.data.begin(), it.data.end());
  }
  return out;
}

Script parse_script(const Bytes& bytes) {
  Script s;
  std::size_t i = 0;
  auto need = [&](std::size_t k) {
    if (bytes.size() - i < k) {
      throw Error(ErrorCode::DeserializeError, "truncated script at offset " + std::to_string(i));
    }
  };
  while (i < bytes.size()) {
    const std::uint8_t b = bytes[i++];
    std::size_t n;
    if (b <= 75) {
      n = b;
    } else if (b == kPushData1) {
      need(1);
      n = bytes[i++];
    } else if (b == kPushData2) {
      need(2);
      n = bytes[i] | std::size_t{bytes[i + 1]} << 8;
      i += 2;
    } else {
      auto op = static_cast<Opcode>(b);
      if (to_string(op) == "OP_UNKNOWN") {
        throw Error(ErrorCode::DeserializeError, "unknown opcode 0x" + hex(&b, 1));
      }
      s.items.push_back(ScriptItem::opcode(op));
      continue;
    }
    need(n);
    s.items.push_back(ScriptItem::push(Bytes(bytes.begin() + static_cast<std::ptrdiff_t>(i),
                                             bytes.begin() + static_cast<std::ptrdiff_t>(i + n))));
    i += n;
  }
  return s;
}

std::string to_text(const Script& s) {
  std::string out;
  for (const ScriptItem& it : s.items) {
    if (it.is_push) {
      out += "PUSH " + hex(it.data);
    } else {
      out += to_string(it.op);
    }
    out += '\n';
  }
  return out;
}

Script parse_script_text(const std::string& text) {
  Script s;
  std::istringstream in(text);
  std::string line;
  std::size_t ln = 0;
  while (std::getline(in, line)) {
    ++ln;
    std::istringstream ls(line);
    std::string word, arg, extra;
    if (!(ls >> word)) continue;
    ls >> arg >> extra;
    auto fail = [&](const std::string& msg) {
      return Error(ErrorCode::ParseError, "script line " + std::to_string(ln) + ": " + msg);
    };
    if (!extra.empty()) throw fail("trailing tokens");
    if (word == "PUSH") {
      Bytes data;
      if (!parse_hex_bytes(arg, data)) throw fail("bad hex payload");
      s.items.push_back(ScriptItem::push(std::move(data)));
    } else if (auto op = parse_opcode(word); op && arg.empty()) {
      s.items.push_back(ScriptItem::opcode(*op));
    } else {
      throw fail("unknown item '" + word + "'");
    }
  }
  return s;
}

void check_pushes(const Script& s, const ScriptLimits& limits) {
  for (const ScriptItem& it : s.items) {
    if (it.is_push && it.data.size() > limits.max_push) {
      throw Error(ErrorCode::PushTooLarge, "push of " + std::to_string(it.data.size()) +
                                               " bytes exceeds max_push " +
                                               std::to_string(limits.max_push));
    }
  }
}

void check_limits(const Script& s, const ScriptLimits& limits) {
  check_pushes(s, limits);
  const std::size_t size = serialize(s).size();
  if (size > limits.max_script) {
    throw Error(ErrorCode::ScriptTooLarge, "script of " + std::to_string(size) +
                                               " bytes exceeds max_script " +
                                               std::to_string(limits.max_script));
  }
}

}  // namespace vcc::chain
