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

#include "vcc/chain/p2sh.hpp"

#include "vcc/error.hpp"

namespace vcc::chain {

Bytes VKChunks::joined() const {
  Bytes out;
  for (const Bytes& c : chunks) out.insert(out.end(), c.begin(), c.end());
  return out;
}

VKChunks chunk_vk(const Bytes& vk_bytes, std::size_t max_push) {
  if (max_push == 0) throw Error(ErrorCode::InvalidConfig, "max_push must be positive");
  VKChunks out;
  for (std::size_t i = 0; i < vk_bytes.size(); i += max_push) {
    const std::size_t end = std::min(vk_bytes.size(), i + max_push);
    out.chunks.emplace_back(vk_bytes.begin() + static_cast<std::ptrdiff_t>(i),
                            vk_bytes.begin() + static_cast<std::ptrdiff_t>(end));
    out.hashes.push_back(hash160(out.chunks.back()));
  }
  return out;
}

Script build_redeem_script(const VKChunks& chunks, const Bytes& worker_pubkey,
                           const ScriptLimits& limits) {
  if (chunks.hashes.empty()) throw Error(ErrorCode::InvalidConfig, "redeem script needs a VK chunk");
  Script s;
  for (std::size_t i = chunks.hashes.size(); i-- > 0;) {
    s.items.push_back(ScriptItem::opcode(Opcode::OP_DUP));
    s.items.push_back(ScriptItem::opcode(Opcode::OP_HASH160));
    s.items.push_back(ScriptItem::push(to_bytes(chunks.hashes[i])));
    s.items.push_back(ScriptItem::opcode(Opcode::OP_EQUALVERIFY));
    s.items.push_back(ScriptItem::opcode(Opcode::OP_TOALTSTACK));
  }
  s.items.push_back(ScriptItem::push(worker_pubkey));
  s.items.push_back(ScriptItem::opcode(Opcode::OP_CHECKSIGVERIFY));
  s.items.push_back(ScriptItem::opcode(Opcode::OP_VERIFY_POC));
  check_limits(s, limits);
  return s;
}

Script build_locking_script(const Script& redeem) {
  Script s;
  s.items.push_back(ScriptItem::opcode(Opcode::OP_HASH160));
  s.items.push_back(ScriptItem::push(to_bytes(hash160(serialize(redeem)))));
  s.items.push_back(ScriptItem::opcode(Opcode::OP_EQUAL));
  return s;
}

std::optional<Digest> p2sh_hash(const Script& lock) {
  const auto& it = lock.items;
  if (it.size() != 3 || it[0].is_push || it[0].op != Opcode::OP_HASH160 || !it[1].is_push ||
      it[1].data.size() != 20 || it[2].is_push || it[2].op != Opcode::OP_EQUAL) {
    return std::nullopt;
  }
  Digest d;
  std::copy(it[1].data.begin(), it[1].data.end(), d.begin());
  return d;
}

Script build_unlocking_script(const crypto::Proof& proof, const std::vector<Fe>& io_x,
                              const std::vector<Fe>& io_y, const VKChunks& chunks,
                              const Script& redeem, const ScriptLimits& limits) {
  Script s;
  s.items.push_back(ScriptItem::push(to_bytes(crypto::serialize(proof))));
  for (Fe v : io_x) s.items.push_back(ScriptItem::push(encode_value(v)));
  for (Fe v : io_y) s.items.push_back(ScriptItem::push(encode_value(v)));
  for (const Bytes& c : chunks.chunks) s.items.push_back(ScriptItem::push(c));
  s.items.push_back(ScriptItem::push(serialize(redeem)));
  check_pushes(s, limits);
  return s;
}

Script p2pkh_lock(const Digest& pubkey_hash) {
  Script s;
  s.items.push_back(ScriptItem::opcode(Opcode::OP_DUP));
  s.items.push_back(ScriptItem::opcode(Opcode::OP_HASH160));
  s.items.push_back(ScriptItem::push(to_bytes(pubkey_hash)));
  s.items.push_back(ScriptItem::opcode(Opcode::OP_EQUALVERIFY));
  s.items.push_back(ScriptItem::opcode(Opcode::OP_CHECKSIG));
  return s;
}

Script p2pkh_unlock(const Bytes& pubkey) { return Script{{ScriptItem::push(pubkey)}}; }

Bytes encode_value(Fe v) {
  Bytes b(8);
  for (int i = 7; i >= 0; --i) {
    b[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(v & 0xff);
    v >>= 8;
  }
  return b;
}

Fe decode_value(const Bytes& b) {
  if (b.size() != 8) {
    throw Error(ErrorCode::DeserializeError, "value push of " + std::to_string(b.size()) + " bytes");
  }
  Fe v = 0;
  for (std::uint8_t x : b) v = v << 8 | x;
  return v;
}

Bytes mock_pubkey(std::string_view owner) {
  const auto h = sha256(to_bytes(owner));
  Bytes out(1 + h.size(), 0x02);
  std::copy(h.begin(), h.end(), out.begin() + 1);
  return out;
}

}  // namespace vcc::chain
