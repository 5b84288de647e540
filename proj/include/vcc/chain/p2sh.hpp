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
#include <vector>

#include "vcc/chain/script.hpp"
#include "vcc/crypto/proof_system.hpp"

namespace vcc::chain {

struct VKChunks {
  std::vector<Bytes> chunks;
  std::vector<Digest> hashes;

  Bytes joined() const;
  bool operator==(const VKChunks&) const = default;
};

// Greedy split into blocks of max_push bytes (the last may be shorter).
// Throws Error(InvalidConfig) when max_push is zero.
VKChunks chunk_vk(const Bytes& vk_bytes, std::size_t max_push);

// Per chunk, last first: OP_DUP OP_HASH160 <H(chunk)> OP_EQUALVERIFY
// OP_TOALTSTACK. Then <pubkey> OP_CHECKSIGVERIFY OP_VERIFY_POC.
// Throws Error(InvalidConfig) without chunks and Error(ScriptTooLarge).
Script build_redeem_script(const VKChunks& chunks, const Bytes& worker_pubkey,
                           const ScriptLimits& limits = {});

// OP_HASH160 <hash160(serialize(redeem))> OP_EQUAL.
Script build_locking_script(const Script& redeem);

// The 20-byte hash when `lock` is exactly the P2SH pattern.
std::optional<Digest> p2sh_hash(const Script& lock);

// Pushes the proof text, x values, y values, VK chunks and the serialized
// redeem script. Throws Error(PushTooLarge).
Script build_unlocking_script(const crypto::Proof& proof, const std::vector<Fe>& io_x,
                              const std::vector<Fe>& io_y, const VKChunks& chunks,
                              const Script& redeem, const ScriptLimits& limits = {});

// OP_DUP OP_HASH160 <pkh> OP_EQUALVERIFY OP_CHECKSIG, spent by <pubkey>.
Script p2pkh_lock(const Digest& pubkey_hash);
Script p2pkh_unlock(const Bytes& pubkey);

// 8-byte big-endian field element.
Bytes encode_value(Fe v);
// Throws Error(DeserializeError) unless exactly 8 bytes.
Fe decode_value(const Bytes& b);

// Deterministic 33-byte stand-in for a compressed public key.
Bytes mock_pubkey(std::string_view owner);

}  // namespace vcc::chain
