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

#include <functional>
#include <string>

#include "vcc/chain/script.hpp"
#include "vcc/crypto/proof_system.hpp"

namespace vcc::chain {

struct ExecutionContext {
  // When null, OP_VERIFY_POC builds the backend named in the VK.
  const crypto::BilinearBackend* backend = nullptr;
  // OP_CHECKSIG(VERIFY) pops a public key and accepts iff it equals this.
  Bytes expected_pubkey;
  // Defaults to crypto::parse_verification_key over the reassembled bytes.
  std::function<crypto::VerificationKey(const Bytes&)> vk_deserializer;
  ScriptLimits limits;
};

struct ExecutionResult {
  bool accepted = false;
  std::string reason;
};

// Runs the push-only unlocking script, then the locking script. A P2SH lock
// that succeeds hands the remaining stack to the revealed redeem script.
// Throws Error(StackUnderflow) and Error(DeserializeError).
ExecutionResult execute(const Script& unlocking, const Script& locking,
                        const ExecutionContext& ctx);

}  // namespace vcc::chain
