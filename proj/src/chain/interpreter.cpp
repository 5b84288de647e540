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

#include "vcc/chain/interpreter.hpp"

#include <memory>

#include "vcc/chain/p2sh.hpp"
#include "vcc/error.hpp"

namespace vcc::chain {
namespace {

using Stack = std::vector<Bytes>;

bool truthy(const Bytes& b) {
  for (std::uint8_t x : b) {
    if (x) return true;
  }
  return false;
}

Bytes pop(Stack& s, Opcode op) {
  if (s.empty()) {
    throw Error(ErrorCode::StackUnderflow, std::string(to_string(op)) + " on an empty stack");
  }
  Bytes b = std::move(s.back());
  s.pop_back();
  return b;
}

Bytes boolean(bool v) { return v ? Bytes{1} : Bytes{}; }

class Machine {
 public:
  explicit Machine(const ExecutionContext& ctx) : ctx_(ctx) {}

  // False when a VERIFY-style opcode fails; `why` records the cause.
  bool run(const Script& script, Stack& st) {
    Stack alt;
    for (const ScriptItem& it : script.items) {
      if (it.is_push) {
        st.push_back(it.data);
        continue;
      }
      switch (it.op) {
        case Opcode::OP_DUP: {
          if (st.empty()) pop(st, it.op);
          st.push_back(st.back());
          break;
        }
        case Opcode::OP_TOALTSTACK:
          alt.push_back(pop(st, it.op));
          break;
        case Opcode::OP_HASH160:
          st.push_back(to_bytes(hash160(pop(st, it.op))));
          break;
        case Opcode::OP_EQUAL:
        case Opcode::OP_EQUALVERIFY: {
          Bytes a = pop(st, it.op), b = pop(st, it.op);
          if (it.op == Opcode::OP_EQUAL) {
            st.push_back(boolean(a == b));
          } else if (a != b) {
            why_ = "OP_EQUALVERIFY: hash mismatch";
            return false;
          }
          break;
        }
        case Opcode::OP_CHECKSIG:
        case Opcode::OP_CHECKSIGVERIFY: {
          const bool ok = !ctx_.expected_pubkey.empty() && pop(st, it.op) == ctx_.expected_pubkey;
          if (it.op == Opcode::OP_CHECKSIG) {
            st.push_back(boolean(ok));
          } else if (!ok) {
            why_ = "OP_CHECKSIGVERIFY: unexpected public key";
            return false;
          }
          break;
        }
        case Opcode::OP_VERIFY_POC:
          st.push_back(boolean(verify_poc(st, alt)));
          break;
      }
    }
    return true;
  }

  const std::string& why() const { return why_; }

 private:
  bool verify_poc(Stack& st, Stack& alt) {
    if (alt.empty()) throw Error(ErrorCode::StackUnderflow, "OP_VERIFY_POC without VK chunks");
    Bytes vk_bytes;
    while (!alt.empty()) {
      Bytes c = pop(alt, Opcode::OP_VERIFY_POC);
      vk_bytes.insert(vk_bytes.end(), c.begin(), c.end());
    }
    crypto::VerificationKey vk;
    try {
      vk = ctx_.vk_deserializer ? ctx_.vk_deserializer(vk_bytes)
                                : crypto::parse_verification_key(
                                      std::string(vk_bytes.begin(), vk_bytes.end()));
    } catch (const Error& e) {
      throw Error(ErrorCode::DeserializeError, std::string("verification key: ") + e.what());
    }
    std::vector<Fe> io(vk.n_io());
    for (std::size_t i = io.size(); i-- > 0;) io[i] = decode_value(pop(st, Opcode::OP_VERIFY_POC));
    const Bytes proof_bytes = pop(st, Opcode::OP_VERIFY_POC);

    std::unique_ptr<crypto::BilinearBackend> owned;
    const crypto::BilinearBackend* b = ctx_.backend;
    if (!b) {
      try {
        owned = crypto::make_backend(vk.backend, vk.modulus);
      } catch (const Error& e) {
        throw Error(ErrorCode::DeserializeError, std::string("verification key: ") + e.what());
      }
      b = owned.get();
    }
    if (b->name() != vk.backend || b->scalar_field().modulus() != vk.modulus) {
      why_ = "OP_VERIFY_POC: key was made for another backend";
      return false;
    }
    try {
      const crypto::Proof proof =
          crypto::parse_proof(std::string(proof_bytes.begin(), proof_bytes.end()));
      if (!crypto::verify(vk, io, proof, *b)) {
        why_ = "OP_VERIFY_POC: pairing check failed";
        return false;
      }
    } catch (const Error& e) {
      throw Error(ErrorCode::DeserializeError, std::string("proof: ") + e.what());
    }
    return true;
  }

  const ExecutionContext& ctx_;
  std::string why_;
};

ExecutionResult finish(bool ran, const Stack& st, const Machine& m) {
  if (!ran) return {false, m.why()};
  if (st.empty() || !truthy(st.back())) {
    return {false, m.why().empty() ? "final stack top is false" : m.why()};
  }
  return {true, ""};
}

}  // namespace

ExecutionResult execute(const Script& unlocking, const Script& locking,
                        const ExecutionContext& ctx) {
  if (!unlocking.push_only()) return {false, "unlocking script is not push-only"};
  Machine m(ctx);
  Stack st;
  m.run(unlocking, st);
  Stack saved = st;
  const bool ran = m.run(locking, st);
  if (!p2sh_hash(locking)) return finish(ran, st, m);
  ExecutionResult outer = finish(ran, st, m);
  if (!outer.accepted) return {false, "redeem script hash mismatch"};

  const Bytes redeem_bytes = pop(saved, Opcode::OP_HASH160);
  const Script redeem = parse_script(redeem_bytes);
  Machine inner(ctx);
  const bool ok = inner.run(redeem, saved);
  return finish(ok, saved, inner);
}

}  // namespace vcc::chain
