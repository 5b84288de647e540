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
#include <compare>
#include <map>
#include <optional>
#include <set>
#include <shared_mutex>

#include "vcc/chain/interpreter.hpp"
#include "vcc/chain/script.hpp"

namespace vcc::chain {

using Amount = std::uint64_t;

inline constexpr Amount kSatoshiPerBtc = 100'000'000;
inline constexpr std::uint32_t kSighashAll = 0x01;
inline constexpr std::uint32_t kSighashSingleAnyoneCanPay = 0x83;

struct OutPoint {
  Digest txid{};
  std::uint32_t index = 0;

  auto operator<=>(const OutPoint&) const = default;
};

struct TxInput {
  OutPoint prev;
  Script unlocking;
  std::uint32_t sighash_flags = kSighashAll;  // recorded only; signatures are mocked

  bool operator==(const TxInput&) const = default;
};

struct TxOutput {
  Amount amount = 0;
  Script locking;

  bool operator==(const TxOutput&) const = default;
};

struct Transaction {
  std::vector<TxInput> inputs;
  std::vector<TxOutput> outputs;

  Digest txid() const;
  bool operator==(const Transaction&) const = default;
};

// Little-endian, length-prefixed layout:
//   u32 version (1)
//   u32 input count, then per input:
//     txid[20] u32 index u32 script_len script u32 sighash_flags
//   u32 output count, then per output:
//     u64 amount u32 script_len script
// Scripts use the binary script encoding. The txid is hash160 of these bytes.
Bytes serialize(const Transaction& tx);
// Throws Error(DeserializeError).
Transaction parse_transaction(const Bytes& bytes);

// Output 0 locks `contract_amount` under the contract script, output 1 pays
// `payment` to `payee_pubkey_hash`. Both inputs spend P2PKH outputs of
// `funder_pubkey` with SIGHASH_SINGLE|ANYONECANPAY recorded.
// Throws Error(InvalidConfig) for zero amounts.
Transaction build_funding_tx(const Script& contract_lock, Amount payment,
                             const Digest& payee_pubkey_hash,
                             const std::array<OutPoint, 2>& sources, const Bytes& funder_pubkey,
                             Amount contract_amount);

// Spends output 0 of `funding` to a P2PKH output for `payee_pubkey_hash`.
Transaction build_spending_tx(const Transaction& funding, const Script& unlocking,
                              const Digest& payee_pubkey_hash);

// In-memory unspent output set. One writer, many readers.
class UtxoLedger {
 public:
  // Adds a transaction without inputs. Throws Error(InvalidTransaction) on a
  // txid collision.
  Digest add_genesis(std::vector<TxOutput> outputs);

  // Checks references, scripts (each input against its referenced output
  // with `ctx`) and that inputs cover outputs.
  ExecutionResult check(const Transaction& tx, const ExecutionContext& ctx) const;
  // check(), then spends the inputs and records the outputs. Throws
  // Error(InvalidTransaction).
  Digest apply(const Transaction& tx, const ExecutionContext& ctx);

  std::optional<TxOutput> find(const OutPoint& p) const;
  std::size_t size() const;

 private:
  ExecutionResult check_locked(const Transaction& tx, const ExecutionContext& ctx) const;

  mutable std::shared_mutex mu_;
  std::map<OutPoint, TxOutput> utxos_;
  std::set<Digest> seen_;
};

}  // namespace vcc::chain
