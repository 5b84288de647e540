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

#include "vcc/chain/transaction.hpp"

#include <mutex>

#include "vcc/chain/p2sh.hpp"
#include "vcc/error.hpp"

namespace vcc::chain {
namespace {

void put_u32(Bytes& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_u64(Bytes& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_script(Bytes& out, const Script& s) {
  const Bytes b = serialize(s);
  put_u32(out, static_cast<std::uint32_t>(b.size()));
  out.insert(out.end(), b.begin(), b.end());
}

class Reader {
 public:
  explicit Reader(const Bytes& b) : b_(b) {}

  std::uint64_t uint(int bytes) {
    need(static_cast<std::size_t>(bytes));
    std::uint64_t v = 0;
    for (int i = 0; i < bytes; ++i) v |= std::uint64_t{b_[pos_++]} << (8 * i);
    return v;
  }

  Bytes take(std::size_t n) {
    need(n);
    Bytes out(b_.begin() + static_cast<std::ptrdiff_t>(pos_),
              b_.begin() + static_cast<std::ptrdiff_t>(pos_ + n));
    pos_ += n;
    return out;
  }

  Script script() { return parse_script(take(uint(4))); }
  bool done() const { return pos_ == b_.size(); }

 private:
  void need(std::size_t n) {
    if (b_.size() - pos_ < n) {
      throw Error(ErrorCode::DeserializeError, "transaction truncated at byte " + std::to_string(pos_));
    }
  }

  const Bytes& b_;
  std::size_t pos_ = 0;
};

}  // namespace

Bytes serialize(const Transaction& tx) {
  Bytes out;
  put_u32(out, 1);
  put_u32(out, static_cast<std::uint32_t>(tx.inputs.size()));
  for (const TxInput& in : tx.inputs) {
    out.insert(out.end(), in.prev.txid.begin(), in.prev.txid.end());
    put_u32(out, in.prev.index);
    put_script(out, in.unlocking);
    put_u32(out, in.sighash_flags);
  }
  put_u32(out, static_cast<std::uint32_t>(tx.outputs.size()));
  for (const TxOutput& o : tx.outputs) {
    put_u64(out, o.amount);
    put_script(out, o.locking);
  }
  return out;
}

Transaction parse_transaction(const Bytes& bytes) {
  Reader r(bytes);
  if (r.uint(4) != 1) throw Error(ErrorCode::DeserializeError, "unsupported transaction version");
  Transaction tx;
  const std::uint64_t n_in = r.uint(4);
  for (std::uint64_t i = 0; i < n_in; ++i) {
    TxInput in;
    const Bytes id = r.take(20);
    std::copy(id.begin(), id.end(), in.prev.txid.begin());
    in.prev.index = static_cast<std::uint32_t>(r.uint(4));
    in.unlocking = r.script();
    in.sighash_flags = static_cast<std::uint32_t>(r.uint(4));
    tx.inputs.push_back(std::move(in));
  }
  const std::uint64_t n_out = r.uint(4);
  for (std::uint64_t i = 0; i < n_out; ++i) {
    TxOutput o;
    o.amount = r.uint(8);
    o.locking = r.script();
    tx.outputs.push_back(std::move(o));
  }
  if (!r.done()) throw Error(ErrorCode::DeserializeError, "trailing bytes after transaction");
  return tx;
}

Digest Transaction::txid() const { return hash160(serialize(*this)); }

Transaction build_funding_tx(const Script& contract_lock, Amount payment,
                             const Digest& payee_pubkey_hash,
                             const std::array<OutPoint, 2>& sources, const Bytes& funder_pubkey,
                             Amount contract_amount) {
  if (payment == 0 || contract_amount == 0) {
    throw Error(ErrorCode::InvalidConfig, "funding amounts must be positive");
  }
  Transaction tx;
  for (const OutPoint& src : sources) {
    tx.inputs.push_back({src, p2pkh_unlock(funder_pubkey), kSighashSingleAnyoneCanPay});
  }
  tx.outputs.push_back({contract_amount, contract_lock});
  tx.outputs.push_back({payment, p2pkh_lock(payee_pubkey_hash)});
  return tx;
}

Transaction build_spending_tx(const Transaction& funding, const Script& unlocking,
                              const Digest& payee_pubkey_hash) {
  Transaction tx;
  tx.inputs.push_back({{funding.txid(), 0}, unlocking, kSighashAll});
  const Amount amount = funding.outputs.empty() ? 0 : funding.outputs[0].amount;
  tx.outputs.push_back({amount, p2pkh_lock(payee_pubkey_hash)});
  return tx;
}

Digest UtxoLedger::add_genesis(std::vector<TxOutput> outputs) {
  Transaction tx;
  tx.outputs = std::move(outputs);
  const Digest id = tx.txid();
  std::unique_lock lock(mu_);
  if (seen_.count(id)) throw Error(ErrorCode::InvalidTransaction, "duplicate txid " + hex(id));
  seen_.insert(id);
  for (std::uint32_t i = 0; i < tx.outputs.size(); ++i) utxos_[{id, i}] = tx.outputs[i];
  return id;
}

ExecutionResult UtxoLedger::check_locked(const Transaction& tx, const ExecutionContext& ctx) const {
  if (tx.inputs.empty()) return {false, "transaction has no inputs"};
  if (seen_.count(tx.txid())) return {false, "transaction already recorded"};
  Amount in_total = 0, out_total = 0;
  std::map<OutPoint, bool> spent;
  for (std::size_t i = 0; i < tx.inputs.size(); ++i) {
    const TxInput& in = tx.inputs[i];
    auto it = utxos_.find(in.prev);
    const std::string where = "input " + std::to_string(i);
    if (it == utxos_.end()) {
      return {false, where + " references unknown or spent output " + hex(in.prev.txid) + ":" +
                         std::to_string(in.prev.index)};
    }
    if (spent[in.prev]) return {false, where + " double-spends its output"};
    spent[in.prev] = true;
    ExecutionResult r;
    try {
      r = execute(in.unlocking, it->second.locking, ctx);
    } catch (const Error& e) {
      return {false, where + ": " + e.what()};
    }
    if (!r.accepted) return {false, where + ": " + r.reason};
    in_total += it->second.amount;
  }
  for (const TxOutput& o : tx.outputs) out_total += o.amount;
  if (out_total > in_total) return {false, "outputs exceed inputs"};
  return {true, ""};
}

ExecutionResult UtxoLedger::check(const Transaction& tx, const ExecutionContext& ctx) const {
  std::shared_lock lock(mu_);
  return check_locked(tx, ctx);
}

Digest UtxoLedger::apply(const Transaction& tx, const ExecutionContext& ctx) {
  std::unique_lock lock(mu_);
  ExecutionResult r = check_locked(tx, ctx);
  if (!r.accepted) throw Error(ErrorCode::InvalidTransaction, r.reason);
  const Digest id = tx.txid();
  for (const TxInput& in : tx.inputs) utxos_.erase(in.prev);
  for (std::uint32_t i = 0; i < tx.outputs.size(); ++i) utxos_[{id, i}] = tx.outputs[i];
  seen_.insert(id);
  return id;
}

std::optional<TxOutput> UtxoLedger::find(const OutPoint& p) const {
  std::shared_lock lock(mu_);
  auto it = utxos_.find(p);
  if (it == utxos_.end()) return std::nullopt;
  return it->second;
}

std::size_t UtxoLedger::size() const {
  std::shared_lock lock(mu_);
  return utxos_.size();
}

}  // namespace vcc::chain
