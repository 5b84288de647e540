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

#include <gtest/gtest.h>

#include <random>
#include <set>

#include "vcc/chain/interpreter.hpp"
#include "vcc/chain/p2sh.hpp"
#include "vcc/chain/transaction.hpp"
#include "vcc/circuit/lower.hpp"
#include "vcc/crypto/proof_system.hpp"
#include "vcc/frontend/flat_program.hpp"
#include "vcc/qap/qap.hpp"

namespace vcc::chain {
namespace {

Digest digest(const std::string& hex_text) {
  Bytes b;
  EXPECT_TRUE(parse_hex_bytes(hex_text, b));
  Digest d{};
  std::copy(b.begin(), b.end(), d.begin());
  return d;
}

TEST(Hash160, KnownVectors) {
  EXPECT_EQ(hex(hash160({})), "b472a266d0bd89c13706a4132ccfb16f7c3b9fcb");
  EXPECT_EQ(hex(hash160(to_bytes("abc"))), "bb1be98c142444d7a56aa3981c3942a978e4dc33");
  EXPECT_EQ(hex(hash160(to_bytes("The quick brown fox jumps over the lazy dog"))),
            "0e3397b4abc7a382b3ea2365883c3c7ca5f07600");
  Bytes big;
  for (int r = 0; r < 3; ++r) {
    for (int i = 0; i < 256; ++i) big.push_back(static_cast<std::uint8_t>(i));
  }
  EXPECT_EQ(hex(hash160(big)), "9eebc660dd88a4616535a2d4d24d0d06ef423cbe");
}

TEST(Hash160, DistinctInputsGiveDistinctDigests) {
  std::mt19937_64 rng(1);
  std::set<Digest> seen;
  for (int i = 0; i < 1000; ++i) {
    Bytes b(1 + rng() % 200);
    for (auto& x : b) x = static_cast<std::uint8_t>(rng());
    b.push_back(static_cast<std::uint8_t>(i));
    b.push_back(static_cast<std::uint8_t>(i >> 8));
    EXPECT_TRUE(seen.insert(hash160(b)).second);
  }
}

TEST(Chunking, GreedySplit) {
  Bytes vk(3000);
  for (std::size_t i = 0; i < vk.size(); ++i) vk[i] = static_cast<std::uint8_t>(i * 7);
  VKChunks c = chunk_vk(vk, 520);
  ASSERT_EQ(c.chunks.size(), 6u);
  for (std::size_t i = 0; i + 1 < c.chunks.size(); ++i) EXPECT_EQ(c.chunks[i].size(), 520u);
  EXPECT_EQ(c.chunks.back().size(), 400u);
  EXPECT_EQ(c.joined(), vk);
  for (std::size_t i = 0; i < c.chunks.size(); ++i) EXPECT_EQ(c.hashes[i], hash160(c.chunks[i]));
  EXPECT_EQ(chunk_vk(Bytes(520, 1), 520).chunks.size(), 1u);
  EXPECT_EQ(chunk_vk(Bytes(521, 1), 520).chunks.size(), 2u);
  EXPECT_TRUE(chunk_vk({}, 520).chunks.empty());
  EXPECT_THROW(chunk_vk(vk, 0), Error);
}

TEST(Chunking, ReassemblyProperty) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 200; ++i) {
    Bytes b(rng() % 2000);
    for (auto& x : b) x = static_cast<std::uint8_t>(rng());
    const std::size_t m = 1 + rng() % 600;
    VKChunks c = chunk_vk(b, m);
    EXPECT_EQ(c.joined(), b);
    EXPECT_EQ(c.chunks.size(), (b.size() + m - 1) / m);
    for (const Bytes& ch : c.chunks) EXPECT_LE(ch.size(), m);
  }
}

TEST(Scripts, RedeemLayout) {
  const Bytes pk = mock_pubkey("worker");
  VKChunks one = chunk_vk(to_bytes("vk"), 520);
  Script r = build_redeem_script(one, pk);
  EXPECT_EQ(to_text(r), "OP_DUP\nOP_HASH160\nPUSH " + hex(one.hashes[0]) +
                            "\nOP_EQUALVERIFY\nOP_TOALTSTACK\nPUSH " + hex(pk) +
                            "\nOP_CHECKSIGVERIFY\nOP_VERIFY_POC\n");
  VKChunks three = chunk_vk(Bytes(1500, 9), 520);
  three.chunks[1][0] = 1;
  three.hashes[1] = hash160(three.chunks[1]);
  Script r3 = build_redeem_script(three, pk);
  ASSERT_EQ(r3.items.size(), 3 * 5 + 3u);
  for (std::size_t g = 0; g < 3; ++g) {
    EXPECT_EQ(r3.items[5 * g + 1].op, Opcode::OP_HASH160);
    EXPECT_EQ(r3.items[5 * g + 2].data, to_bytes(three.hashes[2 - g]));
    EXPECT_EQ(r3.items[5 * g + 3].op, Opcode::OP_EQUALVERIFY);
  }
  EXPECT_EQ(r3.items.back().op, Opcode::OP_VERIFY_POC);
  try {
    build_redeem_script(three, pk, {520, 60});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ScriptTooLarge);
  }
  EXPECT_THROW(build_redeem_script({}, pk), Error);
}

TEST(Scripts, LockingPattern) {
  const Bytes pk = mock_pubkey("worker");
  Script a = build_redeem_script(chunk_vk(to_bytes("a"), 520), pk);
  Script b = build_redeem_script(chunk_vk(Bytes(2000, 3), 520), pk);
  Script la = build_locking_script(a), lb = build_locking_script(b);
  EXPECT_EQ(la.items.size(), 3u);
  EXPECT_NE(la, lb);
  EXPECT_EQ(serialize(la).size(), serialize(lb).size());
  EXPECT_EQ(serialize(la).size(), 23u);
  ASSERT_TRUE(p2sh_hash(la));
  EXPECT_EQ(*p2sh_hash(la), hash160(serialize(a)));
  EXPECT_FALSE(p2sh_hash(a));
}

TEST(Scripts, BinaryAndTextRoundTrip) {
  std::mt19937_64 rng(3);
  const Opcode ops[] = {Opcode::OP_DUP, Opcode::OP_HASH160, Opcode::OP_EQUAL,
                        Opcode::OP_EQUALVERIFY, Opcode::OP_CHECKSIG, Opcode::OP_CHECKSIGVERIFY,
                        Opcode::OP_TOALTSTACK, Opcode::OP_VERIFY_POC};
  for (int i = 0; i < 200; ++i) {
    Script s;
    const int n = static_cast<int>(rng() % 12);
    for (int j = 0; j < n; ++j) {
      if (rng() % 2) {
        const std::size_t sizes[] = {0, 1, 75, 76, 255, 256, 520, 1000};
        Bytes d(rng() % 2 ? sizes[rng() % 8] : rng() % 100);
        for (auto& x : d) x = static_cast<std::uint8_t>(rng());
        s.items.push_back(ScriptItem::push(std::move(d)));
      } else {
        s.items.push_back(ScriptItem::opcode(ops[rng() % 8]));
      }
    }
    EXPECT_EQ(parse_script(serialize(s)), s);
    EXPECT_EQ(parse_script_text(to_text(s)), s);
  }
  EXPECT_EQ(serialize(Script{{ScriptItem::push(Bytes(76, 0))}}).size(), 78u);
  EXPECT_EQ(serialize(Script{{ScriptItem::push(Bytes(256, 0))}}).size(), 259u);
  EXPECT_THROW(parse_script({0x05, 1, 2}), Error);
  EXPECT_THROW(parse_script({0xff}), Error);
  EXPECT_THROW(parse_script_text("PUSH abc\n"), Error);
  EXPECT_THROW(parse_script_text("OP_NOPE\n"), Error);
}

TEST(Scripts, ValueEncoding) {
  EXPECT_EQ(encode_value(0x0102), (Bytes{0, 0, 0, 0, 0, 0, 1, 2}));
  EXPECT_EQ(decode_value(encode_value(kDefaultModulus - 1)), kDefaultModulus - 1);
  EXPECT_THROW(decode_value({1, 2}), Error);
}

// The addition contract proven end to end with crypto keys.
struct Spend {
  circuit::Circuit c;
  crypto::KeyPair keys;
  crypto::Proof proof;
  std::vector<Fe> x, y;
  VKChunks chunks;
  Script redeem, lock, unlock;
  Bytes worker = mock_pubkey("worker");
};

Spend make_spend(Fe a, Fe b, std::size_t max_push = 520, const std::string& flat = "") {
  Spend s;
  s.c = circuit::lower(frontend::parse_flat_program(
      flat.empty() ? "bitwidth 16\ninput i1 unsigned\ninput i2 unsigned\noutput o unsigned\n"
                     "t0 = ADD(i1, i2)\no = t0\n"
                   : flat));
  qap::Qap q = qap::build_qap(s.c);
  auto backend = crypto::mock_backend();
  std::mt19937_64 rng(42);
  s.keys = crypto::keygen(q, *backend, rng);
  std::vector<Fe> in(s.c.input_wires.size());
  for (std::size_t i = 0; i < in.size(); ++i) in[i] = i == 0 ? a : i == 1 ? b : i;
  auto w = qap::witness(s.c, q, circuit::evaluate(s.c, in));
  s.proof = crypto::prove(s.keys.ek, q, w, *backend);
  s.x.assign(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(q.n_inputs));
  s.y.assign(w.begin() + static_cast<std::ptrdiff_t>(q.n_inputs),
             w.begin() + static_cast<std::ptrdiff_t>(q.n_io));
  s.chunks = chunk_vk(to_bytes(crypto::serialize(s.keys.vk)), max_push);
  s.redeem = build_redeem_script(s.chunks, s.worker);
  s.lock = build_locking_script(s.redeem);
  s.unlock = build_unlocking_script(s.proof, s.x, s.y, s.chunks, s.redeem);
  return s;
}

ExecutionContext context(const Spend& s) {
  ExecutionContext ctx;
  ctx.expected_pubkey = s.worker;
  return ctx;
}

bool accepted(const Script& unlock, const Script& lock, const ExecutionContext& ctx) {
  try {
    return execute(unlock, lock, ctx).accepted;
  } catch (const Error&) {
    return false;
  }
}

TEST(Interpreter, UnlockingLayoutForAddition) {
  Spend s = make_spend(2, 3);
  const auto& it = s.unlock.items;
  ASSERT_EQ(it.size(), 1 + 3 + s.chunks.chunks.size() + 1);
  EXPECT_EQ(it[0].data, to_bytes(crypto::serialize(s.proof)));
  EXPECT_EQ(it[1].data, encode_value(2));
  EXPECT_EQ(it[2].data, encode_value(3));
  EXPECT_EQ(it[3].data, encode_value(5));
  EXPECT_EQ(it[4].data, to_bytes(crypto::serialize(s.keys.vk)));
  EXPECT_EQ(it.back().data, serialize(s.redeem));
  EXPECT_TRUE(s.unlock.push_only());
}

TEST(Interpreter, HonestSpendIsAccepted) {
  Spend s = make_spend(2, 3);
  ExecutionResult r = execute(s.unlock, s.lock, context(s));
  EXPECT_TRUE(r.accepted) << r.reason;
  auto backend = crypto::mock_backend();
  ExecutionContext ctx = context(s);
  ctx.backend = backend.get();
  EXPECT_TRUE(execute(s.unlock, s.lock, ctx).accepted);
}

TEST(Interpreter, WrongClaimsAreRejected) {
  Spend s = make_spend(2, 3);
  Script lie = build_unlocking_script(s.proof, s.x, {6}, s.chunks, s.redeem);
  ExecutionResult r = execute(lie, s.lock, context(s));
  EXPECT_FALSE(r.accepted);
  EXPECT_NE(r.reason.find("pairing"), std::string::npos);
  ExecutionContext other = context(s);
  other.expected_pubkey = mock_pubkey("mallory");
  EXPECT_FALSE(execute(s.unlock, s.lock, other).accepted);
  auto scaled = crypto::scaled_mock_backend();
  ExecutionContext wrong_backend = context(s);
  wrong_backend.backend = scaled.get();
  EXPECT_FALSE(execute(s.unlock, s.lock, wrong_backend).accepted);
}

TEST(Interpreter, ChunkReplacedByRandomBytes) {
  Spend s = make_spend(7, 9, 100);
  ASSERT_GT(s.chunks.chunks.size(), 2u);
  std::mt19937_64 rng(4);
  for (std::size_t i = 0; i < s.chunks.chunks.size(); ++i) {
    Script bad = s.unlock;
    for (auto& x : bad.items[4 + i].data) x = static_cast<std::uint8_t>(rng());
    ExecutionResult r = execute(bad, s.lock, context(s));
    EXPECT_FALSE(r.accepted);
    EXPECT_NE(r.reason.find("hash mismatch"), std::string::npos);
  }
}

TEST(Interpreter, SingleByteCorruptionsNeverAccepted) {
  Spend s = make_spend(11, 13, 120);
  ASSERT_TRUE(execute(s.unlock, s.lock, context(s)).accepted);
  std::mt19937_64 rng(5);
  int accepts = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    Script bad = s.unlock;
    auto& item = bad.items[rng() % bad.items.size()];
    if (item.data.empty()) continue;
    item.data[rng() % item.data.size()] ^= static_cast<std::uint8_t>(1 + rng() % 255);
    accepts += accepted(bad, s.lock, context(s));
  }
  EXPECT_EQ(accepts, 0);
}

TEST(Interpreter, RedeemRunsOnlyAfterHashMatch) {
  Spend s = make_spend(1, 2);
  int calls = 0;
  ExecutionContext ctx = context(s);
  ctx.vk_deserializer = [&](const Bytes& b) {
    ++calls;
    return crypto::parse_verification_key(std::string(b.begin(), b.end()));
  };
  Script other = build_redeem_script(chunk_vk(to_bytes("other"), 520), s.worker);
  Script bad = s.unlock;
  bad.items.back().data = serialize(other);
  EXPECT_FALSE(execute(bad, s.lock, ctx).accepted);
  EXPECT_EQ(calls, 0);
  EXPECT_TRUE(execute(s.unlock, s.lock, ctx).accepted);
  EXPECT_EQ(calls, 1);
}

TEST(Interpreter, MalformedStacks) {
  Spend s = make_spend(1, 2);
  try {
    execute(Script{}, Script{{ScriptItem::opcode(Opcode::OP_HASH160)}}, context(s));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::StackUnderflow);
  }
  Script short_unlock = s.unlock;
  short_unlock.items.erase(short_unlock.items.begin(), short_unlock.items.begin() + 2);
  try {
    execute(short_unlock, s.lock, context(s));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::StackUnderflow);
  }
  Script not_push = s.unlock;
  not_push.items.insert(not_push.items.begin(), ScriptItem::opcode(Opcode::OP_DUP));
  EXPECT_FALSE(execute(not_push, s.lock, context(s)).accepted);
}

TEST(Interpreter, PushLimits) {
  Spend s = make_spend(1, 2);
  try {
    build_unlocking_script(s.proof, s.x, s.y, s.chunks, s.redeem, {40, 1461});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PushTooLarge);
  }
  Script no_x = build_unlocking_script(s.proof, {}, s.y, s.chunks, s.redeem);
  EXPECT_EQ(no_x.items.size(), s.unlock.items.size() - 2);
}

TEST(Transactions, FundingSpendAndLedger) {
  Spend s = make_spend(2, 3);
  const Bytes client = mock_pubkey("client");
  const Digest client_pkh = hash160(client);
  const Digest payee_pkh = hash160(mock_pubkey("payee"));
  UtxoLedger ledger;
  Digest coins = ledger.add_genesis({{3 * kSatoshiPerBtc, p2pkh_lock(client_pkh)},
                                     {kSatoshiPerBtc, p2pkh_lock(client_pkh)}});
  Transaction funding = build_funding_tx(s.lock, kSatoshiPerBtc, payee_pkh, {{{coins, 0}, {coins, 1}}},
                                         client, 2 * kSatoshiPerBtc);
  ASSERT_EQ(funding.inputs.size(), 2u);
  ASSERT_EQ(funding.outputs.size(), 2u);
  EXPECT_EQ(funding.outputs[1].amount, 100'000'000u);
  EXPECT_EQ(funding.outputs[0].locking, s.lock);
  EXPECT_EQ(funding.inputs[0].sighash_flags, kSighashSingleAnyoneCanPay);
  EXPECT_EQ(parse_transaction(serialize(funding)), funding);

  ExecutionContext client_ctx;
  client_ctx.expected_pubkey = client;
  EXPECT_FALSE(ledger.check(funding, context(s)).accepted);
  ledger.apply(funding, client_ctx);
  EXPECT_FALSE(ledger.find({coins, 0}));
  EXPECT_THROW(ledger.apply(funding, client_ctx), Error);

  Transaction spend = build_spending_tx(funding, s.unlock, hash160(s.worker));
  EXPECT_EQ(parse_transaction(serialize(spend)), spend);
  EXPECT_EQ(spend.inputs[0].prev.txid, funding.txid());
  auto r = ledger.check(spend, context(s));
  EXPECT_TRUE(r.accepted) << r.reason;
  Transaction bad_index = spend;
  bad_index.inputs[0].prev.index = 7;
  try {
    ledger.apply(bad_index, context(s));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidTransaction);
  }
  Digest id = ledger.apply(spend, context(s));
  EXPECT_TRUE(ledger.find({id, 0}));
  EXPECT_FALSE(ledger.check(build_spending_tx(funding, s.unlock, payee_pkh), context(s)).accepted);
  EXPECT_THROW(parse_transaction({1, 0, 0}), Error);
  EXPECT_EQ(hex(funding.txid()).size(), 40u);
  (void)digest;
}

TEST(Transactions, RejectsZeroAmounts) {
  Spend s = make_spend(2, 3);
  EXPECT_THROW(build_funding_tx(s.lock, 0, {}, {}, {}, 1), Error);
}

}  // namespace
}  // namespace vcc::chain
