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

#include "vcc/pipeline/pipeline.hpp"

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "vcc/chain/p2sh.hpp"
#include "vcc/circuit/lower.hpp"
#include "vcc/error.hpp"
#include "vcc/frontend/flatten.hpp"

namespace vcc::pipeline {
namespace {

using chain::Bytes;
using nlohmann::json;

chain::Bytes from_hex(const json& j, const char* key) {
  Bytes b;
  if (!j.contains(key) || !j[key].is_string() ||
      !chain::parse_hex_bytes(j[key].get<std::string>(), b)) {
    throw Error(ErrorCode::DeserializeError, std::string("bundle field '") + key + "' is not hex");
  }
  return b;
}

}  // namespace

void validate(const PipelineConfig& cfg) {
  auto fail = [](const std::string& msg) { return Error(ErrorCode::InvalidConfig, msg); };
  if (cfg.bit_width == 0 || cfg.max_unroll == 0 || cfg.cores == 0 || cfg.max_push == 0 ||
      cfg.max_script == 0) {
    throw fail("bit_width, max_unroll, cores, max_push and max_script must be positive");
  }
  if (!is_prime(cfg.field_modulus)) {
    throw fail("field_modulus " + std::to_string(cfg.field_modulus) + " is not prime");
  }
  if (2 * cfg.bit_width >= 64 || (1ULL << (2 * cfg.bit_width)) >= cfg.field_modulus) {
    throw fail("2^(2*" + std::to_string(cfg.bit_width) + ") must be below field_modulus");
  }
  crypto::make_backend(cfg.backend, cfg.field_modulus);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << text) || !out.flush()) throw Error(ErrorCode::Io, "cannot write " + path);
}

frontend::SourceUnit load_sources(const std::vector<std::string>& paths, const std::string& entry) {
  if (paths.empty()) throw Error(ErrorCode::Io, "no source files given");
  frontend::SourceUnit unit;
  unit.entry_name = entry;
  for (const std::string& p : paths) {
    unit.files.push_back({std::filesystem::path(p).filename().string(), read_file(p)});
  }
  return unit;
}

circuit::Circuit compile(const frontend::SourceUnit& unit, const PipelineConfig& cfg,
                         const frontend::Defines& defines) {
  validate(cfg);
  frontend::FlattenConfig fc;
  fc.bit_width = cfg.bit_width;
  fc.max_unroll = cfg.max_unroll;
  return circuit::lower(frontend::compile_contract(unit, fc, defines), cfg.field_modulus);
}

circuit::Circuit minimize(const circuit::Circuit& c, const PipelineConfig& cfg,
                          minimizer::MinimizeReport* report) {
  validate(cfg);
  return minimizer::minimize(c, {cfg.cores, cfg.minimize_strategy}, report);
}

SetupArtifacts setup(const circuit::Circuit& c, const PipelineConfig& cfg) {
  validate(cfg);
  SetupArtifacts out;
  out.qap = qap::build_qap(c);
  auto backend = crypto::make_backend(cfg.backend, c.field_modulus);
  std::mt19937_64 rng(cfg.rng_seed);
  out.keys = crypto::keygen(out.qap, *backend, rng);
  return out;
}

ProveArtifacts prove(const circuit::Circuit& c, const crypto::EvaluationKey& ek,
                     const std::vector<Fe>& inputs, const PipelineConfig& cfg,
                     bool tamper_witness) {
  validate(cfg);
  if (inputs.size() != c.input_wires.size()) {
    throw Error(ErrorCode::MissingInput, "circuit takes " + std::to_string(c.input_wires.size()) +
                                             " inputs, got " + std::to_string(inputs.size()));
  }
  const qap::Qap q = qap::build_qap(c);
  const circuit::Assignment asg = circuit::evaluate(c, inputs);
  std::vector<Fe> a = qap::witness(c, q, asg);
  if (tamper_witness) {
    const PrimeField f(q.modulus);
    const std::size_t i = q.k() > q.n_io ? q.k() - 1 : 0;
    a[i] = f.add(a[i], 1);
  }
  auto backend = crypto::make_backend(cfg.backend, c.field_modulus);
  return {crypto::prove(ek, q, a, *backend), circuit::output_values(c, asg)};
}

bool verify(const crypto::VerificationKey& vk, const std::vector<Fe>& inputs,
            const std::vector<Fe>& outputs, const crypto::Proof& proof) {
  std::vector<Fe> io = inputs;
  io.insert(io.end(), outputs.begin(), outputs.end());
  if (io.size() != vk.n_io()) return false;
  std::unique_ptr<crypto::BilinearBackend> backend;
  try {
    backend = crypto::make_backend(vk.backend, vk.modulus);
    return crypto::verify(vk, io, proof, *backend);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::MalformedProof || e.code() == ErrorCode::InvalidConfig ||
        e.code() == ErrorCode::NotPrime) {
      return false;
    }
    throw;
  }
}

Bundle make_bundle(const crypto::VerificationKey& vk, const crypto::Proof& proof,
                   const std::vector<Fe>& inputs, const std::vector<Fe>& outputs,
                   const PipelineConfig& cfg) {
  validate(cfg);
  Bundle b;
  b.limits = {cfg.max_push, cfg.max_script};
  b.client_pubkey = chain::mock_pubkey("client-" + std::to_string(cfg.rng_seed));
  b.worker_pubkey = chain::mock_pubkey("worker-" + std::to_string(cfg.rng_seed));
  const chain::Digest client_pkh = chain::hash160(b.client_pubkey);
  const chain::Digest payee_pkh = chain::hash160(chain::mock_pubkey("payee"));

  const auto chunks = chain::chunk_vk(chain::to_bytes(crypto::serialize(vk)), cfg.max_push);
  const chain::Script redeem = chain::build_redeem_script(chunks, b.worker_pubkey, b.limits);
  const chain::Script lock = chain::build_locking_script(redeem);
  chain::check_limits(lock, b.limits);
  const chain::Script unlock =
      chain::build_unlocking_script(proof, inputs, outputs, chunks, redeem, b.limits);

  b.genesis = {{kContractAmount, chain::p2pkh_lock(client_pkh)},
               {chain::kSatoshiPerBtc, chain::p2pkh_lock(client_pkh)}};
  chain::Transaction coinbase;
  coinbase.outputs = b.genesis;
  const chain::Digest coins = coinbase.txid();
  b.funding = chain::build_funding_tx(lock, chain::kSatoshiPerBtc, payee_pkh,
                                      {{{coins, 0}, {coins, 1}}}, b.client_pubkey, kContractAmount);
  b.spending = chain::build_spending_tx(b.funding, unlock, chain::hash160(b.worker_pubkey));
  return b;
}

std::string serialize(const Bundle& b) {
  json j;
  j["format"] = "vcc-bundle 1";
  j["max_push"] = b.limits.max_push;
  j["max_script"] = b.limits.max_script;
  j["client_pubkey"] = chain::hex(b.client_pubkey);
  j["worker_pubkey"] = chain::hex(b.worker_pubkey);
  json genesis = json::array();
  for (const auto& o : b.genesis) {
    genesis.push_back({{"amount", o.amount}, {"locking", chain::hex(chain::serialize(o.locking))}});
  }
  j["genesis"] = genesis;
  j["funding"] = chain::hex(chain::serialize(b.funding));
  j["funding_txid"] = chain::hex(b.funding.txid());
  j["spending"] = chain::hex(chain::serialize(b.spending));
  j["spending_txid"] = chain::hex(b.spending.txid());
  return j.dump(2) + "\n";
}

Bundle parse_bundle(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::DeserializeError, std::string("bundle: ") + e.what());
  }
  if (!j.is_object() || j.value("format", "") != "vcc-bundle 1") {
    throw Error(ErrorCode::DeserializeError, "not a vcc-bundle 1 document");
  }
  Bundle b;
  try {
    b.limits.max_push = j.at("max_push").get<std::size_t>();
    b.limits.max_script = j.at("max_script").get<std::size_t>();
    for (const auto& o : j.at("genesis")) {
      b.genesis.push_back({o.at("amount").get<chain::Amount>(),
                           chain::parse_script(from_hex(o, "locking"))});
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::DeserializeError, std::string("bundle: ") + e.what());
  }
  b.client_pubkey = from_hex(j, "client_pubkey");
  b.worker_pubkey = from_hex(j, "worker_pubkey");
  b.funding = chain::parse_transaction(from_hex(j, "funding"));
  b.spending = chain::parse_transaction(from_hex(j, "spending"));
  return b;
}

chain::ExecutionResult run_chain(const Bundle& b) {
  try {
    for (const auto* tx : {&b.funding, &b.spending}) {
      for (const auto& o : tx->outputs) chain::check_limits(o.locking, b.limits);
      for (const auto& in : tx->inputs) chain::check_pushes(in.unlocking, b.limits);
    }
    for (const auto& in : b.spending.inputs) {
      const bool p2sh = in.prev.txid == b.funding.txid() && in.prev.index < b.funding.outputs.size() &&
                        chain::p2sh_hash(b.funding.outputs[in.prev.index].locking);
      if (p2sh && !in.unlocking.items.empty()) {
        chain::check_limits(chain::parse_script(in.unlocking.items.back().data), b.limits);
      }
    }
  } catch (const Error& e) {
    return {false, e.what()};
  }
  chain::UtxoLedger ledger;
  ledger.add_genesis(b.genesis);
  chain::ExecutionContext client;
  client.expected_pubkey = b.client_pubkey;
  chain::ExecutionResult r = ledger.check(b.funding, client);
  if (!r.accepted) return {false, "funding: " + r.reason};
  ledger.apply(b.funding, client);
  chain::ExecutionContext worker;
  worker.expected_pubkey = b.worker_pubkey;
  r = ledger.check(b.spending, worker);
  if (!r.accepted) return {false, "spending: " + r.reason};
  ledger.apply(b.spending, worker);
  return {true, ""};
}

std::vector<Fe> parse_values(const std::string& text, unsigned bit_width) {
  std::vector<Fe> out;
  std::istringstream in(text);
  std::string line;
  std::size_t ln = 0;
  while (std::getline(in, line)) {
    ++ln;
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    const auto e = line.find_last_not_of(" \t\r");
    const std::string tok = line.substr(b, e - b + 1);
    std::int64_t s;
    std::uint64_t u;
    if (!tok.empty() && tok[0] == '-') {
      if (!parse_i64(tok, s) || bit_width >= 64 || s < -(std::int64_t{1} << (bit_width - 1))) {
        throw Error(ErrorCode::ParseError, "line " + std::to_string(ln) + ": bad value '" + tok + "'");
      }
      out.push_back(static_cast<std::uint64_t>(s) & frontend::mask_bits(bit_width));
    } else if (parse_u64(tok, u)) {
      out.push_back(u);
    } else {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(ln) + ": bad value '" + tok + "'");
    }
  }
  return out;
}

std::vector<Fe> read_values(const std::string& path, unsigned bit_width) {
  try {
    return parse_values(read_file(path), bit_width);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ParseError) throw Error(e.code(), path + ": " + e.what());
    throw;
  }
}

std::string format_values(const std::vector<Fe>& values, const std::vector<bool>& is_signed,
                          unsigned bit_width) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i < is_signed.size() && is_signed[i]) {
      out += std::to_string(frontend::to_signed(values[i], bit_width));
    } else {
      out += std::to_string(values[i]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace vcc::pipeline
