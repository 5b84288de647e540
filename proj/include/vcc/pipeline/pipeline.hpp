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

#include <cstdint>
#include <string>
#include <vector>

#include "vcc/chain/transaction.hpp"
#include "vcc/circuit/circuit.hpp"
#include "vcc/crypto/proof_system.hpp"
#include "vcc/frontend/source.hpp"
#include "vcc/minimizer/minimize.hpp"
#include "vcc/qap/qap.hpp"

namespace vcc::pipeline {

struct PipelineConfig {
  unsigned bit_width = 16;
  std::uint64_t field_modulus = kDefaultModulus;
  std::size_t max_unroll = 1024;
  std::size_t cores = 1;
  minimizer::Strategy minimize_strategy = minimizer::Strategy::LPT;
  std::size_t max_push = 520;
  std::size_t max_script = 1461;
  std::uint64_t rng_seed = 1;
  std::string backend = "mock";
};

// Throws Error(InvalidConfig) unless every limit is positive, the modulus is
// prime and 2^(2 bit_width) < field_modulus.
void validate(const PipelineConfig& cfg);

// Reads each path into a source unit (first file is the main unit). Throws
// Error(Io).
frontend::SourceUnit load_sources(const std::vector<std::string>& paths,
                                  const std::string& entry = "contract");

circuit::Circuit compile(const frontend::SourceUnit& unit, const PipelineConfig& cfg,
                         const frontend::Defines& defines = {});

circuit::Circuit minimize(const circuit::Circuit& c, const PipelineConfig& cfg,
                          minimizer::MinimizeReport* report = nullptr);

struct SetupArtifacts {
  qap::Qap qap;
  crypto::KeyPair keys;
};

// Seeds the key generator with cfg.rng_seed.
SetupArtifacts setup(const circuit::Circuit& c, const PipelineConfig& cfg);

struct ProveArtifacts {
  crypto::Proof proof;
  std::vector<Fe> outputs;
};

// `tamper_witness` corrupts one internal witness value before proving, so
// the call ends in Error(InvalidWitness).
ProveArtifacts prove(const circuit::Circuit& c, const crypto::EvaluationKey& ek,
                     const std::vector<Fe>& inputs, const PipelineConfig& cfg,
                     bool tamper_witness = false);

bool verify(const crypto::VerificationKey& vk, const std::vector<Fe>& inputs,
            const std::vector<Fe>& outputs, const crypto::Proof& proof);

// Everything a node needs to validate the payment: the client's coins, the
// funding transaction and the worker's spend.
struct Bundle {
  chain::Bytes client_pubkey;
  chain::Bytes worker_pubkey;
  std::vector<chain::TxOutput> genesis;
  chain::Transaction funding;
  chain::Transaction spending;
  chain::ScriptLimits limits;
};

inline constexpr chain::Amount kContractAmount = 2 * chain::kSatoshiPerBtc;

Bundle make_bundle(const crypto::VerificationKey& vk, const crypto::Proof& proof,
                   const std::vector<Fe>& inputs, const std::vector<Fe>& outputs,
                   const PipelineConfig& cfg);

std::string serialize(const Bundle& b);
// Throws Error(DeserializeError).
Bundle parse_bundle(const std::string& text);

// Replays genesis, funding and spending on a fresh ledger.
chain::ExecutionResult run_chain(const Bundle& b);

// IO value files: one decimal per line. Negative values are read as
// two's complement at `bit_width`. Throws Error(Io) and Error(ParseError).
std::vector<Fe> read_values(const std::string& path, unsigned bit_width);
std::vector<Fe> parse_values(const std::string& text, unsigned bit_width);
// Signed wires print as signed decimals.
std::string format_values(const std::vector<Fe>& values, const std::vector<bool>& is_signed,
                          unsigned bit_width);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace vcc::pipeline
