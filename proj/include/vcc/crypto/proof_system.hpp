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

#include <random>
#include <string>
#include <vector>

#include "vcc/crypto/backend.hpp"
#include "vcc/qap/qap.hpp"

namespace vcc::crypto {

struct EvaluationKey {
  std::vector<G1> vP;  // v_i(s) P
  std::vector<G2> wQ;  // w_i(s) Q
  std::vector<G1> yP;  // y_i(s) P
  std::vector<G2> sQ_powers;  // s^i Q, i = 0..d
  std::size_t n_io = 0;

  bool operator==(const EvaluationKey&) const = default;
};

// IO encodings plus the constant-one term, which the verifier also adds.
struct VerificationKey {
  std::string backend;
  std::uint64_t modulus = kDefaultModulus;
  std::vector<G1> vP_io;
  std::vector<G2> wQ_io;
  std::vector<G1> yP_io;
  G1 vP_one, yP_one;
  G2 wQ_one;
  G1 tP;
  G1 P;
  G2 Q;

  std::size_t n_io() const { return vP_io.size(); }
  bool operator==(const VerificationKey&) const = default;
};

struct Proof {
  G1 V_mid;
  G2 W_mid;
  G1 Y_mid;
  G2 H;

  bool operator==(const Proof&) const = default;
};

struct KeyPair {
  EvaluationKey ek;
  VerificationKey vk;
};

// Keys plus the secret evaluation point, for test cross-checks only.
struct Setup {
  KeyPair keys;
  Fe s = 0;
};

// Throws Error(InvalidConfig) when the scalar field differs from the QAP
// field.
KeyPair keygen(const qap::Qap& q, const BilinearBackend& b, std::mt19937_64& rng);
Setup keygen_with_secret(const qap::Qap& q, const BilinearBackend& b, std::mt19937_64& rng);

// Throws Error(InvalidWitness) when t does not divide p for this witness and
// Error(DimensionMismatch) on key/witness size mismatch.
Proof prove(const EvaluationKey& ek, const qap::Qap& q, const std::vector<Fe>& a,
            const BilinearBackend& b);

// io lists the n_io public values, inputs first. Throws Error(MalformedProof)
// for elements outside their groups and Error(DimensionMismatch) when
// |io| != n_io.
bool verify(const VerificationKey& vk, const std::vector<Fe>& io, const Proof& proof,
            const BilinearBackend& b);

std::string serialize(const EvaluationKey& ek);
std::string serialize(const VerificationKey& vk);
std::string serialize(const Proof& p);
// Parsers throw Error(ParseError); parse_proof throws Error(MalformedProof).
EvaluationKey parse_evaluation_key(const std::string& text);
VerificationKey parse_verification_key(const std::string& text);
Proof parse_proof(const std::string& text);

}  // namespace vcc::crypto
