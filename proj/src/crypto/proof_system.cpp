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

#include "vcc/crypto/proof_system.hpp"

#include <map>
#include <sstream>

#include "vcc/error.hpp"

namespace vcc::crypto {
namespace {

using qap::FieldPoly;

void check_field(const qap::Qap& q, const BilinearBackend& b) {
  if (b.scalar_field().modulus() != q.modulus) {
    throw Error(ErrorCode::InvalidConfig, "backend scalar field " +
                                              std::to_string(b.scalar_field().modulus()) +
                                              " differs from QAP field " + std::to_string(q.modulus));
  }
}

std::string hex_limbs(const std::vector<std::uint64_t>& limbs) {
  std::string s;
  for (std::size_t i = 0; i < limbs.size(); ++i) {
    if (i) s += ',';
    s += to_hex(limbs[i]);
  }
  return s;
}

bool parse_limbs(const std::string& text, std::vector<std::uint64_t>& out) {
  out.clear();
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string::npos) comma = text.size();
    std::uint64_t v;
    if (!parse_hex(std::string_view(text).substr(start, comma - start), v)) return false;
    out.push_back(v);
    start = comma + 1;
  }
  return !out.empty();
}

// Line-oriented "label [index] value" records after a versioned header.
struct Records {
  std::string header;
  std::map<std::string, std::string> scalars;
  std::map<std::string, std::map<std::size_t, std::string>> lists;
};

Records read_records(const std::string& text, const std::string& magic, ErrorCode code) {
  auto fail = [&](std::size_t line, const std::string& msg) -> Error {
    return Error(code, "line " + std::to_string(line) + ": " + msg);
  };
  std::istringstream in(text);
  std::string line;
  std::size_t ln = 0;
  Records r;
  bool ended = false;
  while (std::getline(in, line)) {
    ++ln;
    if (line.empty()) continue;
    if (ended) throw fail(ln, "content after 'end'");
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (r.header.empty()) {
      if (tok.size() != 2 || tok[0] != magic || tok[1] != "1") {
        throw fail(ln, "expected '" + magic + " 1' header");
      }
      r.header = tok[0];
      continue;
    }
    if (tok.size() == 1 && tok[0] == "end") {
      ended = true;
    } else if (tok.size() == 2) {
      if (!r.scalars.emplace(tok[0], tok[1]).second) throw fail(ln, "duplicate '" + tok[0] + "'");
    } else if (tok.size() == 3) {
      std::uint64_t idx;
      if (!parse_u64(tok[1], idx)) throw fail(ln, "bad index '" + tok[1] + "'");
      if (!r.lists[tok[0]].emplace(idx, tok[2]).second) throw fail(ln, "duplicate entry");
    } else {
      throw fail(ln, "malformed record");
    }
  }
  if (r.header.empty() || !ended) throw fail(ln, "truncated input");
  return r;
}

template <typename E>
E element(const Records& r, const std::string& key, ErrorCode code) {
  auto it = r.scalars.find(key);
  E e;
  if (it == r.scalars.end() || !parse_limbs(it->second, e.limbs)) {
    throw Error(code, "missing or malformed element '" + key + "'");
  }
  return e;
}

template <typename E>
std::vector<E> element_list(const Records& r, const std::string& key, std::size_t n,
                            ErrorCode code) {
  std::vector<E> out(n);
  auto it = r.lists.find(key);
  const std::size_t have = it == r.lists.end() ? 0 : it->second.size();
  if (have != n) {
    throw Error(code, "expected " + std::to_string(n) + " '" + key + "' entries, got " +
                          std::to_string(have));
  }
  for (const auto& [idx, text] : it == r.lists.end() ? std::map<std::size_t, std::string>{}
                                                     : it->second) {
    if (idx >= n || !parse_limbs(text, out[idx].limbs)) {
      throw Error(code, "malformed '" + key + "' entry " + std::to_string(idx));
    }
  }
  return out;
}

std::uint64_t count(const Records& r, const std::string& key, ErrorCode code) {
  auto it = r.scalars.find(key);
  std::uint64_t v;
  if (it == r.scalars.end() || !parse_u64(it->second, v)) {
    throw Error(code, "missing or malformed '" + key + "'");
  }
  return v;
}

}  // namespace

Setup keygen_with_secret(const qap::Qap& q, const BilinearBackend& b, std::mt19937_64& rng) {
  check_field(q, b);
  const PrimeField& f = b.scalar_field();
  Fe s;
  do s = f.sample(rng);
  while (qap::eval(f, q.t, s) == 0);

  Setup out;
  out.s = s;
  EvaluationKey& ek = out.keys.ek;
  VerificationKey& vk = out.keys.vk;
  const G1 P = b.g1_generator();
  const G2 Q = b.g2_generator();
  ek.n_io = q.n_io;
  for (std::size_t i = 0; i < q.k(); ++i) {
    ek.vP.push_back(b.g1_mul(P, qap::eval(f, q.v[i], s)));
    ek.wQ.push_back(b.g2_mul(Q, qap::eval(f, q.w[i], s)));
    ek.yP.push_back(b.g1_mul(P, qap::eval(f, q.y[i], s)));
  }
  Fe pw = 1;
  for (std::size_t i = 0; i <= q.d(); ++i) {
    ek.sQ_powers.push_back(b.g2_mul(Q, pw));
    pw = f.mul(pw, s);
  }
  vk.backend = b.name();
  vk.modulus = f.modulus();
  vk.vP_io.assign(ek.vP.begin(), ek.vP.begin() + static_cast<std::ptrdiff_t>(q.n_io));
  vk.wQ_io.assign(ek.wQ.begin(), ek.wQ.begin() + static_cast<std::ptrdiff_t>(q.n_io));
  vk.yP_io.assign(ek.yP.begin(), ek.yP.begin() + static_cast<std::ptrdiff_t>(q.n_io));
  vk.vP_one = b.g1_mul(P, qap::eval(f, q.v0, s));
  vk.wQ_one = b.g2_mul(Q, qap::eval(f, q.w0, s));
  vk.yP_one = b.g1_mul(P, qap::eval(f, q.y0, s));
  vk.tP = b.g1_mul(P, qap::eval(f, q.t, s));
  vk.P = P;
  vk.Q = Q;
  return out;
}

KeyPair keygen(const qap::Qap& q, const BilinearBackend& b, std::mt19937_64& rng) {
  return keygen_with_secret(q, b, rng).keys;
}

Proof prove(const EvaluationKey& ek, const qap::Qap& q, const std::vector<Fe>& a,
            const BilinearBackend& b) {
  check_field(q, b);
  if (ek.vP.size() != q.k() || ek.sQ_powers.size() != q.d() + 1 || a.size() != q.k()) {
    throw Error(ErrorCode::DimensionMismatch, "evaluation key, QAP and witness sizes disagree");
  }
  const PrimeField& f = b.scalar_field();
  FieldPoly h;
  try {
    h = qap::divide_by_t(f, qap::compute_p(q, a), q.t);
  } catch (const qap::NotDivisibleError& e) {
    throw Error(ErrorCode::InvalidWitness, std::string("witness rejected: ") + e.what());
  }
  Proof pr;
  pr.V_mid = b.g1_identity();
  pr.W_mid = b.g2_identity();
  pr.Y_mid = b.g1_identity();
  for (std::size_t i = q.n_io; i < q.k(); ++i) {
    if (a[i] == 0) continue;
    pr.V_mid = b.g1_add(pr.V_mid, b.g1_mul(ek.vP[i], a[i]));
    pr.W_mid = b.g2_add(pr.W_mid, b.g2_mul(ek.wQ[i], a[i]));
    pr.Y_mid = b.g1_add(pr.Y_mid, b.g1_mul(ek.yP[i], a[i]));
  }
  std::vector<G2> bases(ek.sQ_powers.begin(),
                        ek.sQ_powers.begin() + static_cast<std::ptrdiff_t>(h.coeffs.size()));
  pr.H = b.g2_msm(bases, h.coeffs);
  return pr;
}

bool verify(const VerificationKey& vk, const std::vector<Fe>& io, const Proof& proof,
            const BilinearBackend& b) {
  if (io.size() != vk.n_io()) {
    throw Error(ErrorCode::DimensionMismatch, "expected " + std::to_string(vk.n_io()) +
                                                  " public values, got " +
                                                  std::to_string(io.size()));
  }
  if (!b.g1_valid(proof.V_mid) || !b.g2_valid(proof.W_mid) || !b.g1_valid(proof.Y_mid) ||
      !b.g2_valid(proof.H)) {
    throw Error(ErrorCode::MalformedProof, "proof element outside its group");
  }
  const PrimeField& f = b.scalar_field();
  for (Fe x : io) {
    if (x >= f.modulus()) return false;
  }
  G1 V = b.g1_add(vk.vP_one, proof.V_mid);
  G2 W = b.g2_add(vk.wQ_one, proof.W_mid);
  G1 Y = b.g1_add(vk.yP_one, proof.Y_mid);
  V = b.g1_add(V, b.g1_msm(vk.vP_io, io));
  W = b.g2_add(W, b.g2_msm(vk.wQ_io, io));
  Y = b.g1_add(Y, b.g1_msm(vk.yP_io, io));
  const GT lhs = b.pair(V, W);
  const GT rhs = b.gt_combine(b.pair(Y, vk.Q), b.pair(vk.tP, proof.H));
  return b.gt_equal(lhs, rhs);
}

std::string serialize(const EvaluationKey& ek) {
  std::ostringstream os;
  os << "vcc-ek 1\n";
  os << "n_io " << ek.n_io << "\n";
  os << "k " << ek.vP.size() << "\n";
  os << "d " << (ek.sQ_powers.empty() ? 0 : ek.sQ_powers.size() - 1) << "\n";
  for (std::size_t i = 0; i < ek.vP.size(); ++i) os << "vP " << i << ' ' << hex_limbs(ek.vP[i].limbs) << "\n";
  for (std::size_t i = 0; i < ek.wQ.size(); ++i) os << "wQ " << i << ' ' << hex_limbs(ek.wQ[i].limbs) << "\n";
  for (std::size_t i = 0; i < ek.yP.size(); ++i) os << "yP " << i << ' ' << hex_limbs(ek.yP[i].limbs) << "\n";
  for (std::size_t i = 0; i < ek.sQ_powers.size(); ++i) {
    os << "sQ " << i << ' ' << hex_limbs(ek.sQ_powers[i].limbs) << "\n";
  }
  os << "end\n";
  return os.str();
}

std::string serialize(const VerificationKey& vk) {
  std::ostringstream os;
  os << "vcc-vk 1\n";
  os << "backend " << vk.backend << "\n";
  os << "modulus " << to_hex(vk.modulus) << "\n";
  os << "n_io " << vk.n_io() << "\n";
  os << "P " << hex_limbs(vk.P.limbs) << "\n";
  os << "Q " << hex_limbs(vk.Q.limbs) << "\n";
  os << "tP " << hex_limbs(vk.tP.limbs) << "\n";
  os << "vP_one " << hex_limbs(vk.vP_one.limbs) << "\n";
  os << "wQ_one " << hex_limbs(vk.wQ_one.limbs) << "\n";
  os << "yP_one " << hex_limbs(vk.yP_one.limbs) << "\n";
  for (std::size_t i = 0; i < vk.n_io(); ++i) os << "vP_io " << i << ' ' << hex_limbs(vk.vP_io[i].limbs) << "\n";
  for (std::size_t i = 0; i < vk.n_io(); ++i) os << "wQ_io " << i << ' ' << hex_limbs(vk.wQ_io[i].limbs) << "\n";
  for (std::size_t i = 0; i < vk.n_io(); ++i) os << "yP_io " << i << ' ' << hex_limbs(vk.yP_io[i].limbs) << "\n";
  os << "end\n";
  return os.str();
}

std::string serialize(const Proof& p) {
  std::ostringstream os;
  os << "vcc-proof 1\n";
  os << "V_mid " << hex_limbs(p.V_mid.limbs) << "\n";
  os << "W_mid " << hex_limbs(p.W_mid.limbs) << "\n";
  os << "Y_mid " << hex_limbs(p.Y_mid.limbs) << "\n";
  os << "H " << hex_limbs(p.H.limbs) << "\n";
  os << "end\n";
  return os.str();
}

EvaluationKey parse_evaluation_key(const std::string& text) {
  const ErrorCode code = ErrorCode::ParseError;
  Records r = read_records(text, "vcc-ek", code);
  EvaluationKey ek;
  ek.n_io = count(r, "n_io", code);
  const std::size_t k = count(r, "k", code);
  const std::size_t d = count(r, "d", code);
  if (ek.n_io > k) throw Error(code, "n_io exceeds k");
  ek.vP = element_list<G1>(r, "vP", k, code);
  ek.wQ = element_list<G2>(r, "wQ", k, code);
  ek.yP = element_list<G1>(r, "yP", k, code);
  ek.sQ_powers = element_list<G2>(r, "sQ", d + 1, code);
  return ek;
}

VerificationKey parse_verification_key(const std::string& text) {
  const ErrorCode code = ErrorCode::ParseError;
  Records r = read_records(text, "vcc-vk", code);
  VerificationKey vk;
  auto it = r.scalars.find("backend");
  if (it == r.scalars.end()) throw Error(code, "missing backend");
  vk.backend = it->second;
  auto mod = r.scalars.find("modulus");
  if (mod == r.scalars.end() || !parse_hex(mod->second, vk.modulus)) throw Error(code, "bad modulus");
  const std::size_t n = count(r, "n_io", code);
  vk.P = element<G1>(r, "P", code);
  vk.Q = element<G2>(r, "Q", code);
  vk.tP = element<G1>(r, "tP", code);
  vk.vP_one = element<G1>(r, "vP_one", code);
  vk.wQ_one = element<G2>(r, "wQ_one", code);
  vk.yP_one = element<G1>(r, "yP_one", code);
  vk.vP_io = element_list<G1>(r, "vP_io", n, code);
  vk.wQ_io = element_list<G2>(r, "wQ_io", n, code);
  vk.yP_io = element_list<G1>(r, "yP_io", n, code);
  return vk;
}

Proof parse_proof(const std::string& text) {
  const ErrorCode code = ErrorCode::MalformedProof;
  Records r = read_records(text, "vcc-proof", code);
  if (r.scalars.size() != 4 || !r.lists.empty()) throw Error(code, "unexpected proof records");
  Proof p;
  p.V_mid = element<G1>(r, "V_mid", code);
  p.W_mid = element<G2>(r, "W_mid", code);
  p.Y_mid = element<G1>(r, "Y_mid", code);
  p.H = element<G2>(r, "H", code);
  return p;
}

}  // namespace vcc::crypto
