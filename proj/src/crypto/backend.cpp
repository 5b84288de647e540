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

#include "vcc/crypto/backend.hpp"

#include "vcc/error.hpp"

namespace vcc::crypto {

G1 BilinearBackend::g1_msm(const std::vector<G1>& points, const std::vector<Fe>& scalars) const {
  if (points.size() != scalars.size()) {
    throw Error(ErrorCode::DimensionMismatch, "G1 points and scalars differ in length");
  }
  G1 acc = g1_identity();
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (scalars[i] != 0) acc = g1_add(acc, g1_mul(points[i], scalars[i]));
  }
  return acc;
}

G2 BilinearBackend::g2_msm(const std::vector<G2>& points, const std::vector<Fe>& scalars) const {
  if (points.size() != scalars.size()) {
    throw Error(ErrorCode::DimensionMismatch, "G2 points and scalars differ in length");
  }
  G2 acc = g2_identity();
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (scalars[i] != 0) acc = g2_add(acc, g2_mul(points[i], scalars[i]));
  }
  return acc;
}

MockBackend::MockBackend(std::uint64_t r, Fe p_gen, Fe q_gen)
    : f_(r), p_(f_.reduce(p_gen)), q_(f_.reduce(q_gen)) {
  if (p_ == 0 || q_ == 0) throw Error(ErrorCode::InvalidConfig, "generators must be nonzero");
}

std::string MockBackend::name() const { return p_ == 1 && q_ == 1 ? "mock" : "mock-scaled"; }

namespace {
Fe single(const std::vector<std::uint64_t>& limbs) {
  if (limbs.size() != 1) throw Error(ErrorCode::MalformedProof, "element must have one limb");
  return limbs[0];
}
}  // namespace

G1 MockBackend::g1_add(const G1& a, const G1& b) const {
  return {{f_.add(single(a.limbs), single(b.limbs))}};
}
G2 MockBackend::g2_add(const G2& a, const G2& b) const {
  return {{f_.add(single(a.limbs), single(b.limbs))}};
}
G1 MockBackend::g1_mul(const G1& a, Fe k) const { return {{f_.mul(single(a.limbs), f_.reduce(k))}}; }
G2 MockBackend::g2_mul(const G2& a, Fe k) const { return {{f_.mul(single(a.limbs), f_.reduce(k))}}; }
GT MockBackend::pair(const G1& a, const G2& b) const {
  return {{f_.mul(single(a.limbs), single(b.limbs))}};
}
GT MockBackend::gt_combine(const GT& a, const GT& b) const {
  return {{f_.add(single(a.limbs), single(b.limbs))}};
}
bool MockBackend::g1_valid(const G1& a) const {
  return a.limbs.size() == 1 && a.limbs[0] < f_.modulus();
}
bool MockBackend::g2_valid(const G2& a) const {
  return a.limbs.size() == 1 && a.limbs[0] < f_.modulus();
}

std::unique_ptr<BilinearBackend> mock_backend(std::uint64_t r) {
  return std::make_unique<MockBackend>(r, 1, 1);
}

std::unique_ptr<BilinearBackend> scaled_mock_backend(std::uint64_t r) {
  return std::make_unique<MockBackend>(r, 3, 5);
}

std::unique_ptr<BilinearBackend> make_backend(const std::string& name, std::uint64_t r) {
  if (name == "mock") return mock_backend(r);
  if (name == "mock-scaled") return scaled_mock_backend(r);
  throw Error(ErrorCode::InvalidConfig, "unknown backend '" + name + "'");
}

}  // namespace vcc::crypto
