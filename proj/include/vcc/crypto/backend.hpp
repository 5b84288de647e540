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
#include <memory>
#include <string>
#include <vector>

#include "vcc/field.hpp"

namespace vcc::crypto {

// Opaque group elements: a backend-defined sequence of 64-bit limbs.
struct G1 {
  std::vector<std::uint64_t> limbs;
  bool operator==(const G1&) const = default;
};
struct G2 {
  std::vector<std::uint64_t> limbs;
  bool operator==(const G2&) const = default;
};
struct GT {
  std::vector<std::uint64_t> limbs;
  bool operator==(const GT&) const = default;
};

// Bilinear map e: G1 x G2 -> GT between groups of prime order r, written
// additively in G1 and G2. gt_combine is the target-group operation.
class BilinearBackend {
 public:
  virtual ~BilinearBackend() = default;

  virtual std::string name() const = 0;
  virtual const PrimeField& scalar_field() const = 0;

  virtual G1 g1_generator() const = 0;
  virtual G2 g2_generator() const = 0;
  virtual G1 g1_identity() const = 0;
  virtual G2 g2_identity() const = 0;
  virtual GT gt_identity() const = 0;

  virtual G1 g1_add(const G1& a, const G1& b) const = 0;
  virtual G2 g2_add(const G2& a, const G2& b) const = 0;
  virtual G1 g1_mul(const G1& a, Fe k) const = 0;
  virtual G2 g2_mul(const G2& a, Fe k) const = 0;
  virtual GT pair(const G1& a, const G2& b) const = 0;
  virtual GT gt_combine(const GT& a, const GT& b) const = 0;
  virtual bool gt_equal(const GT& a, const GT& b) const { return a == b; }

  virtual bool g1_valid(const G1& a) const = 0;
  virtual bool g2_valid(const G2& a) const = 0;

  G1 g1_msm(const std::vector<G1>& points, const std::vector<Fe>& scalars) const;
  G2 g2_msm(const std::vector<G2>& points, const std::vector<Fe>& scalars) const;
};

// Integers mod r under addition with P = p_gen and Q = q_gen, and
// e(a, b) = a * b mod r. Discrete logarithms are trivial, so this backend is
// INSECURE and serves functional verification only.
class MockBackend : public BilinearBackend {
 public:
  // Throws Error(NotPrime) unless r is prime; generators must be nonzero.
  explicit MockBackend(std::uint64_t r = kDefaultModulus, Fe p_gen = 1, Fe q_gen = 1);

  std::string name() const override;
  const PrimeField& scalar_field() const override { return f_; }
  G1 g1_generator() const override { return {{p_}}; }
  G2 g2_generator() const override { return {{q_}}; }
  G1 g1_identity() const override { return {{0}}; }
  G2 g2_identity() const override { return {{0}}; }
  GT gt_identity() const override { return {{0}}; }
  G1 g1_add(const G1& a, const G1& b) const override;
  G2 g2_add(const G2& a, const G2& b) const override;
  G1 g1_mul(const G1& a, Fe k) const override;
  G2 g2_mul(const G2& a, Fe k) const override;
  GT pair(const G1& a, const G2& b) const override;
  GT gt_combine(const GT& a, const GT& b) const override;
  bool g1_valid(const G1& a) const override;
  bool g2_valid(const G2& a) const override;

 private:
  PrimeField f_;
  Fe p_, q_;
};

std::unique_ptr<BilinearBackend> mock_backend(std::uint64_t r = kDefaultModulus);
// Same groups with generators P = 3 and Q = 5.
std::unique_ptr<BilinearBackend> scaled_mock_backend(std::uint64_t r = kDefaultModulus);
// "mock" or "mock-scaled"; throws Error(InvalidConfig) otherwise.
std::unique_ptr<BilinearBackend> make_backend(const std::string& name,
                                              std::uint64_t r = kDefaultModulus);

}  // namespace vcc::crypto
