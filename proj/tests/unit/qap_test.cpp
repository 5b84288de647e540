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

#include "vcc/circuit/builder.hpp"
#include "vcc/circuit/lower.hpp"
#include "vcc/frontend/flat_program.hpp"
#include "vcc/qap/qap.hpp"

namespace vcc::qap {
namespace {

using circuit::Circuit;

const PrimeField F13(13);

TEST(Poly, InterpolateTwoPoints) {
  FieldPoly p = interpolate(F13, {{1, 1}, {2, 0}});
  EXPECT_EQ(p, FieldPoly({2, 12}));
  EXPECT_EQ(eval(F13, p, 1), 1u);
  EXPECT_EQ(eval(F13, p, 2), 0u);
}

TEST(Poly, DuplicateAbscissa) {
  try {
    interpolate(F13, {{1, 1}, {14, 2}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DuplicateAbscissa);
  }
}

TEST(Poly, RingBasics) {
  EXPECT_EQ(mul(F13, FieldPoly({1, 1}), FieldPoly({12, 1})), FieldPoly({12, 0, 1}));
  EXPECT_EQ(eval(F13, FieldPoly{}, 7), 0u);
  EXPECT_TRUE(FieldPoly({0, 0}).is_zero());
  EXPECT_EQ(sub(F13, FieldPoly({1, 2}), FieldPoly({1, 2})), FieldPoly{});
}

TEST(Poly, Division) {
  FieldPoly t = vanishing(F13, {1});
  EXPECT_EQ(divide_by_t(F13, FieldPoly({2, 10, 1}), t), FieldPoly({11, 1}));
  try {
    divide_by_t(F13, FieldPoly({1, 0, 1}), t);
    FAIL();
  } catch (const NotDivisibleError& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotDivisible);
    EXPECT_EQ(e.remainder(), FieldPoly({2}));
  }
  EXPECT_TRUE(divide_by_t(F13, FieldPoly{}, t).is_zero());
}

TEST(Poly, InterpolationPropertyRandom) {
  const PrimeField f(kDefaultModulus);
  std::mt19937_64 rng(5);
  for (int iter = 0; iter < 50; ++iter) {
    std::vector<std::pair<Fe, Fe>> pts;
    std::set<Fe> xs;
    const int n = 1 + static_cast<int>(rng() % 20);
    while (static_cast<int>(pts.size()) < n) {
      Fe x = f.sample(rng);
      if (xs.insert(x).second) pts.emplace_back(x, f.sample(rng));
    }
    FieldPoly p = interpolate(f, pts);
    EXPECT_LT(p.degree(), n);
    for (auto [x, y] : pts) EXPECT_EQ(eval(f, p, x), y);
  }
}

TEST(Poly, DivmodIdentityRandom) {
  const PrimeField f(kDefaultModulus);
  std::mt19937_64 rng(6);
  for (int iter = 0; iter < 50; ++iter) {
    std::vector<Fe> a(1 + rng() % 30), b(1 + rng() % 10);
    for (auto& x : a) x = f.sample(rng);
    for (auto& x : b) x = f.sample(rng, 1);
    FieldPoly pa(a), pb(b);
    auto [q, r] = divmod(f, pa, pb);
    EXPECT_LT(r.degree(), pb.degree());
    EXPECT_EQ(add(f, mul(f, q, pb), r), pa);
  }
}

Circuit single_mul() {
  circuit::Builder b(4, kDefaultModulus);
  auto x = b.add_input(4, false), y = b.add_input(4, false);
  b.add_output(b.mul(x, y));
  return b.finish();
}

TEST(Qap, SingleMultiplication) {
  Circuit c = single_mul();
  Qap q = build_qap(c);
  EXPECT_EQ(q.d(), 1u);
  EXPECT_EQ(q.k(), 3u);
  EXPECT_EQ(q.n_io, 3u);
  EXPECT_EQ(q.t, FieldPoly({kDefaultModulus - 1, 1}));
  EXPECT_EQ(q.v[0], FieldPoly({1}));
  EXPECT_EQ(q.w[1], FieldPoly({1}));
  EXPECT_EQ(q.y[2], FieldPoly({1}));
  EXPECT_TRUE(q.v[1].is_zero());
  auto a = witness(c, q, circuit::evaluate(c, std::vector<Fe>{2, 3}));
  EXPECT_EQ(a, (std::vector<Fe>{2, 3, 6}));
  EXPECT_TRUE(compute_p(q, a).is_zero());
}

TEST(Qap, TwoMultiplicationsAndLinearFolding) {
  circuit::Builder b(4, kDefaultModulus);
  auto x = b.add_input(4, false), y = b.add_input(4, false), z = b.add_input(4, false);
  auto s = b.add(x, y);
  auto m = b.mul(s, z);
  b.add_output(b.mul(m, x));
  Circuit c = b.finish();
  Qap q = build_qap(c);
  ASSERT_EQ(q.d(), 2u);
  const PrimeField f(q.modulus);
  EXPECT_EQ(q.t, FieldPoly({2, f.neg(3), 1}));
  // (x + y) is the left input of the first gate (root 1).
  EXPECT_EQ(eval(f, q.v[0], 1), 1u);
  EXPECT_EQ(eval(f, q.v[1], 1), 1u);
  EXPECT_EQ(eval(f, q.w[2], 1), 1u);
  EXPECT_EQ(eval(f, q.v[1], 2), 0u);
}

TEST(Qap, PolynomialDegreesAndRoots) {
  frontend::FlatProgram p = frontend::parse_flat_program(
      "bitwidth 8\ninput a unsigned\ninput b unsigned\noutput o unsigned\noutput e unsigned\n"
      "t0 = LT(a, b)\nt1 = MUX(t0, a, b)\nt2 = EQ(a, b)\no = t1\ne = t2\n");
  Circuit c = circuit::lower(p);
  Qap q = build_qap(c);
  const PrimeField f(q.modulus);
  EXPECT_EQ(q.t.degree(), static_cast<long>(q.d()));
  EXPECT_EQ(q.t.coeffs.back(), 1u);
  for (Fe r : q.roots) EXPECT_EQ(eval(f, q.t, r), 0u);
  for (std::size_t i = 0; i < q.k(); ++i) {
    EXPECT_LT(q.v[i].degree(), static_cast<long>(q.d()));
    EXPECT_LT(q.w[i].degree(), static_cast<long>(q.d()));
    EXPECT_LT(q.y[i].degree(), static_cast<long>(q.d()));
  }
  EXPECT_EQ(build_qap(c), q);
}

struct Fixture {
  std::string name;
  Circuit c;
};

std::vector<Fixture> fixtures() {
  std::vector<Fixture> out;
  auto add = [&](std::string name, const std::string& text) {
    out.push_back({std::move(name), circuit::lower(frontend::parse_flat_program(text))});
  };
  add("sum", "bitwidth 16\ninput i1 unsigned\ninput i2 unsigned\noutput o unsigned\n"
             "t0 = ADD(i1, i2)\no = t0\n");
  add("compare", "bitwidth 8\ninput a signed\ninput b signed\noutput o unsigned\n"
                 "t0 = LE(a, b) signed\no = t0\n");
  add("mix", "bitwidth 6\ninput a unsigned\ninput b unsigned\noutput o unsigned\n"
             "output q unsigned\nt0 = MUL(a, b)\nt1 = XOR(a, t0)\nt2 = SHR-CONST(t1, 2)\n"
             "t3 = EQ(t2, b)\nt4 = MUX(t3, t0, t1)\no = t4\nq = t3\n");
  return out;
}

TEST(Qap, ValidWitnessesDivideAndPerturbedOnesDoNot) {
  std::mt19937_64 rng(11);
  for (const Fixture& fx : fixtures()) {
    Qap q = build_qap(fx.c);
    const PrimeField f(q.modulus);
    std::vector<std::size_t> constrained;
    for (std::size_t i = 0; i < q.k(); ++i) {
      if (!q.v[i].is_zero() || !q.w[i].is_zero() || !q.y[i].is_zero()) constrained.push_back(i);
    }
    ASSERT_EQ(constrained.size(), q.k()) << fx.name;
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<Fe> in;
      for (WireId w : fx.c.input_wires) in.push_back(rng() & ((1ULL << fx.c.widths[w]) - 1));
      auto a = witness(fx.c, q, circuit::evaluate(fx.c, in));
      FieldPoly p = compute_p(q, a);
      FieldPoly h = divide_by_t(q, p);
      for (int s = 0; s < 5; ++s) {
        Fe x = f.sample(rng);
        EXPECT_EQ(eval(f, p, x), f.mul(eval(f, h, x), eval(f, q.t, x)));
      }
    }
    std::vector<Fe> in(fx.c.input_wires.size(), 1);
    auto good = witness(fx.c, q, circuit::evaluate(fx.c, in));
    for (int trial = 0; trial < 1000; ++trial) {
      auto bad = good;
      const std::size_t i = rng() % bad.size();
      Fe nv;
      do nv = f.sample(rng);
      while (nv == bad[i]);
      bad[i] = nv;
      EXPECT_THROW(divide_by_t(q, compute_p(q, bad)), NotDivisibleError) << fx.name << " var " << i;
    }
  }
}

TEST(Qap, WitnessRejectsTamperedAssignment) {
  Circuit c = fixtures()[0].c;
  Qap q = build_qap(c);
  auto asg = circuit::evaluate(c, std::vector<Fe>{2, 3});
  auto a = witness(c, q, asg);
  EXPECT_EQ(a[0], 2u);
  EXPECT_EQ(a[1], 3u);
  EXPECT_EQ(a[2], 5u);
  asg.values[c.output_wires[0]] = 6;
  try {
    witness(c, q, asg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InconsistentAssignment);
  }
}

TEST(Qap, ComputePDimensionCheck) {
  Qap q = build_qap(single_mul());
  EXPECT_THROW(compute_p(q, {1, 2}), Error);
}

TEST(Qap, SerializationRoundTrip) {
  for (const Fixture& fx : fixtures()) {
    Qap q = build_qap(fx.c);
    EXPECT_EQ(parse_qap(serialize(q)), q) << fx.name;
  }
  EXPECT_THROW(parse_qap("qap\nk 2\n"), Error);
}

}  // namespace
}  // namespace vcc::qap
