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

#include "vcc/qap/poly.hpp"

#include <algorithm>
#include <set>

#include "vcc/error.hpp"

namespace vcc::qap {

FieldPoly::FieldPoly(std::vector<Fe> c) : coeffs(std::move(c)) { trim(); }

void FieldPoly::trim() {
  while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
}

FieldPoly add(const PrimeField& f, const FieldPoly& p, const FieldPoly& q) {
  FieldPoly r = p;
  add_scaled(f, r, q, 1);
  return r;
}

FieldPoly sub(const PrimeField& f, const FieldPoly& p, const FieldPoly& q) {
  FieldPoly r = p;
  add_scaled(f, r, q, f.modulus() - 1);
  return r;
}

void add_scaled(const PrimeField& f, FieldPoly& p, const FieldPoly& q, Fe c) {
  c = f.reduce(c);
  if (c == 0 || q.is_zero()) return;
  if (p.coeffs.size() < q.coeffs.size()) p.coeffs.resize(q.coeffs.size(), 0);
  for (std::size_t i = 0; i < q.coeffs.size(); ++i) {
    p.coeffs[i] = f.add(p.coeffs[i], f.mul(c, q.coeffs[i]));
  }
  p.trim();
}

FieldPoly mul(const PrimeField& f, const FieldPoly& p, const FieldPoly& q) {
  if (p.is_zero() || q.is_zero()) return {};
  std::vector<Fe> r(p.coeffs.size() + q.coeffs.size() - 1, 0);
  for (std::size_t i = 0; i < p.coeffs.size(); ++i) {
    if (p.coeffs[i] == 0) continue;
    for (std::size_t j = 0; j < q.coeffs.size(); ++j) {
      r[i + j] = f.add(r[i + j], f.mul(p.coeffs[i], q.coeffs[j]));
    }
  }
  return FieldPoly(std::move(r));
}

FieldPoly scale(const PrimeField& f, const FieldPoly& p, Fe c) {
  FieldPoly r;
  add_scaled(f, r, p, c);
  return r;
}

Fe eval(const PrimeField& f, const FieldPoly& p, Fe x) {
  x = f.reduce(x);
  Fe acc = 0;
  for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it) acc = f.add(f.mul(acc, x), *it);
  return acc;
}

FieldPoly vanishing(const PrimeField& f, const std::vector<Fe>& roots) {
  std::vector<Fe> r{1};
  for (Fe root : roots) {
    const Fe neg = f.neg(f.reduce(root));
    std::vector<Fe> next(r.size() + 1, 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
      next[i + 1] = f.add(next[i + 1], r[i]);
      next[i] = f.add(next[i], f.mul(neg, r[i]));
    }
    r = std::move(next);
  }
  return FieldPoly(std::move(r));
}

std::pair<FieldPoly, FieldPoly> divmod(const PrimeField& f, const FieldPoly& p,
                                       const FieldPoly& d) {
  if (d.is_zero()) throw Error(ErrorCode::DimensionMismatch, "division by the zero polynomial");
  if (p.degree() < d.degree()) return {FieldPoly{}, p};
  std::vector<Fe> rem = p.coeffs;
  const std::size_t dd = d.coeffs.size() - 1;
  std::vector<Fe> q(rem.size() - dd, 0);
  const Fe lead_inv = f.inv(d.coeffs.back());
  for (std::size_t i = q.size(); i-- > 0;) {
    const Fe c = f.mul(rem[i + dd], lead_inv);
    q[i] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dd; ++j) rem[i + j] = f.sub(rem[i + j], f.mul(c, d.coeffs[j]));
  }
  rem.resize(dd);
  return {FieldPoly(std::move(q)), FieldPoly(std::move(rem))};
}

FieldPoly interpolate(const PrimeField& f, const std::vector<std::pair<Fe, Fe>>& points) {
  std::set<Fe> xs;
  std::vector<Fe> roots;
  for (const auto& [x, y] : points) {
    if (!xs.insert(f.reduce(x)).second) {
      throw Error(ErrorCode::DuplicateAbscissa, "abscissa " + std::to_string(x) + " repeated");
    }
    roots.push_back(f.reduce(x));
  }
  const FieldPoly full = vanishing(f, roots);
  FieldPoly out;
  for (const auto& [x, y] : points) {
    if (f.reduce(y) == 0) continue;
    // full / (X - x) by synthetic division.
    FieldPoly basis = divmod(f, full, FieldPoly({f.neg(f.reduce(x)), 1})).first;
    const Fe denom = eval(f, basis, x);
    add_scaled(f, out, basis, f.mul(f.reduce(y), f.inv(denom)));
  }
  return out;
}

}  // namespace vcc::qap
