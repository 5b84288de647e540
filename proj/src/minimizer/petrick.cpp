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

#include "vcc/minimizer/petrick.hpp"

#include <algorithm>
#include <iterator>
#include <map>

#include "vcc/error.hpp"

namespace vcc::minimizer {
namespace {

bool is_subset(const Term& a, const Term& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// Sorts, deduplicates and drops every product that contains another one.
void normalize(Sop& s) {
  std::sort(s.begin(), s.end(), [](const Term& x, const Term& y) {
    return x.size() != y.size() ? x.size() < y.size() : x < y;
  });
  s.erase(std::unique(s.begin(), s.end()), s.end());
  Sop kept;
  for (Term& t : s) {
    bool absorbed = false;
    for (const Term& k : kept) {
      if (is_subset(k, t)) {
        absorbed = true;
        break;
      }
    }
    if (!absorbed) kept.push_back(std::move(t));
  }
  std::sort(kept.begin(), kept.end());
  s = std::move(kept);
}

Term merge(const Term& a, const Term& b) {
  Term out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// Product of two sums, or false when it grows past the cap.
bool multiply(const Sop& a, const Sop& b, Sop& out) {
  out.clear();
  for (const Term& x : a) {
    for (const Term& y : b) {
      out.push_back(merge(x, y));
      if (out.size() > 4 * kMaxExpandedTerms) {
        normalize(out);
        if (out.size() > kMaxExpandedTerms) return false;
      }
    }
  }
  normalize(out);
  return out.size() <= kMaxExpandedTerms;
}

// One comparison of a (left, right) pair. Returns the rule that applied and
// stores the merged member in `out`.
PetrickRule compare(const Sop& left, const Sop& right, Sop& out) {
  Sop common;
  std::set_intersection(left.begin(), left.end(), right.begin(), right.end(),
                        std::back_inserter(common));
  // u(u+v) = u
  if (common.size() == left.size()) {
    out = left;
    return PetrickRule::Absorption;
  }
  if (common.size() == right.size()) {
    out = right;
    return PetrickRule::Absorption;
  }
  // u(u'+v) = uv needs complemented labels, which a covering chart never has.
  // (u+v)(u+w) = u+vw
  if (!common.empty()) {
    Sop v, w;
    std::set_difference(left.begin(), left.end(), common.begin(), common.end(),
                        std::back_inserter(v));
    std::set_difference(right.begin(), right.end(), common.begin(), common.end(),
                        std::back_inserter(w));
    Sop vw;
    if (!multiply(v, w, vw)) return PetrickRule::None;
    out = common;
    out.insert(out.end(), vw.begin(), vw.end());
    normalize(out);
    return PetrickRule::Distribution;
  }
  return PetrickRule::None;
}

Term greedy_cover(const PetrickExpression& chart) {
  std::vector<bool> done(chart.sums.size(), false);
  Term cover;
  for (;;) {
    std::map<Label, std::size_t> hits;
    for (std::size_t i = 0; i < chart.sums.size(); ++i) {
      if (done[i]) continue;
      for (Label l : chart.sums[i]) ++hits[l];
    }
    if (hits.empty()) break;
    Label best = hits.begin()->first;
    for (auto [l, h] : hits) {
      if (h > hits[best]) best = l;
    }
    cover.push_back(best);
    for (std::size_t i = 0; i < chart.sums.size(); ++i) {
      const auto& s = chart.sums[i];
      if (std::find(s.begin(), s.end(), best) != s.end()) done[i] = true;
    }
  }
  std::sort(cover.begin(), cover.end());
  return cover;
}

}  // namespace

PetrickExpression petrick_chart(const std::vector<Implicant>& implicants,
                                const std::vector<std::uint32_t>& minterms) {
  PetrickExpression chart;
  for (std::uint32_t m : minterms) {
    std::vector<Label> sum;
    for (std::size_t k = 0; k < implicants.size(); ++k) {
      if (implicants[k].covers(m)) sum.push_back(static_cast<Label>(k));
    }
    chart.sums.push_back(std::move(sum));
  }
  return chart;
}

PetrickResult petrick_reduce(const PetrickExpression& chart) {
  if (chart.sums.empty()) throw Error(ErrorCode::EmptyChart, "chart has no sums");
  std::vector<Sop> list;
  for (std::size_t i = 0; i < chart.sums.size(); ++i) {
    if (chart.sums[i].empty()) {
      throw Error(ErrorCode::EmptyChart, "sum " + std::to_string(i + 1) + " is empty");
    }
    Sop s;
    for (Label l : chart.sums[i]) s.push_back({l});
    normalize(s);
    list.push_back(std::move(s));
  }

  PetrickResult res;
  const std::size_t m = list.size();
  res.step_bound = m * (m - 1) / 2;
  for (std::size_t left = 0; left < list.size(); ++left) {
    std::size_t right = left + 1;
    while (right < list.size()) {
      Sop merged;
      PetrickRule rule = compare(list[left], list[right], merged);
      ++res.steps;
      res.trace.push_back({left, right, rule});
      if (rule == PetrickRule::None) {
        ++right;
      } else {
        list[left] = std::move(merged);
        list.erase(list.begin() + static_cast<std::ptrdiff_t>(right));
      }
    }
  }
  res.residual = list;

  Sop acc{Term{}};
  for (const Sop& s : list) {
    Sop next;
    if (!multiply(acc, s, next)) {
      res.exact = false;
      break;
    }
    acc = std::move(next);
  }
  if (!res.exact) {
    res.cover = greedy_cover(chart);
    return res;
  }
  res.expanded_terms = acc.size();
  const Term* best = &acc.front();
  for (const Term& t : acc) {
    if (t.size() < best->size() || (t.size() == best->size() && t < *best)) best = &t;
  }
  res.cover = *best;
  return res;
}

}  // namespace vcc::minimizer
