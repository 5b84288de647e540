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

#include "vcc/minimizer/submodule.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <unordered_map>

#include "vcc/minimizer/quine_mccluskey.hpp"

namespace vcc::minimizer {
namespace {

using circuit::Circuit;
using circuit::Gate;
using circuit::GateKind;

std::unordered_map<WireId, Fe> constant_wires(const Circuit& c) {
  const PrimeField f(c.field_modulus);
  std::unordered_map<WireId, Fe> out;
  const std::size_t k = circuit::count_constant_gates(c);
  for (std::size_t i = 0; i < k; ++i) {
    const Gate& g = c.gates[i];
    Fe v = 0;
    if (g.kind == GateKind::ONE) v = 1;
    if (g.kind == GateKind::MUL_CONST) v = f.mul(g.constant, out.at(g.inputs[0]));
    out[g.outputs[0]] = v;
  }
  return out;
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

std::vector<LogicSubmodule> extract_submodules(const Circuit& c) {
  const auto consts = constant_wires(c);
  const std::size_t prefix = circuit::count_constant_gates(c);
  const std::size_t ng = c.gates.size();
  std::vector<std::ptrdiff_t> producer(c.num_wires(), -1);
  std::vector<std::vector<std::size_t>> consumers(c.num_wires());
  for (std::size_t i = 0; i < ng; ++i) {
    for (WireId w : c.gates[i].outputs) producer[w] = static_cast<std::ptrdiff_t>(i);
    for (WireId w : c.gates[i].inputs) consumers[w].push_back(i);
  }
  std::set<WireId> circuit_outputs(c.output_wires.begin(), c.output_wires.end());

  std::vector<bool> cand(ng, false);
  auto produced_by_cand = [&](WireId w) { return producer[w] >= 0 && cand[producer[w]]; };
  for (std::size_t i = prefix; i < ng; ++i) {
    const Gate& g = c.gates[i];
    if (g.kind != GateKind::ADD && g.kind != GateKind::MUL && g.kind != GateKind::MUL_CONST) continue;
    bool ok = true, live = false;
    for (WireId w : g.inputs) {
      if (consts.count(w)) continue;
      live = true;
      if (c.widths[w] != 1 && !produced_by_cand(w)) ok = false;
    }
    cand[i] = ok && live;
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = prefix; i < ng; ++i) {
      if (!cand[i]) continue;
      const Gate& g = c.gates[i];
      bool ok = true;
      for (WireId w : g.inputs) {
        if (!consts.count(w) && c.widths[w] != 1 && !produced_by_cand(w)) ok = false;
      }
      const WireId o = g.outputs[0];
      if (c.widths[o] != 1) {
        if (circuit_outputs.count(o)) ok = false;
        for (std::size_t u : consumers[o]) {
          if (!cand[u]) ok = false;
        }
      }
      if (!ok) {
        cand[i] = false;
        changed = true;
      }
    }
  }

  UnionFind uf(ng);
  for (std::size_t i = 0; i < ng; ++i) {
    if (!cand[i]) continue;
    for (WireId w : c.gates[i].inputs) {
      if (!consts.count(w) && produced_by_cand(w)) uf.unite(i, static_cast<std::size_t>(producer[w]));
    }
  }
  std::vector<LogicSubmodule> subs;
  std::unordered_map<std::size_t, std::size_t> root_to_sub;
  for (std::size_t i = 0; i < ng; ++i) {
    if (!cand[i]) continue;
    const std::size_t r = uf.find(i);
    auto [it, fresh] = root_to_sub.emplace(r, subs.size());
    if (fresh) {
      subs.emplace_back();
      subs.back().id = subs.size() - 1;
    }
    subs[it->second].gates.push_back(i);
  }
  for (LogicSubmodule& s : subs) {
    std::set<std::size_t> members(s.gates.begin(), s.gates.end());
    std::set<WireId> ins;
    for (std::size_t i : s.gates) {
      for (WireId w : c.gates[i].inputs) {
        if (consts.count(w)) continue;
        if (producer[w] >= 0 && members.count(static_cast<std::size_t>(producer[w]))) continue;
        ins.insert(w);
      }
      const WireId o = c.gates[i].outputs[0];
      bool escapes = circuit_outputs.count(o) != 0;
      for (std::size_t u : consumers[o]) {
        if (!members.count(u)) escapes = true;
      }
      if (escapes) s.boundary_outputs.push_back(o);
    }
    s.boundary_inputs.assign(ins.begin(), ins.end());
    s.g = s.gates.size();
    s.minimizable = s.boundary_inputs.size() <= kMaxVariables;
    if (s.minimizable) {
      for (const auto& table : submodule_tables(c, s)) {
        for (Fe v : table) {
          if (v > 1) s.minimizable = false;
        }
      }
    }
  }
  return subs;
}

std::vector<std::vector<Fe>> submodule_tables(const Circuit& c, const LogicSubmodule& sub) {
  const PrimeField f(c.field_modulus);
  const auto consts = constant_wires(c);
  std::unordered_map<WireId, std::size_t> slot;
  std::vector<Fe> v;
  auto slot_of = [&](WireId w) {
    auto [it, fresh] = slot.emplace(w, v.size());
    if (fresh) {
      auto k = consts.find(w);
      v.push_back(k == consts.end() ? 0 : k->second);
    }
    return it->second;
  };
  std::vector<std::size_t> in_slots;
  for (WireId w : sub.boundary_inputs) in_slots.push_back(slot_of(w));
  struct Op {
    GateKind kind;
    std::size_t a, b, out;
    Fe k;
  };
  std::vector<Op> ops;
  for (std::size_t i : sub.gates) {
    const Gate& g = c.gates[i];
    Op op{g.kind, slot_of(g.inputs[0]), g.inputs.size() > 1 ? slot_of(g.inputs[1]) : 0, 0,
          g.constant};
    op.out = slot_of(g.outputs[0]);
    ops.push_back(op);
  }
  std::vector<std::size_t> out_slots;
  for (WireId w : sub.boundary_outputs) out_slots.push_back(slot_of(w));

  const std::size_t rows = std::size_t{1} << sub.boundary_inputs.size();
  std::vector<std::vector<Fe>> tables(out_slots.size(), std::vector<Fe>(rows));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t i = 0; i < in_slots.size(); ++i) v[in_slots[i]] = (r >> i) & 1;
    for (const Op& op : ops) {
      switch (op.kind) {
        case GateKind::ADD: v[op.out] = f.add(v[op.a], v[op.b]); break;
        case GateKind::MUL: v[op.out] = f.mul(v[op.a], v[op.b]); break;
        default: v[op.out] = f.mul(op.k, v[op.a]); break;
      }
    }
    for (std::size_t j = 0; j < out_slots.size(); ++j) tables[j][r] = v[out_slots[j]];
  }
  return tables;
}

}  // namespace vcc::minimizer
