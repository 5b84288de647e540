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

#include "vcc/minimizer/minimize.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "vcc/error.hpp"

namespace vcc::minimizer {
namespace {

using circuit::Circuit;
using circuit::Gate;
using circuit::GateKind;

struct ConstWires {
  WireId zero = 0, one = 0;
  bool ok = false;
};

ConstWires find_constants(const Circuit& c) {
  ConstWires k;
  bool z = false, o = false;
  const std::size_t prefix = circuit::count_constant_gates(c);
  for (std::size_t i = 0; i < prefix; ++i) {
    const Gate& g = c.gates[i];
    if (g.kind == GateKind::ZERO && !z) {
      k.zero = g.outputs[0];
      z = true;
    } else if (g.kind == GateKind::ONE && !o) {
      k.one = g.outputs[0];
      o = true;
    }
  }
  k.ok = z && o;
  return k;
}

class Synth {
 public:
  Synth(const Circuit& c, const LogicSubmodule& sub, WireId first_fresh)
      : c_(c), sub_(sub), f_(c.field_modulus), next_(first_fresh), first_(first_fresh) {
    k_ = find_constants(c);
    if (!k_.ok) throw Error(ErrorCode::InvalidCircuit, "circuit lacks zero/one constant wires");
    circuit_outputs_.insert(c.output_wires.begin(), c.output_wires.end());
  }

  Resynthesis run(const std::vector<OutputCover>& covers) {
    std::set<WireId> claimed;
    for (std::size_t j = 0; j < sub_.boundary_outputs.size(); ++j) {
      group_ = &res_.groups.emplace_back();
      const OutputCover& cov = covers.at(j);
      WireId w = sum(cov.terms);
      if (cov.complemented) w = lnot(w);
      if (circuit_outputs_.count(sub_.boundary_outputs[j]) && (w < first_ || claimed.count(w))) {
        w = emit(GateKind::MUL_CONST, {w}, 1, 1);
      }
      claimed.insert(w);
      res_.out_wires.push_back(w);
    }
    return std::move(res_);
  }

 private:
  unsigned cap(unsigned w) const { return std::min(w, f_.bits()); }

  WireId emit(GateKind kind, std::vector<WireId> in, unsigned width, Fe constant = 0) {
    Gate g;
    g.kind = kind;
    g.inputs = std::move(in);
    g.constant = constant;
    g.outputs = {next_++};
    res_.fresh_widths.push_back(width);
    group_->push_back(std::move(g));
    return next_ - 1;
  }

  WireId lnot(WireId x) {
    if (x == k_.zero) return k_.one;
    if (x == k_.one) return k_.zero;
    auto it = nots_.find(x);
    if (it != nots_.end()) return it->second;
    const Fe m = f_.modulus() - 1;
    WireId neg = emit(GateKind::MUL_CONST, {x}, cap(1 + static_cast<unsigned>(std::bit_width(m))), m);
    WireId out = emit(GateKind::ADD, {k_.one, neg}, 1);
    nots_[x] = out;
    return out;
  }

  WireId product(const Implicant& imp) {
    auto key = std::make_pair(imp.value, imp.mask);
    auto it = terms_.find(key);
    if (it != terms_.end()) return it->second;
    std::vector<WireId> lits;
    for (unsigned v = 0; v < imp.num_vars; ++v) {
      if ((imp.mask >> v) & 1) continue;
      WireId x = sub_.boundary_inputs.at(v);
      lits.push_back((imp.value >> v) & 1 ? x : lnot(x));
    }
    WireId acc = k_.one;
    if (!lits.empty()) {
      acc = lits[0];
      for (std::size_t i = 1; i < lits.size(); ++i) acc = emit(GateKind::MUL, {acc, lits[i]}, 1);
    }
    terms_[key] = acc;
    return acc;
  }

  WireId lor(WireId a, WireId b) {
    WireId prod = emit(GateKind::MUL, {a, b}, 1);
    const Fe m = f_.modulus() - 1;
    WireId scaled =
        emit(GateKind::MUL_CONST, {prod}, cap(1 + static_cast<unsigned>(std::bit_width(m))), m);
    WireId s = emit(GateKind::ADD, {a, b}, 2);
    return emit(GateKind::ADD, {s, scaled}, 1);
  }

  WireId sum(const std::vector<Implicant>& terms) {
    if (terms.empty()) return k_.zero;
    WireId acc = product(terms[0]);
    for (std::size_t i = 1; i < terms.size(); ++i) acc = lor(acc, product(terms[i]));
    return acc;
  }

  const Circuit& c_;
  const LogicSubmodule& sub_;
  PrimeField f_;
  WireId next_, first_;
  ConstWires k_;
  std::set<WireId> circuit_outputs_;
  std::map<WireId, WireId> nots_;
  std::map<std::pair<std::uint32_t, std::uint32_t>, WireId> terms_;
  Resynthesis res_;
  std::vector<Gate>* group_ = nullptr;
};

struct FunctionCover {
  std::vector<Implicant> terms;
  std::size_t steps = 0;
  std::size_t bound = 0;
  bool exact = true;
};

FunctionCover cover_function(const std::vector<bool>& table) {
  FunctionCover out;
  std::vector<std::uint32_t> minterms;
  for (std::uint32_t m = 0; m < table.size(); ++m) {
    if (table[m]) minterms.push_back(m);
  }
  if (minterms.empty()) return out;
  std::vector<Implicant> primes = quine_mccluskey(table);
  PetrickResult pr = petrick_reduce(petrick_chart(primes, minterms));
  out.steps = pr.steps;
  out.bound = pr.step_bound;
  out.exact = pr.exact;
  for (Label l : pr.cover) out.terms.push_back(primes[l]);
  return out;
}

// Field values of the resynthesized outputs on every boundary assignment.
std::vector<std::vector<Fe>> resynthesis_tables(const Circuit& c, const LogicSubmodule& sub,
                                                const Resynthesis& r, WireId first_fresh) {
  const PrimeField f(c.field_modulus);
  std::unordered_map<WireId, Fe> base;
  {
    const std::size_t prefix = circuit::count_constant_gates(c);
    for (std::size_t i = 0; i < prefix; ++i) {
      const Gate& g = c.gates[i];
      Fe v = g.kind == GateKind::ONE ? 1 : 0;
      if (g.kind == GateKind::MUL_CONST) v = f.mul(g.constant, base.at(g.inputs[0]));
      base[g.outputs[0]] = v;
    }
  }
  const std::size_t k = sub.boundary_inputs.size();
  std::vector<std::vector<Fe>> tables(r.out_wires.size(), std::vector<Fe>(std::size_t{1} << k));
  std::vector<Fe> fresh(r.fresh_widths.size());
  for (std::size_t row = 0; row < (std::size_t{1} << k); ++row) {
    std::unordered_map<WireId, Fe> v = base;
    for (std::size_t i = 0; i < k; ++i) v[sub.boundary_inputs[i]] = (row >> i) & 1;
    auto get = [&](WireId w) { return w >= first_fresh ? fresh[w - first_fresh] : v.at(w); };
    for (const auto& grp : r.groups) {
      for (const Gate& g : grp) {
        Fe out = 0;
        switch (g.kind) {
          case GateKind::ADD: out = f.add(get(g.inputs[0]), get(g.inputs[1])); break;
          case GateKind::MUL: out = f.mul(get(g.inputs[0]), get(g.inputs[1])); break;
          default: out = f.mul(g.constant, get(g.inputs[0])); break;
        }
        fresh[g.outputs[0] - first_fresh] = out;
      }
    }
    for (std::size_t j = 0; j < r.out_wires.size(); ++j) tables[j][row] = get(r.out_wires[j]);
  }
  return tables;
}

}  // namespace

std::size_t Resynthesis::gate_count() const {
  std::size_t n = 0;
  for (const auto& g : groups) n += g.size();
  return n;
}

Resynthesis resynthesize(const Circuit& c, const LogicSubmodule& sub,
                         const std::vector<OutputCover>& covers, WireId first_fresh) {
  if (covers.size() != sub.boundary_outputs.size()) {
    throw Error(ErrorCode::InvalidConfig, "one cover per boundary output is required");
  }
  return Synth(c, sub, first_fresh).run(covers);
}

SubmoduleResult minimize_submodule(const Circuit& c, const LogicSubmodule& sub) {
  SubmoduleResult res;
  res.sub = sub;
  res.original_gates = sub.g;
  res.minimized_gates = sub.g;
  if (!sub.minimizable || !find_constants(c).ok) return res;

  const auto tables = submodule_tables(c, sub);
  std::map<std::vector<bool>, FunctionCover> cache;
  auto cover_of = [&](const std::vector<bool>& t) -> const FunctionCover& {
    auto it = cache.find(t);
    if (it == cache.end()) {
      it = cache.emplace(t, cover_function(t)).first;
      res.petrick_steps += it->second.steps;
      res.petrick_bound += it->second.bound;
      res.petrick_exact = res.petrick_exact && it->second.exact;
    }
    return it->second;
  };

  const WireId fresh = static_cast<WireId>(c.num_wires());
  for (std::size_t j = 0; j < sub.boundary_outputs.size(); ++j) {
    std::vector<bool> on(tables[j].size()), off(tables[j].size());
    for (std::size_t r = 0; r < tables[j].size(); ++r) {
      on[r] = tables[j][r] == 1;
      off[r] = !on[r];
    }
    LogicSubmodule single = sub;
    single.boundary_outputs = {sub.boundary_outputs[j]};
    OutputCover direct{cover_of(on).terms, false};
    OutputCover negated{cover_of(off).terms, true};
    const std::size_t cd = resynthesize(c, single, {direct}, fresh).gate_count();
    const std::size_t cn = resynthesize(c, single, {negated}, fresh).gate_count();
    res.covers.push_back(cn < cd ? negated : direct);
  }

  Resynthesis r = resynthesize(c, sub, res.covers, fresh);
  if (resynthesis_tables(c, sub, r, fresh) != tables) {
    throw Error(ErrorCode::InvalidCircuit,
                "resynthesized submodule " + std::to_string(sub.id) + " differs from original");
  }
  res.minimized_gates = r.gate_count();
  res.replaced = res.minimized_gates < res.original_gates;
  if (!res.replaced) res.minimized_gates = res.original_gates;
  return res;
}

Circuit minimize(const Circuit& c, const MinimizeConfig& cfg, MinimizeReport* report) {
  circuit::validate(c);
  std::vector<LogicSubmodule> subs = extract_submodules(c);
  std::vector<std::uint64_t> sizes;
  for (const auto& s : subs) sizes.push_back(s.g);
  ScheduleState plan = schedule(sizes, cfg.cores, cfg.strategy);

  std::vector<SubmoduleResult> results(subs.size());
  auto work = [&](const std::vector<std::size_t>& jobs) {
    for (std::size_t j : jobs) results[j] = minimize_submodule(c, subs[j]);
  };
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> failures(plan.cores);
  for (std::size_t core = 0; core < plan.cores; ++core) {
    if (plan.lists[core].empty()) continue;
    threads.emplace_back([&, core] {
      try {
        work(plan.lists[core]);
      } catch (...) {
        failures[core] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }

  // Serial assembly.
  std::vector<std::ptrdiff_t> producer(c.num_wires(), -1);
  for (std::size_t i = 0; i < c.gates.size(); ++i) {
    for (WireId w : c.gates[i].outputs) producer[w] = static_cast<std::ptrdiff_t>(i);
  }
  std::vector<bool> removed(c.gates.size(), false);
  std::map<std::size_t, std::vector<const std::vector<Gate>*>> inserts;
  std::vector<Resynthesis> synths;
  synths.reserve(results.size());
  std::unordered_map<WireId, WireId> alias;
  std::vector<unsigned> widths = c.widths;
  WireId next = static_cast<WireId>(c.num_wires());
  for (const SubmoduleResult& r : results) {
    if (!r.replaced) continue;
    synths.push_back(resynthesize(c, r.sub, r.covers, next));
    const Resynthesis& s = synths.back();
    next += static_cast<WireId>(s.fresh_widths.size());
    widths.insert(widths.end(), s.fresh_widths.begin(), s.fresh_widths.end());
    for (std::size_t i : r.sub.gates) removed[i] = true;
    for (std::size_t j = 0; j < r.sub.boundary_outputs.size(); ++j) {
      const WireId o = r.sub.boundary_outputs[j];
      inserts[static_cast<std::size_t>(producer[o])].push_back(&s.groups[j]);
      alias[o] = s.out_wires[j];
    }
  }
  auto resolve = [&](WireId w) {
    for (auto it = alias.find(w); it != alias.end(); it = alias.find(w)) w = it->second;
    return w;
  };

  std::vector<Gate> gates;
  for (std::size_t i = 0; i < c.gates.size(); ++i) {
    auto ins = inserts.find(i);
    if (ins != inserts.end()) {
      for (const auto* grp : ins->second) gates.insert(gates.end(), grp->begin(), grp->end());
    }
    if (!removed[i]) gates.push_back(c.gates[i]);
  }
  for (Gate& g : gates) {
    for (WireId& w : g.inputs) w = resolve(w);
  }

  // Dense renumbering: inputs first, then gate outputs in order.
  std::vector<std::int64_t> renum(widths.size(), -1);
  Circuit out;
  out.bit_width = c.bit_width;
  out.field_modulus = c.field_modulus;
  auto define = [&](WireId w) {
    renum[w] = static_cast<std::int64_t>(out.widths.size());
    out.widths.push_back(widths[w]);
    out.is_signed.push_back(w < c.is_signed.size() && c.is_signed[w]);
    return static_cast<WireId>(renum[w]);
  };
  for (WireId w : c.input_wires) out.input_wires.push_back(define(w));
  for (Gate& g : gates) {
    for (WireId& w : g.inputs) w = static_cast<WireId>(renum.at(w));
    for (WireId& w : g.outputs) w = define(w);
  }
  out.gates = std::move(gates);
  for (WireId w : c.output_wires) {
    WireId r = static_cast<WireId>(renum.at(resolve(w)));
    out.output_wires.push_back(r);
    if (w < c.is_signed.size() && c.is_signed[w]) out.is_signed[r] = true;
  }
  circuit::validate(out);

  if (report) {
    report->config = cfg;
    report->submodules = std::move(results);
    report->schedule = std::move(plan);
    report->gates_before = c.gates.size();
    report->gates_after = out.gates.size();
  }
  return out;
}

std::size_t MinimizeReport::total_steps() const {
  std::size_t n = 0;
  for (const auto& s : submodules) n += s.petrick_steps;
  return n;
}

std::string MinimizeReport::str() const {
  std::ostringstream os;
  os << "cores " << config.cores << "\n";
  os << "strategy " << to_string(config.strategy) << "\n";
  os << "gates " << gates_before << " -> " << gates_after << "\n";
  os << "submodules " << submodules.size() << "\n";
  for (const auto& s : submodules) {
    os << "submodule " << s.sub.id << " inputs " << s.sub.boundary_inputs.size() << " outputs "
       << s.sub.boundary_outputs.size() << " gates " << s.original_gates << " -> "
       << s.minimized_gates << " steps " << s.petrick_steps << "/" << s.petrick_bound
       << (s.sub.minimizable ? "" : " unminimizable") << (s.replaced ? " replaced" : "") << "\n";
  }
  for (std::size_t j = 0; j < schedule.cores; ++j) {
    os << "core " << j << " load " << schedule.aggregates[j] << " jobs";
    for (std::size_t job : schedule.lists[j]) os << ' ' << job;
    os << "\n";
  }
  os << "makespan " << schedule.makespan() << "\n";
  os << "total_steps " << total_steps() << "\n";
  return os.str();
}

}  // namespace vcc::minimizer
