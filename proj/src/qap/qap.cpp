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

#include "vcc/qap/qap.hpp"

#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace vcc::qap {
namespace {

using circuit::Circuit;
using circuit::Gate;
using circuit::GateKind;
using Lc = std::map<std::int64_t, Fe>;

void accumulate(const PrimeField& f, Lc& into, const Lc& from, Fe scale) {
  for (const auto& [var, coef] : from) {
    Fe& slot = into[var];
    slot = f.add(slot, f.mul(coef, scale));
    if (slot == 0) into.erase(var);
  }
}

LinearCombination flatten_lc(const Lc& lc) {
  return LinearCombination(lc.begin(), lc.end());
}

class QapBuilder {
 public:
  explicit QapBuilder(const Circuit& c) : c_(c), f_(c.field_modulus) {}

  Qap run() {
    circuit::validate(c_);
    q_.modulus = c_.field_modulus;
    assign_variables();
    lcs_.assign(c_.num_wires(), std::nullopt);
    for (WireId w : c_.input_wires) lcs_[w] = Lc{{var_of_.at(w), 1}};
    for (const Gate& g : c_.gates) lower_gate(g);
    if (q_.constraints.empty()) {
      LinearCombination one{{kOne, 1}};
      q_.constraints.push_back({one, one, one});
    }
    interpolate_all();
    return std::move(q_);
  }

 private:
  std::int64_t new_var(QapVariable v) {
    q_.vars.push_back(v);
    return static_cast<std::int64_t>(q_.vars.size() - 1);
  }

  std::int64_t wire_var(WireId w) {
    auto [it, fresh] = var_of_.emplace(w, 0);
    if (fresh) it->second = new_var({QapVariable::Kind::Wire, w, 0});
    return it->second;
  }

  void assign_variables() {
    for (WireId w : c_.input_wires) wire_var(w);
    q_.n_inputs = q_.vars.size();
    for (WireId w : c_.output_wires) wire_var(w);
    q_.n_io = q_.vars.size();
    for (const Gate& g : c_.gates) {
      if (g.kind == GateKind::MUL) wire_var(g.outputs[0]);
      if (g.kind == GateKind::EXPAND) {
        std::set<unsigned> listed(g.positions.begin(), g.positions.end());
        for (WireId o : g.outputs) wire_var(o);
        const unsigned width = c_.widths[g.inputs[0]];
        auto& aux = aux_[&g];
        for (unsigned p = 0; p < width; ++p) {
          if (!listed.count(p)) aux[p] = new_var({QapVariable::Kind::Bit, g.inputs[0], p});
        }
      }
    }
  }

  const Lc& lc(WireId w) const {
    if (!lcs_[w]) throw Error(ErrorCode::InvalidCircuit, "wire " + std::to_string(w) + " undefined");
    return *lcs_[w];
  }

  void define(WireId out, Lc def) {
    auto it = var_of_.find(out);
    if (it == var_of_.end()) {
      lcs_[out] = std::move(def);
      return;
    }
    // Materialized wire computed by a linear gate: bind it.
    Lc self{{it->second, 1}};
    q_.constraints.push_back({flatten_lc(def), {{kOne, 1}}, flatten_lc(self)});
    lcs_[out] = std::move(self);
  }

  void lower_gate(const Gate& g) {
    switch (g.kind) {
      case GateKind::ADD: {
        Lc s = lc(g.inputs[0]);
        accumulate(f_, s, lc(g.inputs[1]), 1);
        define(g.outputs[0], std::move(s));
        break;
      }
      case GateKind::MUL_CONST: {
        Lc s;
        accumulate(f_, s, lc(g.inputs[0]), g.constant);
        define(g.outputs[0], std::move(s));
        break;
      }
      case GateKind::ZERO:
        define(g.outputs[0], Lc{});
        break;
      case GateKind::ONE: {
        Lc s = lc(g.inputs[0]);
        accumulate(f_, s, Lc{{kOne, 1}}, 1);
        define(g.outputs[0], std::move(s));
        break;
      }
      case GateKind::COMPRESS: {
        Lc s;
        Fe pw = 1;
        for (WireId w : g.inputs) {
          accumulate(f_, s, lc(w), pw);
          pw = f_.add(pw, pw);
        }
        define(g.outputs[0], std::move(s));
        break;
      }
      case GateKind::MUL: {
        const std::int64_t out = var_of_.at(g.outputs[0]);
        q_.constraints.push_back(
            {flatten_lc(lc(g.inputs[0])), flatten_lc(lc(g.inputs[1])), {{out, 1}}});
        lcs_[g.outputs[0]] = Lc{{out, 1}};
        ++q_.num_mul_gates;
        break;
      }
      case GateKind::EXPAND:
        lower_expand(g);
        break;
    }
  }

  void lower_expand(const Gate& g) {
    const unsigned width = c_.widths[g.inputs[0]];
    std::map<unsigned, std::int64_t> bit_var = aux_[&g];
    for (std::size_t i = 0; i < g.outputs.size(); ++i) {
      const std::int64_t var = var_of_.at(g.outputs[i]);
      const unsigned pos = g.positions[i];
      auto [it, fresh] = bit_var.emplace(pos, var);
      if (!fresh) {
        // Repeated position: equal to the first listing.
        q_.constraints.push_back({{{var, 1}, {it->second, f_.modulus() - 1}}, {{kOne, 1}}, {}});
      }
      lcs_[g.outputs[i]] = Lc{{var, 1}};
    }
    for (const auto& [pos, var] : bit_var) q_.constraints.push_back({{{var, 1}}, {{var, 1}}, {{var, 1}}});
    Lc recompose;
    Fe pw = 1;
    for (unsigned p = 0; p < width; ++p) {
      accumulate(f_, recompose, Lc{{bit_var.at(p), 1}}, pw);
      pw = f_.add(pw, pw);
    }
    accumulate(f_, recompose, lc(g.inputs[0]), f_.modulus() - 1);
    q_.constraints.push_back({flatten_lc(recompose), {{kOne, 1}}, {}});
  }

  void interpolate_all() {
    const std::size_t d = q_.constraints.size();
    for (std::size_t i = 1; i <= d; ++i) q_.roots.push_back(i);
    q_.t = vanishing(f_, q_.roots);
    q_.v.assign(q_.k(), {});
    q_.w.assign(q_.k(), {});
    q_.y.assign(q_.k(), {});
    for (std::size_t g = 0; g < d; ++g) {
      const Fe r = q_.roots[g];
      FieldPoly basis = divmod(f_, q_.t, FieldPoly({f_.neg(r), 1})).first;
      basis = scale(f_, basis, f_.inv(eval(f_, basis, r)));
      auto spread = [&](const LinearCombination& lc, FieldPoly& p0, std::vector<FieldPoly>& ps) {
        for (const auto& [var, coef] : lc) add_scaled(f_, var == kOne ? p0 : ps[var], basis, coef);
      };
      spread(q_.constraints[g].left, q_.v0, q_.v);
      spread(q_.constraints[g].right, q_.w0, q_.w);
      spread(q_.constraints[g].out, q_.y0, q_.y);
    }
  }

  const Circuit& c_;
  PrimeField f_;
  Qap q_;
  std::map<WireId, std::int64_t> var_of_;
  std::map<const Gate*, std::map<unsigned, std::int64_t>> aux_;
  std::vector<std::optional<Lc>> lcs_;
};

std::string poly_str(const FieldPoly& p) {
  std::string s;
  for (Fe c : p.coeffs) s += ' ' + std::to_string(c);
  return s;
}

std::string lc_str(const LinearCombination& lc) {
  std::string s;
  for (const auto& [var, coef] : lc) {
    s += ' ' + (var == kOne ? std::string("one") : std::to_string(var)) + ':' + std::to_string(coef);
  }
  return s;
}

}  // namespace

NotDivisibleError::NotDivisibleError(FieldPoly remainder)
    : Error(ErrorCode::NotDivisible, "p(x) is not divisible by t(x); remainder of degree " +
                                         std::to_string(remainder.degree())),
      remainder_(std::move(remainder)) {}

Qap build_qap(const Circuit& c) { return QapBuilder(c).run(); }

std::vector<Fe> witness(const Circuit& c, const Qap& q, const circuit::Assignment& a) {
  if (a.values.size() != c.num_wires() || !circuit::is_consistent(c, a)) {
    throw Error(ErrorCode::InconsistentAssignment, "assignment does not satisfy the circuit");
  }
  std::vector<Fe> out;
  out.reserve(q.k());
  for (const QapVariable& v : q.vars) {
    const Fe x = a.values.at(v.wire);
    out.push_back(v.kind == QapVariable::Kind::Wire ? x : (v.bit < 64 ? (x >> v.bit) & 1 : 0));
  }
  return out;
}

FieldPoly compute_p(const Qap& q, const std::vector<Fe>& a) {
  if (a.size() != q.k()) {
    throw Error(ErrorCode::DimensionMismatch, "witness has " + std::to_string(a.size()) +
                                                  " entries, QAP has " + std::to_string(q.k()));
  }
  const PrimeField f(q.modulus);
  FieldPoly vs = q.v0, ws = q.w0, ys = q.y0;
  for (std::size_t i = 0; i < q.k(); ++i) {
    add_scaled(f, vs, q.v[i], a[i]);
    add_scaled(f, ws, q.w[i], a[i]);
    add_scaled(f, ys, q.y[i], a[i]);
  }
  return sub(f, mul(f, vs, ws), ys);
}

FieldPoly divide_by_t(const PrimeField& f, const FieldPoly& p, const FieldPoly& t) {
  auto [h, r] = divmod(f, p, t);
  if (!r.is_zero()) throw NotDivisibleError(std::move(r));
  return h;
}

FieldPoly divide_by_t(const Qap& q, const FieldPoly& p) {
  return divide_by_t(PrimeField(q.modulus), p, q.t);
}

std::string serialize(const Qap& q) {
  std::ostringstream os;
  os << "qap\n";
  os << "field " << q.modulus << "\n";
  os << "k " << q.k() << "\n";
  os << "d " << q.d() << "\n";
  os << "n_io " << q.n_io << "\n";
  os << "n_inputs " << q.n_inputs << "\n";
  os << "mul_gates " << q.num_mul_gates << "\n";
  os << "roots";
  for (Fe r : q.roots) os << ' ' << r;
  os << "\n";
  for (std::size_t i = 0; i < q.k(); ++i) {
    const QapVariable& v = q.vars[i];
    os << "var " << i << ' ';
    if (v.kind == QapVariable::Kind::Wire) {
      os << "wire " << v.wire << "\n";
    } else {
      os << "bit " << v.wire << ' ' << v.bit << "\n";
    }
  }
  for (const Constraint& c : q.constraints) {
    os << "constraint L" << lc_str(c.left) << " R" << lc_str(c.right) << " O" << lc_str(c.out)
       << "\n";
  }
  os << "t" << poly_str(q.t) << "\n";
  auto rows = [&](char tag, const FieldPoly& p0, const std::vector<FieldPoly>& ps) {
    if (!p0.is_zero()) os << tag << " one" << poly_str(p0) << "\n";
    for (std::size_t i = 0; i < ps.size(); ++i) {
      if (!ps[i].is_zero()) os << tag << ' ' << i << poly_str(ps[i]) << "\n";
    }
  };
  rows('v', q.v0, q.v);
  rows('w', q.w0, q.w);
  rows('y', q.y0, q.y);
  os << "end\n";
  return os.str();
}

namespace {

[[noreturn]] void bad(std::size_t line, const std::string& msg) {
  throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + msg);
}

std::uint64_t num(const std::string& s, std::size_t line) {
  std::uint64_t v;
  if (!parse_u64(s, v)) bad(line, "expected a number, got '" + s + "'");
  return v;
}

std::int64_t var_index(const std::string& s, std::size_t k, std::size_t line) {
  if (s == "one") return kOne;
  const std::uint64_t v = num(s, line);
  if (v >= k) bad(line, "variable index out of range");
  return static_cast<std::int64_t>(v);
}

}  // namespace

Qap parse_qap(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t ln = 0;
  Qap q;
  std::size_t k = 0, d = 0;
  bool saw_header = false, saw_end = false;
  auto poly_from = [&](std::istringstream& ls, std::uint64_t p) {
    std::vector<Fe> cs;
    std::string tok;
    while (ls >> tok) {
      const std::uint64_t v = num(tok, ln);
      if (v >= p) bad(ln, "coefficient not reduced");
      cs.push_back(v);
    }
    FieldPoly out(std::move(cs));
    return out;
  };
  while (std::getline(in, line)) {
    ++ln;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    if (!saw_header) {
      if (key != "qap") bad(ln, "missing 'qap' header");
      saw_header = true;
      continue;
    }
    if (saw_end) bad(ln, "content after 'end'");
    std::string a;
    if (key == "field" || key == "k" || key == "d" || key == "n_io" || key == "n_inputs" ||
        key == "mul_gates") {
      ls >> a;
      const std::uint64_t v = num(a, ln);
      if (key == "field") q.modulus = v;
      if (key == "k") {
        k = v;
        q.v.assign(k, {});
        q.w.assign(k, {});
        q.y.assign(k, {});
      }
      if (key == "d") d = v;
      if (key == "n_io") q.n_io = v;
      if (key == "n_inputs") q.n_inputs = v;
      if (key == "mul_gates") q.num_mul_gates = v;
    } else if (key == "roots") {
      while (ls >> a) q.roots.push_back(num(a, ln));
    } else if (key == "var") {
      std::string idx, kind;
      ls >> idx >> kind;
      if (num(idx, ln) != q.vars.size()) bad(ln, "variables out of order");
      QapVariable v;
      ls >> a;
      v.wire = static_cast<WireId>(num(a, ln));
      if (kind == "bit") {
        v.kind = QapVariable::Kind::Bit;
        ls >> a;
        v.bit = static_cast<unsigned>(num(a, ln));
      } else if (kind != "wire") {
        bad(ln, "unknown variable kind '" + kind + "'");
      }
      q.vars.push_back(v);
    } else if (key == "constraint") {
      Constraint c;
      LinearCombination* cur = nullptr;
      while (ls >> a) {
        if (a == "L") cur = &c.left;
        else if (a == "R") cur = &c.right;
        else if (a == "O") cur = &c.out;
        else {
          auto colon = a.find(':');
          if (!cur || colon == std::string::npos) bad(ln, "malformed term '" + a + "'");
          cur->emplace_back(var_index(a.substr(0, colon), k, ln), num(a.substr(colon + 1), ln));
        }
      }
      q.constraints.push_back(std::move(c));
    } else if (key == "t") {
      q.t = poly_from(ls, q.modulus);
    } else if (key == "v" || key == "w" || key == "y") {
      ls >> a;
      const std::int64_t i = var_index(a, k, ln);
      FieldPoly p = poly_from(ls, q.modulus);
      auto& p0 = key == "v" ? q.v0 : key == "w" ? q.w0 : q.y0;
      auto& ps = key == "v" ? q.v : key == "w" ? q.w : q.y;
      (i == kOne ? p0 : ps[static_cast<std::size_t>(i)]) = std::move(p);
    } else if (key == "end") {
      saw_end = true;
    } else {
      bad(ln, "unknown directive '" + key + "'");
    }
  }
  if (!saw_header || !saw_end) bad(ln, "truncated QAP");
  if (q.vars.size() != k || q.roots.size() != d || q.constraints.size() != d) {
    bad(ln, "header counts do not match the body");
  }
  if (q.n_inputs > q.n_io || q.n_io > k) bad(ln, "inconsistent IO counts");
  if (q.t.degree() != static_cast<long>(d)) bad(ln, "t has the wrong degree");
  return q;
}

}  // namespace vcc::qap
