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

#include "vcc/circuit/circuit.hpp"

#include <set>
#include <sstream>

#include "vcc/error.hpp"

namespace vcc::circuit {

std::string_view to_string(GateKind kind) {
  switch (kind) {
    case GateKind::ADD: return "ADD";
    case GateKind::MUL: return "MUL";
    case GateKind::MUL_CONST: return "MUL-CONST";
    case GateKind::EXPAND: return "EXPAND";
    case GateKind::COMPRESS: return "COMPRESS";
    case GateKind::ZERO: return "ZERO";
    case GateKind::ONE: return "ONE";
  }
  return "?";
}

std::size_t Circuit::num_mul_gates() const {
  std::size_t d = 0;
  for (const auto& g : gates) d += g.kind == GateKind::MUL;
  return d;
}

void validate(const Circuit& c) {
  auto bad = [](const std::string& m) { throw Error(ErrorCode::InvalidCircuit, m); };
  const std::size_t k = c.num_wires();
  if (c.is_signed.size() != k) bad("signedness table size mismatch");
  std::vector<bool> defined(k, false);
  auto define = [&](WireId w) {
    if (w >= k) bad("wire id " + std::to_string(w) + " out of range");
    if (defined[w]) bad("wire " + std::to_string(w) + " defined twice");
    defined[w] = true;
  };
  auto use = [&](WireId w) {
    if (w >= k || !defined[w]) bad("wire " + std::to_string(w) + " used before definition");
  };
  for (WireId w : c.input_wires) define(w);
  for (std::size_t gi = 0; gi < c.gates.size(); ++gi) {
    const Gate& g = c.gates[gi];
    const std::string where = " (gate " + std::to_string(gi) + ")";
    switch (g.kind) {
      case GateKind::ADD:
      case GateKind::MUL:
        if (g.inputs.size() != 2 || g.outputs.size() != 1) bad("binary gate arity" + where);
        break;
      case GateKind::MUL_CONST:
      case GateKind::ZERO:
      case GateKind::ONE:
        if (g.inputs.size() != 1 || g.outputs.size() != 1) bad("unary gate arity" + where);
        break;
      case GateKind::COMPRESS:
        if (g.inputs.empty() || g.outputs.size() != 1) bad("COMPRESS arity" + where);
        break;
      case GateKind::EXPAND: {
        if (g.inputs.size() != 1 || g.outputs.empty() || g.positions.size() != g.outputs.size()) {
          bad("EXPAND arity" + where);
        }
        if (g.inputs[0] < k && g.outputs.size() > c.widths[g.inputs[0]]) bad("EXPAND too wide" + where);
        std::set<unsigned> seen;
        for (unsigned p : g.positions) {
          if (g.inputs[0] < k && p >= c.widths[g.inputs[0]]) bad("EXPAND position beyond width" + where);
          if (!seen.insert(p).second) bad("EXPAND repeats a position" + where);
        }
        break;
      }
    }
    if (g.kind == GateKind::MUL_CONST && g.constant >= c.field_modulus) bad("constant not reduced" + where);
    for (WireId w : g.inputs) use(w);
    for (WireId w : g.outputs) define(w);
  }
  for (std::size_t w = 0; w < k; ++w) {
    if (!defined[w]) bad("wire " + std::to_string(w) + " never defined");
  }
  for (WireId w : c.output_wires) use(w);
}

std::size_t count_constant_gates(const Circuit& c) {
  std::size_t i = 0;
  if (i < c.gates.size() && c.gates[i].kind == GateKind::ZERO) ++i;
  else return 0;
  if (i < c.gates.size() && c.gates[i].kind == GateKind::ONE) ++i;
  else return i;
  const WireId one = c.gates[i - 1].outputs[0];
  while (i < c.gates.size() && c.gates[i].kind == GateKind::MUL_CONST && c.gates[i].inputs[0] == one) {
    ++i;
  }
  return i;
}

namespace {

void list(std::ostream& os, const std::vector<WireId>& ws) {
  os << '[';
  for (std::size_t i = 0; i < ws.size(); ++i) {
    if (i) os << ' ';
    os << ws[i];
  }
  os << ']';
}

[[noreturn]] void parse_fail(std::size_t line, const std::string& msg) {
  throw Error(ErrorCode::ParseError, msg,
              SourceLocation{"<circuit>", static_cast<std::uint32_t>(line)});
}

std::vector<std::string> words(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  std::string w;
  while (is >> w) out.push_back(w);
  return out;
}

std::uint64_t number(const std::string& w, std::size_t line) {
  std::uint64_t v = 0;
  if (!parse_u64(w, v)) parse_fail(line, "expected a number, found '" + w + "'");
  return v;
}

std::vector<WireId> id_list(const std::string& inner, std::size_t line) {
  std::vector<WireId> ids;
  for (const auto& w : words(inner)) {
    std::uint64_t v = number(w, line);
    if (v > 0xffffffffULL) parse_fail(line, "wire id too large");
    ids.push_back(static_cast<WireId>(v));
  }
  return ids;
}

// Splits "[...] TO [...]" into the two bracket contents.
std::pair<std::string, std::string> operands(const std::string& rest, std::size_t line) {
  auto a0 = rest.find('[');
  auto a1 = rest.find(']', a0 == std::string::npos ? 0 : a0);
  auto to = rest.find("TO", a1 == std::string::npos ? 0 : a1);
  auto b0 = rest.find('[', to == std::string::npos ? 0 : to);
  auto b1 = rest.find(']', b0 == std::string::npos ? 0 : b0);
  if (a0 == std::string::npos || a1 == std::string::npos || to == std::string::npos ||
      b0 == std::string::npos || b1 == std::string::npos) {
    parse_fail(line, "expected '[..] TO [..]'");
  }
  if (!words(rest.substr(b1 + 1)).empty()) parse_fail(line, "trailing text after directive");
  return {rest.substr(a0 + 1, a1 - a0 - 1), rest.substr(b0 + 1, b1 - b0 - 1)};
}

}  // namespace

std::string serialize(const Circuit& c) {
  std::ostringstream os;
  os << "bitwidth " << c.bit_width << "\n";
  os << "field " << c.field_modulus << "\n";
  os << "wires " << c.num_wires() << "\n";
  os << "inputs ";
  list(os, c.input_wires);
  os << "\noutputs ";
  list(os, c.output_wires);
  os << "\nwidths [";
  for (std::size_t i = 0; i < c.widths.size(); ++i) os << (i ? " " : "") << c.widths[i];
  os << "]\nsigned [";
  bool first = true;
  for (std::size_t i = 0; i < c.is_signed.size(); ++i) {
    if (!c.is_signed[i]) continue;
    os << (first ? "" : " ") << i;
    first = false;
  }
  os << "]\n";
  for (const Gate& g : c.gates) {
    os << to_string(g.kind) << ' ';
    if (g.kind == GateKind::MUL_CONST) os << g.constant << ' ';
    list(os, g.inputs);
    os << " TO [";
    if (g.kind == GateKind::EXPAND) {
      for (std::size_t i = 0; i < g.outputs.size(); ++i) {
        if (i) os << ", ";
        os << g.positions[i] << " -> " << g.outputs[i];
      }
      os << "]";
    } else {
      for (std::size_t i = 0; i < g.outputs.size(); ++i) os << (i ? " " : "") << g.outputs[i];
      os << "]";
    }
    os << "\n";
  }
  return os.str();
}

Circuit parse_circuit(const std::string& text) {
  Circuit c;
  c.widths.clear();
  std::istringstream is(text);
  std::string raw;
  std::size_t line = 0;
  std::size_t wires = 0;
  bool have_wires = false, have_widths = false;
  std::vector<WireId> signed_ids;
  while (std::getline(is, raw)) {
    ++line;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    auto ws = words(raw);
    if (ws.empty() || ws[0][0] == '#') continue;
    const std::string& kw = ws[0];
    std::string rest = raw.substr(raw.find(kw) + kw.size());
    auto bracket = [&](const std::string& r) {
      auto a = r.find('['), b = r.rfind(']');
      if (a == std::string::npos || b == std::string::npos || b < a) parse_fail(line, "expected [..]");
      return r.substr(a + 1, b - a - 1);
    };
    if (kw == "bitwidth") {
      if (ws.size() != 2) parse_fail(line, "bad bitwidth line");
      c.bit_width = static_cast<unsigned>(number(ws[1], line));
      continue;
    }
    if (kw == "field") {
      if (ws.size() != 2) parse_fail(line, "bad field line");
      c.field_modulus = number(ws[1], line);
      continue;
    }
    if (kw == "wires") {
      if (ws.size() != 2) parse_fail(line, "bad wires line");
      wires = number(ws[1], line);
      have_wires = true;
      continue;
    }
    if (kw == "inputs") {
      c.input_wires = id_list(bracket(rest), line);
      continue;
    }
    if (kw == "outputs") {
      c.output_wires = id_list(bracket(rest), line);
      continue;
    }
    if (kw == "widths") {
      for (WireId w : id_list(bracket(rest), line)) c.widths.push_back(w);
      have_widths = true;
      continue;
    }
    if (kw == "signed") {
      signed_ids = id_list(bracket(rest), line);
      continue;
    }
    Gate g;
    if (kw == "ADD") g.kind = GateKind::ADD;
    else if (kw == "MUL") g.kind = GateKind::MUL;
    else if (kw == "MUL-CONST") g.kind = GateKind::MUL_CONST;
    else if (kw == "EXPAND") g.kind = GateKind::EXPAND;
    else if (kw == "COMPRESS") g.kind = GateKind::COMPRESS;
    else if (kw == "ZERO") g.kind = GateKind::ZERO;
    else if (kw == "ONE") g.kind = GateKind::ONE;
    else parse_fail(line, "unknown directive '" + kw + "'");
    if (g.kind == GateKind::MUL_CONST) {
      if (ws.size() < 2) parse_fail(line, "MUL-CONST needs a constant");
      g.constant = number(ws[1], line);
      rest = rest.substr(rest.find(ws[1]) + ws[1].size());
    }
    auto [in, out] = operands(rest, line);
    g.inputs = id_list(in, line);
    if (g.kind == GateKind::EXPAND) {
      if (out.find("->") != std::string::npos) {
        std::size_t pos = 0;
        for (;;) {
          auto comma = out.find(',', pos);
          std::string item = out.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
          auto arrow = item.find("->");
          if (arrow == std::string::npos) parse_fail(line, "expected 'position -> wire'");
          auto lhs = words(item.substr(0, arrow)), rhs = words(item.substr(arrow + 2));
          if (lhs.size() != 1 || rhs.size() != 1) parse_fail(line, "expected 'position -> wire'");
          g.positions.push_back(static_cast<unsigned>(number(lhs[0], line)));
          g.outputs.push_back(static_cast<WireId>(number(rhs[0], line)));
          if (comma == std::string::npos) break;
          pos = comma + 1;
        }
      } else {
        // Full form lists every bit, most significant first.
        g.outputs = id_list(out, line);
        for (std::size_t i = 0; i < g.outputs.size(); ++i) {
          g.positions.push_back(static_cast<unsigned>(g.outputs.size() - 1 - i));
        }
        std::vector<WireId> rev(g.outputs.rbegin(), g.outputs.rend());
        std::vector<unsigned> rpos(g.positions.rbegin(), g.positions.rend());
        g.outputs = rev;
        g.positions = rpos;
      }
    } else {
      g.outputs = id_list(out, line);
    }
    c.gates.push_back(std::move(g));
  }
  if (!have_wires) parse_fail(line, "missing 'wires' header");
  if (!have_widths) parse_fail(line, "missing 'widths' header");
  if (c.widths.size() != wires) parse_fail(line, "widths list does not match wire count");
  c.is_signed.assign(wires, false);
  for (WireId w : signed_ids) {
    if (w >= wires) parse_fail(line, "signed wire id out of range");
    c.is_signed[w] = true;
  }
  try {
    validate(c);
  } catch (const Error& e) {
    parse_fail(line, e.what());
  }
  return c;
}

namespace {

void eval_gate(const Circuit& c, const PrimeField& f, const Gate& g, std::vector<Fe>& v) {
  switch (g.kind) {
    case GateKind::ADD: v[g.outputs[0]] = f.add(v[g.inputs[0]], v[g.inputs[1]]); break;
    case GateKind::MUL: v[g.outputs[0]] = f.mul(v[g.inputs[0]], v[g.inputs[1]]); break;
    case GateKind::MUL_CONST: v[g.outputs[0]] = f.mul(g.constant, v[g.inputs[0]]); break;
    case GateKind::ZERO: v[g.outputs[0]] = 0; break;
    case GateKind::ONE: v[g.outputs[0]] = f.add(v[g.inputs[0]], 1); break;
    case GateKind::COMPRESS: {
      Fe acc = 0, pw = 1;
      for (WireId w : g.inputs) {
        acc = f.add(acc, f.mul(pw, v[w]));
        pw = f.add(pw, pw);
      }
      v[g.outputs[0]] = acc;
      break;
    }
    case GateKind::EXPAND: {
      const Fe x = v[g.inputs[0]];
      const unsigned w = c.widths[g.inputs[0]];
      if (w < 64 && (x >> w) != 0) {
        throw Error(ErrorCode::InvalidCircuit,
                    "value on wire " + std::to_string(g.inputs[0]) + " exceeds its width");
      }
      for (std::size_t i = 0; i < g.outputs.size(); ++i) {
        v[g.outputs[i]] = g.positions[i] < 64 ? (x >> g.positions[i]) & 1 : 0;
      }
      break;
    }
  }
}

}  // namespace

Assignment evaluate(const Circuit& c, const std::map<WireId, Fe>& inputs) {
  const PrimeField f(c.field_modulus);
  std::vector<Fe> v(c.num_wires(), 0);
  std::set<WireId> in_set(c.input_wires.begin(), c.input_wires.end());
  for (const auto& [w, x] : inputs) {
    if (!in_set.count(w)) {
      throw Error(ErrorCode::MissingInput, "wire " + std::to_string(w) + " is not a circuit input");
    }
  }
  for (WireId w : c.input_wires) {
    auto it = inputs.find(w);
    if (it == inputs.end()) {
      throw Error(ErrorCode::MissingInput, "no value for input wire " + std::to_string(w));
    }
    const unsigned width = c.widths[w];
    if (it->second >= c.field_modulus || (width < 64 && (it->second >> width) != 0)) {
      throw Error(ErrorCode::ValueOutOfRange, "value " + std::to_string(it->second) +
                                                  " does not fit " + std::to_string(width) +
                                                  "-bit input wire " + std::to_string(w));
    }
    v[w] = it->second;
  }
  for (const Gate& g : c.gates) eval_gate(c, f, g, v);
  return Assignment{std::move(v)};
}

Assignment evaluate(const Circuit& c, const std::vector<Fe>& inputs) {
  if (inputs.size() != c.input_wires.size()) {
    throw Error(ErrorCode::MissingInput, "expected " + std::to_string(c.input_wires.size()) +
                                             " input values, got " + std::to_string(inputs.size()));
  }
  std::map<WireId, Fe> m;
  for (std::size_t i = 0; i < inputs.size(); ++i) m[c.input_wires[i]] = inputs[i];
  return evaluate(c, m);
}

bool is_consistent(const Circuit& c, const Assignment& a) {
  if (a.values.size() != c.num_wires()) return false;
  const PrimeField f(c.field_modulus);
  std::vector<Fe> v = a.values;
  for (Fe x : v) {
    if (x >= c.field_modulus) return false;
  }
  for (const Gate& g : c.gates) {
    std::vector<Fe> before;
    for (WireId w : g.outputs) before.push_back(v[w]);
    try {
      eval_gate(c, f, g, v);
    } catch (const Error&) {
      return false;
    }
    for (std::size_t i = 0; i < g.outputs.size(); ++i) {
      if (v[g.outputs[i]] != before[i]) return false;
    }
  }
  return true;
}

std::vector<Fe> output_values(const Circuit& c, const Assignment& a) {
  std::vector<Fe> out;
  for (WireId w : c.output_wires) out.push_back(a.values.at(w));
  return out;
}

}  // namespace vcc::circuit
