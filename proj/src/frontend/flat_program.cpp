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

#include "vcc/frontend/flat_program.hpp"

#include <set>
#include <sstream>

#include "vcc/error.hpp"
#include "vcc/field.hpp"

namespace vcc::frontend {

namespace {

struct OpInfo {
  PrimOp op;
  const char* name;
  int arity;
  bool imm;
};

constexpr OpInfo kOps[] = {
    {PrimOp::ADD, "ADD", 2, false},         {PrimOp::SUB, "SUB", 2, false},
    {PrimOp::MUL, "MUL", 2, false},         {PrimOp::MUL_CONST, "MUL-CONST", 1, true},
    {PrimOp::AND, "AND", 2, false},         {PrimOp::OR, "OR", 2, false},
    {PrimOp::XOR, "XOR", 2, false},         {PrimOp::NOT, "NOT", 1, false},
    {PrimOp::SHL_CONST, "SHL-CONST", 1, true}, {PrimOp::SHR_CONST, "SHR-CONST", 1, true},
    {PrimOp::LT, "LT", 2, false},           {PrimOp::GT, "GT", 2, false},
    {PrimOp::LE, "LE", 2, false},           {PrimOp::GE, "GE", 2, false},
    {PrimOp::EQ, "EQ", 2, false},           {PrimOp::NEQ, "NEQ", 2, false},
    {PrimOp::MUX, "MUX", 3, false},         {PrimOp::CONST, "CONST", 0, true},
};

const OpInfo& info(PrimOp op) {
  for (const auto& i : kOps) {
    if (i.op == op) return i;
  }
  return kOps[0];
}

bool signed_capable(PrimOp op) {
  return op == PrimOp::LT || op == PrimOp::GT || op == PrimOp::LE || op == PrimOp::GE ||
         op == PrimOp::SHR_CONST;
}

[[noreturn]] void parse_fail(std::size_t line, const std::string& msg) {
  throw Error(ErrorCode::ParseError, msg,
              SourceLocation{"<flat>", static_cast<std::uint32_t>(line)});
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::string_view to_string(PrimOp op) { return info(op).name; }

bool parse_prim_op(std::string_view text, PrimOp& out) {
  for (const auto& i : kOps) {
    if (text == i.name) {
      out = i.op;
      return true;
    }
  }
  return false;
}

int arity(PrimOp op) { return info(op).arity; }
bool has_immediate(PrimOp op) { return info(op).imm; }

std::uint64_t mask_bits(unsigned n) { return n >= 64 ? ~0ULL : (1ULL << n) - 1; }

std::int64_t to_signed(std::uint64_t v, unsigned n) {
  v &= mask_bits(n);
  if (n < 64 && (v >> (n - 1)) & 1) return static_cast<std::int64_t>(v | ~mask_bits(n));
  return static_cast<std::int64_t>(v);
}

std::uint64_t eval_prim(PrimOp op, const std::vector<std::uint64_t>& a, std::uint64_t imm,
                        bool is_signed, unsigned n) {
  const std::uint64_t m = mask_bits(n);
  auto lt = [&](std::uint64_t x, std::uint64_t y) {
    return is_signed ? to_signed(x, n) < to_signed(y, n) : (x & m) < (y & m);
  };
  switch (op) {
    case PrimOp::ADD: return (a[0] + a[1]) & m;
    case PrimOp::SUB: return (a[0] - a[1]) & m;
    case PrimOp::MUL: return (a[0] * a[1]) & m;
    case PrimOp::MUL_CONST: return (a[0] * imm) & m;
    case PrimOp::AND: return a[0] & a[1] & m;
    case PrimOp::OR: return (a[0] | a[1]) & m;
    case PrimOp::XOR: return (a[0] ^ a[1]) & m;
    case PrimOp::NOT: return ~a[0] & m;
    case PrimOp::SHL_CONST: return imm >= n ? 0 : (a[0] << imm) & m;
    case PrimOp::SHR_CONST:
      if (is_signed) {
        std::int64_t s = to_signed(a[0], n);
        return static_cast<std::uint64_t>(s >> std::min<std::uint64_t>(imm, 63)) & m;
      }
      return imm >= n ? 0 : (a[0] & m) >> imm;
    case PrimOp::LT: return lt(a[0], a[1]);
    case PrimOp::GT: return lt(a[1], a[0]);
    case PrimOp::LE: return !lt(a[1], a[0]);
    case PrimOp::GE: return !lt(a[0], a[1]);
    case PrimOp::EQ: return (a[0] & m) == (a[1] & m);
    case PrimOp::NEQ: return (a[0] & m) != (a[1] & m);
    case PrimOp::MUX: return a[0] ? a[1] & m : a[2] & m;
    case PrimOp::CONST: return imm & m;
  }
  return 0;
}

std::string serialize(const FlatProgram& prog) {
  std::ostringstream os;
  os << "bitwidth " << prog.bit_width << "\n";
  for (const auto& in : prog.inputs) {
    os << "input " << in.name << ' ' << (in.is_signed ? "signed" : "unsigned") << "\n";
  }
  for (const auto& out : prog.outputs) {
    os << "output " << out.name << ' ' << (out.is_signed ? "signed" : "unsigned") << "\n";
  }
  for (const auto& e : prog.exprs) {
    os << e.dest << " = " << to_string(e.op) << '(';
    for (std::size_t i = 0; i < e.args.size(); ++i) {
      if (i) os << ", ";
      os << e.args[i];
    }
    if (has_immediate(e.op)) {
      if (!e.args.empty()) os << ", ";
      os << e.imm;
    }
    os << ')';
    if (e.is_signed) os << " signed";
    os << "\n";
  }
  for (const auto& b : prog.bindings) os << b.name << " = " << b.source << "\n";
  return os.str();
}

FlatProgram parse_flat_program(const std::string& text) {
  FlatProgram prog;
  std::istringstream is(text);
  std::string raw;
  std::size_t line_no = 0;
  bool saw_width = false;
  std::set<std::string> outputs;
  while (std::getline(is, raw)) {
    ++line_no;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string first;
    ls >> first;
    if (first == "bitwidth") {
      std::string v;
      ls >> v;
      std::uint64_t n = 0;
      if (!parse_u64(v, n) || n == 0 || n > 62) parse_fail(line_no, "bad bitwidth");
      prog.bit_width = static_cast<unsigned>(n);
      saw_width = true;
      continue;
    }
    if (first == "input" || first == "output") {
      std::string name, sign, extra;
      ls >> name >> sign >> extra;
      if (name.empty() || (sign != "signed" && sign != "unsigned") || !extra.empty()) {
        parse_fail(line_no, "expected '" + first + " <name> <signed|unsigned>'");
      }
      (first == "input" ? prog.inputs : prog.outputs).push_back({name, sign == "signed"});
      if (first == "output") outputs.insert(name);
      continue;
    }
    auto eq = line.find(" = ");
    if (eq == std::string::npos) parse_fail(line_no, "expected assignment");
    std::string dest = trim(line.substr(0, eq));
    std::string rhs = trim(line.substr(eq + 3));
    auto paren = rhs.find('(');
    if (paren == std::string::npos) {
      if (!outputs.count(dest)) parse_fail(line_no, "binding to undeclared output '" + dest + "'");
      prog.bindings.push_back({dest, rhs});
      continue;
    }
    PrimExpr e;
    e.dest = dest;
    if (!parse_prim_op(rhs.substr(0, paren), e.op)) {
      parse_fail(line_no, "unknown operation '" + rhs.substr(0, paren) + "'");
    }
    auto close = rhs.rfind(')');
    if (close == std::string::npos || close < paren) parse_fail(line_no, "missing ')'");
    std::string tail = trim(rhs.substr(close + 1));
    if (tail == "signed") {
      if (!signed_capable(e.op)) parse_fail(line_no, "'signed' not allowed here");
      e.is_signed = true;
    } else if (!tail.empty()) {
      parse_fail(line_no, "trailing text '" + tail + "'");
    }
    std::vector<std::string> parts;
    std::string inner = rhs.substr(paren + 1, close - paren - 1);
    std::size_t pos = 0;
    while (!trim(inner).empty()) {
      auto comma = inner.find(',', pos);
      parts.push_back(trim(inner.substr(pos, comma == std::string::npos ? std::string::npos
                                                                        : comma - pos)));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    const std::size_t want = static_cast<std::size_t>(arity(e.op)) + (has_immediate(e.op) ? 1 : 0);
    if (parts.size() != want) parse_fail(line_no, "wrong operand count");
    if (has_immediate(e.op)) {
      if (!parse_u64(parts.back(), e.imm)) parse_fail(line_no, "bad immediate");
      parts.pop_back();
    }
    e.args = std::move(parts);
    prog.exprs.push_back(std::move(e));
  }
  if (!saw_width) parse_fail(line_no, "missing bitwidth header");
  return prog;
}

void validate(const FlatProgram& prog) {
  std::set<std::string> defined;
  auto bad = [](const std::string& m) { throw Error(ErrorCode::InvalidCircuit, m); };
  for (const auto& in : prog.inputs) {
    if (!defined.insert(in.name).second) bad("duplicate input '" + in.name + "'");
  }
  for (const auto& e : prog.exprs) {
    if (static_cast<int>(e.args.size()) != arity(e.op)) bad("arity mismatch at " + e.dest);
    for (const auto& a : e.args) {
      if (!defined.count(a)) bad("operand '" + a + "' used before definition in " + e.dest);
    }
    if (!defined.insert(e.dest).second) bad("'" + e.dest + "' assigned twice");
  }
  if (prog.bindings.size() != prog.outputs.size()) bad("output binding count mismatch");
  for (std::size_t i = 0; i < prog.outputs.size(); ++i) {
    if (prog.bindings[i].name != prog.outputs[i].name) bad("output binding order mismatch");
    if (!defined.count(prog.bindings[i].source)) {
      bad("output '" + prog.outputs[i].name + "' bound to undefined value");
    }
  }
}

std::map<std::string, std::uint64_t> interpret_all(const FlatProgram& prog,
                                                   const std::vector<std::uint64_t>& inputs) {
  if (inputs.size() != prog.inputs.size()) {
    throw Error(ErrorCode::MissingInput, "expected " + std::to_string(prog.inputs.size()) +
                                             " inputs, got " + std::to_string(inputs.size()));
  }
  const unsigned n = prog.bit_width;
  std::map<std::string, std::uint64_t> env;
  for (std::size_t i = 0; i < inputs.size(); ++i) env[prog.inputs[i].name] = inputs[i] & mask_bits(n);
  std::vector<std::uint64_t> args;
  for (const auto& e : prog.exprs) {
    args.clear();
    for (const auto& a : e.args) args.push_back(env.at(a));
    env[e.dest] = eval_prim(e.op, args, e.imm, e.is_signed, n);
  }
  return env;
}

std::vector<std::uint64_t> interpret(const FlatProgram& prog,
                                     const std::vector<std::uint64_t>& inputs) {
  auto env = interpret_all(prog, inputs);
  std::vector<std::uint64_t> out;
  for (const auto& b : prog.bindings) out.push_back(env.at(b.source));
  return out;
}

}  // namespace vcc::frontend
