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

#include <cctype>
#include <map>
#include <set>

#include "vcc/error.hpp"
#include "vcc/frontend/ast.hpp"

namespace vcc::frontend {

namespace {

enum class Tok { Ident, Number, Punct, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::uint64_t value = 0;
  bool is_unsigned = false;
  std::uint32_t line = 0;
};

[[noreturn]] void fail(ErrorCode code, const std::string& msg, std::uint32_t line) {
  throw Error(code, msg, SourceLocation{"", line});
}

const char* const kPuncts[] = {
    "<<=", ">>=", "...", "->", "++", "--", "<<", ">>", "<=", ">=", "==", "!=", "&&",
    "||",  "+=",  "-=",  "*=", "/=", "%=", "&=", "|=", "^=", "+",  "-",  "*",  "/",
    "%",   "<",   ">",   "=",  "!",  "~",  "&",  "|",  "^",  "?",  ":",  ";",  ",",
    ".",   "(",   ")",   "[",  "]",  "{",  "}"};

std::vector<Token> lex(const std::string& s) {
  std::vector<Token> out;
  std::uint32_t line = 1;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (c == '\n') {
      ++line;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '/' && i + 1 < s.size() && s[i + 1] == '/') {
      while (i < s.size() && s[i] != '\n') ++i;
      continue;
    }
    if (c == '/' && i + 1 < s.size() && s[i + 1] == '*') {
      std::size_t end = s.find("*/", i + 2);
      if (end == std::string::npos) fail(ErrorCode::SyntaxError, "unterminated comment", line);
      for (std::size_t k = i; k < end; ++k) line += s[k] == '\n';
      i = end + 2;
      continue;
    }
    Token t;
    t.line = line;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      t.kind = Tok::Ident;
      t.text = s.substr(i, j - i);
      i = j;
      out.push_back(std::move(t));
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '.')) ++j;
      std::string lit = s.substr(i, j - i);
      if (lit.find('.') != std::string::npos ||
          (lit.size() > 1 && lit.find_first_of("eE") != std::string::npos &&
           lit.rfind("0x", 0) != 0 && lit.rfind("0X", 0) != 0)) {
        fail(ErrorCode::UnsupportedConstruct, "floating-point literal '" + lit + "'", line);
      }
      std::size_t end = lit.size();
      while (end > 0 && (lit[end - 1] == 'u' || lit[end - 1] == 'U' || lit[end - 1] == 'l' ||
                         lit[end - 1] == 'L')) {
        if (lit[end - 1] == 'u' || lit[end - 1] == 'U') t.is_unsigned = true;
        --end;
      }
      std::string digits = lit.substr(0, end);
      int base = 10;
      std::size_t start = 0;
      if (digits.size() > 2 && digits[0] == '0' && (digits[1] == 'x' || digits[1] == 'X')) {
        base = 16;
        start = 2;
      } else if (digits.size() > 2 && digits[0] == '0' && (digits[1] == 'b' || digits[1] == 'B')) {
        base = 2;
        start = 2;
      } else if (digits.size() > 1 && digits[0] == '0') {
        base = 8;
        start = 1;
      }
      std::uint64_t v = 0;
      for (std::size_t k = start; k < digits.size(); ++k) {
        char d = static_cast<char>(std::tolower(static_cast<unsigned char>(digits[k])));
        int dv = std::isdigit(static_cast<unsigned char>(d)) ? d - '0'
                 : (d >= 'a' && d <= 'f')                   ? d - 'a' + 10
                                                            : 99;
        if (dv >= base) fail(ErrorCode::SyntaxError, "malformed number '" + lit + "'", line);
        v = v * static_cast<std::uint64_t>(base) + static_cast<std::uint64_t>(dv);
      }
      t.kind = Tok::Number;
      t.text = lit;
      t.value = v;
      i = j;
      out.push_back(std::move(t));
      continue;
    }
    if (c == '\'') {
      std::size_t j = i + 1;
      std::uint64_t v = 0;
      if (j < s.size() && s[j] == '\\') {
        ++j;
        char e = j < s.size() ? s[j] : '0';
        switch (e) {
          case 'n': v = '\n'; break;
          case 't': v = '\t'; break;
          case 'r': v = '\r'; break;
          case '0': v = 0; break;
          default: v = static_cast<unsigned char>(e); break;
        }
      } else if (j < s.size()) {
        v = static_cast<unsigned char>(s[j]);
      }
      ++j;
      if (j >= s.size() || s[j] != '\'') fail(ErrorCode::SyntaxError, "bad character literal", line);
      t.kind = Tok::Number;
      t.text = s.substr(i, j + 1 - i);
      t.value = v;
      i = j + 1;
      out.push_back(std::move(t));
      continue;
    }
    if (c == '"') fail(ErrorCode::UnsupportedConstruct, "string literals are not supported", line);
    bool matched = false;
    for (const char* p : kPuncts) {
      std::string_view pv(p);
      if (s.compare(i, pv.size(), pv) == 0) {
        t.kind = Tok::Punct;
        t.text = std::string(pv);
        i += pv.size();
        matched = true;
        break;
      }
    }
    if (!matched) fail(ErrorCode::SyntaxError, std::string("unexpected character '") + c + "'", line);
    out.push_back(std::move(t));
  }
  Token end;
  end.kind = Tok::End;
  end.line = line;
  out.push_back(end);
  return out;
}

const std::set<std::string> kTypeWords = {
    "void",    "int",      "unsigned", "signed",   "char",    "short",   "long",
    "_Bool",   "struct",   "const",    "volatile", "static",  "uint8_t", "uint16_t",
    "uint32_t", "uint64_t", "int8_t",  "int16_t",  "int32_t", "int64_t", "size_t",
    "inline",  "register", "extern"};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : t_(std::move(toks)) {}

  Program program() {
    Program prog;
    while (!at_end()) top_level(prog);
    return prog;
  }

 private:
  const Token& peek(std::size_t k = 0) const {
    return t_[std::min(pos_ + k, t_.size() - 1)];
  }
  bool at_end() const { return peek().kind == Tok::End; }
  bool is(const char* p, std::size_t k = 0) const {
    const Token& tk = peek(k);
    return (tk.kind == Tok::Punct || tk.kind == Tok::Ident) && tk.text == p;
  }
  Token next() { return t_[std::min(pos_++, t_.size() - 1)]; }
  bool accept(const char* p) {
    if (is(p)) {
      ++pos_;
      return true;
    }
    return false;
  }
  Token expect(const char* p) {
    if (!is(p)) {
      fail(ErrorCode::SyntaxError,
           std::string("expected '") + p + "' but found '" + describe(peek()) + "'", peek().line);
    }
    return next();
  }
  static std::string describe(const Token& tk) {
    return tk.kind == Tok::End ? std::string("end of input") : tk.text;
  }
  std::string ident() {
    if (peek().kind != Tok::Ident || kTypeWords.count(peek().text)) {
      fail(ErrorCode::SyntaxError, "expected identifier but found '" + describe(peek()) + "'",
           peek().line);
    }
    return next().text;
  }

  bool starts_type() const {
    const Token& tk = peek();
    if (tk.kind != Tok::Ident) return false;
    return kTypeWords.count(tk.text) != 0 || typedefs_.count(tk.text) != 0;
  }

  // Parses specifiers up to (not including) the declarator.
  TypeSpec type_spec() {
    TypeSpec ts;
    bool saw_unsigned = false, saw_signed = false, saw_int_word = false;
    bool saw_any = false;
    for (;;) {
      const Token& tk = peek();
      if (tk.kind != Tok::Ident) break;
      const std::string& w = tk.text;
      if (w == "const") {
        ts.is_const = true;
      } else if (w == "volatile" || w == "static" || w == "inline" || w == "register" ||
                 w == "extern") {
      } else if (w == "unsigned") {
        saw_unsigned = true;
      } else if (w == "signed") {
        saw_signed = true;
      } else if (w == "int" || w == "char" || w == "short" || w == "long") {
        saw_int_word = true;
      } else if (w == "void") {
        ts.base = TypeSpec::Base::Void;
      } else if (w == "_Bool") {
        ts.base = TypeSpec::Base::Bool;
        ts.is_signed = false;
      } else if (w.rfind("uint", 0) == 0 && w.size() > 4 && w.back() == 't') {
        saw_unsigned = true;
        saw_int_word = true;
      } else if (w == "size_t") {
        saw_unsigned = true;
        saw_int_word = true;
      } else if (w.rfind("int", 0) == 0 && w.back() == 't' && w.size() > 3) {
        saw_signed = true;
        saw_int_word = true;
      } else if (w == "struct") {
        next();
        ts.base = TypeSpec::Base::Struct;
        ts.struct_name = ident();
        saw_any = true;
        continue;
      } else if (!saw_any && !saw_unsigned && !saw_signed && !saw_int_word &&
                 typedefs_.count(w)) {
        TypeSpec alias = typedefs_.at(w);
        bool c = ts.is_const || alias.is_const;
        ts = alias;
        ts.is_const = c;
        next();
        saw_any = true;
        continue;
      } else {
        break;
      }
      saw_any = true;
      next();
    }
    if (!saw_any) {
      fail(ErrorCode::SyntaxError, "expected type but found '" + describe(peek()) + "'",
           peek().line);
    }
    if (ts.base == TypeSpec::Base::Int) ts.is_signed = !saw_unsigned;
    (void)saw_int_word;
    return ts;
  }

  // Declarator: pointer stars, name, array dims. Function declarators are
  // handled by the caller.
  std::string declarator(TypeSpec& ts, bool name_optional = false) {
    while (accept("*")) {
      if (ts.pointer) fail(ErrorCode::UnsupportedConstruct, "pointer to pointer", peek().line);
      ts.pointer = true;
      while (accept("const")) {
      }
    }
    std::string name;
    if (!name_optional || (peek().kind == Tok::Ident && !kTypeWords.count(peek().text))) {
      name = ident();
    }
    array_dims(ts);
    return name;
  }

  void array_dims(TypeSpec& ts) {
    while (accept("[")) {
      if (is("]")) {
        // Unsized dimension, allowed for parameters only: treated as pointer.
        next();
        if (ts.pointer) fail(ErrorCode::UnsupportedConstruct, "pointer to array", peek().line);
        ts.pointer = true;
        continue;
      }
      ts.dims.push_back(std::shared_ptr<Expr>(conditional().release()));
      expect("]");
    }
  }

  void top_level(Program& prog) {
    const std::uint32_t line = peek().line;
    if (accept(";")) return;
    if (accept("typedef")) {
      TypeSpec ts;
      if (is("struct") && peek(1).kind == Tok::Ident && (is("{", 2))) {
        next();
        std::string sname = ident();
        struct_body(prog, sname, line);
        ts.base = TypeSpec::Base::Struct;
        ts.struct_name = sname;
      } else if (is("struct") && is("{", 1)) {
        fail(ErrorCode::UnsupportedConstruct, "anonymous struct", line);
      } else {
        ts = type_spec();
      }
      std::string name = declarator(ts);
      expect(";");
      typedefs_[name] = ts;
      return;
    }
    if (is("struct") && peek(1).kind == Tok::Ident && is("{", 2)) {
      next();
      std::string sname = ident();
      struct_body(prog, sname, line);
      if (accept(";")) return;
      TypeSpec ts;
      ts.base = TypeSpec::Base::Struct;
      ts.struct_name = sname;
      global_decls(prog, ts, line);
      return;
    }
    TypeSpec base = type_spec();
    TypeSpec ts = base;
    while (accept("*")) ts.pointer = true;
    const std::uint32_t name_line = peek().line;
    std::string name = ident();
    if (accept("(")) {
      FunctionDef fn;
      fn.ret = ts;
      fn.name = name;
      fn.line = name_line;
      if (!(is("void") && is(")", 1)) && !is(")")) {
        do {
          Param p;
          p.line = peek().line;
          p.type = type_spec();
          p.name = declarator(p.type, true);
          fn.params.push_back(std::move(p));
        } while (accept(","));
      } else if (is("void")) {
        next();
      }
      expect(")");
      if (accept(";")) {
        prog.functions.push_back(std::move(fn));
        return;
      }
      fn.body = block();
      prog.functions.push_back(std::move(fn));
      return;
    }
    array_dims(ts);
    VarDecl d;
    d.type = ts;
    d.name = name;
    d.line = name_line;
    if (accept("=")) d.init = initializer();
    prog.globals.push_back(std::move(d));
    while (accept(",")) {
      VarDecl more;
      more.type = base;
      more.line = peek().line;
      more.name = declarator(more.type);
      if (accept("=")) more.init = initializer();
      prog.globals.push_back(std::move(more));
    }
    expect(";");
  }

  void global_decls(Program& prog, const TypeSpec& base, std::uint32_t) {
    do {
      VarDecl d;
      d.type = base;
      d.line = peek().line;
      d.name = declarator(d.type);
      if (accept("=")) d.init = initializer();
      prog.globals.push_back(std::move(d));
    } while (accept(","));
    expect(";");
  }

  void struct_body(Program& prog, const std::string& name, std::uint32_t line) {
    StructDef sd;
    sd.name = name;
    sd.line = line;
    expect("{");
    while (!accept("}")) {
      TypeSpec base = type_spec();
      do {
        Field f;
        f.type = base;
        f.line = peek().line;
        f.name = declarator(f.type);
        sd.fields.push_back(std::move(f));
      } while (accept(","));
      expect(";");
    }
    prog.structs.push_back(std::move(sd));
  }

  ExprPtr initializer() {
    if (is("{")) {
      auto e = std::make_unique<Expr>();
      e->kind = ExprKind::InitList;
      e->line = next().line;
      if (!is("}")) {
        do {
          if (is("}")) break;
          e->kids.push_back(initializer());
        } while (accept(","));
      }
      expect("}");
      return e;
    }
    return assignment();
  }

  StmtPtr block() {
    auto s = std::make_unique<Stmt>();
    s->kind = StmtKind::Block;
    s->line = expect("{").line;
    while (!accept("}")) {
      if (at_end()) fail(ErrorCode::SyntaxError, "unterminated block", s->line);
      s->stmts.push_back(statement());
    }
    return s;
  }

  StmtPtr declaration() {
    auto s = std::make_unique<Stmt>();
    s->kind = StmtKind::Decl;
    s->line = peek().line;
    if (is("struct") && peek(1).kind == Tok::Ident && is("{", 2)) {
      fail(ErrorCode::UnsupportedConstruct, "local struct definitions", s->line);
    }
    TypeSpec base = type_spec();
    do {
      VarDecl d;
      d.type = base;
      d.line = peek().line;
      d.name = declarator(d.type);
      if (accept("=")) d.init = initializer();
      s->decls.push_back(std::move(d));
    } while (accept(","));
    expect(";");
    return s;
  }

  StmtPtr statement() {
    const std::uint32_t line = peek().line;
    auto s = std::make_unique<Stmt>();
    s->line = line;
    if (is("{")) return block();
    if (accept(";")) {
      s->kind = StmtKind::Empty;
      return s;
    }
    if (accept("if")) {
      s->kind = StmtKind::If;
      expect("(");
      s->expr = expression();
      expect(")");
      s->body = statement();
      if (accept("else")) s->other = statement();
      return s;
    }
    if (accept("while")) {
      s->kind = StmtKind::While;
      expect("(");
      s->expr = expression();
      expect(")");
      s->body = statement();
      return s;
    }
    if (accept("do")) {
      s->kind = StmtKind::DoWhile;
      s->body = statement();
      expect("while");
      expect("(");
      s->expr = expression();
      expect(")");
      expect(";");
      return s;
    }
    if (accept("for")) {
      s->kind = StmtKind::For;
      expect("(");
      if (starts_type()) {
        s->init = declaration();
      } else if (!accept(";")) {
        auto init = std::make_unique<Stmt>();
        init->kind = StmtKind::Expr;
        init->line = peek().line;
        init->expr = expression();
        expect(";");
        s->init = std::move(init);
      }
      if (!is(";")) s->expr = expression();
      expect(";");
      if (!is(")")) s->step = expression();
      expect(")");
      s->body = statement();
      return s;
    }
    if (accept("return")) {
      s->kind = StmtKind::Return;
      if (!is(";")) s->expr = expression();
      expect(";");
      return s;
    }
    if (accept("break")) {
      s->kind = StmtKind::Break;
      expect(";");
      return s;
    }
    if (accept("continue")) {
      s->kind = StmtKind::Continue;
      expect(";");
      return s;
    }
    if (is("goto") || is("switch") || is("case") || is("default")) {
      fail(ErrorCode::UnsupportedConstruct, "'" + peek().text + "' statements", line);
    }
    if (starts_type()) return declaration();
    s->kind = StmtKind::Expr;
    s->expr = expression();
    expect(";");
    return s;
  }

  ExprPtr make(ExprKind k, std::uint32_t line, std::string op = {}) {
    auto e = std::make_unique<Expr>();
    e->kind = k;
    e->line = line;
    e->op = std::move(op);
    return e;
  }

  ExprPtr expression() {
    ExprPtr e = assignment();
    while (is(",")) {
      auto c = make(ExprKind::Comma, next().line, ",");
      c->kids.push_back(std::move(e));
      c->kids.push_back(assignment());
      e = std::move(c);
    }
    return e;
  }

  ExprPtr assignment() {
    ExprPtr lhs = conditional();
    static const char* const kAssign[] = {"=",  "+=", "-=", "*=",  "/=",  "%=",
                                          "&=", "|=", "^=", "<<=", ">>="};
    for (const char* op : kAssign) {
      if (is(op)) {
        auto a = make(ExprKind::Assign, next().line, op);
        a->kids.push_back(std::move(lhs));
        a->kids.push_back(assignment());
        return a;
      }
    }
    return lhs;
  }

  ExprPtr conditional() {
    ExprPtr c = binary(0);
    if (is("?")) {
      auto t = make(ExprKind::Ternary, next().line, "?");
      t->kids.push_back(std::move(c));
      t->kids.push_back(expression());
      expect(":");
      t->kids.push_back(conditional());
      return t;
    }
    return c;
  }

  static int precedence(const std::string& op) {
    static const std::map<std::string, int> kPrec = {
        {"||", 1}, {"&&", 2}, {"|", 3},  {"^", 4},  {"&", 5},  {"==", 6}, {"!=", 6},
        {"<", 7},  {">", 7},  {"<=", 7}, {">=", 7}, {"<<", 8}, {">>", 8}, {"+", 9},
        {"-", 9},  {"*", 10}, {"/", 10}, {"%", 10}};
    auto it = kPrec.find(op);
    return it == kPrec.end() ? -1 : it->second;
  }

  ExprPtr binary(int min_prec) {
    ExprPtr lhs = unary();
    for (;;) {
      const Token& tk = peek();
      if (tk.kind != Tok::Punct) break;
      int prec = precedence(tk.text);
      if (prec < 0 || prec < min_prec) break;
      Token op = next();
      ExprPtr rhs = binary(prec + 1);
      auto b = make(ExprKind::Binary, op.line, op.text);
      b->kids.push_back(std::move(lhs));
      b->kids.push_back(std::move(rhs));
      lhs = std::move(b);
    }
    return lhs;
  }

  bool cast_ahead() const {
    if (!is("(")) return false;
    const Token& tk = peek(1);
    return tk.kind == Tok::Ident && (kTypeWords.count(tk.text) || typedefs_.count(tk.text));
  }

  TypeSpec type_name() {
    TypeSpec ts = type_spec();
    while (accept("*")) ts.pointer = true;
    array_dims(ts);
    return ts;
  }

  ExprPtr unary() {
    const std::uint32_t line = peek().line;
    if (is("++") || is("--")) {
      auto e = make(next().text == "++" ? ExprKind::PreInc : ExprKind::PreDec, line);
      e->kids.push_back(unary());
      return e;
    }
    if (is("-") || is("+") || is("!") || is("~") || is("*") || is("&")) {
      auto e = make(ExprKind::Unary, line, next().text);
      e->kids.push_back(unary());
      return e;
    }
    if (accept("sizeof")) {
      if (cast_ahead()) {
        next();
        auto e = make(ExprKind::SizeofType, line);
        e->type = type_name();
        expect(")");
        return e;
      }
      auto e = make(ExprKind::SizeofExpr, line);
      e->kids.push_back(unary());
      return e;
    }
    if (cast_ahead()) {
      next();
      auto e = make(ExprKind::Cast, line);
      e->type = type_name();
      expect(")");
      e->kids.push_back(unary());
      return e;
    }
    return postfix();
  }

  ExprPtr postfix() {
    ExprPtr e = primary();
    for (;;) {
      const std::uint32_t line = peek().line;
      if (accept("[")) {
        auto ix = make(ExprKind::Index, line);
        ix->kids.push_back(std::move(e));
        ix->kids.push_back(expression());
        expect("]");
        e = std::move(ix);
      } else if (is(".") || is("->")) {
        auto m = make(ExprKind::Member, line);
        m->arrow = next().text == "->";
        m->name = ident();
        m->kids.push_back(std::move(e));
        e = std::move(m);
      } else if (accept("(")) {
        if (e->kind != ExprKind::Ident) {
          fail(ErrorCode::UnsupportedConstruct, "indirect function call", line);
        }
        auto c = make(ExprKind::Call, line);
        c->name = e->name;
        if (!is(")")) {
          do {
            c->kids.push_back(assignment());
          } while (accept(","));
        }
        expect(")");
        e = std::move(c);
      } else if (is("++") || is("--")) {
        auto p = make(next().text == "++" ? ExprKind::PostInc : ExprKind::PostDec, line);
        p->kids.push_back(std::move(e));
        e = std::move(p);
      } else {
        break;
      }
    }
    return e;
  }

  ExprPtr primary() {
    const Token& tk = peek();
    if (tk.kind == Tok::Number) {
      Token n = next();
      auto e = make(ExprKind::IntLit, n.line);
      e->value = n.value;
      e->lit_unsigned = n.is_unsigned;
      e->name = n.text;
      return e;
    }
    if (tk.kind == Tok::Ident && !kTypeWords.count(tk.text)) {
      if (tk.text == "goto" || tk.text == "switch") {
        fail(ErrorCode::UnsupportedConstruct, "'" + tk.text + "'", tk.line);
      }
      Token id = next();
      auto e = make(ExprKind::Ident, id.line);
      e->name = id.text;
      return e;
    }
    if (accept("(")) {
      ExprPtr e = expression();
      expect(")");
      return e;
    }
    fail(ErrorCode::SyntaxError, "unexpected '" + describe(tk) + "' in expression", tk.line);
  }

  std::vector<Token> t_;
  std::size_t pos_ = 0;
  std::map<std::string, TypeSpec> typedefs_;
};

}  // namespace

Program parse_program(const std::string& text) {
  return Parser(lex(text)).program();
}

}  // namespace vcc::frontend
