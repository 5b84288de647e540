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

#include <algorithm>
#include <cctype>
#include <optional>
#include <string_view>

#include "vcc/frontend/source.hpp"

namespace vcc::frontend {

SourceLocation MergedSource::locate(std::uint32_t merged_line) const {
  if (merged_line == 0 || merged_line > origins.size()) return {};
  return origins[merged_line - 1];
}

namespace {

constexpr int kMaxIncludeDepth = 64;

const SourceFile kStdbool{"<stdbool.h>",
                          "#define bool _Bool\n#define true 1\n#define false 0\n"};
const SourceFile kStdint{"<stdint.h>", ""};

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string::npos) {
      lines.emplace_back(text.substr(start));
      break;
    }
    lines.emplace_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  return lines;
}

std::string basename(std::string_view path) {
  auto slash = path.find_last_of('/');
  return std::string(slash == std::string_view::npos ? path : path.substr(slash + 1));
}

std::string dirname(std::string_view path) {
  auto slash = path.find_last_of('/');
  return slash == std::string_view::npos ? std::string() : std::string(path.substr(0, slash + 1));
}

// Removes comments from a directive line; string literals are kept intact.
std::string strip_comments(std::string_view s, bool& in_comment) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (in_comment) {
      if (s[i] == '*' && i + 1 < s.size() && s[i + 1] == '/') {
        in_comment = false;
        ++i;
        out += ' ';
      }
      continue;
    }
    if (s[i] == '/' && i + 1 < s.size() && s[i + 1] == '/') break;
    if (s[i] == '/' && i + 1 < s.size() && s[i + 1] == '*') {
      in_comment = true;
      ++i;
      continue;
    }
    if (s[i] == '"' || s[i] == '\'') {
      char q = s[i];
      out += s[i];
      for (++i; i < s.size(); ++i) {
        out += s[i];
        if (s[i] == '\\' && i + 1 < s.size()) {
          out += s[++i];
        } else if (s[i] == q) {
          break;
        }
      }
      continue;
    }
    out += s[i];
  }
  return out;
}

// Advances the block-comment state over a line that is not otherwise used.
void track_comments(std::string_view s, bool& in_comment) {
  (void)strip_comments(s, in_comment);
}

struct Macro {
  bool function_like = false;
  std::vector<std::string> params;
  std::string body;
};

struct Conditional {
  bool parent_active;
  bool taken;
  bool seen_else;
  std::uint32_t line;
};

class Preprocessor {
 public:
  explicit Preprocessor(const SourceUnit& unit) : unit_(unit) {}

  MergedSource run(const Defines& defines) {
    if (unit_.files.empty()) {
      throw Error(ErrorCode::UnresolvedInclude, "source unit has no files");
    }
    for (const auto& [name, value] : defines) {
      macros_[name] = Macro{false, {}, value};
    }
    process(unit_.files.front(), 0);
    MergedSource merged;
    merged.entry_name = unit_.entry_name;
    for (std::size_t i = 0; i < lines_.size(); ++i) {
      if (i) merged.text += '\n';
      merged.text += lines_[i];
    }
    const std::string& main_text = unit_.files.front().text;
    if (!lines_.empty() && (main_text.empty() || main_text.back() == '\n' ||
                            lines_.size() != main_line_count_)) {
      merged.text += '\n';
    }
    merged.origins = std::move(origins_);
    return merged;
  }

 private:
  const SourceFile* resolve(std::string_view target, bool system,
                            const SourceFile& from) const {
    if (system || target == "stdbool.h" || target == "stdint.h") {
      if (target == "stdbool.h") return &kStdbool;
      if (target == "stdint.h") return &kStdint;
    }
    const std::string relative = dirname(from.path) + std::string(target);
    for (const auto& f : unit_.files) {
      if (f.path == target || f.path == relative) return &f;
    }
    for (const auto& f : unit_.files) {
      if (basename(f.path) == basename(target)) return &f;
    }
    return nullptr;
  }

  bool active() const {
    return std::all_of(cond_.begin(), cond_.end(),
                       [](const Conditional& c) { return c.taken; });
  }

  void process(const SourceFile& file, int depth) {
    if (depth > kMaxIncludeDepth) {
      throw Error(ErrorCode::UnresolvedInclude, "include nesting too deep",
                  {file.path, 0});
    }
    auto lines = split_lines(file.text);
    if (depth == 0) main_line_count_ = 0;
    const std::size_t cond_base = cond_.size();
    bool in_comment = false;

    for (std::size_t i = 0; i < lines.size(); ++i) {
      const auto line_no = static_cast<std::uint32_t>(i + 1);
      SourceLocation where{file.path, line_no};
      std::string_view raw = lines[i];
      std::string_view head = trim(raw);
      const bool directive = !in_comment && !head.empty() && head.front() == '#';
      if (!directive) {
        if (!active()) {
          track_comments(raw, in_comment);
          continue;
        }
        emit(expand(raw, 0, in_comment, where), where, depth);
        continue;
      }
      // Join backslash continuations.
      std::string text(raw);
      while (!text.empty() && (text.back() == '\\' || (text.back() == '\r' && text.size() > 1 &&
                                                      text[text.size() - 2] == '\\')) &&
             i + 1 < lines.size()) {
        while (text.back() != '\\') text.pop_back();
        text.pop_back();
        text += lines[++i];
      }
      bool dir_comment = false;
      std::string clean = strip_comments(text, dir_comment);
      in_comment = dir_comment;
      directive_line(file, clean, where, depth, cond_base);
    }
    if (cond_.size() != cond_base) {
      throw Error(ErrorCode::UnbalancedConditional, "missing #endif",
                  {file.path, cond_.back().line});
    }
  }

  void emit(std::string line, const SourceLocation& where, int depth) {
    lines_.push_back(std::move(line));
    origins_.push_back(where);
    if (depth == 0) ++main_line_count_;
  }

  void directive_line(const SourceFile& file, std::string_view text,
                      const SourceLocation& where, int depth, std::size_t cond_base) {
    std::string_view rest = trim(text);
    rest.remove_prefix(1);  // '#'
    rest = trim(rest);
    std::size_t n = 0;
    while (n < rest.size() && ident_char(rest[n])) ++n;
    std::string name(rest.substr(0, n));
    std::string_view arg = trim(rest.substr(n));

    auto ident_arg = [&]() {
      std::size_t k = 0;
      while (k < arg.size() && ident_char(arg[k])) ++k;
      if (k == 0 || !ident_start(arg[0]) || !trim(arg.substr(k)).empty()) {
        throw Error(ErrorCode::SyntaxError, "#" + name + " expects one identifier", where);
      }
      return std::string(arg.substr(0, k));
    };

    if (name == "ifdef" || name == "ifndef") {
      const bool parent = active();
      const bool defined = macros_.count(ident_arg()) != 0;
      cond_.push_back({parent, parent && (name == "ifdef" ? defined : !defined), false,
                       where.line});
      return;
    }
    if (name == "else") {
      if (cond_.size() <= cond_base || cond_.back().seen_else) {
        throw Error(ErrorCode::UnbalancedConditional, "#else without #ifdef", where);
      }
      auto& c = cond_.back();
      c.seen_else = true;
      // `taken` holds whether the if-branch was active; flip it relative to parent.
      c.taken = c.parent_active && !c.taken;
      return;
    }
    if (name == "endif") {
      if (cond_.size() <= cond_base) {
        throw Error(ErrorCode::UnbalancedConditional, "#endif without #ifdef", where);
      }
      cond_.pop_back();
      return;
    }
    if (name == "if" || name == "elif") {
      throw Error(ErrorCode::UnsupportedDirective, "#" + name + " is not supported", where);
    }
    if (!active()) return;

    if (name == "include") {
      if (arg.size() < 2 || !((arg.front() == '"' && arg.back() == '"') ||
                              (arg.front() == '<' && arg.back() == '>'))) {
        throw Error(ErrorCode::SyntaxError, "malformed #include", where);
      }
      std::string_view target = arg.substr(1, arg.size() - 2);
      const SourceFile* inc = resolve(target, arg.front() == '<', file);
      if (!inc) {
        throw Error(ErrorCode::UnresolvedInclude,
                    "cannot resolve include '" + std::string(target) + "'", where);
      }
      process(*inc, depth + 1);
      return;
    }
    if (name == "define") {
      std::size_t k = 0;
      while (k < arg.size() && ident_char(arg[k])) ++k;
      if (k == 0 || !ident_start(arg[0])) {
        throw Error(ErrorCode::SyntaxError, "#define expects a name", where);
      }
      Macro m;
      std::string mname(arg.substr(0, k));
      std::string_view tail = arg.substr(k);
      if (!tail.empty() && tail.front() == '(') {
        m.function_like = true;
        auto close = tail.find(')');
        if (close == std::string_view::npos) {
          throw Error(ErrorCode::SyntaxError, "unterminated macro parameter list", where);
        }
        std::string_view params = tail.substr(1, close - 1);
        std::size_t pos = 0;
        while (pos <= params.size()) {
          auto comma = params.find(',', pos);
          auto p = trim(params.substr(pos, comma == std::string_view::npos ? std::string_view::npos
                                                                          : comma - pos));
          if (!p.empty()) m.params.emplace_back(p);
          if (comma == std::string_view::npos) break;
          pos = comma + 1;
        }
        tail = tail.substr(close + 1);
      }
      m.body = std::string(trim(tail));
      macros_[mname] = std::move(m);
      return;
    }
    if (name == "undef") {
      macros_.erase(ident_arg());
      return;
    }
    if (name == "pragma") return;
    if (name == "error") {
      throw Error(ErrorCode::SyntaxError, "#error " + std::string(arg), where);
    }
    throw Error(ErrorCode::UnsupportedDirective, "unknown directive #" + name, where);
  }

  static std::optional<std::vector<std::string>> collect_args(std::string_view s,
                                                               std::size_t& pos) {
    std::size_t p = pos;
    while (p < s.size() && std::isspace(static_cast<unsigned char>(s[p]))) ++p;
    if (p >= s.size() || s[p] != '(') return std::nullopt;
    ++p;
    std::vector<std::string> args;
    std::string cur;
    int nest = 0;
    for (; p < s.size(); ++p) {
      char c = s[p];
      if (c == '"' || c == '\'') {
        char q = c;
        cur += c;
        for (++p; p < s.size(); ++p) {
          cur += s[p];
          if (s[p] == '\\' && p + 1 < s.size()) {
            cur += s[++p];
          } else if (s[p] == q) {
            break;
          }
        }
        continue;
      }
      if (c == '(') ++nest;
      if (c == ')') {
        if (nest == 0) {
          args.emplace_back(trim(cur));
          pos = p + 1;
          if (args.size() == 1 && args[0].empty()) args.clear();
          return args;
        }
        --nest;
      }
      if (c == ',' && nest == 0) {
        args.emplace_back(trim(cur));
        cur.clear();
        continue;
      }
      cur += c;
    }
    return std::nullopt;
  }

  static std::string substitute(const Macro& m, const std::vector<std::string>& args) {
    std::string out;
    const std::string& b = m.body;
    for (std::size_t i = 0; i < b.size();) {
      if (ident_start(b[i])) {
        std::size_t j = i;
        while (j < b.size() && ident_char(b[j])) ++j;
        std::string_view id(b.data() + i, j - i);
        auto it = std::find(m.params.begin(), m.params.end(), id);
        if (it != m.params.end()) {
          out += args[static_cast<std::size_t>(it - m.params.begin())];
        } else {
          out.append(id);
        }
        i = j;
      } else {
        out += b[i++];
      }
    }
    return out;
  }

  std::string expand(std::string_view s, int depth, bool& in_comment,
                     const SourceLocation& where) const {
    if (depth > kMaxMacroDepth) {
      throw Error(ErrorCode::RecursiveMacro,
                  "macro expansion deeper than " + std::to_string(kMaxMacroDepth), where);
    }
    std::string out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size();) {
      char c = s[i];
      if (in_comment) {
        out += c;
        if (c == '*' && i + 1 < s.size() && s[i + 1] == '/') {
          out += '/';
          in_comment = false;
          i += 2;
        } else {
          ++i;
        }
        continue;
      }
      if (c == '/' && i + 1 < s.size() && s[i + 1] == '/') {
        out.append(s.substr(i));
        break;
      }
      if (c == '/' && i + 1 < s.size() && s[i + 1] == '*') {
        out += "/*";
        in_comment = true;
        i += 2;
        continue;
      }
      if (c == '"' || c == '\'') {
        std::size_t j = i + 1;
        while (j < s.size() && s[j] != c) j += (s[j] == '\\') ? 2 : 1;
        j = std::min(j + 1, s.size());
        out.append(s.substr(i, j - i));
        i = j;
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        // Numbers such as 10u must not expose their suffix as an identifier.
        std::size_t j = i;
        while (j < s.size() && ident_char(s[j])) ++j;
        out.append(s.substr(i, j - i));
        i = j;
        continue;
      }
      if (!ident_start(c)) {
        out += c;
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < s.size() && ident_char(s[j])) ++j;
      std::string id(s.substr(i, j - i));
      auto it = macros_.find(id);
      if (it == macros_.end()) {
        out += id;
        i = j;
        continue;
      }
      const Macro& m = it->second;
      bool nested_comment = false;
      if (!m.function_like) {
        out += expand(m.body, depth + 1, nested_comment, where);
        i = j;
        continue;
      }
      std::size_t after = j;
      auto args = collect_args(s, after);
      if (!args) {
        out += id;  // function-like macro name without call parens
        i = j;
        continue;
      }
      if (args->size() != m.params.size()) {
        throw Error(ErrorCode::SyntaxError,
                    "macro '" + id + "' expects " + std::to_string(m.params.size()) +
                        " arguments",
                    where);
      }
      for (auto& a : *args) a = expand(a, depth + 1, nested_comment, where);
      out += expand(substitute(m, *args), depth + 1, nested_comment, where);
      i = after;
    }
    return out;
  }

  const SourceUnit& unit_;
  std::map<std::string, Macro> macros_;
  std::vector<Conditional> cond_;
  std::vector<std::string> lines_;
  std::vector<SourceLocation> origins_;
  std::size_t main_line_count_ = 0;
};

}  // namespace

MergedSource preprocess(const SourceUnit& unit, const Defines& defines) {
  return Preprocessor(unit).run(defines);
}

}  // namespace vcc::frontend
