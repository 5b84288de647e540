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

#pragma once

#include <map>
#include <string>
#include <vector>

#include "vcc/error.hpp"

namespace vcc::frontend {

struct SourceFile {
  std::string path;
  std::string text;
};

// A contract as handed over by the client: files[0] is the main translation
// unit, the others are only reachable through #include.
struct SourceUnit {
  std::vector<SourceFile> files;
  std::string entry_name = "contract";
};

// Result of preprocessing. origins[i] is where line i+1 of `text` came from.
struct MergedSource {
  std::string text;
  std::vector<SourceLocation> origins;
  std::string entry_name = "contract";

  SourceLocation locate(std::uint32_t merged_line) const;
};

using Defines = std::map<std::string, std::string>;

inline constexpr int kMaxMacroDepth = 64;

// Inlines #include, substitutes #define macros (object- and function-like),
// resolves #ifdef/#ifndef/#else/#endif and drops every directive line.
// <stdbool.h> and <stdint.h> resolve to built-in headers. Text outside
// directives is copied byte for byte unless a macro name occurs in it.
MergedSource preprocess(const SourceUnit& unit, const Defines& defines = {});

}  // namespace vcc::frontend
