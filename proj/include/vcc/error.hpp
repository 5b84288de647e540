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

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace vcc {

enum class ErrorCode {
  // frontend
  UnresolvedInclude,
  UnbalancedConditional,
  RecursiveMacro,
  UnsupportedDirective,
  SyntaxError,
  DuplicateSymbol,
  UndefinedSymbol,
  MissingEntryPoint,
  EntrySignatureMismatch,
  DynamicIndex,
  UnboundedLoop,
  UnsupportedConstruct,
  TypeError,
  // circuit
  FieldTooSmall,
  UnsupportedOp,
  WidthMismatch,
  NoInputWire,
  MissingInput,
  ValueOutOfRange,
  ParseError,
  InvalidCircuit,
  // minimizer
  TooManyVariables,
  EmptyChart,
  // qap
  DuplicateAbscissa,
  NoMultiplicationGates,
  InconsistentAssignment,
  DimensionMismatch,
  NotDivisible,
  // crypto
  NotPrime,
  InvalidWitness,
  MalformedProof,
  // chain
  ScriptTooLarge,
  PushTooLarge,
  StackUnderflow,
  DeserializeError,
  InvalidTransaction,
  // pipeline
  InvalidConfig,
  Io,
};

std::string_view to_string(ErrorCode code);

// Source position attached to frontend diagnostics. line == 0 means unknown.
struct SourceLocation {
  std::string file;
  std::uint32_t line = 0;

  std::string str() const;
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);
  Error(ErrorCode code, const std::string& message, SourceLocation where);

  ErrorCode code() const noexcept { return code_; }
  const SourceLocation& where() const noexcept { return where_; }

 private:
  ErrorCode code_;
  SourceLocation where_;
};

}  // namespace vcc
