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

#include "vcc/error.hpp"

namespace vcc {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnresolvedInclude: return "UnresolvedInclude";
    case ErrorCode::UnbalancedConditional: return "UnbalancedConditional";
    case ErrorCode::RecursiveMacro: return "RecursiveMacro";
    case ErrorCode::UnsupportedDirective: return "UnsupportedDirective";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::DuplicateSymbol: return "DuplicateSymbol";
    case ErrorCode::UndefinedSymbol: return "UndefinedSymbol";
    case ErrorCode::MissingEntryPoint: return "MissingEntryPoint";
    case ErrorCode::EntrySignatureMismatch: return "EntrySignatureMismatch";
    case ErrorCode::DynamicIndex: return "DynamicIndex";
    case ErrorCode::UnboundedLoop: return "UnboundedLoop";
    case ErrorCode::UnsupportedConstruct: return "UnsupportedConstruct";
    case ErrorCode::TypeError: return "TypeError";
    case ErrorCode::FieldTooSmall: return "FieldTooSmall";
    case ErrorCode::UnsupportedOp: return "UnsupportedOp";
    case ErrorCode::WidthMismatch: return "WidthMismatch";
    case ErrorCode::NoInputWire: return "NoInputWire";
    case ErrorCode::MissingInput: return "MissingInput";
    case ErrorCode::ValueOutOfRange: return "ValueOutOfRange";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidCircuit: return "InvalidCircuit";
    case ErrorCode::TooManyVariables: return "TooManyVariables";
    case ErrorCode::EmptyChart: return "EmptyChart";
    case ErrorCode::DuplicateAbscissa: return "DuplicateAbscissa";
    case ErrorCode::NoMultiplicationGates: return "NoMultiplicationGates";
    case ErrorCode::InconsistentAssignment: return "InconsistentAssignment";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotDivisible: return "NotDivisible";
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::InvalidWitness: return "InvalidWitness";
    case ErrorCode::MalformedProof: return "MalformedProof";
    case ErrorCode::ScriptTooLarge: return "ScriptTooLarge";
    case ErrorCode::PushTooLarge: return "PushTooLarge";
    case ErrorCode::StackUnderflow: return "StackUnderflow";
    case ErrorCode::DeserializeError: return "DeserializeError";
    case ErrorCode::InvalidTransaction: return "InvalidTransaction";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

std::string SourceLocation::str() const {
  if (line == 0) return file;
  return file + ":" + std::to_string(line);
}

namespace {

std::string decorate(ErrorCode code, const std::string& message,
                     const SourceLocation& where) {
  std::string out;
  if (!where.file.empty() || where.line != 0) out = where.str() + ": ";
  out += std::string(to_string(code));
  out += ": ";
  out += message;
  return out;
}

}  // namespace

Error::Error(ErrorCode code, const std::string& message)
    : Error(code, message, SourceLocation{}) {}

Error::Error(ErrorCode code, const std::string& message, SourceLocation where)
    : std::runtime_error(decorate(code, message, where)),
      code_(code),
      where_(std::move(where)) {}

}  // namespace vcc
