// Copyright 2026 the svesim authors.
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
//
// Two-pass assembler for the textual dialect:
//   line := [label ':'] [instruction] ['//' comment]
// Pass 1 collects labels, pass 2 parses and validates instructions.
// On any error a diagnostic list is produced and no Program is built.

#ifndef SVESIM_CORE_ASSEMBLER_HPP
#define SVESIM_CORE_ASSEMBLER_HPP

#include <optional>
#include <string>
#include <vector>

#include "program.hpp"

namespace svesim {

struct AssembleResult {
  std::optional<Program> program;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return program.has_value(); }
};

AssembleResult assemble(const std::string& source);

/// Canonical round-trippable text for one instruction.
std::string formatInstruction(const Instruction& instr);

/// Whole program, with labels and directives, such that
/// assemble(formatProgram(p)) is structurally equal to p.
std::string formatProgram(const Program& program);

}  // namespace svesim

#endif  // SVESIM_CORE_ASSEMBLER_HPP
