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

#ifndef SVESIM_CORE_PROGRAM_HPP
#define SVESIM_CORE_PROGRAM_HPP

#include <map>
#include <string>
#include <vector>

#include "flags.hpp"
#include "predicates.hpp"
#include "types.hpp"
#include "vectors.hpp"

namespace svesim {

enum class Op {
  // Scalar subset
  MovXImm, MovXReg, LdrX, LdrD, StrX, StrD, Ldrsw, Ldrb, Adr,
  AddImm, AddReg, SubImm, SubReg, CmpImm, CmpReg, Fmadd,
  Cbz, Cbnz, B, BCond, Ret,
  // Predicate instructions
  Ptrue, Pfalse, Whilelt, Pnext, Brk, CmpeqImm, PredLogical, Cterm,
  Setffr, Rdffr, Incp,
  // Vector instructions
  IncScalar, DupImm, Cpy, Index, Elementwise, Fmla, Reduce, Fadda,
  Movprfx, Umov,
  // Vector memory
  Ld1, St1, Ld1R, Ldff1,
};

struct AddrExpr {
  enum class Kind { Base, BaseImm, BaseRegLsl, VecImm };
  Kind kind = Kind::Base;
  uint8_t base = 0;   // X register (or Z register for VecImm)
  uint8_t index = 0;  // X register for BaseRegLsl
  uint8_t shift = 0;
  int64_t imm = 0;

  bool operator==(const AddrExpr&) const = default;
};

struct Instruction {
  Op op{};
  ElementSize es = ElementSize::D;
  // Register operands; which fields are meaningful depends on op.
  uint8_t rd = 0, rn = 0, rm = 0, ra = 0;
  uint8_t pd = 0, pg = 0, pn = 0, pm = 0;
  int64_t imm = 0, imm2 = 0;
  AddrExpr addr{};
  uint32_t target = 0;    // resolved branch/adr target (instruction index)
  std::string labelName;  // source form of the target
  Cond cond = Cond::Eq;
  ElementwiseOp ewOp = ElementwiseOp::Add;
  ReduceKind redKind = ReduceKind::Eorv;
  PredLogicalOp plOp = PredLogicalOp::And;
  BreakKind brkKind = BreakKind::Before;
  MovprfxForm prfxForm = MovprfxForm::Unpredicated;
  bool setsFlags = false;
  unsigned elemIndex = 0;  // umov element index
  int line = 0;

  bool operator==(const Instruction& o) const {
    // Source line numbers are diagnostics metadata, not structure.
    return op == o.op && es == o.es && rd == o.rd && rn == o.rn && rm == o.rm &&
           ra == o.ra && pd == o.pd && pg == o.pg && pn == o.pn && pm == o.pm &&
           imm == o.imm && imm2 == o.imm2 && addr == o.addr && target == o.target &&
           labelName == o.labelName && cond == o.cond && ewOp == o.ewOp &&
           redKind == o.redKind && plOp == o.plOp && brkKind == o.brkKind &&
           prfxForm == o.prfxForm && setsFlags == o.setsFlags &&
           elemIndex == o.elemIndex;
  }
};

struct Program {
  std::vector<Instruction> instructions;
  std::map<std::string, uint32_t> labels;
  std::vector<std::pair<uint64_t, std::vector<uint8_t>>> dataSegments;
  std::vector<std::pair<uint64_t, uint64_t>> mappings;

  bool operator==(const Program&) const = default;
};

struct Diagnostic {
  int line = 0;
  int column = 0;
  std::string message;
};

}  // namespace svesim

#endif  // SVESIM_CORE_PROGRAM_HPP
