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

#include "machine.hpp"

#include <bit>
#include <cmath>

namespace svesim {

MachineState MachineState::create(unsigned implVlBits,
                                  std::optional<unsigned> effectiveVlBits) {
  if (!VectorLength::valid(implVlBits))
    throw SimError("invalid vector length " + std::to_string(implVlBits) +
                   ": must be a multiple of 128 in [128, 2048]");
  const unsigned evlBits = effectiveVlBits.value_or(implVlBits);
  if (!VectorLength::valid(evlBits))
    throw SimError("invalid effective vector length " + std::to_string(evlBits) +
                   ": must be a multiple of 128 in [128, 2048]");
  if (evlBits > implVlBits)
    throw SimError("effective vector length exceeds the implemented length");

  MachineState m;
  m.vl = VectorLength{implVlBits};
  m.evl = VectorLength{evlBits};
  const unsigned bytes = m.evl.bytes();
  for (auto& reg : m.z) reg = VectorValue(bytes);
  for (auto& reg : m.p) reg = PredicateValue(bytes);
  m.ffr = PredicateValue(bytes);
  return m;
}

void MachineState::setD(unsigned idx, uint64_t bits) {
  z[idx] = VectorValue(vlBytes());
  z[idx].set(0, ElementSize::D, bits);
}

namespace {

uint64_t resolveAddress(const MachineState& m, const AddrExpr& a) {
  switch (a.kind) {
    case AddrExpr::Kind::Base:
      return m.getX(a.base);
    case AddrExpr::Kind::BaseImm:
      return m.getX(a.base) + static_cast<uint64_t>(a.imm);
    case AddrExpr::Kind::BaseRegLsl:
      return m.getX(a.base) + (m.getX(a.index) << a.shift);
    case AddrExpr::Kind::VecImm:
      throw SimError("vector address used in a scalar context");
  }
  return 0;
}

void raiseFault(MachineState& m, const MemFault& f) {
  m.status = Status::Faulted;
  m.fault = FaultInfo{f.address, f.elementIndex, m.pc, FaultKind::Unmapped};
}

Flags cmpFlags(uint64_t a, uint64_t b) {
  const uint64_t r = a - b;
  Flags f;
  f.n = (r >> 63) != 0;
  f.z = r == 0;
  f.c = a >= b;  // no borrow
  f.v = (((a ^ b) & (a ^ r)) >> 63) != 0;
  return f;
}

// Scalar loads and stores always trap on unmapped addresses.
bool scalarRead(MachineState& m, MemoryImage& mem, uint64_t addr, void* out,
                unsigned len) {
  if (auto bad = mem.read(addr, static_cast<uint8_t*>(out), len)) {
    raiseFault(m, MemFault{*bad, -1});
    return false;
  }
  return true;
}

bool scalarWrite(MachineState& m, MemoryImage& mem, uint64_t addr, const void* data,
                 unsigned len) {
  if (auto bad = mem.write(addr, static_cast<const uint8_t*>(data), len)) {
    raiseFault(m, MemFault{*bad, -1});
    return false;
  }
  return true;
}

void execVectorMemory(MachineState& m, const Instruction& in, MemoryImage& mem) {
  const PredicateValue& gov = m.p[in.pg];
  std::optional<MemFault> fault;
  switch (in.op) {
    case Op::Ld1: {
      VectorValue out(m.vlBytes());
      if (in.addr.kind == AddrExpr::Kind::VecImm)
        fault = ld1Gather(mem, gov, m.z[in.addr.base], in.addr.imm, in.es, out);
      else
        fault = ld1Contig(mem, gov, resolveAddress(m, in.addr), in.es, out);
      if (!fault) m.z[in.rd] = out;
      break;
    }
    case Op::Ld1R: {
      VectorValue out(m.vlBytes());
      fault = ld1rBroadcast(mem, gov, resolveAddress(m, in.addr), in.es, out);
      if (!fault) m.z[in.rd] = out;
      break;
    }
    case Op::Ldff1: {
      VectorValue out(m.vlBytes());
      PredicateValue ffr = m.ffr;
      if (in.addr.kind == AddrExpr::Kind::VecImm)
        fault = ldff1Gather(mem, gov, m.z[in.addr.base], in.addr.imm, in.es, out, ffr);
      else
        fault = ldff1Contig(mem, gov, resolveAddress(m, in.addr), in.es, out, ffr);
      if (!fault) {
        m.z[in.rd] = out;
        m.ffr = ffr;
      }
      break;
    }
    case Op::St1: {
      if (in.addr.kind == AddrExpr::Kind::VecImm)
        fault = st1Scatter(mem, gov, m.z[in.addr.base], m.z[in.rd], in.es);
      else
        fault = st1Contig(mem, gov, resolveAddress(m, in.addr), m.z[in.rd], in.es);
      break;
    }
    default:
      throw SimError("not a vector memory instruction");
  }
  if (fault) raiseFault(m, *fault);
}

}  // namespace

void step(MachineState& m, const Program& program, MemoryImage& mem) {
  if (m.status != Status::Running)
    throw SimError("step on a machine that is not running");
  if (m.pc >= program.instructions.size())
    throw SimError("pc out of range: " + std::to_string(m.pc));

  const Instruction& in = program.instructions[m.pc];
  const unsigned vlBytes = m.vlBytes();
  uint64_t nextPc = m.pc + 1;

  switch (in.op) {
    case Op::MovXImm:
      m.setX(in.rd, static_cast<uint64_t>(in.imm));
      break;
    case Op::MovXReg:
      m.setX(in.rd, m.getX(in.rn));
      break;
    case Op::LdrX: {
      uint64_t v = 0;
      if (scalarRead(m, mem, resolveAddress(m, in.addr), &v, 8)) m.setX(in.rd, v);
      break;
    }
    case Op::LdrD: {
      uint64_t v = 0;
      if (scalarRead(m, mem, resolveAddress(m, in.addr), &v, 8)) m.setD(in.rd, v);
      break;
    }
    case Op::StrX: {
      const uint64_t v = m.getX(in.rd);
      scalarWrite(m, mem, resolveAddress(m, in.addr), &v, 8);
      break;
    }
    case Op::StrD: {
      const uint64_t v = m.getD(in.rd);
      scalarWrite(m, mem, resolveAddress(m, in.addr), &v, 8);
      break;
    }
    case Op::Ldrsw: {
      uint32_t v = 0;
      if (scalarRead(m, mem, resolveAddress(m, in.addr), &v, 4))
        m.setX(in.rd, static_cast<uint64_t>(static_cast<int64_t>(static_cast<int32_t>(v))));
      break;
    }
    case Op::Ldrb: {
      uint8_t v = 0;
      if (scalarRead(m, mem, resolveAddress(m, in.addr), &v, 1)) m.setX(in.rd, v);
      break;
    }
    case Op::Adr:
      // Labels address instructions; data lives in its own address space
      // and is referenced through registers seeded by the harness.
      m.setX(in.rd, in.target);
      break;
    case Op::AddImm:
      m.setX(in.rd, m.getX(in.rn) + static_cast<uint64_t>(in.imm));
      break;
    case Op::AddReg:
      m.setX(in.rd, m.getX(in.rn) + m.getX(in.rm));
      break;
    case Op::SubImm:
      m.setX(in.rd, m.getX(in.rn) - static_cast<uint64_t>(in.imm));
      break;
    case Op::SubReg:
      m.setX(in.rd, m.getX(in.rn) - m.getX(in.rm));
      break;
    case Op::CmpImm:
      m.flags = cmpFlags(m.getX(in.rn), static_cast<uint64_t>(in.imm));
      break;
    case Op::CmpReg:
      m.flags = cmpFlags(m.getX(in.rn), m.getX(in.rm));
      break;
    case Op::Fmadd: {
      const double r = std::fma(std::bit_cast<double>(m.getD(in.rn)),
                                std::bit_cast<double>(m.getD(in.rm)),
                                std::bit_cast<double>(m.getD(in.ra)));
      m.setD(in.rd, std::bit_cast<uint64_t>(r));
      break;
    }
    case Op::Cbz:
      if (m.getX(in.rn) == 0) nextPc = in.target;
      break;
    case Op::Cbnz:
      if (m.getX(in.rn) != 0) nextPc = in.target;
      break;
    case Op::B:
      nextPc = in.target;
      break;
    case Op::BCond:
      if (conditionHolds(in.cond, m.flags)) nextPc = in.target;
      break;
    case Op::Ret:
      m.status = Status::Returned;
      break;

    case Op::Ptrue:
      m.p[in.pd] = ptrue(in.es, vlBytes);
      break;
    case Op::Pfalse:
      m.p[in.pd] = pfalse(vlBytes);
      break;
    case Op::Whilelt: {
      auto [result, flags] =
          whilelt(static_cast<int64_t>(m.getX(in.rn)),
                  static_cast<int64_t>(m.getX(in.rm)), in.es, vlBytes);
      m.p[in.pd] = result;
      m.flags = flags;
      break;
    }
    case Op::Pnext: {
      auto [result, flags] = pnext(m.p[in.pg], m.p[in.pd], in.es);
      m.p[in.pd] = result;
      m.flags = flags;
      break;
    }
    case Op::Brk: {
      auto [result, flags] = breakPartition(in.brkKind, m.p[in.pg], m.p[in.pn], in.es);
      m.p[in.pd] = result;
      if (in.setsFlags) m.flags = flags;
      break;
    }
    case Op::CmpeqImm: {
      auto [result, flags] = cmpeqImm(m.p[in.pg], m.z[in.rn], in.imm, in.es);
      m.p[in.pd] = result;
      m.flags = flags;
      break;
    }
    case Op::PredLogical: {
      auto [result, flags] =
          predLogical(in.plOp, m.p[in.pg], m.p[in.pn], m.p[in.pm], in.es);
      m.p[in.pd] = result;
      if (in.setsFlags) m.flags = flags;
      break;
    }
    case Op::Cterm:
      m.flags = cterm(in.imm != 0, m.getX(in.rn), m.getX(in.rm), m.flags);
      break;
    case Op::Setffr:
      m.ffr.setAllBits();
      break;
    case Op::Rdffr:
      m.p[in.pd] = rdffr(m.ffr, m.p[in.pg]);
      break;
    case Op::Incp:
      m.setX(in.rd, incp(m.getX(in.rd), m.p[in.pm], in.es));
      break;
    case Op::IncScalar:
      m.setX(in.rd, incScalar(m.getX(in.rd), in.es, vlBytes));
      break;

    case Op::DupImm:
      m.z[in.rd] = dupImm(in.imm, in.es, vlBytes);
      break;
    case Op::Cpy:
      m.z[in.rd] = cpyScalar(m.z[in.rd], m.p[in.pg], m.getX(in.rn), in.es);
      break;
    case Op::Index:
      m.z[in.rd] = index(in.imm, in.imm2, in.es, vlBytes);
      break;
    case Op::Elementwise:
      m.z[in.rd] = elementwise(in.ewOp, m.p[in.pg], m.z[in.rd], m.z[in.rm], in.es);
      break;
    case Op::Fmla:
      m.z[in.rd] = fmla(m.z[in.rd], m.p[in.pg], m.z[in.rn], m.z[in.rm], in.es);
      break;
    case Op::Reduce:
      m.setD(in.rd, reduce(in.redKind, m.p[in.pg], m.z[in.rm], in.es));
      break;
    case Op::Fadda: {
      if (in.es == ElementSize::S) {
        const float init = std::bit_cast<float>(
            static_cast<uint32_t>(m.getD(in.rd) & 0xFFFFFFFFu));
        const float r = static_cast<float>(fadda(m.p[in.pg], init, m.z[in.rm], in.es));
        m.setD(in.rd, std::bit_cast<uint32_t>(r));
      } else {
        const double init = std::bit_cast<double>(m.getD(in.rd));
        const double r = fadda(m.p[in.pg], init, m.z[in.rm], in.es);
        m.setD(in.rd, std::bit_cast<uint64_t>(r));
      }
      break;
    }
    case Op::Movprfx:
      m.z[in.rd] = movprfx(in.prfxForm, m.z[in.rd], m.z[in.rn], m.p[in.pg], in.es);
      break;
    case Op::Umov: {
      const unsigned elems = vlBytes / bytesOf(in.es);
      if (in.elemIndex >= elems)
        throw SimError("umov element index " + std::to_string(in.elemIndex) +
                       " out of range at the current vector length");
      m.setX(in.rd, extractElement(m.z[in.rn], in.elemIndex, in.es));
      break;
    }

    case Op::Ld1:
    case Op::Ld1R:
    case Op::Ldff1:
    case Op::St1:
      execVectorMemory(m, in, mem);
      break;
  }

  ++m.steps;
  if (m.status == Status::Running) m.pc = nextPc;
}

void run(MachineState& m, const Program& program, MemoryImage& mem,
         uint64_t maxSteps) {
  while (m.status == Status::Running) {
    if (m.steps >= maxSteps) {
      m.status = Status::LimitExceeded;
      return;
    }
    step(m, program, mem);
  }
}

}  // namespace svesim
