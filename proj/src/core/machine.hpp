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
// Architectural state and the fetch-decode-execute loop. All vector and
// predicate semantics run at the effective vector length; a reduced
// effective VL is fixed at construction time.

#ifndef SVESIM_CORE_MACHINE_HPP
#define SVESIM_CORE_MACHINE_HPP

#include <array>
#include <optional>

#include "memory.hpp"
#include "program.hpp"

namespace svesim {

struct MachineState {
  VectorLength vl;   // implemented vector length
  VectorLength evl;  // effective vector length, evl.bits <= vl.bits
  std::array<VectorValue, 32> z;
  std::array<PredicateValue, 16> p;
  PredicateValue ffr;
  std::array<uint64_t, 31> x{};
  uint64_t pc = 0;
  Flags flags;
  Status status = Status::Running;
  FaultInfo fault;
  uint64_t steps = 0;

  /// Throws SimError for an invalid VL (not a multiple of 128, out of
  /// [128, 2048], or effective > implemented).
  static MachineState create(unsigned implVlBits,
                             std::optional<unsigned> effectiveVlBits = std::nullopt);

  unsigned vlBytes() const { return evl.bytes(); }

  // Register index 31 reads zero and discards writes (xzr).
  uint64_t getX(unsigned idx) const { return idx == 31 ? 0 : x[idx]; }
  void setX(unsigned idx, uint64_t v) {
    if (idx != 31) x[idx] = v;
  }

  // Scalar FP registers are the low 64 bits of the corresponding Z
  // register; writing one zeroes the rest of the vector.
  uint64_t getD(unsigned idx) const { return z[idx].get(0, ElementSize::D); }
  void setD(unsigned idx, uint64_t bits);
};

/// Executes exactly one instruction. Requires status == Running and pc
/// within the program; throws SimError otherwise.
void step(MachineState& state, const Program& program, MemoryImage& memory);

/// Steps until the machine leaves Running or maxSteps is exhausted
/// (status becomes LimitExceeded).
void run(MachineState& state, const Program& program, MemoryImage& memory,
         uint64_t maxSteps);

}  // namespace svesim

#endif  // SVESIM_CORE_MACHINE_HPP
