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

#include "svesim/svesim.h"

#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "core/assembler.hpp"
#include "core/machine.hpp"

using namespace svesim;

struct sve_program {
  Program program;
};
struct sve_memory {
  MemoryImage memory;
};
struct sve_machine {
  MachineState state;
};

namespace {

thread_local std::string g_error = "no error";
thread_local std::vector<Diagnostic> g_diagnostics;

int setError(int code, const std::string& message) {
  g_error = message;
  return code;
}

void copyString(const std::string& s, char* out, size_t cap) {
  if (!out || cap == 0) return;
  const size_t n = std::min(s.size(), cap - 1);
  std::memcpy(out, s.data(), n);
  out[n] = '\0';
}

}  // namespace

extern "C" {

const char* sve_error_message(void) { return g_error.c_str(); }

int sve_assemble(const char* source, sve_program** out_program) {
  if (!source || !out_program) return setError(SVE_ERR_INVALID_ARG, "null argument");
  g_diagnostics.clear();
  AssembleResult result = assemble(source);
  if (!result.ok()) {
    g_diagnostics = result.diagnostics;
    return setError(SVE_ERR_ASSEMBLY,
                    std::to_string(result.diagnostics.size()) +
                        " assembly diagnostic(s); first: line " +
                        std::to_string(result.diagnostics.front().line) + ": " +
                        result.diagnostics.front().message);
  }
  *out_program = new sve_program{std::move(*result.program)};
  return SVE_OK;
}

void sve_program_free(sve_program* program) { delete program; }

int sve_diagnostic_count(void) { return static_cast<int>(g_diagnostics.size()); }

int sve_diagnostic_get(int index, int* out_line, char* message, size_t cap) {
  if (index < 0 || index >= static_cast<int>(g_diagnostics.size()))
    return setError(SVE_ERR_INVALID_ARG, "diagnostic index out of range");
  const Diagnostic& d = g_diagnostics[index];
  if (out_line) *out_line = d.line;
  copyString(d.message, message, cap);
  return SVE_OK;
}

int64_t sve_program_instruction_count(const sve_program* program) {
  return program ? static_cast<int64_t>(program->program.instructions.size()) : -1;
}

int sve_program_format(const sve_program* program, uint64_t index, char* text,
                       size_t cap) {
  if (!program || index >= program->program.instructions.size())
    return setError(SVE_ERR_INVALID_ARG, "instruction index out of range");
  copyString(formatInstruction(program->program.instructions[index]), text, cap);
  return SVE_OK;
}

int sve_program_label(const sve_program* program, const char* name,
                      uint64_t* out_index) {
  if (!program || !name || !out_index)
    return setError(SVE_ERR_INVALID_ARG, "null argument");
  const auto it = program->program.labels.find(name);
  if (it == program->program.labels.end())
    return setError(SVE_ERR_INVALID_ARG, std::string("unknown label '") + name + "'");
  *out_index = it->second;
  return SVE_OK;
}

int64_t sve_program_range_count(const sve_program* program) {
  if (!program) return -1;
  return static_cast<int64_t>(program->program.mappings.size() +
                              program->program.dataSegments.size());
}

int sve_program_range_get(const sve_program* program, int64_t index,
                          uint64_t* out_addr, uint64_t* out_len) {
  if (!program || !out_addr || !out_len || index < 0)
    return setError(SVE_ERR_INVALID_ARG, "null argument");
  size_t i = static_cast<size_t>(index);
  if (i < program->program.mappings.size()) {
    *out_addr = program->program.mappings[i].first;
    *out_len = program->program.mappings[i].second;
    return SVE_OK;
  }
  i -= program->program.mappings.size();
  if (i < program->program.dataSegments.size()) {
    *out_addr = program->program.dataSegments[i].first;
    *out_len = program->program.dataSegments[i].second.size();
    return SVE_OK;
  }
  return setError(SVE_ERR_INVALID_ARG, "range index out of range");
}

int sve_memory_new(sve_memory** out_memory) {
  if (!out_memory) return setError(SVE_ERR_INVALID_ARG, "null argument");
  *out_memory = new sve_memory{};
  return SVE_OK;
}

void sve_memory_free(sve_memory* memory) { delete memory; }

int sve_memory_clone(const sve_memory* memory, sve_memory** out_copy) {
  if (!memory || !out_copy) return setError(SVE_ERR_INVALID_ARG, "null argument");
  *out_copy = new sve_memory{memory->memory};
  return SVE_OK;
}

int sve_memory_map(sve_memory* memory, uint64_t addr, uint64_t len) {
  if (!memory) return setError(SVE_ERR_INVALID_ARG, "null argument");
  memory->memory.map(addr, len);
  return SVE_OK;
}

int sve_memory_unmap(sve_memory* memory, uint64_t addr, uint64_t len) {
  if (!memory) return setError(SVE_ERR_INVALID_ARG, "null argument");
  memory->memory.unmap(addr, len);
  return SVE_OK;
}

int sve_memory_read(const sve_memory* memory, uint64_t addr, uint8_t* out,
                    uint64_t len) {
  if (!memory || (!out && len)) return setError(SVE_ERR_INVALID_ARG, "null argument");
  if (auto bad = memory->memory.read(addr, out, len))
    return setError(SVE_ERR_UNMAPPED,
                    "read touched unmapped address 0x" +
                        [](uint64_t a) {
                          char buf[32];
                          std::snprintf(buf, sizeof buf, "%llx",
                                        static_cast<unsigned long long>(a));
                          return std::string(buf);
                        }(*bad));
  return SVE_OK;
}

int sve_memory_write(sve_memory* memory, uint64_t addr, const uint8_t* data,
                     uint64_t len) {
  if (!memory || (!data && len)) return setError(SVE_ERR_INVALID_ARG, "null argument");
  if (auto bad = memory->memory.write(addr, data, len))
    return setError(SVE_ERR_UNMAPPED, "write touched an unmapped address");
  return SVE_OK;
}

int sve_memory_apply_program(sve_memory* memory, const sve_program* program) {
  if (!memory || !program) return setError(SVE_ERR_INVALID_ARG, "null argument");
  for (const auto& [addr, len] : program->program.mappings)
    memory->memory.map(addr, len);
  for (const auto& [addr, bytes] : program->program.dataSegments) {
    memory->memory.map(addr, bytes.size());
    memory->memory.write(addr, bytes.data(), bytes.size());
  }
  return SVE_OK;
}

int sve_machine_new(unsigned vl_bits, unsigned effective_vl_bits,
                    sve_machine** out_machine) {
  if (!out_machine) return setError(SVE_ERR_INVALID_ARG, "null argument");
  try {
    std::optional<unsigned> evl;
    if (effective_vl_bits != 0) evl = effective_vl_bits;
    *out_machine = new sve_machine{MachineState::create(vl_bits, evl)};
    return SVE_OK;
  } catch (const SimError& e) {
    return setError(SVE_ERR_INVALID_ARG, e.what());
  }
}

void sve_machine_free(sve_machine* machine) { delete machine; }

unsigned sve_machine_vl_bits(const sve_machine* machine) {
  return machine ? machine->state.vl.bits : 0;
}

unsigned sve_machine_effective_vl_bits(const sve_machine* machine) {
  return machine ? machine->state.evl.bits : 0;
}

int sve_machine_status(const sve_machine* machine) {
  if (!machine) return SVE_ERR_INVALID_ARG;
  switch (machine->state.status) {
    case Status::Running: return SVE_STATUS_RUNNING;
    case Status::Returned: return SVE_STATUS_RETURNED;
    case Status::Faulted: return SVE_STATUS_FAULTED;
    case Status::LimitExceeded: return SVE_STATUS_LIMIT_EXCEEDED;
  }
  return SVE_ERR_INVALID_ARG;
}

uint64_t sve_machine_step_count(const sve_machine* machine) {
  return machine ? machine->state.steps : 0;
}

uint64_t sve_machine_pc(const sve_machine* machine) {
  return machine ? machine->state.pc : 0;
}

int sve_machine_set_pc(sve_machine* machine, uint64_t pc) {
  if (!machine) return setError(SVE_ERR_INVALID_ARG, "null argument");
  machine->state.pc = pc;
  return SVE_OK;
}

int sve_machine_fault(const sve_machine* machine, sve_fault_info* out_fault) {
  if (!machine || !out_fault) return setError(SVE_ERR_INVALID_ARG, "null argument");
  if (machine->state.status != Status::Faulted)
    return setError(SVE_ERR_STATE, "machine has not faulted");
  out_fault->address = machine->state.fault.address;
  out_fault->element_index = machine->state.fault.elementIndex;
  out_fault->instruction_pc = machine->state.fault.instructionPc;
  return SVE_OK;
}

int sve_machine_get_x(const sve_machine* machine, unsigned index, uint64_t* out) {
  if (!machine || !out || index > 31)
    return setError(SVE_ERR_INVALID_ARG, "bad register index");
  *out = machine->state.getX(index);
  return SVE_OK;
}

int sve_machine_set_x(sve_machine* machine, unsigned index, uint64_t value) {
  if (!machine || index > 31)
    return setError(SVE_ERR_INVALID_ARG, "bad register index");
  machine->state.setX(index, value);
  return SVE_OK;
}

int sve_machine_get_flags(const sve_machine* machine, unsigned* out_nzcv) {
  if (!machine || !out_nzcv) return setError(SVE_ERR_INVALID_ARG, "null argument");
  const Flags& f = machine->state.flags;
  *out_nzcv = (f.n ? 8u : 0) | (f.z ? 4u : 0) | (f.c ? 2u : 0) | (f.v ? 1u : 0);
  return SVE_OK;
}

int sve_machine_get_z(const sve_machine* machine, unsigned index, uint8_t* out,
                      size_t cap) {
  if (!machine || !out || index > 31)
    return setError(SVE_ERR_INVALID_ARG, "bad register index");
  const auto& bytes = machine->state.z[index].bytes;
  if (cap < bytes.size())
    return setError(SVE_ERR_INVALID_ARG, "buffer too small");
  std::memcpy(out, bytes.data(), bytes.size());
  return SVE_OK;
}

int sve_machine_get_p(const sve_machine* machine, unsigned index, uint8_t* out,
                      size_t cap) {
  if (!machine || !out || index > 15)
    return setError(SVE_ERR_INVALID_ARG, "bad register index");
  const auto& bits = machine->state.p[index].bits;
  if (cap < bits.size()) return setError(SVE_ERR_INVALID_ARG, "buffer too small");
  std::memcpy(out, bits.data(), bits.size());
  return SVE_OK;
}

int sve_machine_get_ffr(const sve_machine* machine, uint8_t* out, size_t cap) {
  if (!machine || !out) return setError(SVE_ERR_INVALID_ARG, "null argument");
  const auto& bits = machine->state.ffr.bits;
  if (cap < bits.size()) return setError(SVE_ERR_INVALID_ARG, "buffer too small");
  std::memcpy(out, bits.data(), bits.size());
  return SVE_OK;
}

int sve_machine_step(sve_machine* machine, const sve_program* program,
                     sve_memory* memory) {
  if (!machine || !program || !memory)
    return setError(SVE_ERR_INVALID_ARG, "null argument");
  if (machine->state.status != Status::Running)
    return setError(SVE_ERR_STATE, "machine is not running");
  try {
    step(machine->state, program->program, memory->memory);
    return SVE_OK;
  } catch (const SimError& e) {
    return setError(SVE_ERR_RUNTIME, e.what());
  }
}

int sve_machine_run(sve_machine* machine, const sve_program* program,
                    sve_memory* memory, uint64_t max_steps) {
  if (!machine || !program || !memory)
    return setError(SVE_ERR_INVALID_ARG, "null argument");
  try {
    run(machine->state, program->program, memory->memory, max_steps);
    return SVE_OK;
  } catch (const SimError& e) {
    return setError(SVE_ERR_RUNTIME, e.what());
  }
}

}  // extern "C"
