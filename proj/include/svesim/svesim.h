/* Copyright 2026 the svesim authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C API for the svesim scalable-vector instruction-set simulator.
 *
 * All handles are opaque. Functions return SVE_OK (0) on success or a
 * negative error code; sve_error_message() describes the most recent
 * failure on the calling thread.
 */

#ifndef SVESIM_SVESIM_H
#define SVESIM_SVESIM_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct sve_program sve_program;
typedef struct sve_memory sve_memory;
typedef struct sve_machine sve_machine;

enum {
  SVE_OK = 0,
  SVE_ERR_INVALID_ARG = -1,
  SVE_ERR_ASSEMBLY = -2,   /* diagnostics available via sve_diagnostic_* */
  SVE_ERR_UNMAPPED = -3,   /* direct memory access touched an unmapped page */
  SVE_ERR_STATE = -4,      /* operation not valid in the current status */
  SVE_ERR_RUNTIME = -5,    /* internal execution error (e.g. pc overrun) */
};

/* Machine status values returned by sve_machine_status(). */
enum {
  SVE_STATUS_RUNNING = 0,
  SVE_STATUS_RETURNED = 1,
  SVE_STATUS_FAULTED = 2,
  SVE_STATUS_LIMIT_EXCEEDED = 3,
};

typedef struct sve_fault_info {
  uint64_t address;        /* first unmapped byte */
  int64_t element_index;   /* faulting vector element, -1 for scalar access */
  uint64_t instruction_pc; /* instruction index of the faulting access */
} sve_fault_info;

/* Thread-local message for the most recent failing call. Never NULL. */
const char* sve_error_message(void);

/* ---- assembler -------------------------------------------------------- */

/* Assembles source text. On SVE_ERR_ASSEMBLY the per-line diagnostics are
 * retrievable until the next sve_assemble call on this thread. */
int sve_assemble(const char* source, sve_program** out_program);
void sve_program_free(sve_program* program);

int sve_diagnostic_count(void);
/* Returns SVE_OK and fills line/message (message truncated to cap). */
int sve_diagnostic_get(int index, int* out_line, char* message, size_t cap);

int64_t sve_program_instruction_count(const sve_program* program);
/* Canonical text of one instruction; truncates to cap. */
int sve_program_format(const sve_program* program, uint64_t index, char* text,
                       size_t cap);
/* Resolves a label to its instruction index; SVE_ERR_INVALID_ARG if absent. */
int sve_program_label(const sve_program* program, const char* name,
                      uint64_t* out_index);

/* Memory ranges declared by the program's .map and .data directives,
 * in source order (.map ranges first). */
int64_t sve_program_range_count(const sve_program* program);
int sve_program_range_get(const sve_program* program, int64_t index,
                          uint64_t* out_addr, uint64_t* out_len);

/* ---- memory ----------------------------------------------------------- */

int sve_memory_new(sve_memory** out_memory);
void sve_memory_free(sve_memory* memory);
int sve_memory_clone(const sve_memory* memory, sve_memory** out_copy);

int sve_memory_map(sve_memory* memory, uint64_t addr, uint64_t len);
int sve_memory_unmap(sve_memory* memory, uint64_t addr, uint64_t len);
/* Reads/writes require every touched page to be mapped. */
int sve_memory_read(const sve_memory* memory, uint64_t addr, uint8_t* out,
                    uint64_t len);
int sve_memory_write(sve_memory* memory, uint64_t addr, const uint8_t* data,
                     uint64_t len);
/* Applies the program's .map and .data directives (mapping data pages). */
int sve_memory_apply_program(sve_memory* memory, const sve_program* program);

/* ---- machine ---------------------------------------------------------- */

/* vl_bits must be a multiple of 128 in [128, 2048]; effective_vl_bits of 0
 * means "same as vl_bits". */
int sve_machine_new(unsigned vl_bits, unsigned effective_vl_bits,
                    sve_machine** out_machine);
void sve_machine_free(sve_machine* machine);

unsigned sve_machine_vl_bits(const sve_machine* machine);
unsigned sve_machine_effective_vl_bits(const sve_machine* machine);

int sve_machine_status(const sve_machine* machine);
uint64_t sve_machine_step_count(const sve_machine* machine);
uint64_t sve_machine_pc(const sve_machine* machine);
int sve_machine_set_pc(sve_machine* machine, uint64_t pc);
int sve_machine_fault(const sve_machine* machine, sve_fault_info* out_fault);

int sve_machine_get_x(const sve_machine* machine, unsigned index, uint64_t* out);
int sve_machine_set_x(sve_machine* machine, unsigned index, uint64_t value);
/* NZCV as bits 3..0 of *out. */
int sve_machine_get_flags(const sve_machine* machine, unsigned* out_nzcv);

/* Vector/predicate state. Z registers are effective-VL/8 bytes; predicate
 * registers and the FFR are one byte per vector byte, each 0 or 1. */
int sve_machine_get_z(const sve_machine* machine, unsigned index, uint8_t* out,
                      size_t cap);
int sve_machine_get_p(const sve_machine* machine, unsigned index, uint8_t* out,
                      size_t cap);
int sve_machine_get_ffr(const sve_machine* machine, uint8_t* out, size_t cap);

/* Executes one instruction. SVE_ERR_STATE unless status is RUNNING. */
int sve_machine_step(sve_machine* machine, const sve_program* program,
                     sve_memory* memory);
/* Runs until the status leaves RUNNING or max_steps is exhausted. */
int sve_machine_run(sve_machine* machine, const sve_program* program,
                    sve_memory* memory, uint64_t max_steps);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* SVESIM_SVESIM_H */
