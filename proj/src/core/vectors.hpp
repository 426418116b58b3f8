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
// Vector data-processing semantics: broadcasts, scalar insertion,
// induction helpers, predicated elementwise arithmetic, multiply-
// accumulate, horizontal reductions and element extraction.

#ifndef SVESIM_CORE_VECTORS_HPP
#define SVESIM_CORE_VECTORS_HPP

#include "types.hpp"

namespace svesim {

VectorValue dupImm(int64_t imm, ElementSize es, unsigned vlBytes);

/// Merging scalar insertion: active elements take the low bits of x.
VectorValue cpyScalar(VectorValue dst, const PredicateValue& governing,
                      uint64_t x, ElementSize es);

/// element i = base + i*step, truncated to the element width.
VectorValue index(int64_t base, int64_t step, ElementSize es, unsigned vlBytes);

/// incb/inch/incw/incd: x + elements-per-vector, modulo 2^64.
uint64_t incScalar(uint64_t x, ElementSize es, unsigned vlBytes);

enum class ElementwiseOp { Add, Sub, Mul, And, Orr, Eor, Fadd, Fsub, Fmul };

/// Destructive merging form: a[i] <- a[i] op b[i] on active lanes.
VectorValue elementwise(ElementwiseOp op, const PredicateValue& governing,
                        VectorValue a, const VectorValue& b, ElementSize es);

/// Merging fused multiply-add: acc[i] <- fma(a[i], b[i], acc[i]).
VectorValue fmla(VectorValue acc, const PredicateValue& governing,
                 const VectorValue& a, const VectorValue& b, ElementSize es);

enum class ReduceKind { Eorv, Orv, Andv, Uaddv, Smaxv, Sminv };

/// Fold over active elements; an empty active set yields the operator
/// identity (0, all-ones for andv, signed extrema for smaxv/sminv).
uint64_t reduce(ReduceKind kind, const PredicateValue& governing,
                const VectorValue& src, ElementSize es);

/// Strictly-ordered floating-point add reduction: bit-exact equal to the
/// sequential scalar loop over active elements in ascending index order.
double fadda(const PredicateValue& governing, double init, const VectorValue& src,
             ElementSize es);

enum class MovprfxForm { Unpredicated, Zeroing, Merging };

/// movprfx executed as a discrete copy into dst before the next
/// destructive operation.
VectorValue movprfx(MovprfxForm form, VectorValue dst, const VectorValue& src,
                    const PredicateValue& governing, ElementSize es);

/// umov: zero-extended element value.
uint64_t extractElement(const VectorValue& src, unsigned index, ElementSize es);

}  // namespace svesim

#endif  // SVESIM_CORE_VECTORS_HPP
