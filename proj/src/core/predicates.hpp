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
// Predicate-generating and predicate-manipulating semantics: while-family
// loop control, break partitioning, serialized element iteration, FFR
// access and predicate counting. All operations write zero to non-control
// bits of each element, so predicate state diffs bit-exactly.

#ifndef SVESIM_CORE_PREDICATES_HPP
#define SVESIM_CORE_PREDICATES_HPP

#include <utility>

#include "flags.hpp"
#include "types.hpp"

namespace svesim {

// Result is the loop-control predicate the sequential loop
// for (i = start; i < limit; i++) would produce for the next evl/esize
// iterations. Comparison is widened so counts near INT64_MAX do not wrap.
std::pair<PredicateValue, Flags> whilelt(int64_t start, int64_t limit,
                                         ElementSize es, unsigned vlBytes);

PredicateValue ptrue(ElementSize es, unsigned vlBytes);
PredicateValue pfalse(unsigned vlBytes);

// Advances to the next governing-active element after the singleton in
// prev (or the first one when prev is all-false).
std::pair<PredicateValue, Flags> pnext(const PredicateValue& governing,
                                       const PredicateValue& prev, ElementSize es);

enum class BreakKind {
  Before,  // active elements strictly precede the first break element
  After,   // the first break element stays active
};

std::pair<PredicateValue, Flags> breakPartition(BreakKind kind,
                                                const PredicateValue& governing,
                                                const PredicateValue& cond,
                                                ElementSize es);

std::pair<PredicateValue, Flags> cmpeqImm(const PredicateValue& governing,
                                          const VectorValue& src, int64_t imm,
                                          ElementSize es);

enum class PredLogicalOp { And, Orr, Eor, Bic };

std::pair<PredicateValue, Flags> predLogical(PredLogicalOp op,
                                             const PredicateValue& governing,
                                             const PredicateValue& a,
                                             const PredicateValue& b, ElementSize es);

// Loop-termination test for scalarized sub-loops. Sets N/V so that tcont
// holds exactly when the scalar test does not terminate and the preceding
// "last" condition (flagsIn.c) does not hold. Z and C pass through.
Flags cterm(bool eqFlavor, uint64_t xn, uint64_t xm, const Flags& flagsIn);

PredicateValue rdffr(const PredicateValue& ffr, const PredicateValue& governing);

uint64_t incp(uint64_t x, const PredicateValue& pred, ElementSize es);

}  // namespace svesim

#endif  // SVESIM_CORE_PREDICATES_HPP
