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

#include "predicates.hpp"

namespace svesim {

std::pair<PredicateValue, Flags> whilelt(int64_t start, int64_t limit,
                                         ElementSize es, unsigned vlBytes) {
  PredicateValue result(vlBytes);
  const unsigned n = result.elements(es);
  for (unsigned i = 0; i < n; ++i) {
    const __int128 v = static_cast<__int128>(start) + i;
    result.setActive(i, es, v < static_cast<__int128>(limit));
  }
  const PredicateValue all = ptrue(es, vlBytes);
  return {result, predicateFlags(result, all, es)};
}

PredicateValue ptrue(ElementSize es, unsigned vlBytes) {
  PredicateValue p(vlBytes);
  for (unsigned i = 0; i < p.elements(es); ++i) p.setActive(i, es, true);
  return p;
}

PredicateValue pfalse(unsigned vlBytes) { return PredicateValue(vlBytes); }

std::pair<PredicateValue, Flags> pnext(const PredicateValue& governing,
                                       const PredicateValue& prev, ElementSize es) {
  const unsigned n = governing.elements(es);
  int k = -1;
  for (unsigned i = 0; i < n; ++i)
    if (prev.active(i, es)) k = static_cast<int>(i);
  PredicateValue result(governing.size());
  for (unsigned i = static_cast<unsigned>(k + 1); i < n; ++i) {
    if (governing.active(i, es)) {
      result.setActive(i, es, true);
      break;
    }
  }
  return {result, predicateFlags(result, governing, es)};
}

std::pair<PredicateValue, Flags> breakPartition(BreakKind kind,
                                                const PredicateValue& governing,
                                                const PredicateValue& cond,
                                                ElementSize es) {
  const unsigned n = governing.elements(es);
  PredicateValue result(governing.size());
  bool broken = false;
  for (unsigned i = 0; i < n; ++i) {
    if (!governing.active(i, es)) continue;
    const bool breaksHere = cond.active(i, es);
    if (kind == BreakKind::Before && breaksHere) broken = true;
    if (!broken) result.setActive(i, es, true);
    if (kind == BreakKind::After && breaksHere) broken = true;
  }
  return {result, predicateFlags(result, governing, es)};
}

std::pair<PredicateValue, Flags> cmpeqImm(const PredicateValue& governing,
                                          const VectorValue& src, int64_t imm,
                                          ElementSize es) {
  const unsigned n = governing.elements(es);
  PredicateValue result(governing.size());
  for (unsigned i = 0; i < n; ++i) {
    if (governing.active(i, es) && src.getSigned(i, es) == imm)
      result.setActive(i, es, true);
  }
  return {result, predicateFlags(result, governing, es)};
}

std::pair<PredicateValue, Flags> predLogical(PredLogicalOp op,
                                             const PredicateValue& governing,
                                             const PredicateValue& a,
                                             const PredicateValue& b, ElementSize es) {
  const unsigned n = governing.elements(es);
  PredicateValue result(governing.size());
  for (unsigned i = 0; i < n; ++i) {
    if (!governing.active(i, es)) continue;
    const bool x = a.active(i, es);
    const bool y = b.active(i, es);
    bool r = false;
    switch (op) {
      case PredLogicalOp::And: r = x && y; break;
      case PredLogicalOp::Orr: r = x || y; break;
      case PredLogicalOp::Eor: r = x != y; break;
      case PredLogicalOp::Bic: r = x && !y; break;
    }
    result.setActive(i, es, r);
  }
  return {result, predicateFlags(result, governing, es)};
}

Flags cterm(bool eqFlavor, uint64_t xn, uint64_t xm, const Flags& flagsIn) {
  const bool terminated = eqFlavor ? (xn == xm) : (xn != xm);
  Flags f = flagsIn;
  if (terminated) {
    f.n = true;
    f.v = false;
  } else {
    f.n = false;
    f.v = !flagsIn.c;
  }
  return f;
}

PredicateValue rdffr(const PredicateValue& ffr, const PredicateValue& governing) {
  PredicateValue result(ffr.size());
  for (unsigned i = 0; i < ffr.size(); ++i)
    result.bits[i] = (ffr.bits[i] && governing.bits[i]) ? 1 : 0;
  return result;
}

uint64_t incp(uint64_t x, const PredicateValue& pred, ElementSize es) {
  return x + pred.countActive(es);
}

}  // namespace svesim
