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
// Randomized property suites shared by the unit tests and the
// acceptance gate. Every function returns the number of failing cases.

#ifndef SVESIM_TESTS_PROPERTIES_HPP
#define SVESIM_TESTS_PROPERTIES_HPP

#include <algorithm>
#include <cstdint>
#include <limits>
#include <random>

#include "core/flags.hpp"
#include "core/memory.hpp"
#include "core/predicates.hpp"
#include "core/vectors.hpp"

namespace svesim::props {

inline ElementSize randomEs(std::mt19937_64& rng) {
  static const ElementSize sizes[] = {ElementSize::B, ElementSize::H,
                                      ElementSize::S, ElementSize::D};
  return sizes[rng() % 4];
}

inline unsigned randomVlBytes(std::mt19937_64& rng) {
  return 16u * (1u + static_cast<unsigned>(rng() % 16));
}

inline PredicateValue randomPred(std::mt19937_64& rng, unsigned vlBytes) {
  PredicateValue p(vlBytes);
  for (auto& b : p.bits) b = static_cast<uint8_t>(rng() & 1);
  return p;
}

inline VectorValue randomVec(std::mt19937_64& rng, unsigned vlBytes) {
  VectorValue v(vlBytes);
  for (auto& b : v.bytes) b = static_cast<uint8_t>(rng());
  return v;
}

// Flag definitions re-derived by a direct scan over governing lanes.
inline Flags bruteForceFlags(const PredicateValue& result,
                             const PredicateValue& governing, ElementSize es) {
  bool sawGoverning = false, sawResult = false;
  bool first = false, last = false;
  for (unsigned i = 0; i < governing.elements(es); ++i) {
    if (!governing.active(i, es)) continue;
    const bool r = result.active(i, es);
    if (!sawGoverning) first = r;
    sawGoverning = true;
    if (r) sawResult = true;
    last = r;
  }
  return Flags{sawGoverning && first, !sawResult, !(sawGoverning && last), false};
}

inline int propFlagTruthTable(int cases, uint64_t seed) {
  std::mt19937_64 rng(seed);
  int failures = 0;
  for (int t = 0; t < cases; ++t) {
    const unsigned vlBytes = randomVlBytes(rng);
    const ElementSize es = randomEs(rng);
    const PredicateValue result = randomPred(rng, vlBytes);
    const PredicateValue governing = randomPred(rng, vlBytes);
    if (!(predicateFlags(result, governing, es) ==
          bruteForceFlags(result, governing, es)))
      ++failures;
  }
  return failures;
}

// whilelt vs the sequential loop it models, including limits close to
// 2^63 where a naive start+elements computation would wrap.
inline int propWhilelt(int cases, uint64_t seed) {
  std::mt19937_64 rng(seed);
  int failures = 0;
  for (int t = 0; t < cases; ++t) {
    const unsigned vlBytes = randomVlBytes(rng);
    const ElementSize es = randomEs(rng);
    int64_t start, limit;
    switch (rng() % 4) {
      case 0:  // small values around zero
        start = static_cast<int64_t>(rng() % 400) - 200;
        limit = static_cast<int64_t>(rng() % 400) - 200;
        break;
      case 1:  // near INT64_MAX
        start = std::numeric_limits<int64_t>::max() -
                static_cast<int64_t>(rng() % 600);
        limit = std::numeric_limits<int64_t>::max() -
                static_cast<int64_t>(rng() % 600);
        break;
      case 2:  // near INT64_MIN
        start = std::numeric_limits<int64_t>::min() +
                static_cast<int64_t>(rng() % 600);
        limit = std::numeric_limits<int64_t>::min() +
                static_cast<int64_t>(rng() % 600);
        break;
      default:  // arbitrary
        start = static_cast<int64_t>(rng());
        limit = static_cast<int64_t>(rng());
        break;
    }
    const auto [pred, flags] = whilelt(start, limit, es, vlBytes);
    // Sequential oracle: lane i is active iff the loop counter would
    // still be below the limit at iteration i.
    PredicateValue want(vlBytes);
    int64_t i64 = start;
    bool stop = false;
    for (unsigned i = 0; i < want.elements(es); ++i) {
      const bool act = !stop && i64 < limit;
      want.setActive(i, es, act);
      if (!act) stop = true;
      if (!stop && i64 < std::numeric_limits<int64_t>::max()) ++i64;
      else if (!stop) stop = true;  // counter saturates; no further lanes
    }
    if (!(pred == want)) {
      ++failures;
      continue;
    }
    PredicateValue governing(vlBytes);
    governing.setAllBits();
    if (!(flags == predicateFlags(pred, governing, es))) ++failures;
  }
  return failures;
}

// pnext starting from pfalse enumerates exactly the governing-active
// elements in ascending order, then goes empty with Z set.
inline int propPnextEnumeration(int cases, uint64_t seed) {
  std::mt19937_64 rng(seed);
  int failures = 0;
  for (int t = 0; t < cases; ++t) {
    const unsigned vlBytes = randomVlBytes(rng);
    const ElementSize es = randomEs(rng);
    const PredicateValue governing = randomPred(rng, vlBytes);
    PredicateValue cursor = pfalse(vlBytes);
    bool ok = true;
    std::vector<unsigned> visited;
    for (;;) {
      const auto [next, flags] = pnext(governing, cursor, es);
      if (!next.anyActive(es)) {
        if (!flags.z) ok = false;
        break;
      }
      if (next.countActive(es) != 1 || flags.z) {
        ok = false;
        break;
      }
      unsigned idx = 0;
      for (unsigned i = 0; i < next.elements(es); ++i)
        if (next.active(i, es)) idx = i;
      visited.push_back(idx);
      if (visited.size() > governing.elements(es)) {
        ok = false;  // runaway
        break;
      }
      cursor = next;
    }
    std::vector<unsigned> want;
    for (unsigned i = 0; i < governing.elements(es); ++i)
      if (governing.active(i, es)) want.push_back(i);
    if (!ok || visited != want) ++failures;
  }
  return failures;
}

// brkb: active lanes are exactly the governing-active lanes strictly
// before the first governing-active break lane; brka also keeps that
// break lane itself.
inline int propBreakPrefix(int cases, uint64_t seed) {
  std::mt19937_64 rng(seed);
  int failures = 0;
  for (int t = 0; t < cases; ++t) {
    const unsigned vlBytes = randomVlBytes(rng);
    const ElementSize es = randomEs(rng);
    const PredicateValue governing = randomPred(rng, vlBytes);
    const PredicateValue cond = randomPred(rng, vlBytes);
    const auto [before, fb] = breakPartition(BreakKind::Before, governing, cond, es);
    const auto [after, fa] = breakPartition(BreakKind::After, governing, cond, es);

    PredicateValue wantBefore(vlBytes), wantAfter(vlBytes);
    bool broken = false;
    for (unsigned i = 0; i < governing.elements(es); ++i) {
      if (!governing.active(i, es)) continue;
      if (broken) continue;
      const bool breaking = cond.active(i, es);
      if (!breaking) {
        wantBefore.setActive(i, es, true);
        wantAfter.setActive(i, es, true);
      } else {
        wantAfter.setActive(i, es, true);
        broken = true;
      }
    }
    if (!(before == wantBefore) || !(after == wantAfter)) {
      ++failures;
      continue;
    }
    if (!(fb == predicateFlags(before, governing, es)) ||
        !(fa == predicateFlags(after, governing, es)))
      ++failures;
  }
  return failures;
}

// First-fault loads: the FFR stays a prefix (monotone non-increasing
// byte mask), never grows, and lanes with FFR still set loaded the real
// memory bytes.
inline int propFfrLaws(int cases, uint64_t seed) {
  std::mt19937_64 rng(seed);
  int failures = 0;
  for (int t = 0; t < cases; ++t) {
    const unsigned vlBytes = randomVlBytes(rng);
    const ElementSize es = randomEs(rng);
    MemoryImage mem;
    // Mapping is page-granular, so to get a region that ends mid-vector
    // the mapped bytes run flush against the end of a page; the next
    // page stays unmapped.
    const uint64_t mappedLen = rng() % (2 * vlBytes + 1);
    const uint64_t base = 0x11000 - mappedLen;
    if (mappedLen) mem.map(base, mappedLen);
    std::vector<uint8_t> payload(mappedLen);
    for (auto& b : payload) b = static_cast<uint8_t>(rng());
    if (mappedLen) mem.write(base, payload.data(), mappedLen);

    const PredicateValue governing = randomPred(rng, vlBytes);
    PredicateValue ffr(vlBytes);
    ffr.setAllBits();
    const uint64_t start = base + rng() % (vlBytes + 1);
    VectorValue out(vlBytes);
    const auto fault = ldff1Contig(mem, governing, start, es, out, ffr);

    bool ok = true;
    // Prefix law: once a bit clears, everything after it is clear.
    bool seenClear = false;
    for (uint8_t b : ffr.bits) {
      if (!b) seenClear = true;
      else if (seenClear) ok = false;
    }
    if (fault) {
      // Reported faults only come from the first active element.
      unsigned firstActive = governing.elements(es);
      for (unsigned i = 0; i < governing.elements(es); ++i)
        if (governing.active(i, es)) {
          firstActive = i;
          break;
        }
      if (fault->elementIndex != static_cast<int64_t>(firstActive)) ok = false;
    } else {
      // Lanes whose FFR bit survived and were active must hold memory
      // contents; everything else is zero.
      for (unsigned i = 0; i < out.elements(es); ++i) {
        const unsigned byte = i * bytesOf(es);
        const bool live = governing.active(i, es) && ffr.bits[byte] != 0;
        if (live) {
          const uint64_t off = start + byte - base;
          if (off + bytesOf(es) > payload.size()) {
            ok = false;  // a live lane may not extend past the mapping
          } else {
            uint64_t want = 0;
            for (unsigned k = 0; k < bytesOf(es); ++k)
              want |= static_cast<uint64_t>(payload[off + k]) << (8 * k);
            if (out.get(i, es) != want) ok = false;
          }
        } else if (out.get(i, es) != 0) {
          ok = false;
        }
      }
    }
    if (!ok) ++failures;
  }
  return failures;
}

// Merging ops preserve inactive destination lanes; zeroing ops clear
// them.
inline int propMergeZeroLaws(int cases, uint64_t seed) {
  std::mt19937_64 rng(seed);
  int failures = 0;
  for (int t = 0; t < cases; ++t) {
    const unsigned vlBytes = randomVlBytes(rng);
    const ElementSize es = randomEs(rng);
    const PredicateValue governing = randomPred(rng, vlBytes);
    const VectorValue a = randomVec(rng, vlBytes);
    const VectorValue b = randomVec(rng, vlBytes);
    bool ok = true;

    const VectorValue merged = elementwise(ElementwiseOp::Add, governing, a, b, es);
    for (unsigned i = 0; i < a.elements(es); ++i) {
      if (governing.active(i, es)) {
        const uint64_t mask =
            bitsOf(es) == 64 ? ~0ull : ((1ull << bitsOf(es)) - 1);
        if (merged.get(i, es) != ((a.get(i, es) + b.get(i, es)) & mask)) ok = false;
      } else if (merged.get(i, es) != a.get(i, es)) {
        ok = false;
      }
    }

    const uint64_t scalar = rng();
    const VectorValue copied = cpyScalar(a, governing, scalar, es);
    for (unsigned i = 0; i < a.elements(es); ++i) {
      const uint64_t mask = bitsOf(es) == 64 ? ~0ull : ((1ull << bitsOf(es)) - 1);
      const uint64_t want =
          governing.active(i, es) ? (scalar & mask) : a.get(i, es);
      if (copied.get(i, es) != want) ok = false;
    }

    const VectorValue zeroed =
        movprfx(MovprfxForm::Zeroing, a, b, governing, es);
    for (unsigned i = 0; i < a.elements(es); ++i) {
      const uint64_t want = governing.active(i, es) ? b.get(i, es) : 0;
      if (zeroed.get(i, es) != want) ok = false;
    }
    const VectorValue kept = movprfx(MovprfxForm::Merging, a, b, governing, es);
    for (unsigned i = 0; i < a.elements(es); ++i) {
      const uint64_t want =
          governing.active(i, es) ? b.get(i, es) : a.get(i, es);
      if (kept.get(i, es) != want) ok = false;
    }
    if (!ok) ++failures;
  }
  return failures;
}

// Integer reductions vs an explicit left fold over active lanes.
inline int propReduceFold(int cases, uint64_t seed) {
  std::mt19937_64 rng(seed);
  int failures = 0;
  static const ReduceKind kinds[] = {ReduceKind::Eorv,  ReduceKind::Orv,
                                     ReduceKind::Andv,  ReduceKind::Uaddv,
                                     ReduceKind::Smaxv, ReduceKind::Sminv};
  for (int t = 0; t < cases; ++t) {
    const unsigned vlBytes = randomVlBytes(rng);
    const ElementSize es = randomEs(rng);
    const PredicateValue governing = randomPred(rng, vlBytes);
    const VectorValue src = randomVec(rng, vlBytes);
    const ReduceKind kind = kinds[rng() % 6];

    const uint64_t mask = bitsOf(es) == 64 ? ~0ull : ((1ull << bitsOf(es)) - 1);
    uint64_t acc;
    switch (kind) {
      case ReduceKind::Andv: acc = mask; break;
      case ReduceKind::Smaxv:
        acc = static_cast<uint64_t>(
            -(static_cast<int64_t>(1) << (bitsOf(es) - 1)));
        break;
      case ReduceKind::Sminv:
        acc = (1ull << (bitsOf(es) - 1)) - 1;
        break;
      default: acc = 0; break;
    }
    bool sum64 = kind == ReduceKind::Uaddv;
    for (unsigned i = 0; i < src.elements(es); ++i) {
      if (!governing.active(i, es)) continue;
      const uint64_t u = src.get(i, es);
      const int64_t s = src.getSigned(i, es);
      switch (kind) {
        case ReduceKind::Eorv: acc = (acc ^ u) & mask; break;
        case ReduceKind::Orv: acc = (acc | u) & mask; break;
        case ReduceKind::Andv: acc = (acc & u) & mask; break;
        case ReduceKind::Uaddv: acc += u; break;  // 64-bit accumulator
        case ReduceKind::Smaxv:
          acc = static_cast<uint64_t>(std::max(static_cast<int64_t>(acc), s));
          break;
        case ReduceKind::Sminv:
          acc = static_cast<uint64_t>(std::min(static_cast<int64_t>(acc), s));
          break;
      }
    }
    if (!sum64 && kind != ReduceKind::Smaxv && kind != ReduceKind::Sminv)
      acc &= mask;
    if (reduce(kind, governing, src, es) != acc) ++failures;
  }
  return failures;
}

}  // namespace svesim::props

#endif  // SVESIM_TESTS_PROPERTIES_HPP
