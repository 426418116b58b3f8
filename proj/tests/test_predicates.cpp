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

#include <doctest.h>

#include <limits>

#include "core/predicates.hpp"
#include "properties.hpp"

using namespace svesim;

namespace {

PredicateValue fromLanes(std::initializer_list<bool> lanes, ElementSize es,
                         unsigned vlBytes) {
  PredicateValue p(vlBytes);
  unsigned i = 0;
  for (bool on : lanes) p.setActive(i++, es, on);
  return p;
}

}  // namespace

TEST_CASE("whilelt basic shapes at VL 128, D elements") {
  auto [p, f] = whilelt(0, 3, ElementSize::D, 16);
  CHECK(p.active(0, ElementSize::D));
  CHECK(p.active(1, ElementSize::D));
  CHECK(f.n);
  CHECK_FALSE(f.z);
  CHECK_FALSE(f.c);

  auto [p2, f2] = whilelt(2, 3, ElementSize::D, 16);
  CHECK(p2.active(0, ElementSize::D));
  CHECK_FALSE(p2.active(1, ElementSize::D));
  CHECK(f2.c);

  auto [p3, f3] = whilelt(4, 3, ElementSize::D, 16);
  CHECK_FALSE(p3.anyActive(ElementSize::D));
  CHECK(f3.z);
  CHECK_FALSE(f3.n);
  CHECK(f3.c);
}

TEST_CASE("whilelt at VL 256 gives four D lanes") {
  auto [p, f] = whilelt(0, 3, ElementSize::D, 32);
  CHECK(p.countActive(ElementSize::D) == 3);
  CHECK(p.active(2, ElementSize::D));
  CHECK_FALSE(p.active(3, ElementSize::D));
}

TEST_CASE("whilelt does not wrap near INT64_MAX") {
  const int64_t max = std::numeric_limits<int64_t>::max();
  // start + lane would overflow a 64-bit add; only one lane is below the
  // limit.
  auto [p, f] = whilelt(max - 1, max, ElementSize::D, 32);
  CHECK(p.countActive(ElementSize::D) == 1);
  CHECK(p.active(0, ElementSize::D));
}

TEST_CASE("ptrue sets only control bits; pfalse clears everything") {
  const PredicateValue pd = ptrue(ElementSize::D, 16);
  for (unsigned b = 0; b < 16; ++b)
    CHECK(pd.bits[b] == ((b == 0 || b == 8) ? 1 : 0));
  const PredicateValue pb = ptrue(ElementSize::B, 16);
  CHECK(pb.countActive(ElementSize::B) == 16);
  CHECK_FALSE(pfalse(16).anyActive(ElementSize::B));
}

TEST_CASE("pnext walks governing-active elements in order") {
  const ElementSize d = ElementSize::D;
  const unsigned vl = 32;  // 4 D lanes
  const PredicateValue governing = fromLanes({true, false, true, false}, d, vl);

  auto [first, f1] = pnext(governing, pfalse(vl), d);
  CHECK(first.active(0, d));
  CHECK(first.countActive(d) == 1);
  CHECK(f1.n);
  CHECK(f1.c);  // element 0 is not the last governing-active element

  auto [second, f2] = pnext(governing, first, d);
  CHECK(second.active(2, d));
  CHECK(second.countActive(d) == 1);
  CHECK_FALSE(f2.c);  // element 2 is the last active of governing

  auto [third, f3] = pnext(governing, second, d);
  CHECK_FALSE(third.anyActive(d));
  CHECK(f3.z);
}

TEST_CASE("brkb excludes the breaking element; brka includes it") {
  const ElementSize d = ElementSize::D;
  const unsigned vl = 32;
  const PredicateValue governing = ptrue(d, vl);
  const PredicateValue cond = fromLanes({false, false, true, false}, d, vl);

  auto [before, fb] = breakPartition(BreakKind::Before, governing, cond, d);
  CHECK(before.active(0, d));
  CHECK(before.active(1, d));
  CHECK_FALSE(before.active(2, d));
  CHECK_FALSE(before.active(3, d));
  CHECK(fb.c);

  auto [after, fa] = breakPartition(BreakKind::After, governing, cond, d);
  CHECK(after.active(2, d));
  CHECK_FALSE(after.active(3, d));
  CHECK(after.countActive(d) == 3);
}

TEST_CASE("brkb with no break found keeps the whole governing set") {
  const ElementSize b = ElementSize::B;
  const PredicateValue governing = ptrue(b, 16);
  auto [p, f] = breakPartition(BreakKind::Before, governing, pfalse(16), b);
  CHECK(p == governing);
  CHECK_FALSE(f.c);  // last stays active, drives the "last=>!break" branch
}

TEST_CASE("brkb breaking at the first element yields empty with Z") {
  const ElementSize b = ElementSize::B;
  const PredicateValue governing = ptrue(b, 16);
  PredicateValue cond(16);
  cond.setActive(0, b, true);
  auto [p, f] = breakPartition(BreakKind::Before, governing, cond, b);
  CHECK_FALSE(p.anyActive(b));
  CHECK(f.z);
}

TEST_CASE("cmpeq finds the NUL byte") {
  const ElementSize b = ElementSize::B;
  VectorValue src(16);
  src.bytes[0] = 'a';
  src.bytes[1] = 'b';
  src.bytes[2] = 0;
  src.bytes[3] = 'd';
  PredicateValue governing(16);
  for (unsigned i = 0; i < 4; ++i) governing.setActive(i, b, true);
  auto [p, f] = cmpeqImm(governing, src, 0, b);
  CHECK_FALSE(p.active(0, b));
  CHECK_FALSE(p.active(1, b));
  CHECK(p.active(2, b));
  CHECK_FALSE(p.active(3, b));
}

TEST_CASE("cmpeq identity when every element matches") {
  const ElementSize d = ElementSize::D;
  VectorValue src(32);
  for (unsigned i = 0; i < 4; ++i) src.set(i, d, 5);
  const PredicateValue governing = ptrue(d, 32);
  auto [p, f] = cmpeqImm(governing, src, 5, d);
  CHECK(p == governing);
  CHECK(f.n);
  CHECK_FALSE(f.c);
}

TEST_CASE("predicate logical operations") {
  const ElementSize d = ElementSize::D;
  const unsigned vl = 32;
  const PredicateValue governing = ptrue(d, vl);
  const PredicateValue a = fromLanes({true, true, false, false}, d, vl);
  const PredicateValue b = fromLanes({false, true, false, true}, d, vl);

  auto [bic, fbic] = predLogical(PredLogicalOp::And, governing, a, pfalse(vl), d);
  CHECK_FALSE(bic.anyActive(d));

  auto [orr, forr] = predLogical(PredLogicalOp::Orr, governing, a, pfalse(vl), d);
  CHECK(orr == a);

  auto [r, f] = predLogical(PredLogicalOp::Bic, governing, a, b, d);
  CHECK(r.active(0, d));
  CHECK_FALSE(r.active(1, d));
  CHECK_FALSE(r.active(2, d));
  CHECK_FALSE(r.active(3, d));
}

TEST_CASE("cterm encodes termination vs last-element continuation") {
  // Terminated (x1 == 0): tcont must not hold.
  Flags f1 = cterm(true, 0, 0, Flags{});
  CHECK(f1.n);
  CHECK_FALSE(f1.v);
  CHECK_FALSE(conditionHolds(Cond::Tcont, f1));

  // Not terminated, more lanes remain (C=1): continue the serial loop.
  Flags f2 = cterm(true, 0x1000, 0, Flags{false, false, true, false});
  CHECK_FALSE(f2.n);
  CHECK_FALSE(f2.v);
  CHECK(conditionHolds(Cond::Tcont, f2));

  // Not terminated but at the last lane (C=0): fall through.
  Flags f3 = cterm(true, 0x1000, 0, Flags{false, false, false, false});
  CHECK_FALSE(f3.n);
  CHECK(f3.v);
  CHECK_FALSE(conditionHolds(Cond::Tcont, f3));

  // ctermne terminates on inequality.
  Flags f4 = cterm(false, 1, 2, Flags{});
  CHECK(f4.n);
}

TEST_CASE("rdffr masks the FFR with the governing predicate") {
  const ElementSize b = ElementSize::B;
  PredicateValue ffr(16);
  ffr.setAllBits();
  CHECK(rdffr(ffr, ptrue(b, 16)).countActive(b) == 16);

  PredicateValue partial(16);
  partial.bits[0] = partial.bits[1] = 1;
  PredicateValue governing(16);
  governing.bits[1] = governing.bits[2] = governing.bits[3] = 1;
  const PredicateValue out = rdffr(partial, governing);
  CHECK(out.bits[0] == 0);
  CHECK(out.bits[1] == 1);
  CHECK(out.bits[2] == 0);
}

TEST_CASE("incp adds the active element count") {
  const ElementSize b = ElementSize::B;
  PredicateValue p(16);
  p.setActive(0, b, true);
  p.setActive(1, b, true);
  CHECK(incp(0, p, b) == 2);
  CHECK(incp(7, pfalse(16), b) == 7);

  const ElementSize d = ElementSize::D;
  PredicateValue q(32);
  q.setActive(0, d, true);
  q.setActive(2, d, true);
  q.setActive(3, d, true);
  CHECK(incp(5, q, d) == 8);
}

TEST_CASE("predicate property suites (short runs)") {
  CHECK(props::propWhilelt(2000, 1) == 0);
  CHECK(props::propPnextEnumeration(1000, 2) == 0);
  CHECK(props::propBreakPrefix(2000, 3) == 0);
}

TEST_CASE("brkb/incp/strlen consistency, all byte predicates at VL 128") {
  // incp over brkb(governing, cmpeq(...,0)) equals the index of the
  // first zero byte among governing-active lanes, or the governing
  // popcount when none.
  const ElementSize b = ElementSize::B;
  std::mt19937_64 rng(44);
  for (unsigned mask = 0; mask < 256; ++mask) {
    PredicateValue governing(16);
    for (unsigned i = 0; i < 8; ++i) governing.setActive(i, b, mask >> i & 1);
    VectorValue data(16);
    for (auto& byte : data.bytes) byte = static_cast<uint8_t>(rng() % 3);
    const auto [zeros, fz] = cmpeqImm(governing, data, 0, b);
    const auto [prefix, fp] =
        breakPartition(BreakKind::Before, governing, zeros, b);
    uint64_t want = 0;
    for (unsigned i = 0; i < 16; ++i) {
      if (!governing.active(i, b)) continue;
      if (data.bytes[i] == 0) break;
      ++want;
    }
    CHECK(incp(0, prefix, b) == want);
  }
}
