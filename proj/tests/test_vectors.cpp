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

#include <bit>
#include <cmath>
#include <random>

#include "core/predicates.hpp"
#include "core/vectors.hpp"
#include "properties.hpp"

using namespace svesim;

namespace {

uint64_t dbits(double d) { return std::bit_cast<uint64_t>(d); }
double asDouble(uint64_t u) { return std::bit_cast<double>(u); }

}  // namespace

TEST_CASE("dup broadcasts an immediate") {
  const VectorValue z = dupImm(0, ElementSize::D, 16);
  CHECK(z.get(0, ElementSize::D) == 0);
  CHECK(z.get(1, ElementSize::D) == 0);

  const VectorValue minus = dupImm(-1, ElementSize::B, 16);
  for (uint8_t b : minus.bytes) CHECK(b == 0xFF);

  const VectorValue sevens = dupImm(7, ElementSize::S, 32);
  CHECK(sevens.elements(ElementSize::S) == 8);
  for (unsigned i = 0; i < 8; ++i) CHECK(sevens.get(i, ElementSize::S) == 7);
}

TEST_CASE("cpy merges the scalar into active lanes only") {
  const ElementSize d = ElementSize::D;
  VectorValue dst(16);
  dst.set(0, d, 9);
  dst.set(1, d, 9);
  PredicateValue governing(16);
  governing.setActive(1, d, true);
  const VectorValue out = cpyScalar(dst, governing, 4, d);
  CHECK(out.get(0, d) == 9);
  CHECK(out.get(1, d) == 4);

  CHECK(cpyScalar(dst, pfalse(16), 4, d) == dst);
  const VectorValue all = cpyScalar(dst, ptrue(d, 16), 4, d);
  CHECK(all == dupImm(4, d, 16));
}

TEST_CASE("index builds arithmetic progressions") {
  const VectorValue ramp = index(0, 1, ElementSize::D, 32);
  for (unsigned i = 0; i < 4; ++i) CHECK(ramp.get(i, ElementSize::D) == i);

  const VectorValue flat = index(5, 0, ElementSize::S, 16);
  for (unsigned i = 0; i < 4; ++i) CHECK(flat.get(i, ElementSize::S) == 5);

  const VectorValue evens = index(0, 2, ElementSize::B, 16);
  for (unsigned i = 0; i < 16; ++i) CHECK(evens.get(i, ElementSize::B) == 2 * i);
}

TEST_CASE("inc advances the induction variable by elements-per-vector") {
  CHECK(incScalar(0, ElementSize::D, 16) == 2);
  CHECK(incScalar(2, ElementSize::D, 32) == 6);
  CHECK(incScalar(0, ElementSize::B, 16) == 16);
}

TEST_CASE("index/inc induction scheme closes") {
  const ElementSize es = ElementSize::S;
  const unsigned vlBytes = 48;
  uint64_t counter = 0;
  for (int round = 0; round < 5; ++round) {
    const VectorValue chunk =
        index(static_cast<int64_t>(counter), 1, es, vlBytes);
    CHECK(chunk.get(0, es) == (counter & 0xFFFFFFFF));
    counter = incScalar(counter, es, vlBytes);
  }
}

TEST_CASE("predicated eor merges") {
  const ElementSize d = ElementSize::D;
  VectorValue a(16), b(16);
  a.set(0, d, 0x5);
  a.set(1, d, 0x5);
  b.set(0, d, 0x3);
  b.set(1, d, 0x3);
  PredicateValue governing(16);
  governing.setActive(0, d, true);
  const VectorValue r = elementwise(ElementwiseOp::Eor, governing, a, b, d);
  CHECK(r.get(0, d) == 0x6);
  CHECK(r.get(1, d) == 0x5);

  CHECK(elementwise(ElementwiseOp::Add, pfalse(16), a, b, d) == a);
}

TEST_CASE("fadd is exact on representable values") {
  const ElementSize d = ElementSize::D;
  VectorValue a(16), b(16);
  a.set(0, d, dbits(1.0));
  a.set(1, d, dbits(2.0));
  b.set(0, d, dbits(0.5));
  b.set(1, d, dbits(0.5));
  const VectorValue r =
      elementwise(ElementwiseOp::Fadd, ptrue(d, 16), a, b, d);
  CHECK(asDouble(r.get(0, d)) == 1.5);
  CHECK(asDouble(r.get(1, d)) == 2.5);
}

TEST_CASE("fmla fuses with a single rounding and merges") {
  const ElementSize d = ElementSize::D;
  VectorValue acc(16), a(16), b(16);
  acc.set(0, d, dbits(1.0));
  acc.set(1, d, dbits(1.0));
  a.set(0, d, dbits(2.0));
  a.set(1, d, dbits(3.0));
  b.set(0, d, dbits(10.0));
  b.set(1, d, dbits(10.0));
  PredicateValue governing(16);
  governing.setActive(0, d, true);
  const VectorValue r = fmla(acc, governing, a, b, d);
  CHECK(asDouble(r.get(0, d)) == 21.0);
  CHECK(asDouble(r.get(1, d)) == 1.0);
}

TEST_CASE("fmla agrees with scalar fma lane by lane") {
  const ElementSize d = ElementSize::D;
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> dist(-1e6, 1e6);
  for (int t = 0; t < 1000; ++t) {
    VectorValue acc(32), a(32), b(32);
    for (unsigned i = 0; i < 4; ++i) {
      acc.set(i, d, dbits(dist(rng)));
      a.set(i, d, dbits(dist(rng)));
      b.set(i, d, dbits(dist(rng)));
    }
    const VectorValue r = fmla(acc, ptrue(d, 32), a, b, d);
    for (unsigned i = 0; i < 4; ++i) {
      const double want = std::fma(asDouble(a.get(i, d)), asDouble(b.get(i, d)),
                                   asDouble(acc.get(i, d)));
      CHECK(r.get(i, d) == dbits(want));
    }
  }
}

TEST_CASE("reductions fold over active lanes with pinned identities") {
  const ElementSize b = ElementSize::B;
  VectorValue src(16);
  src.bytes[0] = 0xF0;
  src.bytes[1] = 0x0F;
  PredicateValue two(16);
  two.setActive(0, b, true);
  two.setActive(1, b, true);
  CHECK(reduce(ReduceKind::Eorv, two, src, b) == 0xFF);
  CHECK(reduce(ReduceKind::Eorv, pfalse(16), src, b) == 0);
  CHECK(reduce(ReduceKind::Andv, pfalse(16), src, b) == 0xFF);

  const ElementSize d = ElementSize::D;
  VectorValue nums(32);
  for (unsigned i = 0; i < 4; ++i) nums.set(i, d, i + 1);
  CHECK(reduce(ReduceKind::Uaddv, ptrue(d, 32), nums, d) == 10);
  CHECK(reduce(ReduceKind::Smaxv, ptrue(d, 32), nums, d) == 4);
  CHECK(reduce(ReduceKind::Sminv, ptrue(d, 32), nums, d) == 1);
}

TEST_CASE("fadda is the strict sequential sum") {
  const ElementSize d = ElementSize::D;
  VectorValue src(32);
  src.set(0, d, dbits(1e16));
  src.set(1, d, dbits(1.0));
  src.set(2, d, dbits(-1e16));
  src.set(3, d, dbits(1.0));
  CHECK(fadda(ptrue(d, 32), 0.0, src, d) == 1.0);
  CHECK(fadda(pfalse(32), 3.25, src, d) == 3.25);

  VectorValue one(16);
  one.set(0, d, dbits(42.5));
  PredicateValue single(16);
  single.setActive(0, d, true);
  CHECK(fadda(single, 0.0, one, d) == 42.5);
}

TEST_CASE("fadda propagates NaN and infinities like the scalar loop") {
  const ElementSize d = ElementSize::D;
  const double inf = std::numeric_limits<double>::infinity();
  VectorValue src(32);
  src.set(0, d, dbits(inf));
  src.set(1, d, dbits(-inf));  // inf + -inf -> NaN
  src.set(2, d, dbits(1.0));
  src.set(3, d, dbits(2.0));
  CHECK(std::isnan(fadda(ptrue(d, 32), 0.0, src, d)));

  VectorValue pos(32);
  pos.set(0, d, dbits(inf));
  for (unsigned i = 1; i < 4; ++i) pos.set(i, d, dbits(1.0));
  CHECK(fadda(ptrue(d, 32), 0.0, pos, d) == inf);
}

TEST_CASE("movprfx forms behave as discrete copies") {
  const ElementSize d = ElementSize::D;
  VectorValue dst(16), src(16);
  dst.set(0, d, 1);
  dst.set(1, d, 2);
  src.set(0, d, 10);
  src.set(1, d, 20);
  PredicateValue governing(16);
  governing.setActive(0, d, true);

  CHECK(movprfx(MovprfxForm::Unpredicated, dst, src, governing, d) == src);

  const VectorValue z = movprfx(MovprfxForm::Zeroing, dst, src, governing, d);
  CHECK(z.get(0, d) == 10);
  CHECK(z.get(1, d) == 0);

  const VectorValue m = movprfx(MovprfxForm::Merging, dst, src, governing, d);
  CHECK(m.get(0, d) == 10);
  CHECK(m.get(1, d) == 2);

  // Zeroing with an empty governing predicate clears the register.
  const VectorValue empty =
      movprfx(MovprfxForm::Zeroing, dst, src, pfalse(16), d);
  CHECK(empty == VectorValue(16));
}

TEST_CASE("umov extracts zero-extended elements") {
  const ElementSize d = ElementSize::D;
  VectorValue z(16);
  z.set(0, d, 42);
  z.set(1, d, 7);
  CHECK(extractElement(z, 0, d) == 42);
  CHECK(extractElement(z, 1, d) == 7);
  CHECK(extractElement(dupImm(13, ElementSize::S, 32), 5, ElementSize::S) == 13);
}

TEST_CASE("vector property suites (short runs)") {
  CHECK(props::propMergeZeroLaws(2000, 11) == 0);
  CHECK(props::propReduceFold(2000, 12) == 0);
}
