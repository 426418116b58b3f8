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

#include "vectors.hpp"

#include <bit>
#include <cmath>

namespace svesim {

namespace {

uint64_t fpBinop(ElementwiseOp op, uint64_t a, uint64_t b, ElementSize es) {
  if (es == ElementSize::D) {
    const double x = std::bit_cast<double>(a);
    const double y = std::bit_cast<double>(b);
    double r = 0.0;
    switch (op) {
      case ElementwiseOp::Fadd: r = x + y; break;
      case ElementwiseOp::Fsub: r = x - y; break;
      case ElementwiseOp::Fmul: r = x * y; break;
      default: break;
    }
    return std::bit_cast<uint64_t>(r);
  }
  const float x = std::bit_cast<float>(static_cast<uint32_t>(a));
  const float y = std::bit_cast<float>(static_cast<uint32_t>(b));
  float r = 0.0f;
  switch (op) {
    case ElementwiseOp::Fadd: r = x + y; break;
    case ElementwiseOp::Fsub: r = x - y; break;
    case ElementwiseOp::Fmul: r = x * y; break;
    default: break;
  }
  return std::bit_cast<uint32_t>(r);
}

}  // namespace

VectorValue dupImm(int64_t imm, ElementSize es, unsigned vlBytes) {
  VectorValue v(vlBytes);
  for (unsigned i = 0; i < v.elements(es); ++i)
    v.set(i, es, static_cast<uint64_t>(imm));
  return v;
}

VectorValue cpyScalar(VectorValue dst, const PredicateValue& governing,
                      uint64_t x, ElementSize es) {
  for (unsigned i = 0; i < dst.elements(es); ++i)
    if (governing.active(i, es)) dst.set(i, es, x);
  return dst;
}

VectorValue index(int64_t base, int64_t step, ElementSize es, unsigned vlBytes) {
  VectorValue v(vlBytes);
  for (unsigned i = 0; i < v.elements(es); ++i)
    v.set(i, es, static_cast<uint64_t>(base) + static_cast<uint64_t>(step) * i);
  return v;
}

uint64_t incScalar(uint64_t x, ElementSize es, unsigned vlBytes) {
  return x + vlBytes / bytesOf(es);
}

VectorValue elementwise(ElementwiseOp op, const PredicateValue& governing,
                        VectorValue a, const VectorValue& b, ElementSize es) {
  for (unsigned i = 0; i < a.elements(es); ++i) {
    if (!governing.active(i, es)) continue;
    const uint64_t x = a.get(i, es);
    const uint64_t y = b.get(i, es);
    uint64_t r = 0;
    switch (op) {
      case ElementwiseOp::Add: r = x + y; break;
      case ElementwiseOp::Sub: r = x - y; break;
      case ElementwiseOp::Mul: r = x * y; break;
      case ElementwiseOp::And: r = x & y; break;
      case ElementwiseOp::Orr: r = x | y; break;
      case ElementwiseOp::Eor: r = x ^ y; break;
      case ElementwiseOp::Fadd:
      case ElementwiseOp::Fsub:
      case ElementwiseOp::Fmul:
        r = fpBinop(op, x, y, es);
        break;
    }
    a.set(i, es, r);
  }
  return a;
}

VectorValue fmla(VectorValue acc, const PredicateValue& governing,
                 const VectorValue& a, const VectorValue& b, ElementSize es) {
  for (unsigned i = 0; i < acc.elements(es); ++i) {
    if (!governing.active(i, es)) continue;
    if (es == ElementSize::D) {
      const double r = std::fma(std::bit_cast<double>(a.get(i, es)),
                                std::bit_cast<double>(b.get(i, es)),
                                std::bit_cast<double>(acc.get(i, es)));
      acc.set(i, es, std::bit_cast<uint64_t>(r));
    } else {
      const float r =
          std::fmaf(std::bit_cast<float>(static_cast<uint32_t>(a.get(i, es))),
                    std::bit_cast<float>(static_cast<uint32_t>(b.get(i, es))),
                    std::bit_cast<float>(static_cast<uint32_t>(acc.get(i, es))));
      acc.set(i, es, std::bit_cast<uint32_t>(r));
    }
  }
  return acc;
}

uint64_t reduce(ReduceKind kind, const PredicateValue& governing,
                const VectorValue& src, ElementSize es) {
  const unsigned w = bitsOf(es);
  const uint64_t widthMask = w == 64 ? ~uint64_t{0} : (uint64_t{1} << w) - 1;
  switch (kind) {
    case ReduceKind::Eorv:
    case ReduceKind::Orv:
    case ReduceKind::Uaddv: {
      uint64_t acc = 0;
      for (unsigned i = 0; i < src.elements(es); ++i) {
        if (!governing.active(i, es)) continue;
        const uint64_t v = src.get(i, es);
        if (kind == ReduceKind::Eorv) acc ^= v;
        else if (kind == ReduceKind::Orv) acc |= v;
        else acc += v;
      }
      return acc;
    }
    case ReduceKind::Andv: {
      uint64_t acc = widthMask;
      for (unsigned i = 0; i < src.elements(es); ++i)
        if (governing.active(i, es)) acc &= src.get(i, es);
      return acc;
    }
    case ReduceKind::Smaxv:
    case ReduceKind::Sminv: {
      const int64_t lo = w == 64 ? INT64_MIN : -(int64_t{1} << (w - 1));
      const int64_t hi = w == 64 ? INT64_MAX : (int64_t{1} << (w - 1)) - 1;
      int64_t acc = kind == ReduceKind::Smaxv ? lo : hi;
      for (unsigned i = 0; i < src.elements(es); ++i) {
        if (!governing.active(i, es)) continue;
        const int64_t v = src.getSigned(i, es);
        acc = kind == ReduceKind::Smaxv ? std::max(acc, v) : std::min(acc, v);
      }
      return static_cast<uint64_t>(acc);
    }
  }
  return 0;
}

double fadda(const PredicateValue& governing, double init, const VectorValue& src,
             ElementSize es) {
  if (es == ElementSize::S) {
    float acc = static_cast<float>(init);
    for (unsigned i = 0; i < src.elements(es); ++i)
      if (governing.active(i, es))
        acc += std::bit_cast<float>(static_cast<uint32_t>(src.get(i, es)));
    return acc;
  }
  double acc = init;
  for (unsigned i = 0; i < src.elements(es); ++i)
    if (governing.active(i, es)) acc += std::bit_cast<double>(src.get(i, es));
  return acc;
}

VectorValue movprfx(MovprfxForm form, VectorValue dst, const VectorValue& src,
                    const PredicateValue& governing, ElementSize es) {
  switch (form) {
    case MovprfxForm::Unpredicated:
      return src;
    case MovprfxForm::Zeroing:
      for (unsigned i = 0; i < dst.elements(es); ++i)
        dst.set(i, es, governing.active(i, es) ? src.get(i, es) : 0);
      return dst;
    case MovprfxForm::Merging:
      for (unsigned i = 0; i < dst.elements(es); ++i)
        if (governing.active(i, es)) dst.set(i, es, src.get(i, es));
      return dst;
  }
  return dst;
}

uint64_t extractElement(const VectorValue& src, unsigned index, ElementSize es) {
  return src.get(index, es);
}

}  // namespace svesim
