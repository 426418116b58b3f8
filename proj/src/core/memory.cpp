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

#include "memory.hpp"

#include <algorithm>

namespace svesim {

namespace {
uint64_t pageOf(uint64_t addr) { return addr / kPageSize; }
}  // namespace

void MemoryImage::map(uint64_t addr, uint64_t len) {
  if (len == 0) return;
  const uint64_t first = pageOf(addr);
  const uint64_t last = pageOf(addr + len - 1);
  for (uint64_t p = first; p <= last; ++p) pages_.try_emplace(p);
}

void MemoryImage::unmap(uint64_t addr, uint64_t len) {
  if (len == 0) return;
  const uint64_t first = pageOf(addr);
  const uint64_t last = pageOf(addr + len - 1);
  for (uint64_t p = first; p <= last; ++p) pages_.erase(p);
}

bool MemoryImage::isMapped(uint64_t addr, uint64_t len) const {
  if (len == 0) return true;
  const uint64_t first = pageOf(addr);
  const uint64_t last = pageOf(addr + len - 1);
  for (uint64_t p = first; p <= last; ++p)
    if (!pages_.count(p)) return false;
  return true;
}

std::optional<uint64_t> MemoryImage::read(uint64_t addr, uint8_t* out,
                                          uint64_t len) const {
  while (len > 0) {
    const auto it = pages_.find(pageOf(addr));
    if (it == pages_.end()) return addr;
    const uint64_t off = addr % kPageSize;
    const uint64_t chunk = std::min(len, kPageSize - off);
    std::copy_n(it->second.data() + off, chunk, out);
    addr += chunk;
    out += chunk;
    len -= chunk;
  }
  return std::nullopt;
}

std::optional<uint64_t> MemoryImage::write(uint64_t addr, const uint8_t* data,
                                           uint64_t len) {
  if (!isMapped(addr, len)) {
    uint64_t a = addr;
    while (pages_.count(pageOf(a))) a = (pageOf(a) + 1) * kPageSize;
    return a;
  }
  while (len > 0) {
    auto& page = pages_[pageOf(addr)];
    const uint64_t off = addr % kPageSize;
    const uint64_t chunk = std::min(len, kPageSize - off);
    std::copy_n(data, chunk, page.data() + off);
    addr += chunk;
    data += chunk;
    len -= chunk;
  }
  return std::nullopt;
}

std::vector<uint64_t> MemoryImage::mappedPages() const {
  std::vector<uint64_t> v;
  v.reserve(pages_.size());
  for (const auto& [p, _] : pages_) v.push_back(p * kPageSize);
  std::sort(v.begin(), v.end());
  return v;
}

namespace {

// First unmapped byte of [addr, addr+len), or nullopt if fully mapped.
std::optional<uint64_t> firstUnmapped(const MemoryImage& mem, uint64_t addr,
                                      uint64_t len) {
  for (uint64_t a = addr; a < addr + len; ++a)
    if (!mem.isMapped(a, 1)) return a;
  return std::nullopt;
}

}  // namespace

std::optional<MemFault> ld1Contig(const MemoryImage& mem,
                                  const PredicateValue& governing, uint64_t base,
                                  ElementSize es, VectorValue& out) {
  const unsigned w = bytesOf(es);
  VectorValue result(out.size());
  for (unsigned i = 0; i < result.elements(es); ++i) {
    if (!governing.active(i, es)) continue;
    const uint64_t addr = base + static_cast<uint64_t>(i) * w;
    uint64_t v = 0;
    if (auto bad = mem.read(addr, reinterpret_cast<uint8_t*>(&v), w))
      return MemFault{*bad, static_cast<int64_t>(i)};
    result.set(i, es, v);
  }
  out = result;
  return std::nullopt;
}

std::optional<MemFault> st1Contig(MemoryImage& mem, const PredicateValue& governing,
                                  uint64_t base, const VectorValue& src,
                                  ElementSize es) {
  const unsigned w = bytesOf(es);
  for (unsigned i = 0; i < src.elements(es); ++i) {
    if (!governing.active(i, es)) continue;
    const uint64_t addr = base + static_cast<uint64_t>(i) * w;
    if (auto bad = firstUnmapped(mem, addr, w))
      return MemFault{*bad, static_cast<int64_t>(i)};
    const uint64_t v = src.get(i, es);
    mem.write(addr, reinterpret_cast<const uint8_t*>(&v), w);
  }
  return std::nullopt;
}

std::optional<MemFault> ld1rBroadcast(const MemoryImage& mem,
                                      const PredicateValue& governing, uint64_t addr,
                                      ElementSize es, VectorValue& out) {
  VectorValue result(out.size());
  if (governing.anyActive(es)) {
    const unsigned w = bytesOf(es);
    uint64_t v = 0;
    if (auto bad = mem.read(addr, reinterpret_cast<uint8_t*>(&v), w)) {
      int64_t firstActive = 0;
      for (unsigned i = 0; i < result.elements(es); ++i)
        if (governing.active(i, es)) { firstActive = i; break; }
      return MemFault{*bad, firstActive};
    }
    for (unsigned i = 0; i < result.elements(es); ++i)
      if (governing.active(i, es)) result.set(i, es, v);
  }
  out = result;
  return std::nullopt;
}

std::optional<MemFault> ldff1Contig(const MemoryImage& mem,
                                    const PredicateValue& governing, uint64_t base,
                                    ElementSize es, VectorValue& out,
                                    PredicateValue& ffr) {
  const unsigned w = bytesOf(es);
  VectorValue result(out.size());
  bool seenActive = false;
  for (unsigned i = 0; i < result.elements(es); ++i) {
    if (!governing.active(i, es)) continue;
    const uint64_t addr = base + static_cast<uint64_t>(i) * w;
    uint64_t v = 0;
    if (auto bad = mem.read(addr, reinterpret_cast<uint8_t*>(&v), w)) {
      if (!seenActive) return MemFault{*bad, static_cast<int64_t>(i)};
      // Suppressed: clear FFR from this element's byte position onward.
      for (unsigned b = i * w; b < ffr.size(); ++b) ffr.bits[b] = 0;
      out = result;
      return std::nullopt;
    }
    seenActive = true;
    result.set(i, es, v);
  }
  out = result;
  return std::nullopt;
}

std::optional<MemFault> ld1Gather(const MemoryImage& mem,
                                  const PredicateValue& governing,
                                  const VectorValue& addrs, int64_t immOffset,
                                  ElementSize es, VectorValue& out) {
  const unsigned w = bytesOf(es);
  VectorValue result(out.size());
  for (unsigned i = 0; i < result.elements(es); ++i) {
    if (!governing.active(i, es)) continue;
    const uint64_t addr = addrs.get(i, ElementSize::D) + static_cast<uint64_t>(immOffset);
    uint64_t v = 0;
    if (auto bad = mem.read(addr, reinterpret_cast<uint8_t*>(&v), w))
      return MemFault{*bad, static_cast<int64_t>(i)};
    result.set(i, es, v);
  }
  out = result;
  return std::nullopt;
}

std::optional<MemFault> ldff1Gather(const MemoryImage& mem,
                                    const PredicateValue& governing,
                                    const VectorValue& addrs, int64_t immOffset,
                                    ElementSize es, VectorValue& out,
                                    PredicateValue& ffr) {
  const unsigned w = bytesOf(es);
  VectorValue result(out.size());
  bool seenActive = false;
  for (unsigned i = 0; i < result.elements(es); ++i) {
    if (!governing.active(i, es)) continue;
    const uint64_t addr = addrs.get(i, ElementSize::D) + static_cast<uint64_t>(immOffset);
    uint64_t v = 0;
    if (auto bad = mem.read(addr, reinterpret_cast<uint8_t*>(&v), w)) {
      if (!seenActive) return MemFault{*bad, static_cast<int64_t>(i)};
      for (unsigned b = i * w; b < ffr.size(); ++b) ffr.bits[b] = 0;
      out = result;
      return std::nullopt;
    }
    seenActive = true;
    result.set(i, es, v);
  }
  out = result;
  return std::nullopt;
}

std::optional<MemFault> st1Scatter(MemoryImage& mem, const PredicateValue& governing,
                                   const VectorValue& addrs, const VectorValue& src,
                                   ElementSize es) {
  const unsigned w = bytesOf(es);
  for (unsigned i = 0; i < src.elements(es); ++i) {
    if (!governing.active(i, es)) continue;
    const uint64_t addr = addrs.get(i, ElementSize::D);
    if (auto bad = firstUnmapped(mem, addr, w))
      return MemFault{*bad, static_cast<int64_t>(i)};
    const uint64_t v = src.get(i, es);
    mem.write(addr, reinterpret_cast<const uint8_t*>(&v), w);
  }
  return std::nullopt;
}

}  // namespace svesim
