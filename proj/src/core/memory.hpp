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
// Sparse page-mapped byte store plus the vector memory-access semantics:
// contiguous load/store, load-and-broadcast, gather/scatter and the
// first-fault variants that update FFR instead of trapping.

#ifndef SVESIM_CORE_MEMORY_HPP
#define SVESIM_CORE_MEMORY_HPP

#include <array>
#include <optional>
#include <unordered_map>

#include "types.hpp"

namespace svesim {

constexpr uint64_t kPageSize = 4096;

struct MemFault {
  uint64_t address = 0;      // first unmapped byte
  int64_t elementIndex = -1; // faulting element, -1 for scalar access
};

class MemoryImage {
 public:
  void map(uint64_t addr, uint64_t len);
  void unmap(uint64_t addr, uint64_t len);
  bool isMapped(uint64_t addr, uint64_t len) const;

  /// Returns the first unmapped byte address, or nullopt on success.
  std::optional<uint64_t> read(uint64_t addr, uint8_t* out, uint64_t len) const;
  std::optional<uint64_t> write(uint64_t addr, const uint8_t* data, uint64_t len);

  std::vector<uint64_t> mappedPages() const;

 private:
  std::unordered_map<uint64_t, std::array<uint8_t, kPageSize>> pages_;
};

/// Contiguous predicated load (zeroing): active element i reads from
/// base + i*esize_bytes. Memory addressed only by inactive lanes is
/// never touched.
std::optional<MemFault> ld1Contig(const MemoryImage& mem,
                                  const PredicateValue& governing, uint64_t base,
                                  ElementSize es, VectorValue& out);

std::optional<MemFault> st1Contig(MemoryImage& mem, const PredicateValue& governing,
                                  uint64_t base, const VectorValue& src,
                                  ElementSize es);

/// Load-and-broadcast (zeroing): one element read once, replicated to
/// active lanes. No access at all when the governing predicate is empty.
std::optional<MemFault> ld1rBroadcast(const MemoryImage& mem,
                                      const PredicateValue& governing, uint64_t addr,
                                      ElementSize es, VectorValue& out);

/// First-fault contiguous load. A fault on the first active element is
/// reported; a fault on a later active element k is suppressed: lanes
/// before k load normally, lanes from k on are zero, and every FFR bit
/// from element k's byte position to the end is cleared.
std::optional<MemFault> ldff1Contig(const MemoryImage& mem,
                                    const PredicateValue& governing, uint64_t base,
                                    ElementSize es, VectorValue& out,
                                    PredicateValue& ffr);

/// Gather load from 64-bit per-lane addresses plus an immediate offset.
std::optional<MemFault> ld1Gather(const MemoryImage& mem,
                                  const PredicateValue& governing,
                                  const VectorValue& addrs, int64_t immOffset,
                                  ElementSize es, VectorValue& out);

std::optional<MemFault> ldff1Gather(const MemoryImage& mem,
                                    const PredicateValue& governing,
                                    const VectorValue& addrs, int64_t immOffset,
                                    ElementSize es, VectorValue& out,
                                    PredicateValue& ffr);

/// Scatter store; overlapping active addresses commit in ascending
/// element order. A fault leaves lower-indexed stores committed.
std::optional<MemFault> st1Scatter(MemoryImage& mem, const PredicateValue& governing,
                                   const VectorValue& addrs, const VectorValue& src,
                                   ElementSize es);

}  // namespace svesim

#endif  // SVESIM_CORE_MEMORY_HPP
