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

#ifndef SVESIM_CORE_TYPES_HPP
#define SVESIM_CORE_TYPES_HPP

#include <cstdint>
#include <cstring>
#include <stdexcept>
#include <string>
#include <vector>

namespace svesim {

constexpr unsigned kMinVlBits = 128;
constexpr unsigned kMaxVlBits = 2048;

/// Bit width of the scalable vector registers. Any multiple of 128 in
/// [128, 2048] is legal.
struct VectorLength {
  unsigned bits = kMinVlBits;

  static bool valid(unsigned bits) {
    return bits >= kMinVlBits && bits <= kMaxVlBits && bits % 128 == 0;
  }
  unsigned bytes() const { return bits / 8; }
};

enum class ElementSize : unsigned { B = 8, H = 16, S = 32, D = 64 };

inline unsigned bitsOf(ElementSize es) { return static_cast<unsigned>(es); }
inline unsigned bytesOf(ElementSize es) { return bitsOf(es) / 8; }

inline char suffixOf(ElementSize es) {
  switch (es) {
    case ElementSize::B: return 'b';
    case ElementSize::H: return 'h';
    case ElementSize::S: return 's';
    case ElementSize::D: return 'd';
  }
  return '?';
}

/// Vector register contents. Element 0 lives at the lowest byte offset.
/// The byte count always equals the effective VL in bytes.
struct VectorValue {
  std::vector<uint8_t> bytes;

  explicit VectorValue(unsigned vlBytes = 16) : bytes(vlBytes, 0) {}

  unsigned size() const { return static_cast<unsigned>(bytes.size()); }
  unsigned elements(ElementSize es) const { return size() / bytesOf(es); }

  // Little-endian element access, zero-extended.
  uint64_t get(unsigned i, ElementSize es) const {
    const unsigned w = bytesOf(es);
    uint64_t v = 0;
    std::memcpy(&v, bytes.data() + static_cast<size_t>(i) * w, w);
    return v;
  }
  int64_t getSigned(unsigned i, ElementSize es) const {
    const unsigned shift = 64 - bitsOf(es);
    return static_cast<int64_t>(get(i, es) << shift) >> shift;
  }
  void set(unsigned i, ElementSize es, uint64_t v) {
    const unsigned w = bytesOf(es);
    std::memcpy(bytes.data() + static_cast<size_t>(i) * w, &v, w);
  }

  bool operator==(const VectorValue&) const = default;
};

/// Predicate register contents: one control bit per vector byte. For
/// element size E bytes, element i is governed by bit i*E alone.
struct PredicateValue {
  std::vector<uint8_t> bits;  // one entry per vector byte, value 0 or 1

  explicit PredicateValue(unsigned vlBytes = 16) : bits(vlBytes, 0) {}

  unsigned size() const { return static_cast<unsigned>(bits.size()); }
  unsigned elements(ElementSize es) const { return size() / bytesOf(es); }

  bool active(unsigned i, ElementSize es) const {
    return bits[static_cast<size_t>(i) * bytesOf(es)] != 0;
  }
  void setActive(unsigned i, ElementSize es, bool on) {
    bits[static_cast<size_t>(i) * bytesOf(es)] = on ? 1 : 0;
  }
  void clearAll() { std::fill(bits.begin(), bits.end(), 0); }
  void setAllBits() { std::fill(bits.begin(), bits.end(), 1); }

  bool anyActive(ElementSize es) const {
    for (unsigned i = 0; i < elements(es); ++i)
      if (active(i, es)) return true;
    return false;
  }
  unsigned countActive(ElementSize es) const {
    unsigned n = 0;
    for (unsigned i = 0; i < elements(es); ++i)
      if (active(i, es)) ++n;
    return n;
  }

  bool operator==(const PredicateValue&) const = default;
};

struct Flags {
  bool n = false, z = false, c = false, v = false;
  bool operator==(const Flags&) const = default;
};

enum class FaultKind { Unmapped };

struct FaultInfo {
  uint64_t address = 0;
  int64_t elementIndex = -1;  // -1 for scalar accesses
  uint64_t instructionPc = 0;
  FaultKind kind = FaultKind::Unmapped;
};

enum class Status { Running, Returned, Faulted, LimitExceeded };

class SimError : public std::runtime_error {
 public:
  explicit SimError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace svesim

#endif  // SVESIM_CORE_TYPES_HPP
