#pragma once

// Internal helpers: arithmetic in F_p for p < 2^64 and unchecked element
// construction for code that already guarantees reduced cells.

#include <cstdint>
#include <optional>
#include <string>

#include "algid/group.hpp"

namespace algid::detail {

struct ElementAccess {
  static UtElement make(const GroupParams& params, const UtElement::Cells& cells) {
    return UtElement(params, cells);
  }
};

struct ParamsFactory {
  static const GroupParams* make(std::string name, std::uint64_t prime, std::optional<int> digest_length) {
    return new GroupParams(std::move(name), prime, digest_length);
  }
};

inline std::uint64_t add_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  // a, b < p; p may exceed 2^63 so a + b can wrap.
  return a >= p - b ? a - (p - b) : a + b;
}

inline std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return a >= b ? a - b : a + (p - b);
}

inline std::uint64_t neg_mod(std::uint64_t a, std::uint64_t p) { return a == 0 ? 0 : p - a; }

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  if (p <= 0xFFFFFFFFull) return (a * b) % p;
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

}  // namespace algid::detail
