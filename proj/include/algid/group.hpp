#pragma once

// Exact arithmetic in UT(4, F_p), the group of 4x4 upper unitriangular
// matrices over a prime field. Every identifier is one of these matrices.
//
//     | 1 e12 e13 e14 |
//     | 0  1  e23 e24 |
//     | 0  0   1  e34 |
//     | 0  0   0   1  |
//
// Elements are small immutable values (six cells plus a pointer to their
// interned GroupParams); all operations are pure.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace algid {

namespace detail {
struct ElementAccess;
struct ParamsFactory;
}  // namespace detail

using Rank = boost::multiprecision::cpp_int;

enum class ElementClass { Identity, Center, Hybrid, Ordered };

std::string_view to_string(ElementClass c);

/// Version descriptor. Instances are interned: two elements belong to the same
/// group iff their params pointers are equal.
class GroupParams {
 public:
  /// One of "ut32.4", "ut40.4", "ut64.4". Throws Errc::UnknownVersion.
  static const GroupParams& official(std::string_view name);
  /// Small test group without digest support; p must be prime, 5 <= p < 2^16.
  static const GroupParams& test(std::uint64_t p);
  static std::span<const GroupParams* const> officials();

  GroupParams(const GroupParams&) = delete;
  GroupParams& operator=(const GroupParams&) = delete;

  const std::string& name() const noexcept { return name_; }
  std::uint64_t prime() const noexcept { return prime_; }
  /// Number of digest characters; empty for test groups.
  std::optional<int> digest_length() const noexcept { return digest_length_; }
  bool has_digest() const noexcept { return digest_length_.has_value(); }
  /// Bit length of p.
  int prime_bits() const noexcept { return prime_bits_; }

  const Rank& p() const noexcept { return p1_; }
  const Rank& p2() const noexcept { return p2_; }
  const Rank& p3() const noexcept { return p3_; }
  const Rank& p4() const noexcept { return p4_; }
  const Rank& p5() const noexcept { return p5_; }
  const Rank& p6() const noexcept { return p6_; }

 private:
  GroupParams(std::string name, std::uint64_t prime, std::optional<int> digest_length);
  friend struct detail::ParamsFactory;

  std::string name_;
  std::uint64_t prime_;
  std::optional<int> digest_length_;
  int prime_bits_;
  Rank p1_, p2_, p3_, p4_, p5_, p6_;
};

bool is_prime(const Rank& n);

class UtElement {
 public:
  struct Cells {
    std::uint64_t e12 = 0, e13 = 0, e14 = 0, e23 = 0, e24 = 0, e34 = 0;
    friend bool operator==(const Cells&, const Cells&) = default;
  };

  static UtElement identity(const GroupParams& params) { return UtElement(params, Cells{}); }
  /// Throws Errc::InvalidArgument when a cell is >= p.
  static UtElement from_cells(const GroupParams& params, const Cells& cells);

  const GroupParams& params() const noexcept { return *params_; }
  const Cells& cells() const noexcept { return cells_; }
  std::uint64_t e12() const noexcept { return cells_.e12; }
  std::uint64_t e13() const noexcept { return cells_.e13; }
  std::uint64_t e14() const noexcept { return cells_.e14; }
  std::uint64_t e23() const noexcept { return cells_.e23; }
  std::uint64_t e24() const noexcept { return cells_.e24; }
  std::uint64_t e34() const noexcept { return cells_.e34; }

  bool is_identity() const noexcept { return cells_ == Cells{}; }

  friend bool operator==(const UtElement& a, const UtElement& b) noexcept {
    return a.params_ == b.params_ && a.cells_ == b.cells_;
  }

 private:
  UtElement(const GroupParams& params, const Cells& cells) : params_(&params), cells_(cells) {}
  friend struct detail::ElementAccess;

  const GroupParams* params_;
  Cells cells_;
};

/// Matrix product mod p. Throws Errc::VersionMismatch on mixed groups.
UtElement multiply(const UtElement& a, const UtElement& b);
inline UtElement operator*(const UtElement& a, const UtElement& b) { return multiply(a, b); }

UtElement inverse(const UtElement& a);
UtElement power(const UtElement& a, const Rank& n);
UtElement power(const UtElement& a, std::uint64_t n);

/// Left-to-right product; the empty product is the identity of `params`.
UtElement product(const GroupParams& params, std::span<const UtElement> elements);

/// m(a) = e34*p^5 + e12*p^4 + e24*p^3 + e23*p^2 + e13*p + e14
Rank rank_of(const UtElement& a);
/// Inverse of rank_of. Throws Errc::RankOutOfRange unless 0 <= v < p^6.
UtElement element_from_rank(const Rank& v, const GroupParams& params);

ElementClass classify(const UtElement& a);
ElementClass classify_rank(const Rank& v, const GroupParams& params);

bool commutes(const UtElement& a, const UtElement& b);

/// Swaps e12 and e23. lift and unlift are the same involution.
UtElement lift(const UtElement& a);
UtElement unlift(const UtElement& a);

/// 1 for the identity, p otherwise.
Rank element_order(const UtElement& a);

}  // namespace algid
