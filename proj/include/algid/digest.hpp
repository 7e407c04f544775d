#pragma once

// Textual digests. Three layouts, told apart by where the '_' placeholder sits:
//
//   identity  "000...0"
//   center    h0 '_' h1..h(L/4-1) '_' 0...0        (L/4 hex digits of v)
//   hybrid    q0 q1 '_' hex...                      (v mod 4096 in two base-64
//                                                    digits, v div 4096 in L-3 hex)
//   ordered   L base-64 digits, no '_'
//
// All positional values are little-endian: the most significant digit is the
// rightmost one.

#include <cstdint>
#include <string>
#include <string_view>

#include "algid/group.hpp"

namespace algid {

inline constexpr std::string_view kAlphabet =
    "0123456789abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ-.";
inline constexpr char kPlaceholder = '_';

/// Digit value of `c` in the 64-symbol alphabet, or -1.
int digit_value(char c) noexcept;

class Digest {
 public:
  Digest(std::string text, const GroupParams& version) : text_(std::move(text)), version_(&version) {}

  const std::string& text() const noexcept { return text_; }
  const GroupParams& version() const noexcept { return *version_; }

  friend bool operator==(const Digest& a, const Digest& b) noexcept {
    return a.version_ == b.version_ && a.text_ == b.text_;
  }

 private:
  std::string text_;
  const GroupParams* version_;
};

/// Throws Errc::NoDigestSupport for test groups.
Digest encode(const UtElement& a);
/// Strict inverse of encode; anything encode could not have produced is
/// rejected with Errc::NonCanonical.
UtElement decode(std::string_view text, const GroupParams& version);

enum class ImportMode { Ordered, Commuting };

/// Reads a legacy base-16 or base-62 identifier (little-endian). Commuting
/// mode reduces mod p^4; ordered mode offsets by p^4.
UtElement import_legacy(std::string_view text, int base, ImportMode mode, const GroupParams& version);

/// Reserved element rho, '-' * (L-1) + '0'.
UtElement reserved_rho(const GroupParams& version);
/// The i-th successor of rho, 0 <= i <= 62. Throws Errc::ThetaExhausted.
UtElement reserved_theta(int i, const GroupParams& version);
inline constexpr int kMaxTheta = 62;

/// Removal identifiers: 20 '-' then '.' padding then the token.
UtElement removal_by_index(std::uint64_t index, const GroupParams& version);
UtElement removal_by_name(std::string_view name, const GroupParams& version);
std::string removal_digest_text(std::string_view token, const GroupParams& version);

/// The hybrid-layout character frame for a map key.
std::string key_frame(std::string_view key, const GroupParams& version);
/// Element derived from a map key; always HYBRID.
UtElement key_element(std::string_view key, const GroupParams& version);

}  // namespace algid
