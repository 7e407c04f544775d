#include "algid/digest.hpp"

#include <array>

#include "algid/errors.hpp"
#include "field.hpp"

namespace algid {

namespace {

constexpr std::array<std::int8_t, 256> make_digit_table() {
  std::array<std::int8_t, 256> table{};
  for (auto& v : table) v = -1;
  for (std::size_t i = 0; i < kAlphabet.size(); ++i) {
    table[static_cast<unsigned char>(kAlphabet[i])] = static_cast<std::int8_t>(i);
  }
  return table;
}

constexpr auto kDigitTable = make_digit_table();

int require_length(const GroupParams& version) {
  if (!version.has_digest()) {
    throw Error(Errc::NoDigestSupport, version.name() + " has no digest representation");
  }
  return *version.digest_length();
}

// `count` little-endian digits of v in `base`; v must fit.
std::string le_digits(Rank v, unsigned base, int count) {
  std::string out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const unsigned d = static_cast<unsigned>(v % base);
    out.push_back(kAlphabet[d]);
    v /= base;
  }
  return out;
}

// Little-endian value of `text` in `base`; NonCanonical on foreign symbols.
Rank le_value(std::string_view text, unsigned base, Errc on_error = Errc::NonCanonical) {
  Rank v = 0;
  for (auto it = text.rbegin(); it != text.rend(); ++it) {
    const int d = digit_value(*it);
    if (d < 0 || static_cast<unsigned>(d) >= base) {
      throw Error(on_error, std::string("symbol '") + *it + "' is not a base-" +
                                std::to_string(base) + " digit");
    }
    v = v * base + d;
  }
  return v;
}

void require_interval(const Rank& v, const Rank& lo, const Rank& hi, std::string_view layout) {
  if (v < lo || v >= hi) {
    throw Error(Errc::NonCanonical,
                "value " + v.str() + " does not belong to the " + std::string(layout) + " layout");
  }
}

bool is_alnum(char c) {
  const int d = digit_value(c);
  return d >= 0 && d < 62;
}

}  // namespace

int digit_value(char c) noexcept { return kDigitTable[static_cast<unsigned char>(c)]; }

Digest encode(const UtElement& a) {
  const GroupParams& version = a.params();
  const int length = require_length(version);
  const Rank v = rank_of(a);
  std::string text;
  switch (classify(a)) {
    case ElementClass::Identity:
      text.assign(static_cast<std::size_t>(length), '0');
      break;
    case ElementClass::Center: {
      const std::string h = le_digits(v, 16, length / 4);
      text = h.substr(0, 1) + kPlaceholder + h.substr(1) + kPlaceholder;
      text.resize(static_cast<std::size_t>(length), '0');
      break;
    }
    case ElementClass::Hybrid:
      text = le_digits(v % 4096, 64, 2) + kPlaceholder + le_digits(v / 4096, 16, length - 3);
      break;
    case ElementClass::Ordered:
      text = le_digits(v, 64, length);
      break;
  }
  return Digest(std::move(text), version);
}

UtElement decode(std::string_view text, const GroupParams& version) {
  const int length = require_length(version);
  if (text.size() != static_cast<std::size_t>(length)) {
    throw Error(Errc::NonCanonical, "digest must have " + std::to_string(length) +
                                        " characters, got " + std::to_string(text.size()));
  }
  const std::size_t first = text.find(kPlaceholder);
  if (first == std::string_view::npos) {
    const Rank v = le_value(text, 64);
    if (v != 0) require_interval(v, version.p4(), version.p6(), "ordered");
    return element_from_rank(v, version);
  }

  const std::size_t center_mark = static_cast<std::size_t>(length / 4 + 1);
  if (first == 1) {
    if (text.find(kPlaceholder, 2) != center_mark ||
        text.find(kPlaceholder, center_mark + 1) != std::string_view::npos) {
      throw Error(Errc::NonCanonical, "misplaced placeholder in center layout");
    }
    const std::string hex = std::string(text.substr(0, 1)) + std::string(text.substr(2, center_mark - 2));
    const Rank v = le_value(hex, 16);
    for (std::size_t i = center_mark + 1; i < text.size(); ++i) {
      if (text[i] != '0') throw Error(Errc::NonCanonical, "center layout padding must be '0'");
    }
    require_interval(v, 1, version.p(), "center");
    return element_from_rank(v, version);
  }
  if (first == 2) {
    if (text.find(kPlaceholder, 3) != std::string_view::npos) {
      throw Error(Errc::NonCanonical, "misplaced placeholder in hybrid layout");
    }
    const Rank v = le_value(text.substr(0, 2), 64) + 4096 * le_value(text.substr(3), 16);
    require_interval(v, version.p(), version.p4(), "hybrid");
    return element_from_rank(v, version);
  }
  throw Error(Errc::NonCanonical, "placeholder at position " + std::to_string(first));
}

UtElement import_legacy(std::string_view text, int base, ImportMode mode, const GroupParams& version) {
  const int length = require_length(version);
  if (base != 16 && base != 62) {
    throw Error(Errc::InvalidArgument, "legacy base must be 16 or 62");
  }
  if (text.empty()) throw Error(Errc::InvalidArgument, "empty legacy identifier");
  if (text.size() > static_cast<std::size_t>(length)) {
    throw Error(Errc::InvalidArgument, "legacy identifier longer than " + std::to_string(length));
  }
  const Rank v = le_value(text, static_cast<unsigned>(base), Errc::InvalidSymbol);
  if (mode == ImportMode::Commuting) return element_from_rank(v % version.p4(), version);
  return element_from_rank(version.p4() + v, version);
}

UtElement reserved_rho(const GroupParams& version) {
  if (!version.has_digest()) return element_from_rank(version.p4(), version);
  const int length = *version.digest_length();
  return decode(std::string(static_cast<std::size_t>(length - 1), '-') + '0', version);
}

UtElement reserved_theta(int i, const GroupParams& version) {
  if (i < 0 || i > kMaxTheta) {
    throw Error(Errc::ThetaExhausted, "theta index " + std::to_string(i) + " outside [0, 62]");
  }
  if (!version.has_digest()) return element_from_rank(version.p4() + 1 + i, version);
  const int length = *version.digest_length();
  return decode(std::string(static_cast<std::size_t>(length - 1), '-') + kAlphabet[static_cast<std::size_t>(i + 1)],
                version);
}

namespace {

constexpr int kRemovalPrefix = 20;

UtElement removal_from_token(std::string_view token, const GroupParams& version) {
  if (!version.has_digest()) {
    // Test groups: ranks after the theta block, folded into [p^4 + 64, p^6).
    const Rank span = version.p6() - version.p4() - 64;
    return element_from_rank(version.p4() + 64 + le_value(token, 62, Errc::InvalidToken) % span, version);
  }
  return decode(removal_digest_text(token, version), version);
}

}  // namespace

std::string removal_digest_text(std::string_view token, const GroupParams& version) {
  const int length = require_length(version);
  if (token.empty() || token.size() > static_cast<std::size_t>(length - kRemovalPrefix)) {
    throw Error(Errc::InvalidToken, "removal token length must be in [1, " +
                                        std::to_string(length - kRemovalPrefix) + "]");
  }
  for (char c : token) {
    if (!is_alnum(c)) throw Error(Errc::InvalidToken, std::string("invalid token character '") + c + "'");
  }
  std::string text(kRemovalPrefix, '-');
  text.append(static_cast<std::size_t>(length - kRemovalPrefix) - token.size(), '.');
  text.append(token);
  return text;
}

UtElement removal_by_index(std::uint64_t index, const GroupParams& version) {
  if (index == 0) throw Error(Errc::InvalidToken, "removal index is 1-based");
  return removal_from_token(std::to_string(index), version);
}

UtElement removal_by_name(std::string_view name, const GroupParams& version) {
  if (version.has_digest() && name.size() > static_cast<std::size_t>(*version.digest_length() - 21)) {
    throw Error(Errc::InvalidToken, "removal name too long");
  }
  if (name.empty()) throw Error(Errc::InvalidToken, "empty removal name");
  for (char c : name) {
    if (!is_alnum(c)) throw Error(Errc::InvalidToken, std::string("invalid name character '") + c + "'");
  }
  return removal_from_token(name, version);
}

std::string key_frame(std::string_view key, const GroupParams& version) {
  const int length = require_length(version);
  const std::size_t max_key = 2 + static_cast<std::size_t>((length - 3) / 2);
  if (key.empty() || key.size() > max_key) {
    throw Error(Errc::InvalidKey, "key length must be in [1, " + std::to_string(max_key) + "]");
  }
  for (char c : key) {
    if (!is_alnum(c)) throw Error(Errc::InvalidKey, std::string("invalid key character '") + c + "'");
  }
  std::string frame = key.size() == 1 ? std::string(key) + '-' : std::string(key.substr(0, 2));
  frame += kPlaceholder;
  for (unsigned char byte : key.substr(std::min<std::size_t>(2, key.size()))) {
    frame += kAlphabet[byte >> 4];
    frame += kAlphabet[byte & 0xF];
  }
  frame.resize(static_cast<std::size_t>(length), '0');
  return frame;
}

UtElement key_element(std::string_view key, const GroupParams& version) {
  const std::string frame = key_frame(key, version);
  const Rank raw = le_value(std::string_view(frame).substr(0, 2), 64) +
                   4096 * le_value(std::string_view(frame).substr(3), 16);
  const Rank r = version.p() + raw % (version.p4() - version.p());

  // Place r's base-p digits least-significant first into e24, e23, e13, e14.
  // Lifting makes e24 the only key cell that meets the value, so the digits
  // that differ between short keys must land there.
  const Rank p = version.p();
  std::array<std::uint64_t, 4> d{};
  Rank rest = r;
  for (auto& digit : d) {
    digit = static_cast<std::uint64_t>(rest % p);
    rest /= p;
  }
  if (d[0] == 0 && d[1] == 0 && d[2] == 0) return element_from_rank(r, version);
  UtElement::Cells cells;
  cells.e24 = d[0];
  cells.e23 = d[1];
  cells.e13 = d[2];
  cells.e14 = d[3];
  return detail::ElementAccess::make(version, cells);
}

}  // namespace algid
