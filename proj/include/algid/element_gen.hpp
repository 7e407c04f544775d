#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "algid/group.hpp"

namespace algid {

/// Truncated BLAKE3 output: the first ceil((6*bits(p)-1)/8) bytes, read as a
/// little-endian integer with everything above bit 6*bits(p)-1 cleared.
/// For ut40.4 that is 30 bytes holding a 239-bit value.
struct ContentHash {
  std::vector<std::uint8_t> bytes;
  Rank value;
};

unsigned content_hash_bits(const GroupParams& version);
std::size_t content_hash_bytes(const GroupParams& version);

ContentHash content_hash(std::span<const std::uint8_t> content, const GroupParams& version);
ContentHash content_hash(std::string_view content, const GroupParams& version);

/// element_from_rank(hash mod p^4): never ordered.
UtElement value_element_from_hash(const ContentHash& hash, const GroupParams& version);
/// element_from_rank(hash), nudged by +p^4 when the hash lands below p^4:
/// always ordered.
UtElement function_element_from_hash(const ContentHash& hash, const GroupParams& version);

UtElement gen_value_element(std::span<const std::uint8_t> content, const GroupParams& version);
UtElement gen_value_element(std::string_view content, const GroupParams& version);
UtElement gen_function_element(std::span<const std::uint8_t> content, const GroupParams& version);
UtElement gen_function_element(std::string_view content, const GroupParams& version);

}  // namespace algid
