#include "algid/element_gen.hpp"

#include <blake3.h>

#include "algid/errors.hpp"

namespace algid {

unsigned content_hash_bits(const GroupParams& version) {
  return 6u * static_cast<unsigned>(version.prime_bits()) - 1u;
}

std::size_t content_hash_bytes(const GroupParams& version) { return (content_hash_bits(version) + 7) / 8; }

ContentHash content_hash(std::span<const std::uint8_t> content, const GroupParams& version) {
  ContentHash out;
  out.bytes.resize(content_hash_bytes(version));
  blake3_hasher hasher;
  blake3_hasher_init(&hasher);
  blake3_hasher_update(&hasher, content.data(), content.size());
  blake3_hasher_finalize(&hasher, out.bytes.data(), out.bytes.size());

  Rank v = 0;
  for (auto it = out.bytes.rbegin(); it != out.bytes.rend(); ++it) v = (v << 8) | *it;
  const Rank mask = (Rank(1) << content_hash_bits(version)) - 1;
  out.value = v & mask;
  return out;
}

ContentHash content_hash(std::string_view content, const GroupParams& version) {
  return content_hash(std::span(reinterpret_cast<const std::uint8_t*>(content.data()), content.size()), version);
}

UtElement value_element_from_hash(const ContentHash& hash, const GroupParams& version) {
  return element_from_rank(hash.value % version.p4(), version);
}

UtElement function_element_from_hash(const ContentHash& hash, const GroupParams& version) {
  // Official primes sit just below 2^bits, so the 6*bits-1 bit hash is always
  // below p^6. Small test primes can overshoot; fold those back first.
  const Rank v = hash.value >= version.p6() ? Rank(hash.value % version.p6()) : hash.value;
  if (v < version.p4()) return element_from_rank(v + version.p4(), version);
  return element_from_rank(v, version);
}

UtElement gen_value_element(std::span<const std::uint8_t> content, const GroupParams& version) {
  return value_element_from_hash(content_hash(content, version), version);
}

UtElement gen_value_element(std::string_view content, const GroupParams& version) {
  return value_element_from_hash(content_hash(content, version), version);
}

UtElement gen_function_element(std::span<const std::uint8_t> content, const GroupParams& version) {
  return function_element_from_hash(content_hash(content, version), version);
}

UtElement gen_function_element(std::string_view content, const GroupParams& version) {
  return function_element_from_hash(content_hash(content, version), version);
}

}  // namespace algid
