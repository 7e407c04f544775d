#include <doctest.h>

#include <fstream>
#include <sstream>

#include "algid/digest.hpp"
#include "algid/element_gen.hpp"
#include "helpers.hpp"

using namespace algid;

namespace {

std::string hex(const std::vector<std::uint8_t>& bytes) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  for (auto b : bytes) {
    out += digits[b >> 4];
    out += digits[b & 15];
  }
  return out;
}

std::string unhex(const std::string& text) {
  std::string out;
  for (std::size_t i = 0; i + 1 < text.size(); i += 2) out += static_cast<char>(std::stoi(text.substr(i, 2), nullptr, 16));
  return out;
}

const GroupParams& u40() { return GroupParams::official("ut40.4"); }

}  // namespace

TEST_CASE("hash widths") {
  CHECK(content_hash_bits(u40()) == 239);
  CHECK(content_hash_bytes(u40()) == 30);
  CHECK(content_hash_bits(GroupParams::official("ut32.4")) == 191);
  CHECK(content_hash_bytes(GroupParams::official("ut32.4")) == 24);
  CHECK(content_hash_bits(GroupParams::official("ut64.4")) == 383);
  CHECK(content_hash_bytes(GroupParams::official("ut64.4")) == 48);
}

TEST_CASE("BLAKE3 reference vectors") {
  const auto& u64 = GroupParams::official("ut64.4");
  // The extended output starts with the standard 32-byte hash.
  CHECK(hex(content_hash("", u64).bytes).substr(0, 64) ==
        "af1349b9f5f9a1a6a0404dea36dcc9499bcb25c9adc112b7cc9a93cae41f3262");
  CHECK(hex(content_hash("abc", u64).bytes).substr(0, 64) ==
        "6437b3ac38465133ffb63b75273a8db548c558465d79db03fd359c6cd5bd9d85");
  CHECK(hex(content_hash("", u40()).bytes) == "af1349b9f5f9a1a6a0404dea36dcc9499bcb25c9adc112b7cc9a93cae41f");
}

TEST_CASE("hash value is little-endian and masked") {
  const ContentHash h = content_hash("abc", u40());
  Rank v = 0;
  for (auto it = h.bytes.rbegin(); it != h.bytes.rend(); ++it) v = (v << 8) | *it;
  CHECK(h.value == (v & ((Rank(1) << 239) - 1)));
  CHECK(h.value < (Rank(1) << 239));
}

TEST_CASE("value elements") {
  const UtElement a = gen_value_element("abc", u40());
  CHECK(a == gen_value_element("abc", u40()));
  CHECK(a != gen_value_element("abd", u40()));
  CHECK(rank_of(a) == content_hash("abc", u40()).value % u40().p4());
  CHECK(encode(gen_value_element("", u40())).text() == "uO_7065ab486f65e65b451584b09af752510265e");
  CHECK(encode(gen_value_element("", GroupParams::official("ut32.4"))).text() == "ba_89248c7db65c56577cfa391aee09c");
  for (int i = 0; i < 200; ++i) {
    for (const GroupParams* g : GroupParams::officials()) {
      CHECK(classify(gen_value_element(std::to_string(i), *g)) != ElementClass::Ordered);
    }
  }
}

TEST_CASE("function elements are always ordered") {
  for (int i = 0; i < 200; ++i) {
    for (const GroupParams* g : GroupParams::officials()) {
      CHECK(classify(gen_function_element("f" + std::to_string(i), *g)) == ElementClass::Ordered);
    }
    CHECK(classify(gen_function_element(std::to_string(i), GroupParams::test(5))) == ElementClass::Ordered);
  }
  CHECK(gen_function_element("sum(x)", u40()) == gen_function_element("sum(x)", u40()));
}

TEST_CASE("small hash values are nudged into the ordered range") {
  ContentHash h;
  h.value = 12345;
  CHECK(rank_of(function_element_from_hash(h, u40())) == u40().p4() + 12345);
  h.value = u40().p4() - 1;
  CHECK(rank_of(function_element_from_hash(h, u40())) == 2 * u40().p4() - 1);
  h.value = u40().p4();
  CHECK(rank_of(function_element_from_hash(h, u40())) == u40().p4());
  CHECK(rank_of(value_element_from_hash(h, u40())) == 0);
}

TEST_CASE("golden generation fixtures") {
  std::ifstream in(ALGID_FIXTURES_DIR "/gen.tsv");
  REQUIRE(in);
  std::string line;
  std::getline(in, line);
  int rows = 0;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::string version, kind, content, digest;
    std::getline(fields, version, '\t');
    std::getline(fields, kind, '\t');
    std::getline(fields, content, '\t');
    std::getline(fields, digest, '\t');
    const auto& g = GroupParams::official(version);
    const std::string bytes = unhex(content);
    const UtElement e = kind == "value" ? gen_value_element(bytes, g) : gen_function_element(bytes, g);
    CHECK(encode(e).text() == digest);
    ++rows;
  }
  CHECK(rows == 18);
}
