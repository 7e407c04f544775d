// Regenerates fixtures/digests.tsv and fixtures/gen.tsv.
// Usage: make_fixtures OUTDIR

#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "algid/digest.hpp"
#include "algid/element_gen.hpp"
#include "algid/group.hpp"

using namespace algid;

namespace {

std::string hex(const std::string& bytes) {
  static const char* digits = "0123456789abcdef";
  std::string out;
  for (unsigned char c : bytes) {
    out += digits[c >> 4];
    out += digits[c & 15];
  }
  return out;
}

std::vector<Rank> sample_ranks(const GroupParams& g) {
  const Rank p = g.p();
  std::vector<Rank> ranks = {0, 1, 2, p - 1, p, p + 1, 4095, 4096, 4097, g.p2(), g.p3(),
                             g.p4() - 1, g.p4(), g.p4() + 1, g.p5(), g.p6() - 2, g.p6() - 1};
  std::mt19937_64 rng(7);
  for (const Rank& bound : {p, g.p4(), g.p6()}) {
    for (int i = 0; i < 4; ++i) {
      Rank r = 0;
      for (int w = 0; w < 6; ++w) r = (r << 64) | Rank(rng());
      ranks.push_back(r % bound);
    }
  }
  return ranks;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_fixtures OUTDIR\n";
    return 2;
  }
  const std::string dir = argv[1];

  std::ofstream digests(dir + "/digests.tsv");
  digests << "version\trank\tdigest\n";
  for (const GroupParams* g : GroupParams::officials()) {
    for (const Rank& r : sample_ranks(*g)) {
      digests << g->name() << '\t' << r.str() << '\t' << encode(element_from_rank(r, *g)).text() << '\n';
    }
  }

  std::ofstream gen(dir + "/gen.tsv");
  gen << "version\tkind\tcontent_hex\tdigest\n";
  const std::vector<std::string> contents = {"", "abc", std::string(1024, '\0')};
  for (const GroupParams* g : GroupParams::officials()) {
    for (const auto& c : contents) {
      gen << g->name() << "\tvalue\t" << hex(c) << '\t' << encode(gen_value_element(c, *g)).text() << '\n';
      gen << g->name() << "\tfunction\t" << hex(c) << '\t' << encode(gen_function_element(c, *g)).text() << '\n';
    }
  }
  return 0;
}
