#pragma once

#include <random>
#include <string>

#include "algid/errors.hpp"
#include "algid/group.hpp"

namespace testing {

inline algid::Rank random_below(std::mt19937_64& rng, const algid::Rank& bound) {
  algid::Rank r = 0;
  for (int i = 0; i < 7; ++i) r = (r << 64) | algid::Rank(rng());
  return r % bound;
}

inline algid::UtElement random_element(std::mt19937_64& rng, const algid::GroupParams& g) {
  return algid::element_from_rank(random_below(rng, g.p6()), g);
}

inline algid::UtElement random_ordered(std::mt19937_64& rng, const algid::GroupParams& g) {
  return algid::element_from_rank(g.p4() + random_below(rng, g.p6() - g.p4()), g);
}

inline algid::UtElement random_commuting(std::mt19937_64& rng, const algid::GroupParams& g) {
  return algid::element_from_rank(random_below(rng, g.p4()), g);
}

inline algid::UtElement at(const algid::GroupParams& g, const char* rank) {
  return algid::element_from_rank(algid::Rank(rank), g);
}

template <class F>
algid::Errc error_of(F&& f) {
  try {
    f();
  } catch (const algid::Error& e) {
    return e.code();
  }
  throw std::logic_error("expected an algid::Error");
}

}  // namespace testing
