#include "algid/selftest.hpp"

#include <array>
#include <chrono>
#include <functional>
#include <random>
#include <sstream>

#include "algid/analysis.hpp"
#include "algid/digest.hpp"
#include "algid/errors.hpp"
#include "algid/group.hpp"
#include "algid/workflow.hpp"

namespace algid {

namespace {

using Matrix = std::array<std::array<std::uint64_t, 4>, 4>;

Matrix to_matrix(const UtElement& a) {
  Matrix m{};
  for (int i = 0; i < 4; ++i) m[i][i] = 1;
  m[0][1] = a.e12();
  m[0][2] = a.e13();
  m[0][3] = a.e14();
  m[1][2] = a.e23();
  m[1][3] = a.e24();
  m[2][3] = a.e34();
  return m;
}

Matrix matmul(const Matrix& a, const Matrix& b, std::uint64_t p) {
  Matrix c{};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      std::uint64_t s = 0;
      for (int k = 0; k < 4; ++k) s = (s + a[i][k] * b[k][j]) % p;
      c[i][j] = s;
    }
  }
  return c;
}

struct Context {
  const GroupParams& g;
  std::mt19937_64 rng;
  unsigned trials;

  UtElement random_element() {
    std::uint64_t n = 1;
    for (int i = 0; i < 6; ++i) n *= g.prime();
    return element_from_rank(Rank(std::uniform_int_distribution<std::uint64_t>(0, n - 1)(rng)), g);
  }
};

using Check = std::function<std::string(Context&, const Census&)>;

std::string fail(const std::string& what) { throw Error(Errc::InvalidArgument, what); }

}  // namespace

std::vector<SelftestCheck> run_selftest(const SelftestOptions& options) {
  const std::uint64_t p = options.prime;
  if (p > 13) throw Error(Errc::RefusedSize, "selftest limited to p <= 13");
  const GroupParams& g = GroupParams::test(p);
  Context ctx{g, std::mt19937_64(options.seed), options.random_trials};
  const std::uint64_t p2 = p * p;
  const std::uint64_t p3 = p2 * p;
  const std::uint64_t p6 = p3 * p3;

  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  Census census;

  const std::vector<std::pair<std::string, Check>> checks = {
      {"census",
       [&](Context&, const Census&) {
         census = empirical_census(p, {.quotient_by_center = p > 5, .threads = 0});
         return std::to_string(census.elements) + " elements";
       }},
      {"element orders",
       [&](Context&, const Census& c) {
         if (c.elements == 0) fail("census unavailable");
         for (const auto& [order, count] : c.order_histogram) {
           if (order != 1 && order != p) fail("found order " + std::to_string(order));
           if (order == 1 && count != 1) fail("several identities");
         }
         return std::to_string(c.elements - 1) + " non-identity elements of order " + std::to_string(p);
       }},
      {"commuting pairs",
       [&](Context&, const Census& c) {
         if (c.elements == 0) fail("census unavailable");
         const std::uint64_t expected = (2 * p3 + p2 - 2 * p) * p6;
         if (c.commuting_pairs != expected) {
           fail(std::to_string(c.commuting_pairs) + " != " + std::to_string(expected));
         }
         return std::to_string(c.commuting_pairs);
       }},
      {"hybrid subgroup abelian",
       [&](Context&, const Census& c) {
         if (c.elements == 0) fail("census unavailable");
         if (c.abelian_subgroup_size != p * p3) fail("size " + std::to_string(c.abelian_subgroup_size));
         if (!c.abelian_subgroup_closed) fail("not closed");
         if (!c.abelian_subgroup_commutative) fail("not commutative");
         // Same subgroup seen through ranks: rank < p^4.
         for (std::uint64_t r = 0; r < p * p3; ++r) {
           const ElementClass k = classify_rank(Rank(r), g);
           if (k == ElementClass::Ordered) fail("rank " + std::to_string(r) + " classified ordered");
         }
         return std::to_string(c.abelian_subgroup_size) + " elements";
       }},
      {"rank bijection",
       [&](Context&, const Census&) {
         for (std::uint64_t r = 0; r < p6; ++r) {
           const UtElement e = element_from_rank(Rank(r), g);
           if (rank_of(e) != r) fail("rank " + std::to_string(r) + " does not round-trip");
           if (classify(e) != classify_rank(Rank(r), g)) fail("class mismatch at " + std::to_string(r));
         }
         return std::to_string(p6) + " ranks";
       }},
      {"group axioms",
       [&](Context& c, const Census&) {
         const UtElement one = UtElement::identity(g);
         for (unsigned t = 0; t < c.trials; ++t) {
           const UtElement a = c.random_element(), b = c.random_element(), d = c.random_element();
           if (to_matrix(a * b) != matmul(to_matrix(a), to_matrix(b), p)) fail("product differs from matrix product");
           if ((a * b) * d != a * (b * d)) fail("associativity");
           if (a * one != a || one * a != a) fail("identity");
           if (a * inverse(a) != one || inverse(a) * a != one) fail("inverse");
         }
         return std::to_string(c.trials) + " triples";
       }},
      {"lift involution",
       [&](Context&, const Census&) {
         for (std::uint64_t r = 0; r < p6; ++r) {
           const UtElement e = element_from_rank(Rank(r), g);
           if (lift(lift(e)) != e || unlift(lift(e)) != e) fail("rank " + std::to_string(r));
         }
         return "exhaustive";
       }},
      {"output factorization",
       [&](Context& c, const Census&) {
         const unsigned per_k = std::max(1u, c.trials / 10);
         for (int k = 1; k <= 10; ++k) {
           for (unsigned t = 0; t < per_k; ++t) {
             const UtElement v = c.random_element(), f = c.random_element();
             const UtElement x = v * f * inverse(v);
             const auto factors = factor_outputs(x, k);
             if (static_cast<int>(factors.size()) != k || product(g, factors) != x) {
               fail("k=" + std::to_string(k) + " factors do not multiply back");
             }
           }
         }
         return "k = 1..10, " + std::to_string(per_k) + " pairs each";
       }},
      {"repetition period",
       [&](Context& c, const Census&) {
         for (unsigned t = 0; t < 1000; ++t) {
           const UtElement u = c.random_element(), f = c.random_element(), h = c.random_element();
           if (u * power(f * h, p) != u) fail("u (fh)^p != u");
         }
         return "u (fg)^" + std::to_string(p) + " = u";
       }},
  };

  std::vector<SelftestCheck> results;
  for (const auto& [name, check] : checks) {
    SelftestCheck r{name, false, "", 0};
    const double spent = std::chrono::duration<double>(Clock::now() - start).count();
    if (spent > options.budget_seconds) {
      r.detail = "skipped: budget exhausted";
      results.push_back(r);
      continue;
    }
    const auto t0 = Clock::now();
    try {
      r.detail = check(ctx, census);
      r.passed = true;
    } catch (const std::exception& e) {
      r.detail = e.what();
    }
    r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    results.push_back(r);
  }
  return results;
}

}  // namespace algid
