#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "algid/analysis.hpp"
#include "helpers.hpp"

using namespace algid;
using testing::error_of;

namespace {

bool near(double got, double want, double rel = 0.02) { return std::fabs(got - want) <= rel * std::fabs(want); }

}  // namespace

TEST_CASE("commuting probability") {
  CHECK(near(commuting_probability_ut((Rank(1) << 32) - 5), 2.52e-29));
  CHECK(near(commuting_probability_ut((Rank(1) << 40) - 87), 1.50e-36));
  CHECK(near(commuting_probability_ut(GroupParams::official("ut64.4").p()), 3.2e-58));
  CHECK(commuting_probability_ut_exact(5) == Rational(265, 15625));
  CHECK(error_of([] { commuting_probability_ut_exact(3); }) == Errc::InvalidArgument);
}

TEST_CASE("group orders") {
  CHECK(group_order(GroupFamily::symmetric(5)) == 120);
  CHECK(group_order(GroupFamily::alternating(5)) == 60);
  CHECK(group_order(GroupFamily::general_linear(2, 3)) == 48);
  CHECK(group_order(GroupFamily::special_linear(2, 3)) == 24);
  CHECK(group_order(GroupFamily::wreath_product({{2, 2}})) == 8);  // W(2,2) is D_8
  CHECK(group_order(GroupFamily::unitriangular4(5)) == 15625);
}

TEST_CASE("compatibility gaps of the candidate groups") {
  const auto rows = table1_report();
  REQUIRE(rows.size() == 10);
  // SL(4,7129) is pinned to its exact value 1 - |SL(4,7129)| / 2^192; the
  // published 0.010 is not reproducible (see the acceptance suite).
  const double want[] = {0.123, 0.561, 0.0, 2.40e-5, 0.012, 1.43e-6, 0.0053505549398989, 0.998, 6.98e-9, 4.75e-10};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CAPTURE(rows[i].family.label());
    if (want[i] == 0.0) {
      CHECK(compatibility_gap_exact(rows[i].order, rows[i].beta) == 0);
    } else {
      CHECK(near(rows[i].gap, want[i]));
    }
  }
  CHECK(rows[9].beta == 240);
  CHECK(rows[8].commuting_probability.has_value());
  CHECK_FALSE(rows[0].commuting_probability.has_value());
  CHECK(rows[9].omega_min == (Rank(1) << 40) - 87);
  CHECK(rows[9].family.label() == "UT4(2^40-87)");
  CHECK(rows[2].family.label() == "D_2^192");
}

TEST_CASE("ambiguity and expected expressions") {
  const double pc = commuting_probability_ut((Rank(1) << 40) - 87);
  CHECK(ambiguity_probability(pc, 2) == doctest::Approx(pc).epsilon(1e-12));
  const auto n = expected_expressions(pc, 10000000);
  REQUIRE(n.has_value());
  CHECK(*n >= 2.5e15);
  CHECK(*n <= 3.5e15);
  CHECK(near(*n, 2.77e15, 0.01));
  CHECK_FALSE(expected_expressions(0.0, 100).has_value());
  CHECK(*expected_expressions(0.5, 100) == 1.0);
  CHECK(error_of([] { ambiguity_probability(0.1, 1); }) == Errc::InvalidArgument);
}

TEST_CASE("birthday bound") {
  CHECK(birthday_bound(128) >= 2.1e19);
  CHECK(birthday_bound(128) <= 2.3e19);
  CHECK(near(pair_collision_probability(128), 2.9e-39));
  CHECK(birthday_bound(8) == 20);
}

TEST_CASE("birthday bound against simulation") {
  // Median draw count until the first repeat among 256 values.
  std::mt19937_64 rng(12);
  std::vector<int> firsts;
  for (int t = 0; t < 100000; ++t) {
    std::array<bool, 256> seen{};
    int n = 0;
    while (true) {
      ++n;
      const auto v = rng() & 255;
      if (seen[v]) break;
      seen[v] = true;
    }
    firsts.push_back(n);
  }
  std::nth_element(firsts.begin(), firsts.begin() + firsts.size() / 2, firsts.end());
  const int median = firsts[firsts.size() / 2];
  CHECK(std::abs(median - static_cast<int>(birthday_bound(8))) <= 1);
}

TEST_CASE("robustness report") {
  const auto& u40 = GroupParams::official("ut40.4");
  const auto r = robustness_report(u40, std::nullopt, {10, 10000000});
  CHECK(r.beta == 240);
  CHECK(near(r.compatibility_gap, 4.75e-10));
  CHECK(r.lengths.size() == 2);
  const std::string text = format_report(r);
  CHECK(text.find("ut40.4") != std::string::npos);
  CHECK(format_report(r) == text);
  const std::string tsv = format_report_tsv(r);
  CHECK(std::count(tsv.begin(), tsv.end(), '\n') >= 3);
  CHECK(format_table1_tsv(table1_report()).find("UT4(2^40-87)") != std::string::npos);
}

TEST_CASE("census at p = 5 with the center quotient") {
  const Census c = empirical_census(5, {.quotient_by_center = true, .threads = 0});
  CHECK(c.elements == 15625);
  REQUIRE(c.order_histogram.size() == 2);
  CHECK(c.order_histogram[0] == std::pair<std::uint64_t, std::uint64_t>{1, 1});
  CHECK(c.order_histogram[1] == std::pair<std::uint64_t, std::uint64_t>{5, 15624});
  CHECK(c.commuting_pairs == 4140625);
  CHECK(c.abelian_subgroup_size == 625);
  CHECK(c.abelian_subgroup_closed);
  CHECK(c.abelian_subgroup_commutative);
  CHECK(error_of([] { empirical_census(17); }) == Errc::RefusedSize);
  CHECK(error_of([] { empirical_census(6); }) == Errc::InvalidArgument);
}

TEST_CASE("census at p = 7 matches the closed form") {
  const Census c = empirical_census(7, {.quotient_by_center = true, .threads = 0});
  const std::uint64_t p = 7;
  CHECK(c.commuting_pairs == (2 * p * p * p + p * p - 2 * p) * 117649);
}
