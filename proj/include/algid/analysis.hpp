#pragma once

// Robustness metrics. Probabilities are computed from exact integer
// numerators and denominators and only converted to double at the end.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "algid/group.hpp"

namespace algid {

using Rational = boost::multiprecision::cpp_rational;

struct GroupFamily {
  enum class Kind { Symmetric, Alternating, Dihedral, GeneralLinear, SpecialLinear, WreathProduct, Unitriangular4 };

  Kind kind;
  /// Symmetric/Alternating: n. Dihedral: the group order 2n.
  /// GL/SL: matrix size n and field size q. UT4: p.
  Rank n = 0;
  Rank q = 0;
  /// Wreath product factors W_{k,p} as (k, p).
  std::vector<std::pair<unsigned, std::uint64_t>> wreath;

  static GroupFamily symmetric(unsigned n);
  static GroupFamily alternating(unsigned n);
  static GroupFamily dihedral(const Rank& order);
  static GroupFamily general_linear(unsigned n, const Rank& q);
  static GroupFamily special_linear(unsigned n, const Rank& q);
  static GroupFamily wreath_product(std::vector<std::pair<unsigned, std::uint64_t>> factors);
  static GroupFamily unitriangular4(const Rank& p);

  std::string label() const;
};

Rank group_order(const GroupFamily& family);

/// (2p^3 + p^2 - 2p) / p^6
Rational commuting_probability_ut_exact(const Rank& p);
double commuting_probability_ut(const Rank& p);

/// 1 - order / 2^beta, exact.
Rational compatibility_gap_exact(const Rank& order, unsigned beta);
double compatibility_gap(const Rank& order, unsigned beta);

/// min{1, P_c * C(l+1, 3)}
double ambiguity_probability(double commuting_probability, std::uint64_t length);
/// Expressions of `length` sampled until an ambiguous one is expected:
/// log base (1 - P_m) of 0.5. Empty when P_m == 0 (unbounded); 1 when P_m == 1.
std::optional<double> expected_expressions(double commuting_probability, std::uint64_t length);

/// Smallest n with 1 - exp((n - n^2) / 2^(bits+1)) >= 0.5.
double birthday_bound(unsigned bits);
/// 2^-bits
double pair_collision_probability(unsigned bits);

struct RobustnessReport {
  std::string version;
  double commuting_probability;
  unsigned beta;
  double compatibility_gap;
  Rank omega_min;
  struct LengthFigure {
    std::uint64_t length;
    double ambiguity_probability;
    std::optional<double> expected_expressions;
  };
  std::vector<LengthFigure> lengths;
};

/// beta defaults to the digest width in bits (6 * L).
RobustnessReport robustness_report(const GroupParams& version, std::optional<unsigned> beta,
                                   const std::vector<std::uint64_t>& lengths);

struct Table1Row {
  GroupFamily family;
  Rank order;
  unsigned beta;
  double gap;
  std::optional<double> commuting_probability;  // UT rows only
  Rank omega_min;
};

/// The ten candidate groups; the UT40.4 row is measured at beta = 240.
std::vector<Table1Row> table1_report(unsigned beta_default = 192);

struct Census {
  std::uint64_t p = 0;
  std::uint64_t elements = 0;
  /// order -> number of elements with that order
  std::vector<std::pair<std::uint64_t, std::uint64_t>> order_histogram;
  /// Number of ordered pairs (a, b) with ab == ba, i.e. sum of centralizer sizes.
  std::uint64_t commuting_pairs = 0;
  std::uint64_t abelian_subgroup_size = 0;
  bool abelian_subgroup_closed = false;
  bool abelian_subgroup_commutative = false;
};

struct CensusOptions {
  /// Count commuting pairs over G/Z and scale by p^2. Elements differing by a
  /// central factor have identical centralizers, so the count is still exact.
  bool quotient_by_center = false;
  unsigned threads = 0;  // 0: hardware concurrency
};

/// Exhaustive enumeration of UT(4, p) for 5 <= p <= 13 with plain table-driven
/// matrix arithmetic. Throws Errc::RefusedSize above 13.
Census empirical_census(std::uint64_t p, const CensusOptions& options = {});

std::string format_report(const RobustnessReport& report);
std::string format_report_tsv(const RobustnessReport& report);
std::string format_table1(const std::vector<Table1Row>& rows);
std::string format_table1_tsv(const std::vector<Table1Row>& rows);

}  // namespace algid
