#include "algid/analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iomanip>
#include <map>
#include <sstream>
#include <thread>

#include "algid/errors.hpp"

namespace algid {

namespace {

Rank pow_rank(const Rank& base, unsigned exp) { return boost::multiprecision::pow(base, exp); }

Rank factorial(unsigned n) {
  Rank out = 1;
  for (unsigned i = 2; i <= n; ++i) out *= i;
  return out;
}

Rank general_linear_order(unsigned n, const Rank& q) {
  Rank out = 1;
  const Rank qn = pow_rank(q, n);
  for (unsigned i = 0; i < n; ++i) out *= qn - pow_rank(q, i);
  return out;
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace

GroupFamily GroupFamily::symmetric(unsigned n) { return {Kind::Symmetric, n, 0, {}}; }
GroupFamily GroupFamily::alternating(unsigned n) { return {Kind::Alternating, n, 0, {}}; }
GroupFamily GroupFamily::dihedral(const Rank& order) { return {Kind::Dihedral, order, 0, {}}; }
GroupFamily GroupFamily::general_linear(unsigned n, const Rank& q) { return {Kind::GeneralLinear, n, q, {}}; }
GroupFamily GroupFamily::special_linear(unsigned n, const Rank& q) { return {Kind::SpecialLinear, n, q, {}}; }
GroupFamily GroupFamily::wreath_product(std::vector<std::pair<unsigned, std::uint64_t>> factors) {
  return {Kind::WreathProduct, 0, 0, std::move(factors)};
}
GroupFamily GroupFamily::unitriangular4(const Rank& p) { return {Kind::Unitriangular4, p, 0, {}}; }

std::string GroupFamily::label() const {
  auto pretty = [](const Rank& v) {
    // Powers of two and 2^k - c read better symbolically.
    const std::size_t bits = boost::multiprecision::msb(v) + 1;
    const Rank top = Rank(1) << bits;
    const Rank gap = top - v;
    if (v == top / 2) return "2^" + std::to_string(bits - 1);
    if (bits >= 32 && gap < 1000) return "2^" + std::to_string(bits) + "-" + gap.str();
    return v.str();
  };
  switch (kind) {
    case Kind::Symmetric: return "S_" + n.str();
    case Kind::Alternating: return "A_" + n.str();
    case Kind::Dihedral: return "D_" + pretty(n);
    case Kind::GeneralLinear: return "GL(" + n.str() + "," + q.str() + ")";
    case Kind::SpecialLinear: return "SL(" + n.str() + "," + q.str() + ")";
    case Kind::WreathProduct: {
      std::string out;
      for (const auto& [k, p] : wreath) {
        if (!out.empty()) out += "x";
        out += "W(" + std::to_string(k) + "," + std::to_string(p) + ")";
      }
      return out;
    }
    case Kind::Unitriangular4: return "UT4(" + pretty(n) + ")";
  }
  return "?";
}

Rank group_order(const GroupFamily& family) {
  using Kind = GroupFamily::Kind;
  switch (family.kind) {
    case Kind::Symmetric: return factorial(family.n.convert_to<unsigned>());
    case Kind::Alternating: return factorial(family.n.convert_to<unsigned>()) / 2;
    case Kind::Dihedral: return family.n;
    case Kind::GeneralLinear: return general_linear_order(family.n.convert_to<unsigned>(), family.q);
    case Kind::SpecialLinear:
      return general_linear_order(family.n.convert_to<unsigned>(), family.q) / (family.q - 1);
    case Kind::WreathProduct: {
      // |W_{k,p}| = p^((p^k - 1)/(p - 1))
      Rank out = 1;
      for (const auto& [k, p] : family.wreath) {
        const Rank exponent = (pow_rank(Rank(p), k) - 1) / (p - 1);
        out *= pow_rank(Rank(p), exponent.convert_to<unsigned>());
      }
      return out;
    }
    case Kind::Unitriangular4: return pow_rank(family.n, 6);
  }
  throw Error(Errc::InvalidArgument, "unknown group family");
}

Rational commuting_probability_ut_exact(const Rank& p) {
  if (p < 5) throw Error(Errc::InvalidArgument, "commuting probability formula needs p >= 5");
  return Rational(2 * p * p * p + p * p - 2 * p, pow_rank(p, 6));
}

double commuting_probability_ut(const Rank& p) { return to_double(commuting_probability_ut_exact(p)); }

Rational compatibility_gap_exact(const Rank& order, unsigned beta) {
  if (order < 1) throw Error(Errc::InvalidArgument, "group order must be positive");
  const Rank space = Rank(1) << beta;
  return Rational(space - order, space);
}

double compatibility_gap(const Rank& order, unsigned beta) { return to_double(compatibility_gap_exact(order, beta)); }

double ambiguity_probability(double commuting_probability, std::uint64_t length) {
  if (length < 2) throw Error(Errc::InvalidArgument, "expression length must be at least 2");
  // C(l+1, 3) implicit and explicit operations in an expression of length l.
  const Rank l = length;
  const Rank operations = (l + 1) * l * (l - 1) / 6;
  return std::min(1.0, commuting_probability * operations.convert_to<double>());
}

std::optional<double> expected_expressions(double commuting_probability, std::uint64_t length) {
  const double pm = ambiguity_probability(commuting_probability, length);
  if (pm <= 0.0) return std::nullopt;
  if (pm >= 1.0) return 1.0;
  return std::log(0.5) / std::log1p(-pm);
}

double birthday_bound(unsigned bits) {
  if (bits < 8) throw Error(Errc::InvalidArgument, "birthday bound needs at least 8 bits");
  // n^2 - n >= 2^(bits+1) ln 2
  const long double c = std::ldexp(static_cast<long double>(std::log(2.0L)), static_cast<int>(bits) + 1);
  return static_cast<double>(std::ceil((1.0L + std::sqrt(1.0L + 4.0L * c)) / 2.0L));
}

double pair_collision_probability(unsigned bits) { return std::ldexp(1.0, -static_cast<int>(bits)); }

RobustnessReport robustness_report(const GroupParams& version, std::optional<unsigned> beta,
                                   const std::vector<std::uint64_t>& lengths) {
  RobustnessReport report;
  report.version = version.name();
  report.commuting_probability = commuting_probability_ut(version.p());
  report.beta = beta.value_or(version.has_digest() ? 6u * static_cast<unsigned>(*version.digest_length())
                                                   : 6u * static_cast<unsigned>(version.prime_bits()));
  report.compatibility_gap = compatibility_gap(version.p6(), report.beta);
  report.omega_min = version.p();
  for (std::uint64_t l : lengths) {
    report.lengths.push_back({l, ambiguity_probability(report.commuting_probability, l),
                              expected_expressions(report.commuting_probability, l)});
  }
  return report;
}

std::vector<Table1Row> table1_report(unsigned beta_default) {
  const Rank ut32 = (Rank(1) << 32) - 5;
  const Rank ut40 = (Rank(1) << 40) - 87;
  struct Spec {
    GroupFamily family;
    unsigned beta;
    Rank omega;
  };
  const std::vector<Spec> specs = {
      {GroupFamily::symmetric(46), beta_default, 2},
      {GroupFamily::alternating(46), beta_default, 2},
      {GroupFamily::dihedral(Rank(1) << 192), beta_default, 2},
      {GroupFamily::general_linear(3, 2642239), beta_default, 2},
      {GroupFamily::general_linear(4, 4093), beta_default, 2},
      {GroupFamily::special_linear(3, 16777213), beta_default, 2},
      {GroupFamily::special_linear(4, 7129), beta_default, 2},
      {GroupFamily::wreath_product({{2, 7}, {2, 13}, {2, 23}}), beta_default, 7},
      {GroupFamily::unitriangular4(ut32), beta_default, ut32},
      {GroupFamily::unitriangular4(ut40), 240, ut40},
  };
  std::vector<Table1Row> rows;
  for (const auto& spec : specs) {
    Table1Row row{spec.family, group_order(spec.family), spec.beta, 0.0, std::nullopt, spec.omega};
    row.gap = compatibility_gap(row.order, row.beta);
    if (spec.family.kind == GroupFamily::Kind::Unitriangular4) {
      row.commuting_probability = commuting_probability_ut(spec.family.n);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

// Standalone small-field arithmetic; independent of group.cpp on purpose.
struct SmallField {
  explicit SmallField(unsigned p) : p(p) {
    for (unsigned a = 0; a < p; ++a) {
      for (unsigned b = 0; b < p; ++b) {
        add[a][b] = static_cast<std::uint8_t>((a + b) % p);
        mul[a][b] = static_cast<std::uint8_t>((a * b) % p);
      }
    }
  }
  unsigned p;
  std::uint8_t add[13][13]{};
  std::uint8_t mul[13][13]{};
};

struct SmallMatrix {
  // cells in the order e12, e13, e14, e23, e24, e34
  std::array<std::uint8_t, 6> c{};
  bool operator==(const SmallMatrix&) const = default;
};

enum : int { C12, C13, C14, C23, C24, C34 };

SmallMatrix small_multiply(const SmallField& f, const SmallMatrix& a, const SmallMatrix& b) {
  // Row-by-column product of the 4x4 unitriangular matrices, expanded.
  SmallMatrix r;
  r.c[C12] = f.add[a.c[C12]][b.c[C12]];
  r.c[C23] = f.add[a.c[C23]][b.c[C23]];
  r.c[C34] = f.add[a.c[C34]][b.c[C34]];
  r.c[C13] = f.add[f.add[a.c[C13]][f.mul[a.c[C12]][b.c[C23]]]][b.c[C13]];
  r.c[C24] = f.add[f.add[a.c[C24]][f.mul[a.c[C23]][b.c[C34]]]][b.c[C24]];
  r.c[C14] = f.add[f.add[f.add[a.c[C14]][f.mul[a.c[C12]][b.c[C24]]]][f.mul[a.c[C13]][b.c[C34]]]][b.c[C14]];
  return r;
}

SmallMatrix small_from_index(std::uint64_t index, unsigned p) {
  SmallMatrix m;
  for (auto& cell : m.c) {
    cell = static_cast<std::uint8_t>(index % p);
    index /= p;
  }
  return m;
}

template <class Fn>
std::uint64_t parallel_sum(std::uint64_t count, unsigned threads, Fn&& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(count, 1)));
  std::vector<std::uint64_t> partial(threads, 0);
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      const std::uint64_t begin = count * t / threads;
      const std::uint64_t end = count * (t + 1) / threads;
      for (std::uint64_t i = begin; i < end; ++i) partial[t] += fn(i);
    });
  }
  for (auto& th : pool) th.join();
  std::uint64_t total = 0;
  for (auto v : partial) total += v;
  return total;
}

}  // namespace

Census empirical_census(std::uint64_t p, const CensusOptions& options) {
  if (p > 13) throw Error(Errc::RefusedSize, "census limited to p <= 13, got " + std::to_string(p));
  if (p < 5 || !is_prime(Rank(p))) throw Error(Errc::InvalidArgument, "census needs a prime 5 <= p <= 13");
  const unsigned pp = static_cast<unsigned>(p);
  const SmallField field(pp);

  std::uint64_t total = 1;
  for (int i = 0; i < 6; ++i) total *= p;
  std::vector<SmallMatrix> all(total);
  for (std::uint64_t i = 0; i < total; ++i) all[i] = small_from_index(i, pp);
  const SmallMatrix identity{};

  Census census;
  census.p = p;
  census.elements = total;

  std::map<std::uint64_t, std::uint64_t> histogram;
  for (const auto& a : all) {
    std::uint64_t order = 1;
    SmallMatrix acc = a;
    while (!(acc == identity)) {
      acc = small_multiply(field, acc, a);
      ++order;
    }
    ++histogram[order];
  }
  census.order_histogram.assign(histogram.begin(), histogram.end());

  std::vector<SmallMatrix> reps;
  if (options.quotient_by_center) {
    for (const auto& a : all) {
      if (a.c[C14] == 0) reps.push_back(a);
    }
  } else {
    reps = all;
  }
  const std::uint64_t n = reps.size();
  const std::uint64_t pairs = parallel_sum(n, options.threads, [&](std::uint64_t i) {
    const SmallMatrix& a = reps[i];
    std::uint64_t count = 0;
    for (const auto& b : reps) count += small_multiply(field, a, b) == small_multiply(field, b, a);
    return count;
  });
  census.commuting_pairs = options.quotient_by_center ? pairs * p * p : pairs;

  // Abelian subgroup: e12 = e34 = 0.
  std::vector<SmallMatrix> abelian;
  for (const auto& a : all) {
    if (a.c[C12] == 0 && a.c[C34] == 0) abelian.push_back(a);
  }
  census.abelian_subgroup_size = abelian.size();
  bool closed = true;
  bool commutative = true;
  for (const auto& a : abelian) {
    for (const auto& b : abelian) {
      const SmallMatrix ab = small_multiply(field, a, b);
      closed = closed && ab.c[C12] == 0 && ab.c[C34] == 0;
      commutative = commutative && ab == small_multiply(field, b, a);
    }
  }
  census.abelian_subgroup_closed = closed;
  census.abelian_subgroup_commutative = commutative;
  return census;
}

namespace {

std::string sci(double v, int digits = 3) {
  std::ostringstream os;
  os << std::setprecision(digits) << std::scientific << v;
  return os.str();
}

}  // namespace

std::string format_report(const RobustnessReport& r) {
  std::ostringstream os;
  os << "version                 " << r.version << '\n'
     << "commuting probability   " << sci(r.commuting_probability) << '\n'
     << "compatibility gap (" << r.beta << ") " << std::string(r.beta < 100 ? 1 : 0, ' ')
     << sci(r.compatibility_gap) << '\n'
     << "minimum element order   " << r.omega_min.str() << '\n';
  if (!r.lengths.empty()) {
    os << '\n' << std::left << std::setw(16) << "length" << std::setw(16) << "P_m"
       << "expressions until ambiguity\n";
    for (const auto& f : r.lengths) {
      os << std::left << std::setw(16) << f.length << std::setw(16) << sci(f.ambiguity_probability)
         << (f.expected_expressions ? sci(*f.expected_expressions) : std::string("unbounded")) << '\n';
    }
  }
  return os.str();
}

std::string format_report_tsv(const RobustnessReport& r) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "metric\tlength\tvalue\n";
  os << "version\t\t" << r.version << '\n';
  os << "commuting_probability\t\t" << r.commuting_probability << '\n';
  os << "compatibility_gap_" << r.beta << "\t\t" << r.compatibility_gap << '\n';
  os << "omega_min\t\t" << r.omega_min.str() << '\n';
  for (const auto& f : r.lengths) {
    os << "ambiguity_probability\t" << f.length << '\t' << f.ambiguity_probability << '\n';
    os << "expected_expressions\t" << f.length << '\t';
    if (f.expected_expressions) {
      os << *f.expected_expressions;
    } else {
      os << "inf";
    }
    os << '\n';
  }
  return os.str();
}

std::string format_table1(const std::vector<Table1Row>& rows) {
  std::ostringstream os;
  os << std::left << std::setw(28) << "group" << std::setw(6) << "beta" << std::setw(12) << "gap"
     << std::setw(12) << "P_c" << "Omega\n";
  for (const auto& row : rows) {
    os << std::left << std::setw(28) << row.family.label() << std::setw(6) << row.beta << std::setw(12)
       << (row.gap == 0.0 ? std::string("0") : sci(row.gap, 2)) << std::setw(12)
       << (row.commuting_probability ? sci(*row.commuting_probability, 2) : std::string("n/a"))
       << row.omega_min.str() << '\n';
  }
  return os.str();
}

std::string format_table1_tsv(const std::vector<Table1Row>& rows) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "group\torder\tbeta\tgap\tcommuting_probability\tomega_min\n";
  for (const auto& row : rows) {
    os << row.family.label() << '\t' << row.order.str() << '\t' << row.beta << '\t' << row.gap << '\t';
    if (row.commuting_probability) {
      os << *row.commuting_probability;
    } else {
      os << "n/a";
    }
    os << '\t' << row.omega_min.str() << '\n';
  }
  return os.str();
}

}  // namespace algid
