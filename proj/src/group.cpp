#include "algid/group.hpp"

#include <array>
#include <map>
#include <memory>
#include <mutex>

#include <boost/multiprecision/miller_rabin.hpp>

#include "algid/errors.hpp"
#include "field.hpp"

namespace algid {

using detail::add_mod;
using detail::mul_mod;
using detail::neg_mod;
using detail::sub_mod;

std::string_view to_string(ElementClass c) {
  switch (c) {
    case ElementClass::Identity: return "IDENTITY";
    case ElementClass::Center: return "CENTER";
    case ElementClass::Hybrid: return "HYBRID";
    case ElementClass::Ordered: return "ORDERED";
  }
  return "UNKNOWN";
}

bool is_prime(const Rank& n) {
  if (n < 2) return false;
  return boost::multiprecision::miller_rabin_test(n, 32);
}

GroupParams::GroupParams(std::string name, std::uint64_t prime, std::optional<int> digest_length)
    : name_(std::move(name)), prime_(prime), digest_length_(digest_length) {
  prime_bits_ = 64 - __builtin_clzll(prime_);
  p1_ = prime_;
  p2_ = p1_ * p1_;
  p3_ = p2_ * p1_;
  p4_ = p3_ * p1_;
  p5_ = p4_ * p1_;
  p6_ = p5_ * p1_;
}

namespace {

const std::array<const GroupParams*, 3>& official_table() {
  // Each p is the largest prime below 2^L; the digest holds L base-64 digits.
  struct Holder {
    std::array<const GroupParams*, 3> table;
  };
  static const Holder holder = [] {
    Holder h{};
    h.table = {
        detail::ParamsFactory::make("ut32.4", (1ull << 32) - 5, 32),
        detail::ParamsFactory::make("ut40.4", (1ull << 40) - 87, 40),
        detail::ParamsFactory::make("ut64.4", 0xFFFFFFFFFFFFFFFFull - 58, 64),
    };
    return h;
  }();
  return holder.table;
}

}  // namespace

const GroupParams& GroupParams::official(std::string_view name) {
  for (const GroupParams* params : official_table()) {
    if (params->name() == name) return *params;
  }
  throw Error(Errc::UnknownVersion, "unknown version '" + std::string(name) + "'");
}

std::span<const GroupParams* const> GroupParams::officials() { return official_table(); }

const GroupParams& GroupParams::test(std::uint64_t p) {
  if (p < 5 || p >= (1ull << 16) || !is_prime(Rank(p))) {
    throw Error(Errc::InvalidArgument,
                "test group prime must satisfy 5 <= p < 65536, got " + std::to_string(p));
  }
  static std::mutex mutex;
  static std::map<std::uint64_t, std::unique_ptr<const GroupParams>> interned;
  std::lock_guard lock(mutex);
  auto& slot = interned[p];
  if (!slot) {
    slot.reset(detail::ParamsFactory::make("test" + std::to_string(p), p, std::nullopt));
  }
  return *slot;
}

UtElement UtElement::from_cells(const GroupParams& params, const Cells& cells) {
  const std::uint64_t p = params.prime();
  for (std::uint64_t cell : {cells.e12, cells.e13, cells.e14, cells.e23, cells.e24, cells.e34}) {
    if (cell >= p) throw Error(Errc::InvalidArgument, "cell value outside [0,p)");
  }
  return UtElement(params, cells);
}

namespace {

void require_same_group(const UtElement& a, const UtElement& b) {
  if (&a.params() != &b.params()) {
    throw Error(Errc::VersionMismatch,
                "cannot combine " + a.params().name() + " with " + b.params().name());
  }
}

}  // namespace

UtElement multiply(const UtElement& a, const UtElement& b) {
  require_same_group(a, b);
  const std::uint64_t p = a.params().prime();
  const auto& x = a.cells();
  const auto& y = b.cells();
  UtElement::Cells c;
  c.e12 = add_mod(x.e12, y.e12, p);
  c.e23 = add_mod(x.e23, y.e23, p);
  c.e34 = add_mod(x.e34, y.e34, p);
  c.e13 = add_mod(add_mod(x.e13, y.e13, p), mul_mod(x.e12, y.e23, p), p);
  c.e24 = add_mod(add_mod(x.e24, y.e24, p), mul_mod(x.e23, y.e34, p), p);
  c.e14 = add_mod(add_mod(x.e14, y.e14, p),
                  add_mod(mul_mod(x.e12, y.e24, p), mul_mod(x.e13, y.e34, p), p), p);
  return detail::ElementAccess::make(a.params(), c);
}

UtElement inverse(const UtElement& a) {
  const std::uint64_t p = a.params().prime();
  const auto& x = a.cells();
  UtElement::Cells c;
  c.e12 = neg_mod(x.e12, p);
  c.e23 = neg_mod(x.e23, p);
  c.e34 = neg_mod(x.e34, p);
  c.e13 = sub_mod(mul_mod(x.e12, x.e23, p), x.e13, p);
  c.e24 = sub_mod(mul_mod(x.e23, x.e34, p), x.e24, p);
  std::uint64_t e14 = neg_mod(x.e14, p);
  e14 = add_mod(e14, mul_mod(x.e12, x.e24, p), p);
  e14 = add_mod(e14, mul_mod(x.e13, x.e34, p), p);
  e14 = sub_mod(e14, mul_mod(mul_mod(x.e12, x.e23, p), x.e34, p), p);
  c.e14 = e14;
  return detail::ElementAccess::make(a.params(), c);
}

UtElement power(const UtElement& a, const Rank& n) {
  if (n < 0) throw Error(Errc::InvalidArgument, "negative exponent");
  UtElement result = UtElement::identity(a.params());
  if (n == 0) return result;
  const std::size_t top = boost::multiprecision::msb(n);
  for (std::size_t i = top + 1; i-- > 0;) {
    result = multiply(result, result);
    if (boost::multiprecision::bit_test(n, static_cast<unsigned>(i))) result = multiply(result, a);
  }
  return result;
}

UtElement power(const UtElement& a, std::uint64_t n) { return power(a, Rank(n)); }

UtElement product(const GroupParams& params, std::span<const UtElement> elements) {
  UtElement result = UtElement::identity(params);
  for (const auto& e : elements) result = multiply(result, e);
  return result;
}

Rank rank_of(const UtElement& a) {
  const auto& c = a.cells();
  const Rank p = a.params().p();
  // Horner over the digit order e34, e12, e24, e23, e13, e14 (most significant first).
  Rank v = c.e34;
  v = v * p + c.e12;
  v = v * p + c.e24;
  v = v * p + c.e23;
  v = v * p + c.e13;
  v = v * p + c.e14;
  return v;
}

UtElement element_from_rank(const Rank& v, const GroupParams& params) {
  if (v < 0 || v >= params.p6()) {
    throw Error(Errc::RankOutOfRange, "rank " + v.str() + " outside [0, p^6) for " + params.name());
  }
  const Rank p = params.p();
  Rank rest = v;
  auto next = [&] {
    Rank q, r;
    boost::multiprecision::divide_qr(rest, p, q, r);
    rest = std::move(q);
    return r.convert_to<std::uint64_t>();
  };
  UtElement::Cells c;
  c.e14 = next();
  c.e13 = next();
  c.e23 = next();
  c.e24 = next();
  c.e12 = next();
  c.e34 = next();
  return detail::ElementAccess::make(params, c);
}

ElementClass classify(const UtElement& a) {
  const auto& c = a.cells();
  if (c.e12 != 0 || c.e34 != 0) return ElementClass::Ordered;
  if (c.e13 != 0 || c.e23 != 0 || c.e24 != 0) return ElementClass::Hybrid;
  if (c.e14 != 0) return ElementClass::Center;
  return ElementClass::Identity;
}

ElementClass classify_rank(const Rank& v, const GroupParams& params) {
  if (v < 0 || v >= params.p6()) {
    throw Error(Errc::RankOutOfRange, "rank " + v.str() + " outside [0, p^6)");
  }
  if (v == 0) return ElementClass::Identity;
  if (v < params.p()) return ElementClass::Center;
  if (v < params.p4()) return ElementClass::Hybrid;
  return ElementClass::Ordered;
}

bool commutes(const UtElement& a, const UtElement& b) { return multiply(a, b) == multiply(b, a); }

UtElement lift(const UtElement& a) {
  UtElement::Cells c = a.cells();
  std::swap(c.e12, c.e23);
  return detail::ElementAccess::make(a.params(), c);
}

UtElement unlift(const UtElement& a) { return lift(a); }

Rank element_order(const UtElement& a) {
  if (a.is_identity()) return 1;
  const GroupParams& params = a.params();
  if (params.has_digest()) return params.p();
  // Test groups are small enough to count.
  UtElement acc = a;
  std::uint64_t order = 1;
  while (!acc.is_identity()) {
    acc = multiply(acc, a);
    ++order;
  }
  return order;
}

}  // namespace algid
