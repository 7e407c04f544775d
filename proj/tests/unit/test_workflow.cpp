#include <doctest.h>

#include <random>

#include "algid/digest.hpp"
#include "algid/element_gen.hpp"
#include "algid/workflow.hpp"
#include "helpers.hpp"

using namespace algid;
using testing::error_of;

namespace {

const GroupParams& u40() { return GroupParams::official("ut40.4"); }
const GroupParams& g5() { return GroupParams::test(5); }

UtElement val(const std::string& s) { return gen_value_element(s, u40()); }
UtElement fn(const std::string& s) { return gen_function_element(s, u40()); }

std::vector<UtElement> slot_elements(const TupleState& s) {
  std::vector<UtElement> out;
  for (const auto& slot : s.slots()) out.push_back(slot.element);
  return out;
}

}  // namespace

TEST_CASE("inserting values") {
  const TupleState empty(u40());
  CHECK(empty.product().is_identity());
  const UtElement x = val("x"), y = val("y");
  const TupleState s1 = insert_value(empty, x);
  CHECK(s1.product() == x);
  const TupleState s2 = insert_value(s1, y, "content-y");
  CHECK(s2.product() == x * y);
  CHECK(s2.slots().size() == 2);
  CHECK(*s2.slots()[1].content == "content-y");
  CHECK(insert_value(insert_value(empty, y), x).product() == s2.product());
  // Commuting inserts share one history entry.
  REQUIRE(s2.history().size() == 1);
  CHECK(s2.history()[0].kind == HistoryEntry::Kind::CommutingSet);
  const std::vector<UtElement> process = {x, y};
  CHECK(verify_three_way(s2, process));
}

TEST_CASE("ordered inserts do not merge") {
  std::mt19937_64 rng(5);
  TupleState s(g5());
  const UtElement a = testing::random_ordered(rng, g5());
  UtElement b = testing::random_ordered(rng, g5());
  while (commutes(a, b)) b = testing::random_ordered(rng, g5());
  s = insert_value(insert_value(s, a), b);
  CHECK(s.history().size() == 2);
  CHECK(s.product() == a * b);
}

TEST_CASE("output factorization") {
  std::mt19937_64 rng(6);
  for (int k = 1; k <= 64; ++k) {
    const UtElement v = testing::random_element(rng, u40());
    const UtElement f = testing::random_ordered(rng, u40());
    const UtElement target = v * f * inverse(v);
    const auto xs = factor_outputs(target, k);
    CHECK(xs.size() == static_cast<std::size_t>(k));
    CHECK(product(u40(), xs) == target);
  }
  CHECK(error_of([] { factor_outputs(UtElement::identity(u40()), 65); }) == Errc::ThetaExhausted);
  CHECK(error_of([] { factor_outputs(UtElement::identity(u40()), 0); }) == Errc::InvalidArgument);
}

TEST_CASE("creating values from a function") {
  const UtElement x = val("x"), f = fn("f");
  const TupleState s = create_values(insert_value(TupleState(u40()), x), f, 1);
  REQUIRE(s.slots().size() == 2);
  CHECK(s.slots()[0].element == x * f * inverse(x));
  CHECK(s.slots()[1].element == x);
  CHECK(s.product() == x * f);
  const std::vector<UtElement> process = {x, f};
  CHECK(verify_three_way(s, process));

  const TupleState s3 = create_values(TupleState(u40()), f, 3);
  CHECK(s3.slots().size() == 3);
  CHECK(s3.product() == f);
  CHECK(s3.slot_product() == f);

  CHECK(error_of([&] { create_values(TupleState(u40()), x, 1); }) == Errc::NotAFunction);
}

TEST_CASE("composite creation keeps its steps") {
  const UtElement g = fn("g"), h = fn("h");
  const std::vector<UtElement> steps = {g, h};
  const TupleState s = create_values(insert_value(TupleState(u40()), val("x")), steps, 2);
  CHECK(s.product() == val("x") * g * h);
  REQUIRE(s.history().size() == 2);
  CHECK(s.history()[1].kind == HistoryEntry::Kind::Composite);
  CHECK(s.history()[1].elements.size() == 2);
  CHECK(s.history_product() == s.product());
}

TEST_CASE("substitution") {
  const UtElement x = val("x"), y = val("y"), f = fn("f");
  const TupleState base = insert_value(insert_value(TupleState(u40()), x), y);
  const std::vector<std::size_t> first = {1};
  const TupleState s = substitute(base, f, first, 0);
  REQUIRE(s.slots().size() == 2);
  CHECK(s.slots()[0].element == x * y * f * inverse(y));
  CHECK(s.slots()[1].element == y);
  CHECK(s.slots()[0].element * y == x * y * f);
  CHECK(s.product() == x * y * f);

  const std::vector<std::size_t> none;
  const TupleState a = substitute(base, f, none, 2);
  const TupleState b = create_values(base, f, 2);
  CHECK(slot_elements(a) == slot_elements(b));
  CHECK(a.product() == b.product());

  const std::vector<std::size_t> twice = {1, 1};
  CHECK(error_of([&] { substitute(base, f, twice, 0); }) == Errc::BadPosition);
  const std::vector<std::size_t> bad = {3};
  CHECK(error_of([&] { substitute(base, f, bad, 0); }) == Errc::BadPosition);
}

TEST_CASE("transform") {
  const UtElement x = val("x"), y = val("y"), f = fn("f");
  const TupleState s = transform(insert_value(insert_value(TupleState(u40()), x), y), f, 1);
  REQUIRE(s.slots().size() == 1);
  CHECK(s.slots()[0].element == x * y * f);
  CHECK(s.product() == x * y * f);
}

TEST_CASE("removal is opt-in") {
  const TupleState s = insert_value(TupleState(u40()), val("x"));
  CHECK_FALSE(s.removal_enabled());
  CHECK(error_of([&] { remove_by_identity(s, 1); }) == Errc::RemovalDisabled);
  CHECK(error_of([&] { remove_by_index(s, 1); }) == Errc::RemovalDisabled);
  CHECK(s.with_removal(RemovalPolicy::Enabled).removal_enabled());
}

TEST_CASE("removal by identity") {
  const UtElement x = val("x"), y = fn("y"), z = fn("z"), w = val("w");
  TupleState s(u40(), RemovalPolicy::Enabled);
  s = insert_value(insert_value(s, x), y);
  const TupleState right = remove_by_identity(s, 2);
  CHECK(right.product() == x);
  CHECK(right.auditable());

  s = insert_value(insert_value(s, z), w);
  const TupleState mid = remove_by_identity(s, 2);
  CHECK(mid.product() == x * z * w);
  CHECK(mid.product() == x * y * z * w * inverse(y * z * w) * z * w);
  CHECK(slot_elements(mid) == std::vector<UtElement>{x, z, w});
  CHECK_FALSE(mid.auditable());
  CHECK(mid.history_product() == mid.product());
  CHECK(render_history(mid).back() == '>');
  CHECK(render_history(mid).find(">!") != std::string::npos);
  CHECK(error_of([&] { remove_by_identity(s, 0); }) == Errc::BadPosition);
  CHECK(error_of([&] { remove_by_identity(s, 5); }) == Errc::BadPosition);
}

TEST_CASE("removal by index leaves a placeholder") {
  const UtElement x = val("x"), y = fn("y"), z = fn("z");
  TupleState s(u40(), RemovalPolicy::Enabled);
  s = insert_value(insert_value(s, x), y);
  const UtElement d2 = removal_by_index(2, u40());
  const TupleState r = remove_by_index(s, 2);
  REQUIRE(r.slots().size() == 2);
  CHECK(r.slots()[1].element == y * d2);
  CHECK(r.slots()[1].placeholder);
  CHECK(*r.slots()[1].content == "");
  CHECK(r.product() == x * y * d2);
  CHECK(error_of([&] { remove_by_index(r, 2); }) == Errc::BadPosition);

  // Away from the right end the placeholder keeps the slot product exact.
  const TupleState s3 = insert_value(s, z);
  const TupleState r3 = remove_by_index(s3, 2);
  CHECK(r3.product() == x * y * z * d2);
  CHECK(r3.slot_product() == r3.product());
  CHECK(r3.history_product() == r3.product());
}

TEST_CASE("map entries") {
  TupleState s(u40(), RemovalPolicy::Enabled);
  s = insert_entry(s, "alpha", val("1"));
  s = insert_entry(s, "beta", val("2"));
  CHECK(*s.slots()[0].name == "alpha");
  CHECK(s.product() == map_entry("alpha", val("1")) * map_entry("beta", val("2")));
  CHECK(error_of([&] { insert_entry(s, "alpha", val("3")); }) == Errc::InvalidKey);
  CHECK(error_of([&] { map_entry("k", fn("f")); }) == Errc::NotCommuting);

  const TupleState r = remove_by_name(s, "alpha");
  CHECK(r.slots()[0].placeholder);
  CHECK(r.product() == s.product() * removal_by_name("alpha", u40()));
  CHECK(r.slot_product() == r.product());
  CHECK(error_of([&] { remove_by_name(s, "gamma"); }) == Errc::BadPosition);
}

TEST_CASE("map entries commute but bind keys to values") {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 200; ++i) {
    const UtElement v1 = testing::random_commuting(rng, u40());
    const UtElement v2 = testing::random_commuting(rng, u40());
    const std::string k1 = "k" + std::to_string(i), k2 = "q" + std::to_string(i);
    const UtElement e1 = map_entry(k1, v1), e2 = map_entry(k2, v2);
    CHECK(classify(e1) != ElementClass::Ordered);
    CHECK(e1 * e2 == e2 * e1);
    if (v1 != v2) CHECK(e1 * e2 != map_entry(k1, v2) * map_entry(k2, v1));
  }
}

TEST_CASE("nested maps") {
  std::mt19937_64 rng(9);
  const UtElement x = val("x"), w = val("w");
  for (int i = 0; i < 50; ++i) {
    const UtElement y = testing::random_ordered(rng, u40()), z = testing::random_ordered(rng, u40());
    CHECK(x * nested_map_element(y * z, "eta") * w != x * y * z * w);
    CHECK(nested_map_element(y * z, "eta") != nested_map_element(y * z, "zeta"));
  }
  CHECK(nested_map_element(UtElement::identity(u40()), "eta") == unlift(lift(key_element("eta", u40()))));
}

TEST_CASE("composition and adaptors") {
  const UtElement x = val("x"), y = fn("y"), z = fn("z"), f = fn("f"), g = fn("g"), h = fn("h");
  const std::vector<UtElement> one = {f};
  CHECK(compose(one) == f);
  const std::vector<UtElement> yzf = {y, z, f};
  CHECK(x * compose(yzf) == x * y * z * f);
  CHECK(error_of([] { compose(std::span<const UtElement>{}); }) == Errc::InvalidArgument);

  const std::vector<UtElement> applied_h = {h};
  CHECK(adaptor(f, applied_h) == inverse(h) * f);
  CHECK(x * h * adaptor(f, applied_h) == x * f);
  const std::vector<UtElement> applied_gh = {g, h};
  CHECK(adaptor(f, applied_gh) == inverse(g * h) * f);
  CHECK(adaptor(f, std::span<const UtElement>{}) == f);
}

TEST_CASE("set expressions") {
  const UtElement f1 = fn("f1"), f2 = fn("f2"), g = fn("g");
  const auto fs = SetExpression::leaf({f1, f2});
  const auto gs = SetExpression::leaf({g});
  auto expected = std::vector<UtElement>{f1 * g, f2 * g};
  std::sort(expected.begin(), expected.end(),
            [](const UtElement& a, const UtElement& b) { return rank_of(a) < rank_of(b); });
  CHECK(expand_set_expression(SetExpression::concat(fs, gs)) == expected);
  CHECK(expand_set_expression(SetExpression::union_of(fs, fs)).size() == 2);
  CHECK(expand_set_expression(SetExpression::union_of(fs, gs)).size() == 3);
  CHECK(expand_set_expression(SetExpression::concat(SetExpression::union_of(fs, gs), gs)).size() == 3);
}

TEST_CASE("history rendering") {
  const UtElement x = val("x"), y = val("y"), g = fn("g"), h = fn("h");
  TupleState s(u40());
  s = insert_value(insert_value(s, x), y);
  const std::vector<UtElement> gh = {g, h};
  s = create_values(s, gh, 1);
  const std::string rx = encode(x).text(), ry = encode(y).text();
  const std::string rg = encode(g).text(), rh = encode(h).text();
  CHECK(render_history(s) == "<{" + rx + "," + ry + "},<" + rg + "," + rh + ">>");
  CHECK(render_element(element_from_rank(Rank(42), g5())) == "#42");
}

TEST_CASE("three-way check detects tampering") {
  const UtElement x = val("x"), f = fn("f");
  const TupleState s = create_values(insert_value(TupleState(u40()), x), f, 2);
  const std::vector<UtElement> process = {x, f};
  CHECK(verify_three_way(s, process));
  const std::vector<UtElement> wrong = {f, x};
  CHECK_FALSE(verify_three_way(s, wrong));
}

TEST_CASE("random pipelines stay consistent") {
  std::mt19937_64 rng(10);
  const auto& g = g5();
  for (int trial = 0; trial < 100; ++trial) {
    TupleState s(g, RemovalPolicy::Enabled);
    std::vector<UtElement> process;
    UtElement expected = UtElement::identity(g);
    for (int step = 0; step < 20; ++step) {
      const int op = static_cast<int>(rng() % 5);
      if (op == 0 || s.slots().empty()) {
        const UtElement x = testing::random_element(rng, g);
        s = insert_value(s, x);
        process.push_back(x);
      } else if (op == 1) {
        const UtElement f = testing::random_ordered(rng, g);
        s = create_values(s, f, 1 + static_cast<int>(rng() % 3));
        process.push_back(f);
      } else if (op == 2) {
        const UtElement f = testing::random_ordered(rng, g);
        s = transform(s, f, 1 + static_cast<int>(rng() % 3));
        process.push_back(f);
      } else if (op == 3) {
        const std::size_t pos = 1 + rng() % s.slots().size();
        if (s.slots()[pos - 1].placeholder) continue;
        s = remove_by_index(s, pos);
        process.push_back(removal_by_index(pos, g));
      } else {
        const UtElement f = testing::random_ordered(rng, g);
        const std::vector<std::size_t> replaced = {1 + rng() % s.slots().size()};
        s = substitute(s, f, replaced, static_cast<int>(rng() % 2));
        process.push_back(f);
      }
      expected = product(g, process);
      REQUIRE(verify_three_way(s, process));
    }
    CHECK(s.product() == expected);
  }
}
