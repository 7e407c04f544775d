// Acceptance suite: one PASS/FAIL line per criterion, with runtime limits.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "algid/analysis.hpp"
#include "algid/digest.hpp"
#include "algid/element_gen.hpp"
#include "algid/group.hpp"
#include "algid/plan.hpp"
#include "algid/store.hpp"
#include "algid/workflow.hpp"

using namespace algid;
namespace fs = std::filesystem;

namespace {

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw Failure(what);
}

bool within(double got, double want, double rel) { return std::fabs(got - want) <= rel * std::fabs(want); }

std::string sci(double v) {
  std::ostringstream os;
  os.precision(4);
  os << std::scientific << v;
  return os.str();
}

Rank random_below(std::mt19937_64& rng, const Rank& bound) {
  Rank r = 0;
  for (int i = 0; i < 7; ++i) r = (r << 64) | Rank(rng());
  return r % bound;
}

UtElement random_element(std::mt19937_64& rng, const GroupParams& g) {
  return element_from_rank(random_below(rng, g.p6()), g);
}
UtElement random_ordered(std::mt19937_64& rng, const GroupParams& g) {
  return element_from_rank(g.p4() + random_below(rng, g.p6() - g.p4()), g);
}
UtElement random_commuting(std::mt19937_64& rng, const GroupParams& g) {
  return element_from_rank(random_below(rng, g.p4()), g);
}

const GroupParams& u40() { return GroupParams::official("ut40.4"); }
const GroupParams& g5() { return GroupParams::test(5); }

// Plain 4x4 matrix product, used as an oracle for the group law.
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
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) c[i][j] = (c[i][j] + a[i][k] * b[k][j]) % p;
  return c;
}

std::string criterion_1() {
  const double u32 = commuting_probability_ut(GroupParams::official("ut32.4").p());
  const double u40v = commuting_probability_ut(u40().p());
  const double u64 = commuting_probability_ut(GroupParams::official("ut64.4").p());
  require(within(u32, 2.52e-29, 0.02), "ut32.4 " + sci(u32));
  require(within(u40v, 1.50e-36, 0.02), "ut40.4 " + sci(u40v));
  require(within(u64, 3.2e-58, 0.02), "ut64.4 " + sci(u64));
  return sci(u32) + ", " + sci(u40v) + ", " + sci(u64);
}

std::string criterion_2() {
  const auto rows = table1_report(192);
  const double want[] = {0.123, 0.561, 0.0, 2.40e-5, 0.012, 1.43e-6, 0.010, 0.998, 6.98e-9, 4.75e-10};
  require(rows.size() == 10, "expected ten groups");
  std::string off;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows[i];
    const bool ok = want[i] == 0.0 ? compatibility_gap_exact(row.order, row.beta) == 0 : within(row.gap, want[i], 0.02);
    if (!ok) off += (off.empty() ? "" : "; ") + row.family.label() + " computed " + sci(row.gap) + " vs " + sci(want[i]);
  }
  require(off.empty(), off);
  require(rows[9].beta == 240, "UT40.4 row must use beta = 240");
  return "10 groups; UT40.4 gap(240) = " + sci(rows[9].gap);
}

std::string criterion_3() {
  const auto n = expected_expressions(commuting_probability_ut(u40().p()), 10000000);
  require(n.has_value(), "unbounded");
  require(*n >= 2.5e15 && *n <= 3.5e15, "n = " + sci(*n));
  return "n = " + sci(*n) + " (claimed: more than 3e15)";
}

std::string criterion_4() {
  const double n = birthday_bound(128);
  require(n >= 2.1e19 && n <= 2.3e19, "n = " + sci(n));
  return "n = " + sci(n) + ", pair probability " + sci(pair_collision_probability(128));
}

std::string criterion_5() {
  const Census census = empirical_census(5, {.quotient_by_center = false, .threads = 0});
  std::uint64_t order5 = 0;
  for (const auto& [order, count] : census.order_histogram) {
    require(order == 1 || order == 5, "element of order " + std::to_string(order));
    if (order == 5) order5 = count;
  }
  require(order5 == 15624, "order-5 count " + std::to_string(order5));
  require(census.commuting_pairs == 4140625, "commuting pairs " + std::to_string(census.commuting_pairs));

  std::mt19937_64 rng(5);
  const UtElement one = UtElement::identity(g5());
  for (int t = 0; t < 10000; ++t) {
    const UtElement a = random_element(rng, g5()), b = random_element(rng, g5()), c = random_element(rng, g5());
    require(to_matrix(a * b) == matmul(to_matrix(a), to_matrix(b), 5), "product is not the matrix product");
    require((a * b) * c == a * (b * c), "associativity");
    require(a * one == a && one * a == a, "identity");
    require(a * inverse(a) == one && inverse(a) * a == one, "inverse");
  }

  require(census.abelian_subgroup_size == 625, "subgroup size");
  require(census.abelian_subgroup_closed && census.abelian_subgroup_commutative, "subgroup not abelian");
  // The same subgroup through the library: every pair of ranks below 625.
  for (unsigned long i = 0; i < 625; ++i) {
    const UtElement a = element_from_rank(Rank(i), g5());
    for (unsigned long j = 0; j < 625; ++j) {
      const UtElement b = element_from_rank(Rank(j), g5());
      const UtElement ab = a * b;
      require(rank_of(ab) < 625 && ab == b * a, "rank subgroup not closed and abelian");
    }
  }
  return "15624 of order 5; 4140625 commuting pairs; 1e4 triples; 625-element subgroup abelian";
}

std::string criterion_6() {
  std::mt19937_64 rng(6);
  for (const GroupParams* g : {&g5(), &u40()}) {
    for (int k = 1; k <= 10; ++k) {
      for (int t = 0; t < 1000; ++t) {
        const UtElement v = random_element(rng, *g), f = random_ordered(rng, *g);
        const UtElement x = v * f * inverse(v);
        require(product(*g, factor_outputs(x, k)) == x, "factors do not multiply back");
        TupleState s = insert_value(TupleState(*g), v);
        s = create_values(s, f, k);
        require(s.product() == v * f, "new product is not v f");
        std::vector<UtElement> fresh;
        for (int i = 0; i < k; ++i) fresh.push_back(s.slots()[static_cast<std::size_t>(i)].element);
        require(product(*g, fresh) == x, "new slots do not multiply to v f v^-1");
      }
    }
  }
  return "k = 1..10, 1e3 pairs each, p = 5 and ut40.4";
}

std::string criterion_7() {
  std::mt19937_64 rng(7);
  const GroupParams& g = u40();
  for (int t = 0; t < 1000; ++t) {
    const UtElement x = random_element(rng, g), y = random_element(rng, g), z = random_element(rng, g);
    const UtElement w = random_element(rng, g), f = random_ordered(rng, g), h = random_ordered(rng, g);

    // substitution: x' y = x y f
    TupleState s = insert_value(insert_value(TupleState(g, RemovalPolicy::Enabled), x), y);
    const std::vector<std::size_t> first = {1};
    const TupleState sub = substitute(s, f, first, 0);
    require(rank_of(sub.slots()[0].element * sub.slots()[1].element) == rank_of(x * y * f), "substitution");
    require(sub.slots()[1].element == y, "substitution moved y");

    // removal by identity: x y z w (y z w)^-1 z w = x z w
    TupleState four = insert_value(insert_value(s, z), w);
    const TupleState removed = remove_by_identity(four, 2);
    require(rank_of(removed.product()) == rank_of(x * z * w), "removal by identity");
    require(rank_of(x * y * z * w * inverse(y * z * w) * z * w) == rank_of(x * z * w), "removal identity algebra");

    // removal by index: x y' = x y delta
    const TupleState idx = remove_by_index(s, 2);
    const UtElement d2 = removal_by_index(2, g);
    require(rank_of(idx.slots()[0].element * idx.slots()[1].element) == rank_of(x * y * d2), "removal by index");
    require(rank_of(idx.product()) == rank_of(x * y * d2), "removal by index product");

    // adaptor: x h fbar = x f
    const std::vector<UtElement> applied = {h};
    require(rank_of(x * h * adaptor(f, applied)) == rank_of(x * f), "adaptor");
  }
  return "1e3 instances each of substitution, removal by identity, removal by index, adaptor";
}

std::string criterion_8() {
  std::mt19937_64 rng(8);
  const GroupParams& g = u40();
  int commuting = 0;
  int collisions = 0;
  for (int t = 0; t < 1000; ++t) {
    const std::string k1 = "k" + std::to_string(rng() % 1000000), k2 = "q" + std::to_string(rng() % 1000000);
    UtElement v1 = random_commuting(rng, g), v2 = random_commuting(rng, g);
    while (v2 == v1) v2 = random_commuting(rng, g);
    const UtElement e1 = map_entry(k1, v1), e2 = map_entry(k2, v2);
    if (e1 * e2 == e2 * e1) ++commuting;
    if (e1 * e2 == map_entry(k1, v2) * map_entry(k2, v1)) ++collisions;
  }
  require(commuting == 1000, std::to_string(commuting) + "/1000 entry pairs commute");
  require(collisions == 0, std::to_string(collisions) + " binding collisions");
  for (unsigned long r = 0; r < 15625; ++r) {
    const UtElement a = element_from_rank(Rank(r), g5());
    require(lift(lift(a)) == a, "lift is not an involution at rank " + std::to_string(r));
  }
  return "1000/1000 commute, 0 binding collisions, involution on 15625 elements";
}

std::string criterion_9() {
  std::mt19937_64 rng(9);
  for (const GroupParams* g : GroupParams::officials()) {
    require(rank_of(decode(encode(UtElement::identity(*g)).text(), *g)) == 0, "identity round trip");
    const std::array<std::pair<Rank, Rank>, 3> classes = {
        {{1, g->p()}, {g->p(), g->p4()}, {g->p4(), g->p6()}}};
    for (const auto& [lo, hi] : classes) {
      for (int t = 0; t < 10000; ++t) {
        const UtElement a = element_from_rank(lo + random_below(rng, hi - lo), *g);
        require(decode(encode(a).text(), *g) == a, g->name() + " round trip");
      }
    }
  }

  int fixtures = 0;
  for (const char* file : {"/digests.tsv", "/gen.tsv"}) {
    std::ifstream in(std::string(ALGID_FIXTURES_DIR) + file);
    require(static_cast<bool>(in), std::string("missing fixture ") + file);
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
      std::vector<std::string> f;
      std::istringstream fields(line);
      for (std::string cell; std::getline(fields, cell, '\t');) f.push_back(cell);
      if (f.size() == 3) f.push_back("");  // content column is empty for the empty input
      const auto& g = GroupParams::official(f[0]);
      if (std::string(file) == "/digests.tsv") {
        require(encode(element_from_rank(Rank(f[1]), g)).text() == f[2], "fixture " + line);
      } else {
        std::string bytes;
        for (std::size_t i = 0; i + 1 < f[2].size(); i += 2) {
          bytes += static_cast<char>(std::stoi(f[2].substr(i, 2), nullptr, 16));
        }
        const UtElement e = f[1] == "value" ? gen_value_element(bytes, g) : gen_function_element(bytes, g);
        require(encode(e).text() == f[3], "fixture " + f[0] + " " + f[1]);
      }
      ++fixtures;
    }
  }

  std::set<std::string> inputs, outputs;
  for (int t = 0; t < 10000; ++t) {
    std::string hex;
    for (int i = 0; i < 40; ++i) hex += "0123456789abcdef"[rng() % 16];
    const UtElement a = import_legacy(hex, 16, ImportMode::Ordered, u40());
    const std::string d = encode(a).text();
    Rank value = 0;
    for (auto it = hex.rbegin(); it != hex.rend(); ++it) value = value * 16 + std::stoi(std::string(1, *it), nullptr, 16);
    require(rank_of(decode(d, u40())) == u40().p4() + value, "import of " + hex);
    inputs.insert(hex);
    outputs.insert(d);
  }
  require(inputs.size() == outputs.size(), "hex import is not injective");
  return "3 versions x 3 classes x 1e4 round trips; " + std::to_string(fixtures) + " fixtures; " +
         std::to_string(outputs.size()) + " distinct imports";
}

std::string criterion_10() {
  std::mt19937_64 rng(10);
  for (int t = 0; t < 1000; ++t) {
    const UtElement u = random_element(rng, g5()), f = random_ordered(rng, g5()), h = random_ordered(rng, g5());
    UtElement acc = u;
    for (int i = 1; i <= 5; ++i) {
      acc = acc * f * h;
      require((i == 5) == (acc == u) || (f * h).is_identity(), "period is not 5");
    }
  }
  return "u (fg)^5 = u on 1e3 triples, no shorter period";
}

std::string criterion_11() {
  const GroupParams& g = u40();
  const std::string x = encode(gen_value_element("input-x", g)).text();
  const std::string y = encode(gen_value_element("input-y", g)).text();
  const std::string f = encode(gen_function_element("split(n=2)", g)).text();
  const std::string h = encode(gen_function_element("merge()", g)).text();
  const std::string v = encode(gen_value_element("meta", g)).text();
  std::ostringstream json;
  json << R"({"version": "ut40.4", "steps": [)"
       << R"({"kind": "value", "digest": ")" << x << R"("}, )"
       << R"({"kind": "value", "digest": ")" << y << R"("}, )"
       << R"({"kind": "create", "digest": ")" << f << R"(", "outputs": 2}, )"
       << R"({"kind": "map_entry", "key": "meta", "digest": ")" << v << R"("}, )"
       << R"({"kind": "remove_index", "index": 2}, )"
       << R"({"kind": "function", "digest": ")" << h << R"(", "outputs": 1}]})";

  const fs::path dir = fs::temp_directory_path() / ("algid-acceptance-" + std::to_string(std::random_device{}()));
  fs::create_directories(dir);
  std::ofstream(dir / "plan.json") << json.str();

  const PipelinePlan plan = load_plan((dir / "plan.json").string());
  require(plan.steps.size() == 6, "plan must have six steps");
  const PlanReport predicted = evaluate_plan(plan);

  // Fold the same steps by hand through the workflow module.
  TupleState s(g, RemovalPolicy::Enabled);
  s = insert_value(s, decode(x, g));
  s = insert_value(s, decode(y, g));
  s = create_values(s, decode(f, g), 2);
  s = insert_entry(s, "meta", decode(v, g));
  s = remove_by_index(s, 2);
  s = transform(s, decode(h, g), 1);
  const std::string folded = encode(s.product()).text();
  require(predicted.final_digest == folded, "prediction " + predicted.final_digest + " != folded " + folded);
  require(predicted.three_way, "three-way check failed");

  Store store(dir / "store", g);
  require(!*evaluate_plan(plan, &store).final_hit, "hit before priming");
  store.put(folded, "materialized result");
  const PlanReport replay = evaluate_plan(plan, &store);
  require(replay.final_hit && *replay.final_hit, "no hit after priming");
  require(replay.steps.back().hit && *replay.steps.back().hit, "final step not reported as hit");
  fs::remove_all(dir);
  return "predicted " + folded + ", hit after priming";
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_seconds;
    std::function<std::string()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "commuting probability", 1, criterion_1},
      {2, "compatibility gaps", 5, criterion_2},
      {3, "ambiguity bound", 1, criterion_3},
      {4, "birthday bound", 1, criterion_4},
      {5, "small-prime exhaustive oracle", 120, criterion_5},
      {6, "output factorization", 30, criterion_6},
      {7, "workflow identities", 10, criterion_7},
      {8, "map lifting", 30, criterion_8},
      {9, "codec", 10, criterion_9},
      {10, "repetition limit", 1, criterion_10},
      {11, "end-to-end predictability", 1, criterion_11},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = true;
    try {
      detail = c.run();
    } catch (const std::exception& e) {
      ok = false;
      detail = e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (ok && seconds > c.limit_seconds) {
      ok = false;
      detail += "; over the " + std::to_string(static_cast<int>(c.limit_seconds)) + " s limit";
    }
    failed += ok ? 0 : 1;
    std::printf("%s  %2d  %-30s %7.3f s  %s\n", ok ? "PASS" : "FAIL", c.id, c.name, seconds, detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
