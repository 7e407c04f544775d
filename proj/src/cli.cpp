#include "algid/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "algid/analysis.hpp"
#include "algid/digest.hpp"
#include "algid/element_gen.hpp"
#include "algid/errors.hpp"
#include "algid/group.hpp"
#include "algid/plan.hpp"
#include "algid/selftest.hpp"
#include "algid/store.hpp"
#include "algid/workflow.hpp"

namespace algid {

namespace {

// Digests may start with '-', so positionals also accept "@<digest>".
std::string unescape(const std::string& arg) {
  return !arg.empty() && arg.front() == '@' ? arg.substr(1) : arg;
}

std::string read_input(const std::string& path, std::istream& in) {
  if (path == "-") return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  std::ifstream file(path, std::ios::binary);
  if (!file) throw Error(Errc::Io, "cannot open " + path);
  return std::string(std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>());
}

const CLI::Validator kInteger(
    [](std::string& s) -> std::string {
      const std::size_t start = !s.empty() && s.front() == '-' ? 1 : 0;
      if (s.size() == start || s.find_first_not_of("0123456789", start) != std::string::npos) {
        return "not an integer: " + s;
      }
      return {};
    },
    "INTEGER");

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Algebraic identifiers over UT(4, p)", "algid"};
  app.require_subcommand(1);
  app.fallthrough();
  app.footer("Digests starting with '-' can be written as @DIGEST or placed after --.");

  std::vector<std::string> version_names;
  for (const GroupParams* g : GroupParams::officials()) version_names.push_back(g->name());
  std::string version_name = "ut40.4";
  CLI::Option* version_opt = app.add_option("--version", version_name, "Identifier version")
                                 ->envname("ALGID_VERSION")
                                 ->check(CLI::IsMember(version_names))
                                 ->capture_default_str();

  // hash
  CLI::App* hash = app.add_subcommand("hash", "Digest of a value or function element generated from content");
  std::string hash_kind = "value";
  std::string hash_path = "-";
  hash->add_option("--kind", hash_kind)->check(CLI::IsMember({"value", "function"}))->capture_default_str();
  hash->add_option("path", hash_path, "File to hash, or - for stdin")->capture_default_str();

  // op / inv / pow
  CLI::App* op = app.add_subcommand("op", "Left-to-right product of digests");
  std::vector<std::string> op_digests;
  op->add_option("digests", op_digests)->required();

  CLI::App* inv = app.add_subcommand("inv", "Inverse of a digest");
  std::string inv_digest;
  inv->add_option("digest", inv_digest)->required();

  CLI::App* pow = app.add_subcommand("pow", "Power of a digest");
  std::string pow_digest, pow_exponent;
  pow->add_option("digest", pow_digest)->required();
  pow->add_option("exponent", pow_exponent)->required()->check(kInteger);

  // classify / commutes
  CLI::App* classify_cmd = app.add_subcommand("classify", "Print the class and rank of a digest");
  std::string classify_digest;
  classify_cmd->add_option("digest", classify_digest)->required();

  CLI::App* commutes_cmd = app.add_subcommand("commutes", "Exit 0 when two digests commute, 1 otherwise");
  std::string commutes_a, commutes_b;
  commutes_cmd->add_option("a", commutes_a)->required();
  commutes_cmd->add_option("b", commutes_b)->required();

  // import
  CLI::App* import_cmd = app.add_subcommand("import", "Convert a legacy identifier to a digest");
  int import_base = 16;
  std::string import_mode = "ordered";
  std::string import_text;
  import_cmd->add_option("--base", import_base)->check(CLI::IsMember({16, 62}))->capture_default_str();
  import_cmd->add_option("--mode", import_mode)->check(CLI::IsMember({"ordered", "commuting"}))->capture_default_str();
  import_cmd->add_option("identifier", import_text)->required();

  // reserved
  CLI::App* reserved = app.add_subcommand("reserved", "Reserved identifiers");
  reserved->require_subcommand(1);
  CLI::App* rho = reserved->add_subcommand("rho", "The reserved element rho");
  CLI::App* theta = reserved->add_subcommand("theta", "The i-th successor of rho");
  int theta_index = 0;
  theta->add_option("index", theta_index)->required();
  CLI::App* delta = reserved->add_subcommand("delta", "Removal identifier");
  std::optional<std::uint64_t> delta_index;
  std::optional<std::string> delta_name;
  CLI::Option* delta_index_opt = delta->add_option("--index", delta_index, "1-based position");
  CLI::Option* delta_name_opt = delta->add_option("--name", delta_name, "Map key");
  delta_index_opt->excludes(delta_name_opt);
  delta->require_option(1);

  // key
  CLI::App* key_cmd = app.add_subcommand("key", "Digest of the element derived from a map key");
  std::string key_text;
  key_cmd->add_option("key", key_text)->required();

  // analyze
  CLI::App* analyze = app.add_subcommand("analyze", "Robustness report");
  bool analyze_table = false;
  std::optional<unsigned> analyze_beta;
  std::vector<std::uint64_t> analyze_lengths;
  std::string analyze_format = "text";
  analyze->add_flag("--table1", analyze_table, "Compare candidate groups");
  analyze->add_option("--beta", analyze_beta, "Digest width in bits");
  analyze->add_option("--length", analyze_lengths, "Expression lengths");
  analyze->add_option("--format", analyze_format)->check(CLI::IsMember({"text", "tsv"}))->capture_default_str();

  // plan
  CLI::App* plan_cmd = app.add_subcommand("plan", "Predict the digests of a pipeline plan");
  std::string plan_file;
  std::optional<std::string> plan_store;
  std::string plan_format = "text";
  plan_cmd->add_option("file", plan_file)->required();
  plan_cmd->add_option("--store", plan_store, "Store root for hit/miss lookups");
  plan_cmd->add_option("--format", plan_format)->check(CLI::IsMember({"text", "json"}))->capture_default_str();

  // store
  CLI::App* store_cmd = app.add_subcommand("store", "Content-addressable store");
  std::string store_root;
  store_cmd->add_option("--root", store_root, "Store directory")->required();
  store_cmd->require_subcommand(1);
  CLI::App* store_put = store_cmd->add_subcommand("put", "Store a payload under a digest");
  std::string put_digest, put_path = "-";
  store_put->add_option("digest", put_digest)->required();
  store_put->add_option("path", put_path, "Payload file, or - for stdin")->capture_default_str();
  CLI::App* store_get = store_cmd->add_subcommand("get", "Write a stored payload to stdout");
  std::string get_digest;
  store_get->add_option("digest", get_digest)->required();
  CLI::App* store_has = store_cmd->add_subcommand("has", "Exit 0 when the digest is stored, 1 otherwise");
  std::string has_digest;
  store_has->add_option("digest", has_digest)->required();
  CLI::App* store_alias = store_cmd->add_subcommand("alias", "Record that FROM resolves to TO");
  std::string alias_from, alias_to;
  store_alias->add_option("from", alias_from)->required();
  store_alias->add_option("to", alias_to)->required();
  CLI::App* store_resolve = store_cmd->add_subcommand("resolve", "Follow an alias");
  std::string resolve_digest;
  store_resolve->add_option("digest", resolve_digest)->required();

  // selftest
  CLI::App* selftest = app.add_subcommand("selftest", "Run the small-prime oracle suite");
  SelftestOptions self_options;
  selftest->add_option("--prime", self_options.prime)->capture_default_str();
  selftest->add_option("--budget-seconds", self_options.budget_seconds)->capture_default_str();

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    const GroupParams& v = GroupParams::official(version_name);
    const auto dec = [&](const std::string& arg) { return decode(unescape(arg), v); };
    const auto print = [&](const UtElement& e) { out << encode(e).text() << '\n'; };

    if (hash->parsed()) {
      const std::string content = read_input(hash_path, in);
      print(hash_kind == "value" ? gen_value_element(content, v) : gen_function_element(content, v));
    } else if (op->parsed()) {
      UtElement acc = UtElement::identity(v);
      for (const auto& d : op_digests) acc = acc * dec(d);
      print(acc);
    } else if (inv->parsed()) {
      print(inverse(dec(inv_digest)));
    } else if (pow->parsed()) {
      const UtElement a = dec(pow_digest);
      const bool negative = pow_exponent.front() == '-';
      const Rank n(negative ? pow_exponent.substr(1) : pow_exponent);
      print(power(negative ? inverse(a) : a, n));
    } else if (classify_cmd->parsed()) {
      const UtElement a = dec(classify_digest);
      out << to_string(classify(a)) << ' ' << rank_of(a).str() << '\n';
    } else if (commutes_cmd->parsed()) {
      return commutes(dec(commutes_a), dec(commutes_b)) ? 0 : 1;
    } else if (import_cmd->parsed()) {
      const ImportMode mode = import_mode == "ordered" ? ImportMode::Ordered : ImportMode::Commuting;
      print(import_legacy(import_text, import_base, mode, v));
    } else if (reserved->parsed()) {
      if (rho->parsed()) {
        print(reserved_rho(v));
      } else if (theta->parsed()) {
        print(reserved_theta(theta_index, v));
      } else if (delta_index) {
        print(removal_by_index(*delta_index, v));
      } else {
        print(removal_by_name(*delta_name, v));
      }
    } else if (key_cmd->parsed()) {
      print(key_element(key_text, v));
    } else if (analyze->parsed()) {
      const bool tsv = analyze_format == "tsv";
      if (analyze_table) {
        const auto rows = table1_report(analyze_beta.value_or(192));
        out << (tsv ? format_table1_tsv(rows) : format_table1(rows));
      } else {
        if (analyze_lengths.empty()) analyze_lengths = {10, 1000, 10000000};
        const auto report = robustness_report(v, analyze_beta, analyze_lengths);
        out << (tsv ? format_report_tsv(report) : format_report(report));
      }
    } else if (plan_cmd->parsed()) {
      const PipelinePlan plan = load_plan(plan_file);
      const bool version_given = version_opt->count() > 0 || std::getenv("ALGID_VERSION") != nullptr;
      if (version_given && plan.version != &v) {
        throw Error(Errc::VersionMismatch, "plan uses " + plan.version->name() + ", requested " + v.name());
      }
      std::optional<Store> store;
      if (plan_store) store.emplace(*plan_store, *plan.version);
      const PlanReport report = evaluate_plan(plan, store ? &*store : nullptr);
      out << (plan_format == "json" ? plan_report_json(report) : plan_report_text(report));
    } else if (store_cmd->parsed()) {
      Store store(store_root, v);
      if (store_put->parsed()) {
        store.put(unescape(put_digest), read_input(put_path, in));
      } else if (store_get->parsed()) {
        out << store.get(unescape(get_digest));
      } else if (store_has->parsed()) {
        return store.has(unescape(has_digest)) ? 0 : 1;
      } else if (store_alias->parsed()) {
        store.alias_put(unescape(alias_from), unescape(alias_to));
      } else {
        out << store.resolve(unescape(resolve_digest)) << '\n';
      }
    } else if (selftest->parsed()) {
      bool all = true;
      for (const auto& r : run_selftest(self_options)) {
        all = all && r.passed;
        out << (r.passed ? "PASS  " : "FAIL  ") << std::left << std::setw(24) << r.name << ' ' << r.detail << "  ("
            << std::fixed << std::setprecision(2) << r.seconds << " s)\n";
      }
      return all ? 0 : 1;
    }
    return 0;
  } catch (const Error& e) {
    err << "algid: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "algid: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace algid
