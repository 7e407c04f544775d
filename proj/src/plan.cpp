#include "algid/plan.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "algid/digest.hpp"
#include "algid/errors.hpp"

namespace algid {

namespace {

using Json = nlohmann::ordered_json;

struct KindSpec {
  PlanStep::Kind kind;
  std::set<std::string> required;
  std::set<std::string> optional;
};

const std::map<std::string, KindSpec>& kind_table() {
  using K = PlanStep::Kind;
  static const std::map<std::string, KindSpec> table = {
      {"value", {K::Value, {"digest"}, {}}},
      {"insert", {K::Insert, {"digest"}, {}}},
      {"function", {K::Function, {"digest"}, {"outputs"}}},
      {"create", {K::Create, {"digest", "outputs"}, {}}},
      {"remove_index", {K::RemoveIndex, {"index"}, {}}},
      {"remove_name", {K::RemoveName, {"name"}, {}}},
      {"map_entry", {K::MapEntry, {"key", "digest"}, {}}},
  };
  return table;
}

[[noreturn]] void malformed(const std::string& what) { throw Error(Errc::MalformedPlan, what); }

std::string get_string(const Json& step, const char* field, std::size_t n) {
  const Json& v = step.at(field);
  if (!v.is_string()) malformed("step " + std::to_string(n) + ": '" + field + "' must be a string");
  return v.get<std::string>();
}

std::uint64_t get_count(const Json& step, const char* field, std::size_t n) {
  const Json& v = step.at(field);
  if (!v.is_number_unsigned() || v.get<std::uint64_t>() == 0) {
    malformed("step " + std::to_string(n) + ": '" + field + "' must be a positive integer");
  }
  return v.get<std::uint64_t>();
}

PlanStep parse_step(const Json& step, std::size_t n) {
  if (!step.is_object()) malformed("step " + std::to_string(n) + " is not an object");
  if (!step.contains("kind") || !step["kind"].is_string()) {
    malformed("step " + std::to_string(n) + " has no string 'kind'");
  }
  const std::string kind_name = step["kind"].get<std::string>();
  const auto& table = kind_table();
  const auto it = table.find(kind_name);
  if (it == table.end()) malformed("step " + std::to_string(n) + ": unknown kind '" + kind_name + "'");
  const KindSpec& spec = it->second;

  for (const auto& [field, value] : step.items()) {
    if (field == "kind") continue;
    if (!spec.required.count(field) && !spec.optional.count(field)) {
      malformed("step " + std::to_string(n) + ": field '" + field + "' not allowed for kind '" + kind_name + "'");
    }
  }
  for (const auto& field : spec.required) {
    if (!step.contains(field)) {
      malformed("step " + std::to_string(n) + ": kind '" + kind_name + "' needs '" + field + "'");
    }
  }

  PlanStep out{spec.kind, {}, {}, {}, {}, {}};
  if (step.contains("digest")) out.digest = get_string(step, "digest", n);
  if (step.contains("outputs")) {
    const std::uint64_t k = get_count(step, "outputs", n);
    if (k > 1024) malformed("step " + std::to_string(n) + ": 'outputs' out of range");
    out.outputs = static_cast<int>(k);
  }
  if (step.contains("index")) out.index = get_count(step, "index", n);
  if (step.contains("name")) out.name = get_string(step, "name", n);
  if (step.contains("key")) out.key = get_string(step, "key", n);
  return out;
}

}  // namespace

std::string to_string(PlanStep::Kind kind) {
  for (const auto& [name, spec] : kind_table()) {
    if (spec.kind == kind) return name;
  }
  return "?";
}

PipelinePlan parse_plan(std::string_view json_text) {
  Json doc;
  try {
    doc = Json::parse(json_text);
  } catch (const Json::parse_error& e) {
    malformed(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) malformed("plan must be a JSON object");
  for (const auto& [field, value] : doc.items()) {
    if (field != "version" && field != "steps") malformed("unknown top-level field '" + field + "'");
  }
  if (!doc.contains("version") || !doc["version"].is_string()) malformed("plan needs a string 'version'");
  if (!doc.contains("steps") || !doc["steps"].is_array()) malformed("plan needs a 'steps' array");

  PipelinePlan plan{&GroupParams::official(doc["version"].get<std::string>()), {}};
  std::size_t n = 1;
  for (const auto& step : doc["steps"]) plan.steps.push_back(parse_step(step, n++));
  return plan;
}

PipelinePlan load_plan(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Io, "cannot open plan " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_plan(buffer.str());
}

namespace {

// Applies one step; returns the element it contributes to the process.
UtElement apply_step(TupleState& state, const PlanStep& step) {
  const GroupParams& v = state.params();
  switch (step.kind) {
    case PlanStep::Kind::Value:
    case PlanStep::Kind::Insert: {
      const UtElement x = decode(*step.digest, v);
      state = insert_value(state, x, *step.digest);
      return x;
    }
    case PlanStep::Kind::Function: {
      const UtElement f = decode(*step.digest, v);
      const int k = step.outputs.value_or(std::max<int>(1, static_cast<int>(state.slots().size())));
      state = transform(state, f, k);
      return f;
    }
    case PlanStep::Kind::Create: {
      const UtElement f = decode(*step.digest, v);
      state = create_values(state, f, *step.outputs);
      return f;
    }
    case PlanStep::Kind::RemoveIndex:
      state = remove_by_index(state, static_cast<std::size_t>(*step.index));
      return removal_by_index(*step.index, v);
    case PlanStep::Kind::RemoveName:
      state = remove_by_name(state, *step.name);
      return removal_by_name(*step.name, v);
    case PlanStep::Kind::MapEntry: {
      const UtElement x = decode(*step.digest, v);
      state = insert_entry(state, *step.key, x, *step.digest);
      return map_entry(*step.key, x);
    }
  }
  throw Error(Errc::MalformedPlan, "unhandled step kind");
}

std::optional<bool> lookup(const Store* store, const std::string& digest) {
  if (store == nullptr) return std::nullopt;
  return store->has(store->resolve(digest));
}

}  // namespace

PlanOutcome fold_plan(const PipelinePlan& plan) {
  PlanOutcome out{TupleState(*plan.version, RemovalPolicy::Enabled), {}};
  for (const auto& step : plan.steps) out.process.push_back(apply_step(out.state, step));
  return out;
}

PlanReport evaluate_plan(const PipelinePlan& plan, const Store* store) {
  if (store != nullptr && &store->version() != plan.version) {
    throw Error(Errc::VersionMismatch,
                "plan uses " + plan.version->name() + " but the store uses " + store->version().name());
  }
  PlanReport report;
  report.version = plan.version->name();

  TupleState state(*plan.version, RemovalPolicy::Enabled);
  std::vector<UtElement> process;
  for (const auto& step : plan.steps) {
    const UtElement e = apply_step(state, step);
    process.push_back(e);
    std::string running = encode(state.product()).text();
    report.steps.push_back({step.kind, encode(e).text(), running, lookup(store, running)});
  }
  for (const auto& slot : state.slots()) {
    std::string d = encode(slot.element).text();
    // Placeholders are never materialized, so they have no hit/miss status.
    std::optional<bool> hit = slot.placeholder ? std::nullopt : lookup(store, d);
    report.slots.push_back({std::move(d), slot.placeholder, slot.name, hit});
  }
  report.history = render_history(state);
  report.final_digest = encode(state.product()).text();
  report.final_hit = lookup(store, report.final_digest);
  report.three_way = verify_three_way(state, process);
  return report;
}

namespace {

Json hit_json(const std::optional<bool>& hit) {
  if (!hit) return nullptr;
  return *hit ? "hit" : "miss";
}

std::string hit_text(const std::optional<bool>& hit) {
  if (!hit) return "-";
  return *hit ? "hit" : "miss";
}

}  // namespace

std::string plan_report_json(const PlanReport& report) {
  Json doc;
  doc["version"] = report.version;
  doc["final"] = report.final_digest;
  doc["final_status"] = hit_json(report.final_hit);
  doc["three_way"] = report.three_way;
  Json steps = Json::array();
  for (std::size_t i = 0; i < report.steps.size(); ++i) {
    const auto& s = report.steps[i];
    steps.push_back({{"step", i + 1},
                     {"kind", to_string(s.kind)},
                     {"element", s.element},
                     {"running", s.running},
                     {"status", hit_json(s.hit)}});
  }
  doc["steps"] = std::move(steps);
  Json slots = Json::array();
  for (std::size_t i = 0; i < report.slots.size(); ++i) {
    const auto& s = report.slots[i];
    Json slot = {{"position", i + 1}, {"digest", s.digest}, {"placeholder", s.placeholder}};
    slot["name"] = s.name ? Json(*s.name) : Json(nullptr);
    slot["status"] = hit_json(s.hit);
    slots.push_back(std::move(slot));
  }
  doc["slots"] = std::move(slots);
  doc["history"] = report.history;
  return doc.dump(2) + "\n";
}

std::string plan_report_text(const PlanReport& report) {
  std::size_t kind_w = 4;
  for (const auto& s : report.steps) kind_w = std::max(kind_w, to_string(s.kind).size());

  std::ostringstream out;
  out << "version  " << report.version << "\n";
  out << "final    " << report.final_digest << "  " << hit_text(report.final_hit) << "\n";
  out << "checked  " << (report.three_way ? "three-way ok" : "three-way MISMATCH") << "\n\n";

  out << "step  " << std::left << std::setw(static_cast<int>(kind_w)) << "kind"
      << "  element / running  status\n";
  for (std::size_t i = 0; i < report.steps.size(); ++i) {
    const auto& s = report.steps[i];
    out << std::right << std::setw(4) << i + 1 << "  " << std::left << std::setw(static_cast<int>(kind_w))
        << to_string(s.kind) << "  " << s.element << "\n";
    out << std::string(6 + kind_w, ' ') << "  " << s.running << "  " << hit_text(s.hit) << "\n";
  }

  out << "\nslot  digest\n";
  for (std::size_t i = 0; i < report.slots.size(); ++i) {
    const auto& s = report.slots[i];
    out << std::right << std::setw(4) << i + 1 << "  " << s.digest << "  " << hit_text(s.hit);
    if (s.placeholder) out << "  (removed)";
    if (s.name) out << "  key=" << *s.name;
    out << "\n";
  }
  out << "\nhistory  " << report.history << "\n";
  return out.str();
}

}  // namespace algid
