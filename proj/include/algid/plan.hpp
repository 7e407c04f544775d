#pragma once

// Pipeline planner: folds a list of steps through the identification algebra
// and predicts every intermediate and final digest without touching payloads.
//
// Plan files are JSON:
//   {"version": "ut40.4",
//    "steps": [{"kind": "value", "digest": "..."},
//              {"kind": "function", "digest": "...", "outputs": 1}, ...]}
//
// Step kinds and their fields:
//   value, insert   digest
//   function        digest, outputs (optional; defaults to the current arity)
//   create          digest, outputs
//   remove_index    index (1-based)
//   remove_name     name
//   map_entry       key, digest

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "algid/group.hpp"
#include "algid/store.hpp"
#include "algid/workflow.hpp"

namespace algid {

struct PlanStep {
  enum class Kind { Value, Insert, Function, Create, RemoveIndex, RemoveName, MapEntry };

  Kind kind;
  std::optional<std::string> digest;
  std::optional<int> outputs;
  std::optional<std::uint64_t> index;
  std::optional<std::string> name;
  std::optional<std::string> key;
};

std::string to_string(PlanStep::Kind kind);

struct PipelinePlan {
  const GroupParams* version;
  std::vector<PlanStep> steps;
};

/// Errc::MalformedPlan for bad JSON, unknown or missing fields;
/// Errc::UnknownVersion for unknown versions.
PipelinePlan parse_plan(std::string_view json_text);
PipelinePlan load_plan(const std::string& path);

struct PlanReport {
  struct StepLine {
    PlanStep::Kind kind;
    /// The element this step contributes to the process product.
    std::string element;
    /// State product after the step.
    std::string running;
    std::optional<bool> hit;
  };
  struct SlotLine {
    std::string digest;
    bool placeholder;
    std::optional<std::string> name;
    std::optional<bool> hit;
  };

  std::string version;
  std::vector<StepLine> steps;
  std::vector<SlotLine> slots;
  std::string history;
  std::string final_digest;
  std::optional<bool> final_hit;
  bool three_way;
};

struct PlanOutcome {
  TupleState state;
  std::vector<UtElement> process;
};

/// Folds the plan through the workflow module. Removal steps are allowed.
PlanOutcome fold_plan(const PipelinePlan& plan);

/// Errc::VersionMismatch when the store uses another version.
PlanReport evaluate_plan(const PipelinePlan& plan, const Store* store = nullptr);

std::string plan_report_json(const PlanReport& report);
std::string plan_report_text(const PlanReport& report);

}  // namespace algid
