#pragma once

// Identification algebra for multi-valued data: a tuple (or map) of value
// elements whose left-to-right product always equals the product of the
// process steps that built it and the product of its history entries.
//
// Positions and indexes are 1-based throughout, matching removal identifiers
// (the second value of a tuple is removed by delta_2).

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "algid/group.hpp"

namespace algid {

enum class Role { Value, Function, Removal, Reserved };

struct Slot {
  UtElement element;
  /// Opaque content reference, e.g. a digest of the stored payload. Empty
  /// string for placeholders of removed values.
  std::optional<std::string> content;
  /// Map key, when the slot was inserted as a map entry.
  std::optional<std::string> name;
  bool placeholder = false;
};

struct HistoryEntry {
  enum class Kind { Single, CommutingSet, Composite };

  Kind kind;
  Role role;
  std::vector<UtElement> elements;
  /// False for removals by identity away from the right end of the tuple.
  bool auditable = true;

  UtElement product() const;
};

enum class RemovalPolicy { Disabled, Enabled };

class TupleState {
 public:
  explicit TupleState(const GroupParams& params, RemovalPolicy removal = RemovalPolicy::Disabled);

  const GroupParams& params() const noexcept { return *params_; }
  const std::vector<Slot>& slots() const noexcept { return slots_; }
  const UtElement& product() const noexcept { return product_; }
  const std::vector<HistoryEntry>& history() const noexcept { return history_; }
  bool removal_enabled() const noexcept { return removal_ == RemovalPolicy::Enabled; }
  /// True while every history entry is auditable.
  bool auditable() const noexcept;

  UtElement slot_product() const;
  UtElement history_product() const;

  TupleState with_removal(RemovalPolicy removal) const;

 private:
  friend struct StateEditor;

  const GroupParams* params_;
  std::vector<Slot> slots_;
  UtElement product_;
  std::vector<HistoryEntry> history_;
  RemovalPolicy removal_;
};

/// Appends x on the right. Consecutive pairwise-commuting inserts share one
/// CommutingSet history entry.
TupleState insert_value(const TupleState& state, const UtElement& x,
                        std::optional<std::string> content = std::nullopt);

/// Inserts map_entry(key, x) and remembers the key on the slot.
TupleState insert_entry(const TupleState& state, std::string_view key, const UtElement& x,
                        std::optional<std::string> content = std::nullopt);

/// Splits `target` into k factors whose product is exactly `target`:
/// x_{i+1} = target * theta_i for i < k-1, x_k = (x_1...x_{k-1})^-1 * target.
std::vector<UtElement> factor_outputs(const UtElement& target, int k);

/// A function f returning k new values, prepended on the left. With state
/// product v the new values multiply to v f v^-1 and the new product is v f.
TupleState create_values(const TupleState& state, const UtElement& f, int k);
/// Same, for a composite function; history records the individual steps.
TupleState create_values(const TupleState& state, std::span<const UtElement> steps, int k);

/// f replaces the values at `replaced` and adds `k_new` more. The
/// replacements and new values are factored from product * f * w^-1, where w
/// is the product of the untouched values, and placed left of them.
TupleState substitute(const TupleState& state, const UtElement& f, std::span<const std::size_t> replaced,
                      int k_new);

/// f consumes the whole tuple and leaves `outputs` values.
TupleState transform(const TupleState& state, const UtElement& f, int outputs);

/// Requires RemovalPolicy::Enabled. The removed value and everything right of
/// it are cancelled and the rest is reinserted.
TupleState remove_by_identity(const TupleState& state, std::size_t position);
/// Requires RemovalPolicy::Enabled. The slot becomes an empty placeholder.
TupleState remove_by_index(const TupleState& state, std::size_t index);
/// Map variant of remove_by_index; looks the slot up by key.
TupleState remove_by_name(const TupleState& state, std::string_view name);

/// unlift(lift(x) * lift(key_element(key))); x must be commuting.
UtElement map_entry(std::string_view key, const UtElement& x);
/// Embeds the product of an inner map under `key`.
UtElement nested_map_element(const UtElement& inner_product, std::string_view key);

/// Left-to-right product of a non-empty list (partial application / composition).
UtElement compose(std::span<const UtElement> fs);
/// (product of applied)^-1 * f, so that x * applied... * adaptor == x * f.
UtElement adaptor(const UtElement& f, std::span<const UtElement> applied);

/// Tree of element sets combined by union (+) and Cartesian concatenation (x).
class SetExpression {
 public:
  static SetExpression leaf(std::vector<UtElement> elements);
  static SetExpression union_of(SetExpression lhs, SetExpression rhs);
  static SetExpression concat(SetExpression lhs, SetExpression rhs);

  struct Node;

 private:
  explicit SetExpression(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  friend std::vector<UtElement> expand_set_expression(const SetExpression& expr);

  std::shared_ptr<const Node> node_;
};

/// Distinct elements of the expression, ordered by rank.
std::vector<UtElement> expand_set_expression(const SetExpression& expr);

/// product(process) == state.product == slot product == history product.
bool verify_three_way(const TupleState& state, std::span<const UtElement> process);

/// Renders an element as its digest (or "#rank" for test groups).
std::string render_element(const UtElement& e);
/// e.g. <{x,y},<g,h>,w>; non-auditable entries carry a trailing '!'.
std::string render_history(const TupleState& state);

}  // namespace algid
