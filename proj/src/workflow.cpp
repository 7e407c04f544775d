#include "algid/workflow.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <variant>

#include "algid/digest.hpp"
#include "algid/errors.hpp"

namespace algid {

UtElement HistoryEntry::product() const {
  return algid::product(elements.front().params(), elements);
}

TupleState::TupleState(const GroupParams& params, RemovalPolicy removal)
    : params_(&params), product_(UtElement::identity(params)), removal_(removal) {}

bool TupleState::auditable() const noexcept {
  return std::all_of(history_.begin(), history_.end(), [](const HistoryEntry& e) { return e.auditable; });
}

UtElement TupleState::slot_product() const {
  UtElement acc = UtElement::identity(*params_);
  for (const auto& slot : slots_) acc = acc * slot.element;
  return acc;
}

UtElement TupleState::history_product() const {
  UtElement acc = UtElement::identity(*params_);
  for (const auto& entry : history_) acc = acc * entry.product();
  return acc;
}

TupleState TupleState::with_removal(RemovalPolicy removal) const {
  TupleState copy = *this;
  copy.removal_ = removal;
  return copy;
}

// Grants the free operations write access to TupleState internals.
struct StateEditor {
  explicit StateEditor(const TupleState& base) : state(base) {}

  std::vector<Slot>& slots() { return state.slots_; }
  UtElement& product() { return state.product_; }
  std::vector<HistoryEntry>& history() { return state.history_; }

  TupleState state;
};

namespace {

void require_group(const TupleState& state, const UtElement& e) {
  if (&state.params() != &e.params()) {
    throw Error(Errc::VersionMismatch,
                "element of " + e.params().name() + " used in a " + state.params().name() + " state");
  }
}

void require_function(const UtElement& f) {
  if (classify(f) != ElementClass::Ordered) {
    throw Error(Errc::NotAFunction, "creation functions need an ordered (non-commuting) element");
  }
}

void require_removal(const TupleState& state) {
  if (!state.removal_enabled()) {
    throw Error(Errc::RemovalDisabled, "removal is disabled for this state");
  }
}

std::size_t require_position(const TupleState& state, std::size_t position) {
  if (position == 0 || position > state.slots().size()) {
    throw Error(Errc::BadPosition, "position " + std::to_string(position) + " outside [1, " +
                                       std::to_string(state.slots().size()) + "]");
  }
  return position - 1;
}

UtElement product_of_slots(const GroupParams& params, const std::vector<Slot>& slots, std::size_t from,
                           std::size_t to) {
  UtElement acc = UtElement::identity(params);
  for (std::size_t i = from; i < to; ++i) acc = acc * slots[i].element;
  return acc;
}

void append_value_history(std::vector<HistoryEntry>& history, const UtElement& x) {
  if (!history.empty()) {
    HistoryEntry& last = history.back();
    if (last.kind == HistoryEntry::Kind::CommutingSet && last.role == Role::Value &&
        std::all_of(last.elements.begin(), last.elements.end(),
                    [&](const UtElement& m) { return commutes(m, x); })) {
      last.elements.push_back(x);
      return;
    }
  }
  history.push_back({HistoryEntry::Kind::CommutingSet, Role::Value, {x}, true});
}

// Core of creation and substitution: factors product * f * w^-1 into
// `outputs` slots placed left of `kept`.
TupleState rebuild(const TupleState& state, const UtElement& f, std::vector<Slot> kept, int outputs,
                   HistoryEntry entry) {
  require_group(state, f);
  require_function(f);
  if (outputs < 1) throw Error(Errc::InvalidArgument, "a function must produce at least one value");
  const GroupParams& params = state.params();
  UtElement w = UtElement::identity(params);
  for (const auto& slot : kept) w = w * slot.element;
  const UtElement target = state.product() * f * inverse(w);

  StateEditor editor(state);
  std::vector<Slot> slots;
  for (const auto& x : factor_outputs(target, outputs)) slots.push_back(Slot{x, std::nullopt, std::nullopt, false});
  for (auto& slot : kept) slots.push_back(std::move(slot));
  editor.slots() = std::move(slots);
  editor.product() = state.product() * f;
  editor.history().push_back(std::move(entry));
  return std::move(editor.state);
}

}  // namespace

TupleState insert_value(const TupleState& state, const UtElement& x, std::optional<std::string> content) {
  require_group(state, x);
  StateEditor editor(state);
  editor.slots().push_back(Slot{x, std::move(content), std::nullopt, false});
  editor.product() = state.product() * x;
  append_value_history(editor.history(), x);
  return std::move(editor.state);
}

TupleState insert_entry(const TupleState& state, std::string_view key, const UtElement& x,
                        std::optional<std::string> content) {
  require_group(state, x);
  for (const auto& slot : state.slots()) {
    if (slot.name && *slot.name == key && !slot.placeholder) {
      throw Error(Errc::InvalidKey, "duplicate map key '" + std::string(key) + "'");
    }
  }
  const UtElement entry = map_entry(key, x);
  StateEditor editor(state);
  editor.slots().push_back(Slot{entry, std::move(content), std::string(key), false});
  editor.product() = state.product() * entry;
  append_value_history(editor.history(), entry);
  return std::move(editor.state);
}

std::vector<UtElement> factor_outputs(const UtElement& target, int k) {
  if (k < 1) throw Error(Errc::InvalidArgument, "output count must be at least 1");
  if (k - 2 > kMaxTheta) {
    throw Error(Errc::ThetaExhausted, "at most " + std::to_string(kMaxTheta + 2) + " outputs are supported");
  }
  std::vector<UtElement> factors;
  factors.reserve(static_cast<std::size_t>(k));
  UtElement prefix = UtElement::identity(target.params());
  for (int i = 0; i + 1 < k; ++i) {
    factors.push_back(target * reserved_theta(i, target.params()));
    prefix = prefix * factors.back();
  }
  factors.push_back(inverse(prefix) * target);
  return factors;
}

TupleState create_values(const TupleState& state, const UtElement& f, int k) {
  return rebuild(state, f, state.slots(), k, {HistoryEntry::Kind::Single, Role::Function, {f}, true});
}

TupleState create_values(const TupleState& state, std::span<const UtElement> steps, int k) {
  const UtElement f = compose(steps);
  return rebuild(state, f, state.slots(), k,
                 {HistoryEntry::Kind::Composite, Role::Function, {steps.begin(), steps.end()}, true});
}

TupleState substitute(const TupleState& state, const UtElement& f, std::span<const std::size_t> replaced,
                      int k_new) {
  if (k_new < 0) throw Error(Errc::InvalidArgument, "negative count of new values");
  std::set<std::size_t> drop;
  for (std::size_t position : replaced) {
    if (!drop.insert(require_position(state, position)).second) {
      throw Error(Errc::BadPosition, "position " + std::to_string(position) + " listed twice");
    }
  }
  std::vector<Slot> kept;
  for (std::size_t i = 0; i < state.slots().size(); ++i) {
    if (!drop.contains(i)) kept.push_back(state.slots()[i]);
  }
  return rebuild(state, f, std::move(kept), static_cast<int>(drop.size()) + k_new,
                 {HistoryEntry::Kind::Single, Role::Function, {f}, true});
}

TupleState transform(const TupleState& state, const UtElement& f, int outputs) {
  return rebuild(state, f, {}, outputs, {HistoryEntry::Kind::Single, Role::Function, {f}, true});
}

TupleState remove_by_identity(const TupleState& state, std::size_t position) {
  require_removal(state);
  const std::size_t at = require_position(state, position);
  const GroupParams& params = state.params();
  const auto& slots = state.slots();

  // a = x y z w [y z w]^-1 z w
  const UtElement suffix = product_of_slots(params, slots, at, slots.size());
  std::vector<UtElement> steps{inverse(suffix)};
  for (std::size_t i = at + 1; i < slots.size(); ++i) steps.push_back(slots[i].element);

  StateEditor editor(state);
  editor.slots().erase(editor.slots().begin() + static_cast<std::ptrdiff_t>(at));
  editor.product() = state.product() * product(params, steps);
  const bool rightmost = at + 1 == slots.size();
  editor.history().push_back({HistoryEntry::Kind::Composite, Role::Removal, std::move(steps), rightmost});
  return std::move(editor.state);
}

namespace {

TupleState place_removal(const TupleState& state, std::size_t at, const UtElement& delta) {
  const GroupParams& params = state.params();
  const auto& slots = state.slots();
  if (slots[at].placeholder) throw Error(Errc::BadPosition, "value already removed");
  // The placeholder absorbs delta moved past the values right of it:
  // y' = y t delta t^-1, which is y delta when the value is rightmost.
  const UtElement tail = product_of_slots(params, slots, at + 1, slots.size());
  StateEditor editor(state);
  Slot& slot = editor.slots()[at];
  slot.element = slot.element * tail * delta * inverse(tail);
  slot.content = std::string();
  slot.placeholder = true;
  editor.product() = state.product() * delta;
  editor.history().push_back({HistoryEntry::Kind::Single, Role::Removal, {delta}, true});
  return std::move(editor.state);
}

}  // namespace

TupleState remove_by_index(const TupleState& state, std::size_t index) {
  require_removal(state);
  const std::size_t at = require_position(state, index);
  return place_removal(state, at, removal_by_index(index, state.params()));
}

TupleState remove_by_name(const TupleState& state, std::string_view name) {
  require_removal(state);
  const auto& slots = state.slots();
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (slots[i].name && *slots[i].name == name && !slots[i].placeholder) {
      return place_removal(state, i, removal_by_name(name, state.params()));
    }
  }
  throw Error(Errc::BadPosition, "no map entry named '" + std::string(name) + "'");
}

UtElement map_entry(std::string_view key, const UtElement& x) {
  if (classify(x) == ElementClass::Ordered) {
    throw Error(Errc::NotCommuting, "map values must be commuting elements (rank < p^4)");
  }
  return unlift(lift(x) * lift(key_element(key, x.params())));
}

UtElement nested_map_element(const UtElement& inner_product, std::string_view key) {
  return unlift(lift(inner_product) * lift(key_element(key, inner_product.params())));
}

UtElement compose(std::span<const UtElement> fs) {
  if (fs.empty()) throw Error(Errc::InvalidArgument, "cannot compose an empty list");
  return product(fs.front().params(), fs);
}

UtElement adaptor(const UtElement& f, std::span<const UtElement> applied) {
  return inverse(product(f.params(), applied)) * f;
}

struct SetExpression::Node {
  enum class Op { Leaf, Union, Concat };
  Op op;
  std::vector<UtElement> elements;
  std::shared_ptr<const Node> lhs, rhs;
};

SetExpression SetExpression::leaf(std::vector<UtElement> elements) {
  return SetExpression(std::make_shared<const Node>(Node{Node::Op::Leaf, std::move(elements), nullptr, nullptr}));
}

SetExpression SetExpression::union_of(SetExpression lhs, SetExpression rhs) {
  return SetExpression(std::make_shared<const Node>(Node{Node::Op::Union, {}, lhs.node_, rhs.node_}));
}

SetExpression SetExpression::concat(SetExpression lhs, SetExpression rhs) {
  return SetExpression(std::make_shared<const Node>(Node{Node::Op::Concat, {}, lhs.node_, rhs.node_}));
}

namespace {

using RankedSet = std::map<Rank, UtElement>;

RankedSet evaluate(const SetExpression::Node& node) {
  RankedSet out;
  switch (node.op) {
    case SetExpression::Node::Op::Leaf:
      for (const auto& e : node.elements) out.emplace(rank_of(e), e);
      break;
    case SetExpression::Node::Op::Union: {
      out = evaluate(*node.lhs);
      out.merge(evaluate(*node.rhs));
      break;
    }
    case SetExpression::Node::Op::Concat: {
      const RankedSet lhs = evaluate(*node.lhs);
      const RankedSet rhs = evaluate(*node.rhs);
      for (const auto& [ra, a] : lhs) {
        for (const auto& [rb, b] : rhs) {
          const UtElement ab = a * b;
          out.emplace(rank_of(ab), ab);
        }
      }
      break;
    }
  }
  return out;
}

}  // namespace

std::vector<UtElement> expand_set_expression(const SetExpression& expr) {
  std::vector<UtElement> out;
  for (auto& [rank, e] : evaluate(*expr.node_)) out.push_back(e);
  return out;
}

bool verify_three_way(const TupleState& state, std::span<const UtElement> process) {
  const UtElement from_process = product(state.params(), process);
  return from_process == state.product() && state.slot_product() == state.product() &&
         state.history_product() == state.product();
}

std::string render_element(const UtElement& e) {
  if (e.params().has_digest()) return encode(e).text();
  return "#" + rank_of(e).str();
}

std::string render_history(const TupleState& state) {
  std::string out = "<";
  bool first_entry = true;
  for (const auto& entry : state.history()) {
    if (!first_entry) out += ',';
    first_entry = false;
    const bool bare = entry.elements.size() == 1 && entry.kind != HistoryEntry::Kind::Composite;
    const char* open = entry.kind == HistoryEntry::Kind::Composite ? "<" : "{";
    const char* close = entry.kind == HistoryEntry::Kind::Composite ? ">" : "}";
    if (!bare) out += open;
    for (std::size_t i = 0; i < entry.elements.size(); ++i) {
      if (i) out += ',';
      out += render_element(entry.elements[i]);
    }
    if (!bare) out += close;
    if (!entry.auditable) out += '!';
  }
  out += '>';
  return out;
}

}  // namespace algid
