#pragma once

#include <compare>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace lclcx {

/// A node label. Labels are plain symbols; the characters used by the
/// serialization grammar ("|:(){}," and whitespace) are rejected at parse
/// time so that every value has an unambiguous canonical string form.
using Label = std::string;

/// State of one node inside a window: its input label, plus an identifier
/// when the execution model assigns IDs.
struct NodeState {
  std::optional<int> id;
  Label label;

  friend auto operator<=>(const NodeState&, const NodeState&) = default;
};

class Value;

/// A finite family of finite sets of values, kept in canonical form
/// (members sorted and deduplicated, family sorted and deduplicated).
/// Empty families and empty member sets are meaningful and preserved.
struct SetFamily {
  std::vector<std::vector<Value>> sets;

  static SetFamily canonical(std::vector<std::vector<Value>> sets);

  friend std::strong_ordering operator<=>(const SetFamily&, const SetFamily&);
  friend bool operator==(const SetFamily&, const SetFamily&);
};

/// A vertex payload. Exactly one of four shapes: a bare label, an
/// (id, label) pair, a radius-t window of node states, or a set family.
/// Values are totally ordered (tag first, then content, IDs numerically),
/// which fixes iteration order everywhere in the library.
class Value {
public:
  enum class Tag { label, id_label, view, family };

  struct IdLabel {
    int id;
    Label label;
    friend auto operator<=>(const IdLabel&, const IdLabel&) = default;
  };

  struct View {
    std::vector<NodeState> states;  // length 2t+1 for radius t
    friend auto operator<=>(const View&, const View&) = default;
  };

  Value() : v_(Label{}) {}

  static Value label(Label l) { return Value(std::move(l)); }
  static Value id_label(int id, Label l) { return Value(IdLabel{id, std::move(l)}); }
  static Value view(std::vector<NodeState> states) { return Value(View{std::move(states)}); }
  static Value family(SetFamily f) { return Value(std::move(f)); }

  Tag tag() const { return static_cast<Tag>(v_.index()); }

  const Label& as_label() const { return std::get<Label>(v_); }
  const IdLabel& as_id_label() const { return std::get<IdLabel>(v_); }
  const View& as_view() const { return std::get<View>(v_); }
  const SetFamily& as_family() const { return std::get<SetFamily>(v_); }

  bool has_ids() const;

  /// Canonical serialization: "a" for labels, "(7:a)" for id-labels,
  /// states joined by "|" for views, "{{a,b},{c}}" for families.
  std::string str() const;

  friend std::strong_ordering operator<=>(const Value& a, const Value& b);
  friend bool operator==(const Value& a, const Value& b);

private:
  explicit Value(Label l) : v_(std::move(l)) {}
  explicit Value(IdLabel il) : v_(std::move(il)) {}
  explicit Value(View w) : v_(std::move(w)) {}
  explicit Value(SetFamily f) : v_(std::move(f)) {}

  std::variant<Label, IdLabel, View, SetFamily> v_;
};

std::string node_state_str(const NodeState& s);

/// Inverse of Value::str(). Throws SyntaxError on malformed input.
Value parse_value(const std::string& s);

}  // namespace lclcx
