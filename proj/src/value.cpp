#include "lclcx/value.hpp"

#include <algorithm>
#include <sstream>

#include "lclcx/errors.hpp"

namespace lclcx {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::malformed_facet: return "MalformedFacet";
    case Errc::mixed_value_tags: return "MixedValueTags";
    case Errc::incomplete_table: return "IncompleteTable";
    case Errc::empty_complex: return "EmptyComplex";
    case Errc::syntax_error: return "SyntaxError";
    case Errc::semantic_error: return "SemanticError";
    case Errc::unsupported_degree: return "UnsupportedDegree";
    case Errc::radius_mismatch: return "RadiusMismatch";
    case Errc::no_ids: return "NoIds";
    case Errc::too_large: return "TooLarge";
    case Errc::missing_view: return "MissingView";
    case Errc::infeasible_promise: return "InfeasiblePromise";
    case Errc::verification_failed: return "VerificationFailed";
    case Errc::id_range: return "IdRange";
  }
  return "Error";
}

SetFamily SetFamily::canonical(std::vector<std::vector<Value>> sets) {
  for (auto& s : sets) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }
  std::sort(sets.begin(), sets.end());
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  return SetFamily{std::move(sets)};
}

std::strong_ordering operator<=>(const SetFamily& a, const SetFamily& b) {
  return std::lexicographical_compare_three_way(a.sets.begin(), a.sets.end(),
                                                b.sets.begin(), b.sets.end());
}

bool operator==(const SetFamily& a, const SetFamily& b) {
  return (a <=> b) == std::strong_ordering::equal;
}

std::strong_ordering operator<=>(const Value& a, const Value& b) {
  if (auto c = a.v_.index() <=> b.v_.index(); c != 0) return c;
  switch (a.tag()) {
    case Value::Tag::label: return a.as_label() <=> b.as_label();
    case Value::Tag::id_label: return a.as_id_label() <=> b.as_id_label();
    case Value::Tag::view: return a.as_view() <=> b.as_view();
    case Value::Tag::family: return a.as_family() <=> b.as_family();
  }
  return std::strong_ordering::equal;
}

bool operator==(const Value& a, const Value& b) {
  return (a <=> b) == std::strong_ordering::equal;
}

bool Value::has_ids() const {
  switch (tag()) {
    case Tag::id_label: return true;
    case Tag::view: {
      const auto& st = as_view().states;
      return !st.empty() && st.front().id.has_value();
    }
    default: return false;
  }
}

std::string node_state_str(const NodeState& s) {
  if (s.id) return "(" + std::to_string(*s.id) + ":" + s.label + ")";
  return s.label;
}

namespace {

std::vector<std::string> split_top(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '(' || c == '{') ++depth;
    if (c == ')' || c == '}') --depth;
    if (c == sep && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

NodeState node_state_from_str(const std::string& s) {
  if (!s.empty() && s.front() == '(') {
    auto colon = s.find(':');
    if (colon == std::string::npos || s.back() != ')')
      fail(Errc::syntax_error, "bad node state: " + s);
    int id = 0;
    try {
      id = std::stoi(s.substr(1, colon - 1));
    } catch (...) {
      fail(Errc::syntax_error, "bad node id: " + s);
    }
    return NodeState{id, s.substr(colon + 1, s.size() - colon - 2)};
  }
  return NodeState{std::nullopt, s};
}

}  // namespace

Value parse_value(const std::string& s) {
  if (s.empty()) fail(Errc::syntax_error, "empty value");
  if (s.front() == '{') {
    if (s.back() != '}') fail(Errc::syntax_error, "unbalanced family: " + s);
    std::string inner = s.substr(1, s.size() - 2);
    std::vector<std::vector<Value>> sets;
    if (!inner.empty()) {
      for (const auto& part : split_top(inner, ',')) {
        if (part.size() < 2 || part.front() != '{' || part.back() != '}')
          fail(Errc::syntax_error, "bad family member: " + part);
        std::string members = part.substr(1, part.size() - 2);
        std::vector<Value> set;
        if (!members.empty())
          for (const auto& m : split_top(members, ',')) set.push_back(parse_value(m));
        sets.push_back(std::move(set));
      }
    }
    return Value::family(SetFamily::canonical(std::move(sets)));
  }
  auto parts = split_top(s, '|');
  if (parts.size() > 1) {
    std::vector<NodeState> states;
    for (const auto& p : parts) states.push_back(node_state_from_str(p));
    return Value::view(std::move(states));
  }
  NodeState st = node_state_from_str(s);
  if (st.id) return Value::id_label(*st.id, st.label);
  return Value::label(st.label);
}

std::string Value::str() const {
  switch (tag()) {
    case Tag::label: return as_label();
    case Tag::id_label:
      return "(" + std::to_string(as_id_label().id) + ":" + as_id_label().label + ")";
    case Tag::view: {
      std::string out;
      const auto& st = as_view().states;
      for (size_t i = 0; i < st.size(); ++i) {
        if (i) out += "|";
        out += node_state_str(st[i]);
      }
      return out;
    }
    case Tag::family: {
      std::string out = "{";
      const auto& sets = as_family().sets;
      for (size_t i = 0; i < sets.size(); ++i) {
        if (i) out += ",";
        out += "{";
        for (size_t j = 0; j < sets[i].size(); ++j) {
          if (j) out += ",";
          out += sets[i][j].str();
        }
        out += "}";
      }
      return out + "}";
    }
  }
  return {};
}

}  // namespace lclcx
