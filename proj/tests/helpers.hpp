#pragma once

#include <string>
#include <vector>

#include "lclcx/simulator.hpp"
#include "lclcx/solver.hpp"

namespace lclcx::testing {

inline Facet ring_facet(const Label& l, const Label& c, const Label& r) {
  return Facet{{{ProcessName{-1}, Value::label(l)},
                {ProcessName{0}, Value::label(c)},
                {ProcessName{1}, Value::label(r)}}};
}

/// The MIS local complex written out by hand: center 1 forces both
/// neighbors 0, center 0 needs a neighbor 1.
inline std::vector<Facet> m2_facets() {
  return {ring_facet("0", "1", "0"), ring_facet("1", "0", "0"), ring_facet("0", "0", "1"),
          ring_facet("1", "0", "1")};
}

/// The twelve proper-coloring triples over {1,2,3}, enumerated directly.
inline std::vector<Facet> c2_facets() {
  std::vector<Facet> fs;
  const std::vector<Label> cols = {"1", "2", "3"};
  for (const auto& l : cols)
    for (const auto& c : cols)
      for (const auto& r : cols)
        if (l != c && r != c) fs.push_back(ring_facet(l, c, r));
  return fs;
}

inline Value label_view(const std::vector<Label>& labels) {
  if (labels.size() == 1) return Value::label(labels[0]);
  std::vector<NodeState> st;
  for (const auto& l : labels) st.push_back({std::nullopt, l});
  return Value::view(std::move(st));
}

inline Value id_view(const std::vector<int>& ids, const std::vector<Label>& labels) {
  if (ids.size() == 1) return Value::id_label(ids[0], labels[0]);
  std::vector<NodeState> st;
  for (size_t i = 0; i < ids.size(); ++i) st.push_back({ids[i], labels[i]});
  return Value::view(std::move(st));
}

/// The one-round map for the promise that forbids the window x y z y x:
/// center x outputs 1, the view z y z outputs 1, everything else 0.
inline std::map<Value, Label> xyzyx_map(const Label& x, const Label& y, const Label& z) {
  std::map<Value, Label> out;
  const std::vector<Label> cols = {"1", "2", "3"};
  for (const auto& a : cols)
    for (const auto& b : cols)
      for (const auto& c : cols) {
        if (a == b || b == c) continue;
        bool one = (b == x) || (a == z && b == y && c == z);
        out[label_view({a, b, c})] = one ? "1" : "0";
      }
  return out;
}

/// Lifts a radius-t table to radius t+1 by ignoring the outermost states.
inline MapTable lift_once(const MapTable& table, const LclTask& task, int t) {
  MapTable lifted;
  for (const auto& v : enumerate_views(task, t + 1, IdMode::none())) {
    auto states = v.as_view().states;
    std::vector<NodeState> mid(states.begin() + 1, states.end() - 1);
    Value inner = mid.size() == 1 ? Value::label(mid[0].label) : Value::view(mid);
    lifted.mapping[v] = table.at(inner);
  }
  return lifted;
}

}  // namespace lclcx::testing
