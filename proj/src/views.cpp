#include "lclcx/views.hpp"

#include <algorithm>
#include <functional>

#include "lclcx/errors.hpp"

namespace lclcx {

const char* IdMode::name() const {
  switch (kind) {
    case Kind::none: return "none";
    case Kind::arbitrary: return "arbitrary";
    case Kind::increasing: return "increasing";
  }
  return "none";
}

long long view_bound(int d, int k) {
  if (d < 2 || k < 0) fail(Errc::semantic_error, "view_bound needs d >= 2, k >= 0");
  if (d == 2) return 1 + 2LL * k;
  long long total = 1, frontier = d;
  for (int i = 0; i < k; ++i) {
    total += frontier;
    if (total > (1LL << 56)) fail(Errc::too_large, "ball size overflow");
    frontier *= (d - 1);
  }
  return total;
}

namespace {

bool ids_ok(const IdMode& mode, const std::vector<int>& ids) {
  for (int x : ids)
    if (x < 1 || x > mode.R) return false;
  if (mode.kind == IdMode::Kind::increasing) {
    for (size_t i = 0; i + 1 < ids.size(); ++i)
      if (ids[i] >= ids[i + 1]) return false;
  } else {
    for (size_t i = 0; i < ids.size(); ++i)
      for (size_t j = i + 1; j < ids.size(); ++j)
        if (ids[i] == ids[j]) return false;
  }
  return true;
}

std::vector<std::vector<Label>> label_windows(const LclTask& task, int length) {
  std::vector<std::vector<Label>> out;
  std::vector<Label> cur;
  std::function<void()> rec = [&]() {
    if (static_cast<int>(cur.size()) == length) {
      out.push_back(cur);
      return;
    }
    for (const auto& l : task.in_labels) {
      cur.push_back(l);
      if (window_ok_suffix(task, cur)) rec();  // prefixes of a bad window are bad
      cur.pop_back();
    }
  };
  rec();
  return out;
}

void for_each_id_tuple(const IdMode& mode, int length,
                       const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> ids;
  std::vector<bool> used(mode.R + 1, false);
  std::function<void()> rec = [&]() {
    if (static_cast<int>(ids.size()) == length) {
      fn(ids);
      return;
    }
    int lo = 1;
    if (mode.kind == IdMode::Kind::increasing && !ids.empty()) lo = ids.back() + 1;
    for (int x = lo; x <= mode.R; ++x) {
      if (mode.kind == IdMode::Kind::arbitrary && used[x]) continue;
      used[x] = true;
      ids.push_back(x);
      rec();
      ids.pop_back();
      used[x] = false;
    }
  };
  rec();
}

}  // namespace

std::vector<MergedWindow> merged_windows(const LclTask& task, int length, const IdMode& mode) {
  std::vector<MergedWindow> out;
  for (const auto& labs : label_windows(task, length)) {
    if (mode.kind == IdMode::Kind::none) {
      MergedWindow w(length);
      for (int i = 0; i < length; ++i) w[i] = {std::nullopt, labs[i]};
      out.push_back(std::move(w));
    } else {
      for_each_id_tuple(mode, length, [&](const std::vector<int>& ids) {
        MergedWindow w(length);
        for (int i = 0; i < length; ++i) w[i] = {ids[i], labs[i]};
        out.push_back(w);
      });
    }
  }
  return out;
}

Value window_slice_value(const MergedWindow& w, size_t offset, size_t len) {
  if (len == 1) {
    const auto& s = w[offset];
    return s.id ? Value::id_label(*s.id, s.label) : Value::label(s.label);
  }
  return Value::view(std::vector<NodeState>(w.begin() + offset, w.begin() + offset + len));
}

std::vector<Value> enumerate_views(const LclTask& task, int t, const IdMode& mode) {
  std::vector<Value> out;
  for (const auto& w : merged_windows(task, 2 * t + 1, mode))
    out.push_back(window_slice_value(w, 0, 2 * t + 1));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

std::vector<NodeState> states_of(const Value& v) {
  switch (v.tag()) {
    case Value::Tag::label: return {NodeState{std::nullopt, v.as_label()}};
    case Value::Tag::id_label:
      return {NodeState{v.as_id_label().id, v.as_id_label().label}};
    case Value::Tag::view: return v.as_view().states;
    default: fail(Errc::semantic_error, "value is not a view: " + v.str());
  }
}

bool merged_valid(const LclTask& task, const IdMode& mode, const MergedWindow& w) {
  std::vector<Label> labs;
  std::vector<int> ids;
  bool with_ids = w.front().id.has_value();
  for (const auto& s : w) {
    labs.push_back(s.label);
    if (s.id.has_value() != with_ids) return false;
    if (s.id) ids.push_back(*s.id);
  }
  if (with_ids != mode.has_ids()) return false;
  if (with_ids && !ids_ok(mode, ids)) return false;
  return window_ok(task, labs);
}

}  // namespace

std::optional<MergedWindow> compatible(const LclTask& task, const IdMode& mode,
                                       const Value& w_left, const Value& w_mid,
                                       const Value& w_right) {
  auto l = states_of(w_left), m = states_of(w_mid), r = states_of(w_right);
  if (l.size() != m.size() || m.size() != r.size())
    fail(Errc::radius_mismatch, "views have different radii");
  if (w_left.has_ids() != w_mid.has_ids() || w_mid.has_ids() != w_right.has_ids())
    fail(Errc::radius_mismatch, "views mix ID regimes");
  const size_t n = l.size();  // 2t+1
  for (size_t i = 0; i + 1 < n; ++i) {
    if (l[i + 1] != m[i]) return std::nullopt;
    if (m[i + 1] != r[i]) return std::nullopt;
  }
  MergedWindow merged(l.begin(), l.end());
  merged.push_back(m.back());
  merged.push_back(r.back());
  if (!merged_valid(task, mode, merged)) return std::nullopt;
  return merged;
}

Complex build_protocol_complex(const LclTask& task, int t, const IdMode& mode) {
  if (t < 0) fail(Errc::semantic_error, "negative round count");
  if (t >= 1 && task.degree != 2)
    fail(Errc::unsupported_degree,
         "protocol complexes with t >= 1 are only built for rings (degree 2)");
  if (mode.has_ids() && mode.R < 2 * t + 3)
    fail(Errc::id_range, "ID range must cover a merged window: R >= " +
                             std::to_string(2 * t + 3));

  std::vector<Facet> facets;
  if (t == 0 && task.degree != 2) {
    // ID-decorated input complex for general degree
    const auto names = names_for_degree(task.degree);
    Complex input = build_input_complex(task);
    if (!mode.has_ids()) return input;
    for (const auto& f : input.facets()) {
      IdMode arb = mode;
      for_each_id_tuple(arb, task.degree + 1, [&](const std::vector<int>& ids) {
        Facet g;
        for (size_t i = 0; i < names.size(); ++i)
          g.entries.push_back(
              {names[i], Value::id_label(ids[i], f.entries[i].value.as_label())});
        facets.push_back(std::move(g));
      });
    }
    if (facets.empty()) fail(Errc::empty_complex, "no ID-decorated input facets");
    return make_complex(task.degree, facets);
  }

  const int len = 2 * t + 3;
  for (const auto& w : merged_windows(task, len, mode)) {
    Facet f;
    f.entries.push_back({ProcessName{-1}, window_slice_value(w, 0, 2 * t + 1)});
    f.entries.push_back({ProcessName{0}, window_slice_value(w, 1, 2 * t + 1)});
    f.entries.push_back({ProcessName{1}, window_slice_value(w, 2, 2 * t + 1)});
    facets.push_back(std::move(f));
  }
  if (facets.empty()) fail(Errc::empty_complex, "no compatible view triples");
  return make_complex(2, facets);
}

Complex protocol_edge_complex(const LclTask& task, int t, const IdMode& mode) {
  if (task.degree != 2) fail(Errc::unsupported_degree, "edge complexes are ring-only");
  std::vector<Facet> edges;
  for (const auto& w : merged_windows(task, 2 * t + 2, mode)) {
    std::vector<Label> labs;
    for (const auto& s : w) labs.push_back(s.label);
    Value a = window_slice_value(w, 0, 2 * t + 1);
    Value b = window_slice_value(w, 1, 2 * t + 1);
    // (p-1,p0) needs a label completing the window on the right; (p0,p1)
    // on the left. The completing ID is not range-checked: beyond-range
    // IDs exist in the ambient regime.
    for (const auto& c : task.in_labels) {
      auto ext = labs;
      ext.push_back(c);
      if (window_ok(task, ext)) {
        edges.push_back(Facet{{{ProcessName{-1}, a}, {ProcessName{0}, b}}});
        break;
      }
    }
    for (const auto& c : task.in_labels) {
      std::vector<Label> ext{c};
      ext.insert(ext.end(), labs.begin(), labs.end());
      if (window_ok(task, ext)) {
        edges.push_back(Facet{{{ProcessName{0}, a}, {ProcessName{1}, b}}});
        break;
      }
    }
  }
  if (edges.empty()) fail(Errc::empty_complex, "no compatible view pairs");
  return Complex::from_facets(1, std::move(edges));
}

Value pi_value(const Value& v) {
  switch (v.tag()) {
    case Value::Tag::id_label: return Value::label(v.as_id_label().label);
    case Value::Tag::view: {
      const auto& st = v.as_view().states;
      if (st.empty() || !st.front().id) break;
      std::vector<NodeState> stripped;
      for (const auto& s : st) stripped.push_back({std::nullopt, s.label});
      return Value::view(std::move(stripped));
    }
    default: break;
  }
  fail(Errc::no_ids, "value carries no IDs: " + v.str());
}

Vertex pi(const Vertex& v) { return Vertex{v.name, pi_value(v.value)}; }

Value view_center(const Value& v) {
  switch (v.tag()) {
    case Value::Tag::label:
    case Value::Tag::id_label: return v;
    case Value::Tag::view: {
      const auto& st = v.as_view().states;
      const auto& c = st[st.size() / 2];
      return c.id ? Value::id_label(*c.id, c.label) : Value::label(c.label);
    }
    default: fail(Errc::semantic_error, "value is not a view: " + v.str());
  }
}

std::vector<Facet> xi(const Facet& input_facet, int t, const Complex& protocol) {
  (void)t;
  std::vector<Facet> out;
  for (const auto& g : protocol.facets()) {
    bool match = true;
    for (size_t i = 0; i < g.entries.size(); ++i) {
      if (!(view_center(g.entries[i].value) == input_facet.entries[i].value)) {
        match = false;
        break;
      }
    }
    if (match) out.push_back(g);
  }
  return out;
}

Value canonicalize_ids(const Value& v) {
  if (!v.has_ids()) fail(Errc::no_ids, "value carries no IDs: " + v.str());
  if (v.tag() == Value::Tag::id_label) return Value::id_label(1, v.as_id_label().label);
  auto st = v.as_view().states;
  std::vector<int> ids;
  for (const auto& s : st) ids.push_back(*s.id);
  std::vector<int> sorted = ids;
  std::sort(sorted.begin(), sorted.end());
  for (auto& s : st) {
    int rank = static_cast<int>(
        std::lower_bound(sorted.begin(), sorted.end(), *s.id) - sorted.begin() + 1);
    s.id = rank;
  }
  return Value::view(std::move(st));
}

}  // namespace lclcx
