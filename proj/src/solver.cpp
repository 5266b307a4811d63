#include "lclcx/solver.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <numeric>
#include <tuple>

#include "json.hpp"
#include "lclcx/errors.hpp"
#include "lclcx/parallel.hpp"

namespace lclcx {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::sat: return "sat";
    case Verdict::unsat: return "unsat";
    case Verdict::unknown: return "unknown";
  }
  return "unknown";
}

namespace {

constexpr size_t kMaxSolverLabels = 64;  // domains are 64-bit masks

int required_id_range(const LclTask& task, int t) {
  return t == 0 ? task.degree + 1 : 2 * t + 3;
}

void check_solvable_shape(const LclTask& task, int t, const IdMode& mode) {
  if (t >= 1 && task.degree != 2)
    fail(Errc::unsupported_degree, "t >= 1 is ring-only (degree 2)");
  if (task.degree != 2 && mode.kind == IdMode::Kind::increasing)
    fail(Errc::unsupported_degree, "increasing IDs are a ring regime");
  if (mode.has_ids() && mode.R < required_id_range(task, t))
    fail(Errc::id_range, "ID range too small: need R >= " +
                             std::to_string(required_id_range(task, t)));
}

/// One constraint: the tuple of variables must take a label tuple from the
/// allowed table.
struct Constraint {
  std::vector<size_t> vars;
  size_t table;  // into Model::tables
  bool is_edge;  // bookkeeping for stats only
};

struct Model {
  std::vector<Value> views;
  std::vector<Label> out;
  std::vector<std::vector<std::vector<uint8_t>>> tables;  // allowed label tuples
  std::vector<Constraint> cons;
  size_t facet_constraints = 0;
  size_t edge_constraints = 0;
};

/// Facets of the ID-decorated input complex for arbitrary degree, as
/// (values by name, input labels by name).
struct InputFacetRow {
  std::vector<Value> values;
  std::vector<Label> labels;
};

std::vector<InputFacetRow> t0_facet_rows(const LclTask& task, const IdMode& mode) {
  std::vector<InputFacetRow> rows;
  Complex input = build_input_complex(task);
  const int n = task.degree + 1;
  for (const auto& f : input.facets()) {
    std::vector<Label> labs;
    for (const auto& v : f.entries) labs.push_back(v.value.as_label());
    if (!mode.has_ids()) {
      InputFacetRow row;
      for (const auto& l : labs) row.values.push_back(Value::label(l));
      row.labels = labs;
      rows.push_back(std::move(row));
      continue;
    }
    std::vector<int> ids;
    std::vector<bool> used(mode.R + 1, false);
    std::function<void()> rec = [&]() {
      if (static_cast<int>(ids.size()) == n) {
        InputFacetRow row;
        for (int i = 0; i < n; ++i) row.values.push_back(Value::id_label(ids[i], labs[i]));
        row.labels = labs;
        rows.push_back(std::move(row));
        return;
      }
      for (int x = 1; x <= mode.R; ++x) {
        if (used[x]) continue;
        used[x] = true;
        ids.push_back(x);
        rec();
        ids.pop_back();
        used[x] = false;
      }
    };
    rec();
  }
  return rows;
}

Model compile(const LclTask& task, int t, const IdMode& mode, bool skeleton) {
  check_solvable_shape(task, t, mode);

  Model m;
  m.views = enumerate_views(task, t, mode);
  m.out = task.out_labels;
  if (m.out.size() > kMaxSolverLabels) fail(Errc::too_large, "more than 64 output labels");
  if (task.degree > 7) fail(Errc::too_large, "search supports degree <= 7");
  std::map<Value, size_t> vidx;
  for (size_t i = 0; i < m.views.size(); ++i) vidx[m.views[i]] = i;
  const size_t L = m.out.size();
  std::map<Label, uint8_t> lidx;
  for (size_t i = 0; i < L; ++i) lidx[m.out[i]] = static_cast<uint8_t>(i);

  const auto names = names_for_degree(task.degree);
  const size_t arity = names.size();

  // Output tuples legal for given central input labels: the image star must
  // be good and the task relation must allow it.
  auto out_tuples_for = [&](const std::vector<Label>& central) {
    std::vector<std::vector<uint8_t>> allowed;
    std::vector<uint8_t> tuple(arity);
    std::function<void(size_t)> rec = [&](size_t i) {
      if (i == arity) {
        Label center;
        std::vector<Label> leaves, labs;
        for (size_t k = 0; k < arity; ++k) {
          labs.push_back(m.out[tuple[k]]);
          if (names[k].index == 0) center = m.out[tuple[k]];
          else leaves.push_back(m.out[tuple[k]]);
        }
        if (!task.out_stars.count(Star::of(center, leaves))) return;
        if (!central.empty() && !delta_allows_labels(task, central, labs)) return;
        allowed.push_back(tuple);
        return;
      }
      for (size_t v = 0; v < L; ++v) {
        tuple[i] = static_cast<uint8_t>(v);
        rec(i + 1);
      }
    };
    rec(0);
    return allowed;
  };

  std::map<std::vector<Label>, size_t> table_idx;
  auto table_for = [&](const std::vector<Label>& central) {
    auto it = table_idx.find(central);
    if (it != table_idx.end()) return it->second;
    m.tables.push_back(out_tuples_for(central));
    table_idx.emplace(central, m.tables.size() - 1);
    return m.tables.size() - 1;
  };

  auto derived_table_for = [&](std::vector<std::vector<uint8_t>> rows) {
    m.tables.push_back(std::move(rows));
    return m.tables.size() - 1;
  };

  std::map<std::pair<std::vector<size_t>, size_t>, bool> seen;
  auto add_constraint = [&](std::vector<size_t> vars, size_t table, bool is_edge) {
    if (!seen.emplace(std::make_pair(vars, table), true).second) return;
    m.cons.push_back({std::move(vars), table, is_edge});
  };

  // Facet rows: (variable tuple, central input labels)
  std::vector<std::pair<std::vector<size_t>, std::vector<Label>>> facet_rows;
  if (t == 0 && task.degree != 2) {
    for (const auto& row : t0_facet_rows(task, mode)) {
      std::vector<size_t> vars;
      for (const auto& v : row.values) vars.push_back(vidx.at(v));
      facet_rows.emplace_back(std::move(vars), row.labels);
    }
  } else {
    for (const auto& w : merged_windows(task, 2 * t + 3, mode)) {
      std::vector<size_t> vars;
      for (int i = 0; i < 3; ++i) vars.push_back(vidx.at(window_slice_value(w, i, 2 * t + 1)));
      facet_rows.emplace_back(std::move(vars),
                              std::vector<Label>{w[t].label, w[t + 1].label, w[t + 2].label});
    }
  }

  if (!skeleton) {
    for (auto& [vars, central] : facet_rows)
      add_constraint(vars, table_for(central), /*is_edge=*/false);
  } else {
    // Every distinct-name pair inside a facet must map to the same pair of
    // a legal output tuple.
    for (auto& [vars, central] : facet_rows) {
      size_t tbl = table_for(central);
      const auto allowed = m.tables[tbl];  // copy: derived tables grow m.tables
      for (size_t i = 0; i < vars.size(); ++i)
        for (size_t j = i + 1; j < vars.size(); ++j) {
          std::vector<std::vector<uint8_t>> rows;
          std::map<std::pair<uint8_t, uint8_t>, bool> dedup;
          for (const auto& tu : allowed)
            if (dedup.emplace(std::make_pair(tu[i], tu[j]), true).second)
              rows.push_back({tu[i], tu[j]});
          std::sort(rows.begin(), rows.end());
          add_constraint({vars[i], vars[j]}, derived_table_for(std::move(rows)),
                         /*is_edge=*/false);
        }
    }
  }
  m.facet_constraints = m.cons.size();

  // Compatible view pairs must map to 1-simplices of the output complex.
  // These are implied by the facet constraints except at the boundary of an
  // increasing ID range, where the completing third view would need an ID
  // beyond R; the regime still realizes those pairs, so a witness must
  // respect them.
  if (task.degree == 2) {
    std::vector<std::vector<uint8_t>> left_pairs, right_pairs;
    {
      std::map<std::pair<uint8_t, uint8_t>, bool> dl, dr;
      for (const auto& tu : out_tuples_for({})) {
        if (dl.emplace(std::make_pair(tu[0], tu[1]), true).second)
          left_pairs.push_back({tu[0], tu[1]});
        if (dr.emplace(std::make_pair(tu[1], tu[2]), true).second)
          right_pairs.push_back({tu[1], tu[2]});
      }
      std::sort(left_pairs.begin(), left_pairs.end());
      std::sort(right_pairs.begin(), right_pairs.end());
    }
    size_t left_tbl = derived_table_for(std::move(left_pairs));
    size_t right_tbl = derived_table_for(std::move(right_pairs));
    for (const auto& w : merged_windows(task, 2 * t + 2, mode)) {
      std::vector<Label> labs;
      for (const auto& s : w) labs.push_back(s.label);
      size_t a = vidx.at(window_slice_value(w, 0, 2 * t + 1));
      size_t b = vidx.at(window_slice_value(w, 1, 2 * t + 1));
      bool right = false, left = false;
      for (const auto& c : task.in_labels) {
        if (!right) {
          auto ext = labs;
          ext.push_back(c);
          right = window_ok(task, ext);
        }
        if (!left) {
          std::vector<Label> ext{c};
          ext.insert(ext.end(), labs.begin(), labs.end());
          left = window_ok(task, ext);
        }
      }
      if (right) add_constraint({a, b}, left_tbl, /*is_edge=*/true);
      if (left) add_constraint({a, b}, right_tbl, /*is_edge=*/true);
    }
  }
  m.edge_constraints = m.cons.size() - m.facet_constraints;

  return m;
}

/// Chronological backtracking in canonical variable order with support
/// propagation over the constraint tables. Pruning never removes a
/// solution, so the first witness found is the lexicographically least
/// one under (view order, label order).
struct Searcher {
  const Model& m;
  uint64_t max_nodes;
  std::vector<uint64_t> dom;
  std::vector<int> assign;
  std::vector<std::vector<size_t>> cons_of;
  std::vector<std::pair<size_t, uint64_t>> trail;
  bool capped = false;
  uint64_t nodes = 0;

  Searcher(const Model& model, uint64_t cap)
      : m(model), max_nodes(cap),
        dom(model.views.size(),
            model.out.size() == 64 ? ~0ull : (1ull << model.out.size()) - 1),
        assign(model.views.size(), -1), cons_of(model.views.size()) {
    for (size_t i = 0; i < m.cons.size(); ++i)
      for (size_t v : m.cons[i].vars) cons_of[v].push_back(i);
    for (auto& v : cons_of) {
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
    }
  }

  void shrink(size_t var, uint64_t mask) {
    trail.emplace_back(var, dom[var]);
    dom[var] = mask;
  }

  void undo_to(size_t mark) {
    while (trail.size() > mark) {
      dom[trail.back().first] = trail.back().second;
      trail.pop_back();
    }
  }

  /// Restores generalized arc consistency starting from the constraints of
  /// `seed`. Returns false on a wiped-out domain.
  bool propagate(size_t seed) {
    std::vector<size_t> queue(cons_of[seed].begin(), cons_of[seed].end());
    std::vector<uint8_t> queued(m.cons.size(), 0);
    for (size_t ci : queue) queued[ci] = 1;
    for (size_t qi = 0; qi < queue.size(); ++qi) {
      size_t ci = queue[qi];
      queued[ci] = 0;
      const auto& c = m.cons[ci];
      const auto& allowed = m.tables[c.table];
      const size_t arity = c.vars.size();
      uint64_t support[8] = {0};
      for (const auto& tu : allowed) {
        bool live = true;
        for (size_t k = 0; k < arity; ++k)
          if (!(dom[c.vars[k]] >> tu[k] & 1)) {
            live = false;
            break;
          }
        if (!live) continue;
        for (size_t k = 0; k < arity; ++k) support[k] |= 1ull << tu[k];
      }
      for (size_t k = 0; k < arity; ++k) {
        uint64_t next = dom[c.vars[k]] & support[k];
        if (next == dom[c.vars[k]]) continue;
        if (next == 0) return false;
        shrink(c.vars[k], next);
        for (size_t cj : cons_of[c.vars[k]])
          if (!queued[cj]) {
            queued[cj] = 1;
            queue.push_back(cj);
          }
      }
    }
    return true;
  }

  bool dfs(const std::vector<size_t>& comp, size_t pos) {
    if (capped) return false;
    if (pos == comp.size()) return true;
    size_t var = comp[pos];
    uint64_t candidates = dom[var];
    for (int val = 0; val < static_cast<int>(m.out.size()); ++val) {
      if (!(candidates >> val & 1)) continue;
      if (++nodes > max_nodes) {
        capped = true;
        return false;
      }
      size_t mark = trail.size();
      shrink(var, 1ull << val);
      assign[var] = val;
      if (propagate(var) && dfs(comp, pos + 1)) return true;
      assign[var] = -1;
      undo_to(mark);
      if (capped) return false;
    }
    return false;
  }

  Verdict run(const std::vector<size_t>& comp, uint64_t& out_nodes) {
    bool found = dfs(comp, 0);
    out_nodes = nodes;
    if (found) {
      for (size_t v : comp)
        if (assign[v] < 0) assign[v] = std::countr_zero(dom[v]);
      return Verdict::sat;
    }
    return capped ? Verdict::unknown : Verdict::unsat;
  }
};

std::vector<std::vector<size_t>> variable_components(const Model& m) {
  std::vector<size_t> parent(m.views.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<size_t(size_t)> find = [&](size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& c : m.cons) {
    size_t r = find(c.vars[0]);
    for (size_t k = 1; k < c.vars.size(); ++k) {
      size_t s = find(c.vars[k]);
      if (r != s) {
        parent[std::max(r, s)] = std::min(r, s);
        r = std::min(r, s);
      }
    }
  }
  std::map<size_t, std::vector<size_t>> blocks;
  for (size_t v = 0; v < m.views.size(); ++v) blocks[find(v)].push_back(v);
  std::vector<std::vector<size_t>> out;
  for (auto& [root, vars] : blocks) out.push_back(std::move(vars));
  return out;
}

SolveResult solve_impl(const LclTask& task, int t, const IdMode& mode, bool skeleton,
                       const SolveOptions& opts) {
  Model m = compile(task, t, mode, skeleton);
  auto comps = variable_components(m);

  SolveResult res;
  res.stats.views = m.views.size();
  res.stats.facet_constraints = m.facet_constraints;
  res.stats.edge_constraints = m.edge_constraints;
  res.stats.components.resize(comps.size());

  std::vector<std::vector<int>> solutions(comps.size());
  std::vector<Verdict> verdicts(comps.size(), Verdict::unknown);

  parallel_for(comps.size(), opts.threads, [&](size_t ci) {
    Searcher s(m, opts.max_nodes);
    uint64_t nodes = 0;
    Verdict v = s.run(comps[ci], nodes);
    res.stats.components[ci] =
        ComponentReport{comps[ci].size(), nodes, v != Verdict::unknown, v == Verdict::sat};
    verdicts[ci] = v;
    if (v == Verdict::sat) {
      solutions[ci].resize(comps[ci].size());
      for (size_t i = 0; i < comps[ci].size(); ++i) solutions[ci][i] = s.assign[comps[ci][i]];
    }
  });

  for (const auto& rep : res.stats.components) res.stats.nodes += rep.nodes;
  bool any_unsat = std::any_of(verdicts.begin(), verdicts.end(),
                               [](Verdict v) { return v == Verdict::unsat; });
  bool any_unknown = std::any_of(verdicts.begin(), verdicts.end(),
                                 [](Verdict v) { return v == Verdict::unknown; });
  if (any_unsat) {
    res.verdict = Verdict::unsat;
  } else if (any_unknown) {
    res.verdict = Verdict::unknown;
  } else {
    res.verdict = Verdict::sat;
    MapTable table;
    for (size_t ci = 0; ci < comps.size(); ++ci)
      for (size_t i = 0; i < comps[ci].size(); ++i)
        table.mapping[m.views[comps[ci][i]]] = m.out[solutions[ci][i]];
    res.witness = std::move(table);
  }
  return res;
}

}  // namespace

SolveResult solve(const LclTask& task, int t, const IdMode& mode, const SolveOptions& opts) {
  return solve_impl(task, t, mode, /*skeleton=*/false, opts);
}

SolveResult solve_skeleton(const LclTask& task, int t, const IdMode& mode,
                           const SolveOptions& opts) {
  return solve_impl(task, t, mode, /*skeleton=*/true, opts);
}

SolveResult brute_force_solve(const LclTask& task, int t, const IdMode& mode, bool skeleton,
                              uint64_t guard) {
  // Enumerates every total assignment and checks it against the built
  // complexes directly; shares no constraint compilation with solve().
  check_solvable_shape(task, t, mode);
  auto views = enumerate_views(task, t, mode);
  const auto& out = task.out_labels;
  double total = 1;
  for (size_t i = 0; i < views.size(); ++i) {
    total *= static_cast<double>(out.size());
    if (total > static_cast<double>(guard))
      fail(Errc::too_large, "assignment space exceeds the brute-force guard");
  }

  Complex output = build_output_complex(task);
  Complex output_skel = one_skeleton(output);
  Complex protocol = build_protocol_complex(task, t, mode);
  std::optional<Complex> edges;
  if (task.degree == 2) edges = protocol_edge_complex(task, t, mode);

  std::map<Value, size_t> vidx;
  for (size_t i = 0; i < views.size(); ++i) vidx[views[i]] = i;
  std::vector<size_t> counter(views.size(), 0);

  SolveResult res;
  res.stats.views = views.size();
  res.stats.components = {ComponentReport{views.size(), 0, true, false}};

  while (true) {
    ++res.stats.nodes;
    bool ok = true;
    for (const auto& f : protocol.facets()) {
      Facet img, central;
      for (const auto& vx : f.entries) {
        img.entries.push_back({vx.name, Value::label(out[counter[vidx.at(vx.value)]])});
        Value c = view_center(vx.value);
        central.entries.push_back({vx.name, c.has_ids() ? pi_value(c) : c});
      }
      if (!skeleton) {
        if (!output.contains_facet(img) || !delta_allows(task, central, img)) {
          ok = false;
          break;
        }
      } else {
        std::vector<Label> cl;
        for (const auto& vx : central.entries) cl.push_back(vx.value.as_label());
        const size_t n = f.entries.size();
        for (size_t i = 0; ok && i < n; ++i)
          for (size_t j = i + 1; ok && j < n; ++j) {
            bool edge_ok = false;
            for (const auto& of : output.facets()) {
              std::vector<Label> ol;
              for (const auto& vx : of.entries) ol.push_back(vx.value.as_label());
              if (!delta_allows_labels(task, cl, ol)) continue;
              if (Value::label(ol[i]) == img.entries[i].value &&
                  Value::label(ol[j]) == img.entries[j].value) {
                edge_ok = true;
                break;
              }
            }
            if (!edge_ok) ok = false;
          }
        if (!ok) break;
      }
    }
    if (ok && edges) {
      for (const auto& e : edges->facets()) {
        std::vector<Vertex> img;
        for (const auto& vx : e.entries)
          img.push_back({vx.name, Value::label(out[counter[vidx.at(vx.value)]])});
        if (!is_simplex(output_skel, img)) {
          ok = false;
          break;
        }
      }
    }
    if (ok) {
      res.verdict = Verdict::sat;
      MapTable table;
      for (size_t i = 0; i < views.size(); ++i) table.mapping[views[i]] = out[counter[i]];
      res.witness = std::move(table);
      res.stats.components[0].sat = true;
      return res;
    }
    size_t i = 0;
    while (i < counter.size() && ++counter[i] == out.size()) counter[i++] = 0;
    if (i == counter.size()) break;
  }
  res.verdict = Verdict::unsat;
  return res;
}

const Label& AlgorithmTable::lookup(const Value& view) const {
  auto it = entries.find(view);
  if (it == entries.end())
    fail(Errc::missing_view, "view not covered by the table: " + view.str());
  return it->second;
}

AlgorithmTable extract_algorithm(const SolveResult& result, const LclTask& task, int t,
                                 const IdMode& mode) {
  if (result.verdict != Verdict::sat || !result.witness)
    fail(Errc::semantic_error, "extract_algorithm needs a SAT result");
  AlgorithmTable tab;
  tab.rounds = t;
  tab.mode = mode;
  tab.out_labels = task.out_labels;
  for (const auto& v : enumerate_views(task, t, mode))
    tab.entries[v] = result.witness->at(v);
  if (mode.has_ids()) {
    std::map<Value, Label> canon;
    bool invariant = true;
    for (const auto& [v, l] : tab.entries) {
      Value c = canonicalize_ids(v);
      auto [it, inserted] = canon.emplace(c, l);
      if (!inserted && it->second != l) {
        invariant = false;
        break;
      }
    }
    if (invariant) tab.canonical_entries = std::move(canon);
  }
  return tab;
}

std::string AlgorithmTable::to_json() const {
  nlohmann::json j;
  j["rounds"] = rounds;
  j["id_mode"] = mode.name();
  if (mode.has_ids()) j["R"] = mode.R;
  j["out_labels"] = out_labels;
  auto& e = j["entries"] = nlohmann::json::object();
  for (const auto& [v, l] : entries) e[v.str()] = l;
  if (canonical_entries) {
    auto& c = j["canonical_entries"] = nlohmann::json::object();
    for (const auto& [v, l] : *canonical_entries) c[v.str()] = l;
  }
  return j.dump(2) + "\n";
}

AlgorithmTable AlgorithmTable::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(Errc::syntax_error, e.what());
  }
  AlgorithmTable tab;
  tab.rounds = j.at("rounds").get<int>();
  std::string mode = j.at("id_mode").get<std::string>();
  int R = j.value("R", 0);
  if (mode == "none") tab.mode = IdMode::none();
  else if (mode == "arbitrary") tab.mode = IdMode::arbitrary(R);
  else if (mode == "increasing") tab.mode = IdMode::increasing(R);
  else fail(Errc::semantic_error, "unknown id_mode: " + mode);
  for (const auto& l : j.at("out_labels")) tab.out_labels.push_back(l.get<Label>());
  for (const auto& [k, v] : j.at("entries").items())
    tab.entries[parse_value(k)] = v.get<Label>();
  return tab;
}

std::string solve_result_to_json(const SolveResult& r) {
  nlohmann::json j;
  j["verdict"] = verdict_name(r.verdict);
  if (r.witness) {
    auto& w = j["witness"] = nlohmann::json::object();
    for (const auto& [v, l] : r.witness->mapping) w[v.str()] = l;
  }
  nlohmann::json stats;
  stats["views"] = r.stats.views;
  stats["facet_constraints"] = r.stats.facet_constraints;
  stats["edge_constraints"] = r.stats.edge_constraints;
  stats["nodes"] = r.stats.nodes;
  auto& comps = stats["components"] = nlohmann::json::array();
  for (const auto& c : r.stats.components)
    comps.push_back(
        {{"vars", c.vars}, {"nodes", c.nodes}, {"exhausted", c.exhausted}, {"sat", c.sat}});
  j["stats"] = stats;
  return j.dump(2) + "\n";
}

}  // namespace lclcx
