#include "lclcx/simulator.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <random>

#include "json.hpp"
#include "lclcx/errors.hpp"
#include "lclcx/parallel.hpp"

namespace lclcx {

IdDiscipline discipline_for(const IdMode& mode) {
  switch (mode.kind) {
    case IdMode::Kind::none: return IdDiscipline::none;
    case IdMode::Kind::arbitrary: return IdDiscipline::arbitrary;
    case IdMode::Kind::increasing: return IdDiscipline::increasing_wrap;
  }
  return IdDiscipline::none;
}

const char* discipline_name(IdDiscipline d) {
  switch (d) {
    case IdDiscipline::none: return "none";
    case IdDiscipline::arbitrary: return "arbitrary";
    case IdDiscipline::increasing_wrap: return "increasing";
  }
  return "none";
}

bool cyclic_promise_ok(const LclTask& task, const std::vector<Label>& labels) {
  const size_t n = labels.size();
  if (n < 3) return false;
  size_t maxwin = 3;
  for (const auto& f : task.forbidden_windows) maxwin = std::max(maxwin, f.size());
  if (maxwin > n + 1) maxwin = n + 1;
  std::vector<Label> doubled = labels;
  for (size_t i = 0; i + 1 < maxwin; ++i) doubled.push_back(labels[i % n]);
  return window_ok(task, doubled);
}

namespace {

uint64_t sat_mul(uint64_t a, uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > UINT64_MAX / b) return UINT64_MAX;
  return a * b;
}

uint64_t id_assignment_count(IdDiscipline d, size_t n, int pool) {
  switch (d) {
    case IdDiscipline::none: return 1;
    case IdDiscipline::arbitrary: {
      uint64_t c = 1;
      for (size_t i = 0; i < n; ++i) c = sat_mul(c, pool - i);
      return c;
    }
    case IdDiscipline::increasing_wrap: {
      uint64_t c = 1;
      for (size_t i = 0; i < n; ++i) {
        c = sat_mul(c, pool - i);
        if (c != UINT64_MAX) c /= (i + 1);
      }
      return c;
    }
  }
  return 1;
}

}  // namespace

InstanceStream::InstanceStream(const LclTask& task, size_t n, IdDiscipline discipline,
                               int id_pool)
    : task_(task), n_(n), discipline_(discipline), pool_(id_pool) {
  if (n < 3) fail(Errc::semantic_error, "rings need n >= 3");
  if (discipline != IdDiscipline::none && pool_ < static_cast<int>(n))
    fail(Errc::semantic_error, "ID pool smaller than the ring");

  std::map<Label, uint8_t> lidx;
  for (size_t i = 0; i < task.in_labels.size(); ++i)
    lidx[task.in_labels[i]] = static_cast<uint8_t>(i);

  // canonical-order DFS over labelings, capped
  std::vector<uint8_t> cur;
  std::vector<Label> labs;
  bool capped = false;
  std::function<void()> rec = [&]() {
    if (capped) return;
    if (cur.size() == n_) {
      if (cyclic_promise_ok(task_, labs)) {
        ++labeling_count_;
        if (labeling_count_ > kExhaustiveCap) {
          capped = true;
          return;
        }
        labelings_.push_back(cur);
      }
      return;
    }
    for (size_t i = 0; i < task_.in_labels.size(); ++i) {
      cur.push_back(static_cast<uint8_t>(i));
      labs.push_back(task_.in_labels[i]);
      if (window_ok_suffix(task_, labs)) rec();
      cur.pop_back();
      labs.pop_back();
      if (capped) return;
    }
  };
  rec();
  if (labeling_count_ == 0)
    fail(Errc::infeasible_promise,
         "no labeling of the " + std::to_string(n) + "-ring satisfies the promise");
  if (capped) labelings_.clear();  // too many to materialize; sampling only
}

uint64_t InstanceStream::instance_count() const {
  return sat_mul(labeling_count_, id_assignment_count(discipline_, n_, pool_));
}

bool InstanceStream::advance_ids() {
  if (discipline_ == IdDiscipline::none) {
    if (id_fresh_) {
      id_fresh_ = false;
      return true;
    }
    return false;
  }
  if (id_fresh_) {
    id_fresh_ = false;
    id_state_.clear();
    for (size_t i = 0; i < n_; ++i) id_state_.push_back(static_cast<int>(i) + 1);
    return true;
  }
  const int k = static_cast<int>(n_);
  if (discipline_ == IdDiscipline::increasing_wrap) {
    // next n-subset of {1..pool} in lexicographic order
    for (int i = k - 1; i >= 0; --i) {
      if (id_state_[i] < pool_ - (k - 1 - i)) {
        ++id_state_[i];
        for (int j = i + 1; j < k; ++j) id_state_[j] = id_state_[j - 1] + 1;
        return true;
      }
    }
    return false;
  }
  // arbitrary: next injective tuple from {1..pool} in lexicographic order
  auto used_before = [&](int pos, int val) {
    for (int j = 0; j < pos; ++j)
      if (id_state_[j] == val) return true;
    return false;
  };
  for (int pos = k - 1; pos >= 0; --pos) {
    int v = id_state_[pos] + 1;
    while (v <= pool_ && used_before(pos, v)) ++v;
    if (v > pool_) continue;
    id_state_[pos] = v;
    for (int j = pos + 1; j < k; ++j) {
      int w = 1;
      while (used_before(j, w)) ++w;
      id_state_[j] = w;
    }
    return true;
  }
  return false;
}

RingInstance InstanceStream::make(size_t label_index) const {
  RingInstance inst;
  for (uint8_t i : labelings_[label_index]) inst.labels.push_back(task_.in_labels[i]);
  if (discipline_ != IdDiscipline::none) inst.ids = id_state_;
  return inst;
}

std::optional<RingInstance> InstanceStream::next() {
  if (exhausted_ || labelings_.empty()) return std::nullopt;
  while (true) {
    if (advance_ids()) return make(label_pos_);
    ++label_pos_;
    id_fresh_ = true;
    if (label_pos_ >= labelings_.size()) {
      exhausted_ = true;
      return std::nullopt;
    }
  }
}

namespace {

/// Orders a scratch window of node states against a table key without
/// materializing a Value; must agree with the Value ordering.
int cmp_states_key(const std::vector<NodeState>& states, const Value& key) {
  auto cmp_state = [](const NodeState& a, const NodeState& b) {
    if (a.id.has_value() != b.id.has_value()) return a.id.has_value() ? 1 : -1;
    if (a.id && *a.id != *b.id) return *a.id < *b.id ? -1 : 1;
    return a.label.compare(b.label);
  };
  if (states.size() == 1) {
    NodeState k{std::nullopt, {}};
    if (key.tag() == Value::Tag::id_label) {
      k.id = key.as_id_label().id;
      k.label = key.as_id_label().label;
    } else {
      k.label = key.as_label();
    }
    return cmp_state(states[0], k);
  }
  const auto& ks = key.as_view().states;
  for (size_t i = 0; i < states.size() && i < ks.size(); ++i)
    if (int c = cmp_state(states[i], ks[i]); c != 0) return c;
  return states.size() < ks.size() ? -1 : states.size() > ks.size() ? 1 : 0;
}

}  // namespace

RunReport run(const AlgorithmTable& table, const LclTask& task, const RingInstance& inst) {
  const int t = table.rounds;
  const size_t n = inst.n();
  if (n < static_cast<size_t>(2 * t + 1))
    fail(Errc::semantic_error,
         "ring smaller than a radius-" + std::to_string(t) + " window");
  bool want_ids = table.mode.has_ids();
  if (want_ids != inst.ids.has_value())
    fail(Errc::missing_view, "instance ID discipline does not match the table");

  // std::map iterates in key order, so the index is sorted
  std::vector<const std::pair<const Value, Label>*> index;
  index.reserve(table.entries.size());
  for (const auto& entry : table.entries) index.push_back(&entry);

  std::vector<NodeState> scratch(2 * t + 1);
  auto lookup = [&](size_t i) -> const Label& {
    for (int off = -t; off <= t; ++off) {
      size_t q = static_cast<size_t>((static_cast<long long>(i) + off +
                                      static_cast<long long>(n)) %
                                     static_cast<long long>(n));
      scratch[off + t].label = inst.labels[q];
      if (inst.ids) scratch[off + t].id = (*inst.ids)[q];
    }
    auto it = std::lower_bound(index.begin(), index.end(), scratch,
                               [](const auto* e, const std::vector<NodeState>& s) {
                                 return cmp_states_key(s, e->first) > 0;
                               });
    if (it == index.end() || cmp_states_key(scratch, (*it)->first) != 0) {
      Value v = scratch.size() == 1
                    ? (scratch[0].id ? Value::id_label(*scratch[0].id, scratch[0].label)
                                     : Value::label(scratch[0].label))
                    : Value::view(scratch);
      fail(Errc::missing_view, "view not covered by the table: " + v.str());
    }
    return (*it)->second;
  };

  // allocation-free star check: good output stars as sorted (center, lo, hi)
  std::vector<std::array<Label, 3>> good_tuples;
  good_tuples.reserve(task.out_stars.size());
  for (const auto& st : task.out_stars)
    good_tuples.push_back({st.center, st.leaves[0], st.leaves[1]});
  std::sort(good_tuples.begin(), good_tuples.end());
  auto star_ok = [&](const Label& c, const Label& a, const Label& b) {
    const Label& lo = a <= b ? a : b;
    const Label& hi = a <= b ? b : a;
    return std::binary_search(good_tuples.begin(), good_tuples.end(),
                              std::array<Label, 3>{c, lo, hi});
  };

  RunReport rep;
  rep.outputs.reserve(n);
  for (size_t i = 0; i < n; ++i) rep.outputs.push_back(lookup(i));
  for (size_t i = 0; i < n; ++i) {
    const Label& left = rep.outputs[(i + n - 1) % n];
    const Label& right = rep.outputs[(i + 1) % n];
    bool ok = star_ok(rep.outputs[i], left, right);
    if (ok && task.delta.kind == DeltaKind::per_node)
      ok = task.delta.per_node.count({inst.labels[i], rep.outputs[i]}) > 0;
    if (ok && task.delta.kind == DeltaKind::explicit_pairs) {
      Star in_st =
          Star::of(inst.labels[i], {inst.labels[(i + n - 1) % n], inst.labels[(i + 1) % n]});
      ok = task.delta.pairs.count({in_st, Star::of(rep.outputs[i], {left, right})}) > 0;
    }
    if (!ok) rep.violations.push_back({i, Star::of(rep.outputs[i], {left, right})});
  }
  rep.legal = rep.violations.empty();
  return rep;
}

AlgorithmTable reference_linial_table() {
  AlgorithmTable tab;
  tab.rounds = 2;
  tab.mode = IdMode::none();
  tab.out_labels = {"0", "1"};
  const std::vector<Label> colors = {"1", "2", "3"};
  std::vector<Label> w(5);
  std::function<void(size_t)> rec = [&](size_t i) {
    if (i == 5) {
      // pass 1: color-3 nodes recolor to 1 unless a neighbor started with 1
      std::vector<Label> cur = w;
      for (size_t p : {1, 2, 3})
        if (w[p] == "3" && w[p - 1] != "1" && w[p + 1] != "1") cur[p] = "1";
      // pass 2: color-2 nodes do the same against current colors
      Label final_center = cur[2];
      if (cur[2] == "2" && cur[1] != "1" && cur[3] != "1") final_center = "1";
      std::vector<NodeState> states;
      for (const auto& l : w) states.push_back({std::nullopt, l});
      tab.entries[Value::view(std::move(states))] = final_center == "1" ? "1" : "0";
      return;
    }
    for (const auto& c : colors) {
      if (i > 0 && w[i - 1] == c) continue;
      w[i] = c;
      rec(i + 1);
    }
  };
  rec(0);
  return tab;
}

CrossValidateReport cross_validate(const AlgorithmTable& table, const LclTask& task,
                                   size_t n_lo, size_t n_hi,
                                   const CrossValidateOptions& opts) {
  CrossValidateReport rep;
  IdDiscipline disc = discipline_for(table.mode);
  std::mt19937_64 rng(opts.seed);

  for (size_t n = n_lo; n <= n_hi; ++n) {
    int pool = opts.id_pool;
    if (pool == 0) pool = table.mode.has_ids() ? table.mode.R : 0;
    InstanceStream stream(task, n, disc, pool);

    std::vector<RingInstance> batch;
    if (stream.instance_count() <= InstanceStream::kExhaustiveCap) {
      while (auto inst = stream.next()) batch.push_back(std::move(*inst));
    } else {
      rep.sampled = true;
      // uniform-rejection sampling over label strings; IDs drawn per draw
      const size_t L = task.in_labels.size();
      uint64_t produced = 0, attempts = 0;
      const uint64_t attempt_cap = 20'000'000;
      while (produced < opts.trials) {
        if (++attempts > attempt_cap)
          fail(Errc::too_large, "sampling rejection cap exceeded; promise too sparse");
        std::vector<Label> labs;
        for (size_t i = 0; i < n; ++i)
          labs.push_back(task.in_labels[rng() % L]);
        if (!cyclic_promise_ok(task, labs)) continue;
        RingInstance inst;
        inst.labels = std::move(labs);
        if (disc == IdDiscipline::arbitrary) {
          std::vector<int> ids(pool);
          std::iota(ids.begin(), ids.end(), 1);
          for (size_t i = 0; i < n; ++i) {
            size_t j = i + rng() % (ids.size() - i);
            std::swap(ids[i], ids[j]);
          }
          ids.resize(n);
          inst.ids = std::move(ids);
        } else if (disc == IdDiscipline::increasing_wrap) {
          std::vector<int> ids;
          std::vector<bool> used(pool + 1, false);
          while (ids.size() < n) {
            int v = 1 + static_cast<int>(rng() % pool);
            if (!used[v]) {
              used[v] = true;
              ids.push_back(v);
            }
          }
          std::sort(ids.begin(), ids.end());
          inst.ids = std::move(ids);
        }
        batch.push_back(std::move(inst));
        ++produced;
      }
    }

    std::vector<RunReport> results(batch.size());
    parallel_for(batch.size(), opts.threads,
                 [&](size_t i) { results[i] = run(table, task, batch[i]); });
    rep.per_n.emplace_back(n, batch.size());
    for (size_t i = 0; i < batch.size(); ++i) {
      ++rep.instances;
      if (!results[i].legal) {
        ++rep.illegal;
        if (rep.first_violations.size() < 10)
          rep.first_violations.emplace_back(n, results[i].violations.front());
      }
    }
  }
  rep.pass = rep.illegal == 0;
  return rep;
}

std::string run_report_to_json(const RunReport& r) {
  nlohmann::json j;
  j["outputs"] = r.outputs;
  j["legal"] = r.legal;
  auto& v = j["violations"] = nlohmann::json::array();
  size_t limit = std::min<size_t>(r.violations.size(), 10);
  for (size_t i = 0; i < limit; ++i)
    v.push_back({{"position", r.violations[i].position},
                 {"center", r.violations[i].star.center},
                 {"leaves", r.violations[i].star.leaves}});
  j["violation_count"] = r.violations.size();
  return j.dump(2) + "\n";
}

std::string cross_report_to_json(const CrossValidateReport& r) {
  nlohmann::json j;
  j["instances"] = r.instances;
  j["illegal"] = r.illegal;
  j["pass"] = r.pass;
  j["sampled"] = r.sampled;
  auto& per_n = j["per_n"] = nlohmann::json::array();
  for (const auto& [n, c] : r.per_n) per_n.push_back({{"n", n}, {"instances", c}});
  auto& v = j["first_violations"] = nlohmann::json::array();
  for (const auto& [n, viol] : r.first_violations)
    v.push_back({{"n", n},
                 {"position", viol.position},
                 {"center", viol.star.center},
                 {"leaves", viol.star.leaves}});
  return j.dump(2) + "\n";
}

std::string instance_to_json(const RingInstance& inst) {
  nlohmann::json j;
  j["n"] = inst.n();
  j["labels"] = inst.labels;
  if (inst.ids) j["ids"] = *inst.ids;
  return j.dump(2) + "\n";
}

RingInstance instance_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(Errc::syntax_error, e.what());
  }
  RingInstance inst;
  for (const auto& l : j.at("labels")) inst.labels.push_back(l.get<Label>());
  if (j.contains("ids")) {
    std::vector<int> ids;
    for (const auto& x : j["ids"]) ids.push_back(x.get<int>());
    inst.ids = std::move(ids);
  }
  if (j.contains("n") && j["n"].get<size_t>() != inst.n())
    fail(Errc::semantic_error, "instance n does not match the label count");
  return inst;
}

}  // namespace lclcx
