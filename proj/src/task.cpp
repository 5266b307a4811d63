#include "lclcx/task.hpp"

#include <algorithm>
#include <functional>

#include "json.hpp"
#include "lclcx/errors.hpp"

namespace lclcx {

Star Star::of(Label center, std::vector<Label> leaves) {
  std::sort(leaves.begin(), leaves.end());
  return Star{std::move(center), std::move(leaves)};
}

bool LclTask::has_in_label(const Label& l) const {
  return std::binary_search(in_labels.begin(), in_labels.end(), l);
}

bool LclTask::has_out_label(const Label& l) const {
  return std::binary_search(out_labels.begin(), out_labels.end(), l);
}

bool good_star(const LclTask& task, Side side, const Star& star) {
  const auto& stars = side == Side::in ? task.in_stars : task.out_stars;
  return stars.count(star) > 0;
}

bool window_ok_suffix(const LclTask& task, const std::vector<Label>& labels) {
  const size_t n = labels.size();
  if (n >= 3 &&
      !task.in_stars.count(Star::of(labels[n - 2], {labels[n - 3], labels[n - 1]})))
    return false;
  for (const auto& f : task.forbidden_windows) {
    if (f.size() > n) continue;
    const size_t i = n - f.size();
    bool fwd = true, rev = true;
    for (size_t j = 0; j < f.size(); ++j) {
      if (labels[i + j] != f[j]) fwd = false;
      if (labels[i + f.size() - 1 - j] != f[j]) rev = false;
    }
    if (fwd || rev) return false;
  }
  return true;
}

bool window_ok(const LclTask& task, const std::vector<Label>& labels) {
  for (size_t i = 0; i + 2 < labels.size(); ++i)
    if (!task.in_stars.count(Star::of(labels[i + 1], {labels[i], labels[i + 2]})))
      return false;
  for (const auto& f : task.forbidden_windows) {
    if (f.size() > labels.size()) continue;
    for (size_t i = 0; i + f.size() <= labels.size(); ++i) {
      bool fwd = true, rev = true;
      for (size_t j = 0; j < f.size(); ++j) {
        if (labels[i + j] != f[j]) fwd = false;
        if (labels[i + f.size() - 1 - j] != f[j]) rev = false;
      }
      if (fwd || rev) return false;
    }
  }
  return true;
}

namespace {

std::set<Star> all_stars(const std::vector<Label>& labels, int degree) {
  std::set<Star> stars;
  std::vector<Label> leaves(degree);
  std::function<void(int)> rec = [&](int i) {
    if (i == degree) {
      for (const auto& c : labels) stars.insert(Star::of(c, leaves));
      return;
    }
    for (const auto& l : labels) { leaves[i] = l; rec(i + 1); }
  };
  rec(0);
  return stars;
}

std::set<Star> proper_stars(const std::vector<Label>& labels, int degree) {
  std::set<Star> stars;
  for (const auto& s : all_stars(labels, degree)) {
    bool ok = true;
    for (const auto& l : s.leaves)
      if (l == s.center) { ok = false; break; }
    if (ok) stars.insert(s);
  }
  return stars;
}

std::set<Star> mis_stars() {
  return {Star::of("1", {"0", "0"}), Star::of("0", {"0", "1"}), Star::of("0", {"1", "1"})};
}

std::vector<Label> color_labels(int k) {
  std::vector<Label> ls;
  for (int i = 1; i <= k; ++i) ls.push_back(std::to_string(i));
  std::sort(ls.begin(), ls.end());
  return ls;
}

void validate(LclTask& task) {
  if (task.degree < 2) fail(Errc::semantic_error, "degree must be at least 2");
  if (task.in_labels.empty()) fail(Errc::semantic_error, "in_labels is empty");
  if (task.out_labels.empty()) fail(Errc::semantic_error, "out_labels is empty");
  std::sort(task.in_labels.begin(), task.in_labels.end());
  std::sort(task.out_labels.begin(), task.out_labels.end());
  task.in_labels.erase(std::unique(task.in_labels.begin(), task.in_labels.end()),
                       task.in_labels.end());
  task.out_labels.erase(std::unique(task.out_labels.begin(), task.out_labels.end()),
                        task.out_labels.end());
  for (const auto& ls : {task.in_labels, task.out_labels})
    for (const auto& l : ls) {
      if (l.empty()) fail(Errc::semantic_error, "empty label");
      if (l.find_first_of("|:(){}, \t\n") != std::string::npos)
        fail(Errc::semantic_error, "label uses a reserved character: " + l);
    }
  if (task.in_stars.empty()) fail(Errc::semantic_error, "in_stars is empty");
  if (task.out_stars.empty()) fail(Errc::semantic_error, "out_stars is empty");
  auto check_stars = [&](const std::set<Star>& stars, const std::vector<Label>& labels,
                         const char* side) {
    for (const auto& s : stars) {
      if (static_cast<int>(s.leaves.size()) != task.degree)
        fail(Errc::semantic_error, std::string(side) + " star has wrong leaf count");
      auto known = [&](const Label& l) {
        return std::binary_search(labels.begin(), labels.end(), l);
      };
      if (!known(s.center)) fail(Errc::semantic_error, "undeclared star label: " + s.center);
      for (const auto& l : s.leaves)
        if (!known(l)) fail(Errc::semantic_error, "undeclared star label: " + l);
    }
  };
  check_stars(task.in_stars, task.in_labels, "input");
  check_stars(task.out_stars, task.out_labels, "output");
  if (task.delta.kind == DeltaKind::per_node) {
    for (const auto& [a, b] : task.delta.per_node) {
      if (!task.has_in_label(a)) fail(Errc::semantic_error, "per_node uses unknown input " + a);
      if (!task.has_out_label(b)) fail(Errc::semantic_error, "per_node uses unknown output " + b);
    }
    for (const auto& a : task.in_labels) {
      bool any = false;
      for (const auto& b : task.out_labels)
        if (task.delta.per_node.count({a, b})) { any = true; break; }
      if (!any)
        fail(Errc::semantic_error, "per_node relation allows no output for input " + a);
    }
  }
  for (const auto& w : task.forbidden_windows) {
    if (w.size() < 3) fail(Errc::semantic_error, "forbidden window shorter than 3");
    for (const auto& l : w)
      if (!task.has_in_label(l))
        fail(Errc::semantic_error, "forbidden window uses unknown label " + l);
  }
}

}  // namespace

std::vector<std::string> builtin_names() {
  return {"mis", "coloring:k", "3col-to-mis", "3col-no-xyzyx"};
}

LclTask builtin_task(const std::string& name) {
  LclTask t;
  t.name = name;
  t.degree = 2;
  if (name == "3col-to-mis" || name == "3col-no-xyzyx") {
    t.in_labels = color_labels(3);
    t.in_stars = proper_stars(t.in_labels, 2);
    t.out_labels = {"0", "1"};
    t.out_stars = mis_stars();
    if (name == "3col-no-xyzyx") {
      // The promise excludes the window x y z y x for roles (x,y,z)=(1,2,3),
      // with the x and z roles interchangeable.
      t.forbidden_windows = {{"1", "2", "3", "2", "1"}, {"3", "2", "1", "2", "3"}};
    }
  } else if (name == "mis") {
    t.in_labels = {kUnitLabel};
    t.in_stars = {Star::of(kUnitLabel, {kUnitLabel, kUnitLabel})};
    t.out_labels = {"0", "1"};
    t.out_stars = mis_stars();
  } else if (name.rfind("coloring:", 0) == 0) {
    int k = 0;
    try { k = std::stoi(name.substr(9)); } catch (...) {}
    if (k < 2) fail(Errc::semantic_error, "coloring:k needs k >= 2");
    t.in_labels = {kUnitLabel};
    t.in_stars = {Star::of(kUnitLabel, {kUnitLabel, kUnitLabel})};
    t.out_labels = color_labels(k);
    t.out_stars = proper_stars(t.out_labels, 2);
  } else {
    fail(Errc::semantic_error, "unknown builtin task: " + name);
  }
  validate(t);
  return t;
}

namespace {

std::set<Star> parse_stars(const nlohmann::json& j, const std::vector<Label>& labels,
                           int degree) {
  if (j.is_string()) {
    if (j == "all") return all_stars(labels, degree);
    if (j == "proper") return proper_stars(labels, degree);
    fail(Errc::semantic_error, "star set must be a list, \"all\", or \"proper\"");
  }
  std::set<Star> stars;
  for (const auto& js : j) {
    std::vector<Label> leaves;
    for (const auto& l : js.at("leaves")) leaves.push_back(l.get<Label>());
    stars.insert(Star::of(js.at("center").get<Label>(), std::move(leaves)));
  }
  return stars;
}

}  // namespace

LclTask parse_task(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(Errc::syntax_error, e.what());
  }
  if (j.contains("builtin")) return builtin_task(j["builtin"].get<std::string>());

  LclTask t;
  t.name = j.value("name", "task");
  t.degree = j.value("degree", 2);
  for (const auto& req : {"in_labels", "in_stars", "out_labels", "out_stars"})
    if (!j.contains(req)) fail(Errc::semantic_error, std::string("missing field: ") + req);
  for (const auto& l : j["in_labels"]) t.in_labels.push_back(l.get<Label>());
  for (const auto& l : j["out_labels"]) t.out_labels.push_back(l.get<Label>());
  if (t.in_labels.empty()) t.in_labels.push_back(kUnitLabel);
  std::sort(t.in_labels.begin(), t.in_labels.end());
  std::sort(t.out_labels.begin(), t.out_labels.end());
  t.in_stars = parse_stars(j["in_stars"], t.in_labels, t.degree);
  t.out_stars = parse_stars(j["out_stars"], t.out_labels, t.degree);

  if (!j.contains("delta") || j["delta"] == "unconstrained") {
    t.delta.kind = DeltaKind::unconstrained;
  } else if (j["delta"].is_object() && j["delta"].contains("per_node")) {
    t.delta.kind = DeltaKind::per_node;
    for (const auto& p : j["delta"]["per_node"])
      t.delta.per_node.insert({p.at(0).get<Label>(), p.at(1).get<Label>()});
  } else if (j["delta"].is_object() && j["delta"].contains("pairs")) {
    t.delta.kind = DeltaKind::explicit_pairs;
    for (const auto& p : j["delta"]["pairs"]) {
      auto star_of = [](const nlohmann::json& js) {
        std::vector<Label> leaves;
        for (const auto& l : js.at("leaves")) leaves.push_back(l.get<Label>());
        return Star::of(js.at("center").get<Label>(), std::move(leaves));
      };
      t.delta.pairs.insert({star_of(p.at(0)), star_of(p.at(1))});
    }
  } else {
    fail(Errc::semantic_error, "unrecognized delta specification");
  }
  if (j.contains("forbidden_windows"))
    for (const auto& jw : j["forbidden_windows"]) {
      std::vector<Label> w;
      for (const auto& l : jw) w.push_back(l.get<Label>());
      t.forbidden_windows.push_back(std::move(w));
    }
  validate(t);
  return t;
}

namespace {

Complex build_side_complex(const LclTask& task, Side side) {
  const auto& labels = side == Side::in ? task.in_labels : task.out_labels;
  const auto names = names_for_degree(task.degree);
  std::vector<Facet> facets;
  std::vector<Label> tuple(names.size());
  std::function<void(size_t)> rec = [&](size_t i) {
    if (i == tuple.size()) {
      // name 0 is the center; the remaining entries are the leaf multiset
      std::vector<Label> leaves;
      Label center;
      Facet f;
      for (size_t k = 0; k < names.size(); ++k) {
        if (names[k].index == 0) center = tuple[k];
        else leaves.push_back(tuple[k]);
        f.entries.push_back({names[k], Value::label(tuple[k])});
      }
      if (good_star(task, side, Star::of(center, leaves))) facets.push_back(std::move(f));
      return;
    }
    for (const auto& l : labels) { tuple[i] = l; rec(i + 1); }
  };
  rec(0);
  if (facets.empty())
    fail(Errc::empty_complex, std::string("no ") + (side == Side::in ? "input" : "output") +
                                  " tuple induces a good star");
  return make_complex(task.degree, facets);
}

}  // namespace

Complex build_input_complex(const LclTask& task) { return build_side_complex(task, Side::in); }
Complex build_output_complex(const LclTask& task) { return build_side_complex(task, Side::out); }

bool delta_allows_labels(const LclTask& task, const std::vector<Label>& in_labels,
                         const std::vector<Label>& out_labels) {
  switch (task.delta.kind) {
    case DeltaKind::unconstrained:
      return true;
    case DeltaKind::per_node: {
      for (size_t i = 0; i < in_labels.size(); ++i)
        if (!task.delta.per_node.count({in_labels[i], out_labels[i]})) return false;
      return true;
    }
    case DeltaKind::explicit_pairs: {
      // name order puts the center (name 0) at position 1 for rings
      auto star_from = [&](const std::vector<Label>& t) {
        const auto names = names_for_degree(task.degree);
        Label center;
        std::vector<Label> leaves;
        for (size_t i = 0; i < names.size(); ++i) {
          if (names[i].index == 0) center = t[i];
          else leaves.push_back(t[i]);
        }
        return Star::of(center, leaves);
      };
      return task.delta.pairs.count({star_from(in_labels), star_from(out_labels)}) > 0;
    }
  }
  return true;
}

bool delta_allows(const LclTask& task, const Facet& in_facet, const Facet& out_facet) {
  std::vector<Label> ins, outs;
  for (const auto& v : in_facet.entries) ins.push_back(v.value.as_label());
  for (const auto& v : out_facet.entries) outs.push_back(v.value.as_label());
  return delta_allows_labels(task, ins, outs);
}

std::string task_to_json(const LclTask& task) {
  nlohmann::json j;
  j["name"] = task.name;
  j["degree"] = task.degree;
  j["in_labels"] = task.in_labels;
  j["out_labels"] = task.out_labels;
  auto stars_json = [](const std::set<Star>& stars) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& s : stars) arr.push_back({{"center", s.center}, {"leaves", s.leaves}});
    return arr;
  };
  j["in_stars"] = stars_json(task.in_stars);
  j["out_stars"] = stars_json(task.out_stars);
  switch (task.delta.kind) {
    case DeltaKind::unconstrained: j["delta"] = "unconstrained"; break;
    case DeltaKind::per_node: {
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& [a, b] : task.delta.per_node) arr.push_back({a, b});
      j["delta"] = {{"per_node", arr}};
      break;
    }
    case DeltaKind::explicit_pairs: {
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& [a, b] : task.delta.pairs)
        arr.push_back({{{"center", a.center}, {"leaves", a.leaves}},
                       {{"center", b.center}, {"leaves", b.leaves}}});
      j["delta"] = {{"pairs", arr}};
      break;
    }
  }
  if (!task.forbidden_windows.empty()) j["forbidden_windows"] = task.forbidden_windows;
  return j.dump(2) + "\n";
}

}  // namespace lclcx
