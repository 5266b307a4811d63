#include "lclcx/complex.hpp"

#include <algorithm>
#include <set>

#include "json.hpp"
#include "lclcx/errors.hpp"

namespace lclcx {

const Value& Facet::value_at(ProcessName name) const {
  for (const auto& v : entries)
    if (v.name == name) return v.value;
  fail(Errc::malformed_facet, "no vertex with name " + std::to_string(name.index));
}

std::vector<ProcessName> names_for_degree(int degree) {
  std::vector<ProcessName> names;
  if (degree == 2) {
    names = {{-1}, {0}, {1}};
  } else {
    for (int i = 0; i <= degree; ++i) names.push_back({i});
  }
  return names;
}

Complex Complex::from_facets(int degree, std::vector<Facet> facets) {
  for (auto& f : facets)
    std::sort(f.entries.begin(), f.entries.end(),
              [](const Vertex& a, const Vertex& b) { return a.name < b.name; });
  std::sort(facets.begin(), facets.end());
  facets.erase(std::unique(facets.begin(), facets.end()), facets.end());

  std::set<Vertex> verts;
  for (const auto& f : facets)
    for (const auto& v : f.entries) verts.insert(v);

  Complex k;
  k.degree_ = degree;
  k.facets_ = std::move(facets);
  k.vertices_.assign(verts.begin(), verts.end());
  return k;
}

bool Complex::contains_facet(const Facet& f) const {
  Facet g = f;
  std::sort(g.entries.begin(), g.entries.end(),
            [](const Vertex& a, const Vertex& b) { return a.name < b.name; });
  return std::binary_search(facets_.begin(), facets_.end(), g);
}

Complex make_complex(int degree, const std::vector<Facet>& facets) {
  if (facets.empty()) fail(Errc::empty_complex, "complex has no facets");
  const auto names = names_for_degree(degree);
  std::optional<Value::Tag> tag;
  for (const auto& f : facets) {
    if (f.entries.size() != names.size())
      fail(Errc::malformed_facet, "facet has " + std::to_string(f.entries.size()) +
                                      " entries, expected " + std::to_string(names.size()));
    std::vector<ProcessName> seen;
    for (const auto& v : f.entries) {
      seen.push_back(v.name);
      if (!tag) tag = v.value.tag();
      if (v.value.tag() != *tag) fail(Errc::mixed_value_tags, "facet mixes value tags");
    }
    std::sort(seen.begin(), seen.end());
    if (seen != names) fail(Errc::malformed_facet, "facet names do not cover the name set");
  }
  return Complex::from_facets(degree, facets);
}

bool is_simplex(const Complex& k, const std::vector<Vertex>& vs) {
  for (size_t i = 0; i < vs.size(); ++i)
    for (size_t j = i + 1; j < vs.size(); ++j)
      if (vs[i].name == vs[j].name) return false;
  if (vs.empty()) return false;
  for (const auto& f : k.facets()) {
    bool all = true;
    for (const auto& v : vs) {
      bool found = false;
      for (const auto& e : f.entries)
        if (e.name == v.name && e.value == v.value) { found = true; break; }
      if (!found) { all = false; break; }
    }
    if (all) return true;
  }
  return false;
}

const Label& MapTable::at(const Value& v) const {
  auto it = mapping.find(v);
  if (it == mapping.end())
    fail(Errc::incomplete_table, "table has no entry for value " + v.str());
  return it->second;
}

std::optional<Violation> verify_simplicial(const MapTable& table, const Complex& src,
                                           const Complex& dst) {
  for (const auto& v : src.vertices()) table.at(v.value);  // totality first
  for (const auto& f : src.facets()) {
    Facet img;
    for (const auto& v : f.entries)
      img.entries.push_back({v.name, Value::label(table.at(v.value))});
    if (!dst.contains_facet(img)) return Violation{f, img};
  }
  return std::nullopt;
}

Complex one_skeleton(const Complex& k) {
  std::vector<Facet> edges;
  for (const auto& f : k.facets()) {
    const auto& e = f.entries;
    for (size_t i = 0; i < e.size(); ++i)
      for (size_t j = i + 1; j < e.size(); ++j)
        edges.push_back(Facet{{e[i], e[j]}});
  }
  return Complex::from_facets(1, std::move(edges));
}

std::vector<std::vector<Facet>> connected_components(const Complex& k) {
  const auto& fs = k.facets();
  std::vector<size_t> parent(fs.size());
  for (size_t i = 0; i < fs.size(); ++i) parent[i] = i;
  auto find = [&](size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](size_t a, size_t b) {
    a = find(a); b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  };

  std::map<Vertex, size_t> first_owner;
  for (size_t i = 0; i < fs.size(); ++i)
    for (const auto& v : fs[i].entries) {
      auto [it, inserted] = first_owner.emplace(v, i);
      if (!inserted) unite(it->second, i);
    }

  std::map<size_t, std::vector<Facet>> blocks;
  for (size_t i = 0; i < fs.size(); ++i) blocks[find(i)].push_back(fs[i]);
  std::vector<std::vector<Facet>> out;
  for (auto& [root, block] : blocks) out.push_back(std::move(block));
  return out;
}

ComponentSignature component_signature(const std::vector<Facet>& block) {
  std::map<Vertex, size_t> deg;
  for (const auto& f : block)
    for (const auto& v : f.entries) ++deg[v];
  ComponentSignature sig;
  sig.vertex_count = deg.size();
  sig.facet_count = block.size();
  for (const auto& [v, d] : deg) sig.degree_multiset.push_back(d);
  std::sort(sig.degree_multiset.begin(), sig.degree_multiset.end());
  return sig;
}

std::string complex_to_json(const Complex& k) {
  nlohmann::json j;
  j["degree"] = k.degree();
  auto& fs = j["facets"] = nlohmann::json::array();
  for (const auto& f : k.facets()) {
    nlohmann::json jf = nlohmann::json::array();
    for (const auto& v : f.entries)
      jf.push_back(nlohmann::json::array({v.name.index, v.value.str()}));
    fs.push_back(jf);
  }
  return j.dump(2) + "\n";
}

Complex complex_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(Errc::syntax_error, e.what());
  }
  if (!j.contains("degree") || !j.contains("facets"))
    fail(Errc::semantic_error, "complex JSON needs degree and facets");
  std::vector<Facet> facets;
  for (const auto& jf : j["facets"]) {
    Facet f;
    for (const auto& jv : jf)
      f.entries.push_back({ProcessName{jv.at(0).get<int>()},
                           parse_value(jv.at(1).get<std::string>())});
    facets.push_back(std::move(f));
  }
  return make_complex(j["degree"].get<int>(), facets);
}

std::string complex_to_dot(const Complex& k) {
  Complex sk = k.degree() >= 2 ? one_skeleton(k) : k;
  std::string out = "graph skeleton {\n";
  for (const auto& v : sk.vertices())
    out += "  \"" + std::to_string(v.name.index) + ":" + v.value.str() + "\";\n";
  for (const auto& e : sk.facets()) {
    out += "  \"" + std::to_string(e.entries[0].name.index) + ":" + e.entries[0].value.str() +
           "\" -- \"" + std::to_string(e.entries[1].name.index) + ":" +
           e.entries[1].value.str() + "\";\n";
  }
  return out + "}\n";
}

}  // namespace lclcx
