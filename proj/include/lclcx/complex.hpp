#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lclcx/value.hpp"

namespace lclcx {

/// Process name inside a star. Degree-2 (ring) complexes use {-1, 0, 1}
/// with 0 the star center; general-degree complexes use {0, ..., d} with
/// 0 the center. Names are analysis labels, never algorithm inputs.
struct ProcessName {
  int index = 0;
  friend auto operator<=>(const ProcessName&, const ProcessName&) = default;
};

struct Vertex {
  ProcessName name;
  Value value;
  friend auto operator<=>(const Vertex&, const Vertex&) = default;
};

/// A maximal simplex, stored as one vertex per process name in increasing
/// name order. Keeping facets name-indexed makes name preservation of maps
/// structural rather than checked.
struct Facet {
  std::vector<Vertex> entries;

  const Value& value_at(ProcessName name) const;
  friend auto operator<=>(const Facet&, const Facet&) = default;
};

/// The expected name set for a degree-d facet: {-1,0,1} for d=2, {0..d}
/// otherwise.
std::vector<ProcessName> names_for_degree(int degree);

/// A chromatic simplicial complex given by its facets. Facets are
/// deduplicated and held in canonical order; the vertex set is derived.
/// Instances are immutable after construction and safe to share across
/// threads.
class Complex {
public:
  int degree() const { return degree_; }
  const std::vector<Facet>& facets() const { return facets_; }
  const std::vector<Vertex>& vertices() const { return vertices_; }

  bool contains_facet(const Facet& f) const;

  /// Facets of mixed name pairs are allowed here (skeletons); the strict
  /// same-name-set validation lives in make_complex.
  static Complex from_facets(int degree, std::vector<Facet> facets);

private:
  int degree_ = 0;
  std::vector<Facet> facets_;
  std::vector<Vertex> vertices_;
};

/// Validated construction: every facet must carry exactly the canonical
/// name set for the degree, one vertex per name, and all vertex values
/// must share one tag.
/// Throws MalformedFacet, MixedValueTags; EmptyComplex on an empty list.
Complex make_complex(int degree, const std::vector<Facet>& facets);

/// True iff the vertices form a simplex of K, i.e. are jointly contained
/// in some facet. Names must be pairwise distinct.
bool is_simplex(const Complex& k, const std::vector<Vertex>& vs);

/// A name-independent vertex map: a finite function from values to output
/// labels. Applying it to a vertex keeps the vertex's name.
struct MapTable {
  std::map<Value, Label> mapping;

  const Label& at(const Value& v) const;  // throws IncompleteTable
};

struct Violation {
  Facet facet;  // first source facet (in canonical order) whose image fails
  Facet image;
};

/// Checks that the name-preserving image of every facet of src under the
/// table is a facet of dst. Returns nullopt on success, otherwise the
/// first violating facet and its image.
/// Throws IncompleteTable if a src vertex value is missing from the table.
std::optional<Violation> verify_simplicial(const MapTable& table, const Complex& src,
                                           const Complex& dst);

/// The degree-1 complex whose facets are all 2-element distinct-name
/// subsets of K's facets.
Complex one_skeleton(const Complex& k);

/// Partition of the facets where two facets share a block iff they are
/// linked by a chain of facets sharing at least one vertex. Blocks and
/// facets within blocks come out in canonical order, independent of the
/// facet input order.
std::vector<std::vector<Facet>> connected_components(const Complex& k);

/// Cheap isomorphism invariant of a component: equal signatures are
/// necessary (not sufficient) for two components to be isomorphic.
struct ComponentSignature {
  size_t vertex_count = 0;
  size_t facet_count = 0;
  std::vector<size_t> degree_multiset;  // facet-membership counts, sorted

  friend auto operator<=>(const ComponentSignature&, const ComponentSignature&) = default;
};

ComponentSignature component_signature(const std::vector<Facet>& block);

/// Canonical JSON form {"degree": d, "facets": [[[name, value], ...], ...]},
/// byte-stable across runs for equal inputs.
std::string complex_to_json(const Complex& k);
Complex complex_from_json(const std::string& text);

/// DOT rendering of the 1-skeleton; vertex ids are "name:value" strings.
std::string complex_to_dot(const Complex& k);

}  // namespace lclcx
