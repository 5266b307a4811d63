#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

#include "lclcx/solver.hpp"

namespace lclcx {

/// The facet condition of the set-family construction: the triple of
/// families forms a facet iff for each adjacent name pair (i-1, i) there
/// is a member set S of the left family such that every member set S' of
/// the right family contains a value v' with {(p_{i-1}, v), (p_i, v')} a
/// simplex of K for every v in S. Pass the complex whose 1-simplices carry
/// the intended adjacency (for protocol complexes under increasing IDs use
/// protocol_edge_complex, whose boundary pairs are genuine simplices).
bool phi_facet_ok(const Complex& k, const SetFamily& fam_left, const SetFamily& fam_mid,
                  const SetFamily& fam_right);

/// Elementwise image of a family under a vertex map: each member set maps
/// to the set of images (deduplicated). Throws IncompleteTable.
SetFamily phi_apply_map(const MapTable& table, const SetFamily& fam);

struct FImage {
  SetFamily family;
  /// Set when no ID above the window (or none below it) exists in {1..R},
  /// leaving the family (or its members) empty. Permitted, but worth
  /// surfacing to callers.
  bool id_range_exhausted = false;
};

/// The gluing map on a radius-(t-1) view w with strictly increasing IDs in
/// {1..R}: for every b > max(w) the member set W^b = {a.w.b : a < min(w)},
/// and the family collects the W^b. The extension states reuse w's (unit)
/// input label.
FImage f_of_view(const Value& view, int R);

/// Bijection between families of subsets of {1..k} and {1..2^(2^k)}: a
/// member set becomes a bitmask over k, the family a bitmask over the 2^k
/// set masks, and the code is that mask plus one.
struct ColorCode {
  int k = 0;
  mpz_class code;

  std::string str() const { return code.get_str(); }
};

ColorCode color_code_encode(int k, const SetFamily& family_of_label_sets);
SetFamily color_code_decode(const ColorCode& code);

/// One round-elimination step: from a verified t-round k-coloring table on
/// increasing IDs in {1..R}, builds the (t-1)-round 2^(2^k)-coloring table
/// w -> code(table applied to f(w)), then verifies it is simplicial into
/// the larger coloring complex over the (t-1)-round protocol complex
/// before returning. Throws VerificationFailed with the violating facet.
AlgorithmTable reduce_once(const AlgorithmTable& delta_t, int threads = 0);

/// Tower of twos: tower(0) = 1, tower(h) = 2^tower(h-1). Exact up to
/// h = 5; beyond that the value is kept symbolic (height only).
struct TowerValue {
  int height = 0;
  std::optional<mpz_class> exact;  // present iff height <= 5

  std::string str() const;
};

TowerValue tower(int h);
mpz_class tower_exact(int h);  // throws TooLarge for h > 5

/// Iterated base-2 logarithm: the least h with tower(h) >= n. Any
/// representable n satisfies n <= tower(6), so the result is at most 6.
int log_star(const mpz_class& n);

/// floor/ceil convention pinned here: ceil(log*(n) / 2) - 1, for n >= 3.
int linial_bound(const mpz_class& n);

}  // namespace lclcx
