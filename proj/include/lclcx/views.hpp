#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lclcx/complex.hpp"
#include "lclcx/task.hpp"

namespace lclcx {

/// Identifier regime for views and protocol complexes. None models
/// ID-oblivious executions; Arbitrary draws pairwise-distinct IDs from
/// {1..R}; Increasing additionally requires IDs to increase left to right
/// inside every window (the monotone-ring regime).
struct IdMode {
  enum class Kind { none, arbitrary, increasing };
  Kind kind = Kind::none;
  int R = 0;

  static IdMode none() { return {Kind::none, 0}; }
  static IdMode arbitrary(int R) { return {Kind::arbitrary, R}; }
  static IdMode increasing(int R) { return {Kind::increasing, R}; }

  bool has_ids() const { return kind != Kind::none; }
  const char* name() const;

  friend auto operator<=>(const IdMode&, const IdMode&) = default;
};

/// Maximum number of nodes in a radius-k ball of a d-regular graph:
/// 1+2k on rings, 1 + d((d-1)^k - 1)/(d-2) otherwise.
long long view_bound(int d, int k);

/// A merged window of 2t+3 node states: the union of the three views of a
/// radius-t star on a long ring.
using MergedWindow = std::vector<NodeState>;

/// All promise-satisfying radius-t views, in canonical value order.
/// Radius-0 views are Label (or IdLabel) values; larger radii are View
/// values.
std::vector<Value> enumerate_views(const LclTask& task, int t, const IdMode& mode);

/// Tests whether three views can occur as the left, center, and right
/// views of one star: the overlaps must agree and the merged window must
/// satisfy the promise and the ID regime. Returns the merged window, or
/// nullopt. Throws RadiusMismatch on inconsistent radii or ID regimes.
std::optional<MergedWindow> compatible(const LclTask& task, const IdMode& mode,
                                       const Value& w_left, const Value& w_mid,
                                       const Value& w_right);

/// The t-round protocol complex on rings (t >= 1 requires degree 2; t = 0
/// builds the ID-decorated input complex for any degree). Facets are the
/// compatible view triples. Throws UnsupportedDegree, IdRange (R < 2t+3),
/// EmptyComplex.
Complex build_protocol_complex(const LclTask& task, int t, const IdMode& mode);

/// The degree-1 complex of compatible view pairs at name pairs (-1,0) and
/// (0,1). In Increasing mode this includes boundary pairs whose completing
/// third view would need an ID outside {1..R}; such pairs are genuine
/// simplices of the regime (the completing ID exists beyond R), which is
/// what the round-reduction argument consumes.
Complex protocol_edge_complex(const LclTask& task, int t, const IdMode& mode);

/// Strips IDs from a vertex: (p, (id,x)) becomes (p, x), positionwise on
/// views. Throws NoIds when the value carries none.
Value pi_value(const Value& v);
Vertex pi(const Vertex& v);

/// The facets of the protocol complex reachable from the ID-decorated
/// input facet F: those whose central three (id,label) states equal F's
/// entries. At t=0 this is {F} itself.
std::vector<Facet> xi(const Facet& input_facet, int t, const Complex& protocol);

/// Replaces IDs by their ranks 1..(2t+1) inside the window; labels are
/// untouched. Throws NoIds.
Value canonicalize_ids(const Value& v);

/// The central (id,label) state of a view, as a Label or IdLabel value.
Value view_center(const Value& v);

/// Internal enumeration shared by complexes and the solver: all valid
/// merged windows of the given length under the mode.
std::vector<MergedWindow> merged_windows(const LclTask& task, int length, const IdMode& mode);

/// Builds the Value for a window slice (Label/IdLabel when length 1).
Value window_slice_value(const MergedWindow& w, size_t offset, size_t len);

}  // namespace lclcx
