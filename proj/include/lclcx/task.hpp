#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "lclcx/complex.hpp"

namespace lclcx {

/// A labeled star: a center label plus a size-d multiset of leaf labels.
/// Leaf order is immaterial; leaves are kept sorted.
struct Star {
  Label center;
  std::vector<Label> leaves;

  static Star of(Label center, std::vector<Label> leaves);
  friend auto operator<=>(const Star&, const Star&) = default;
};

enum class DeltaKind { unconstrained, per_node, explicit_pairs };

/// Input-output constraint. PerNode relates input and output labels
/// positionwise; ExplicitPairs whitelists (input star, output star) pairs.
struct DeltaSpec {
  DeltaKind kind = DeltaKind::unconstrained;
  std::set<std::pair<Label, Label>> per_node;
  std::set<std::pair<Star, Star>> pairs;
};

/// The unit input label used to encode inputless tasks.
inline const Label kUnitLabel = "_";

/// A locally checkable labeling task on d-regular graphs: finite input and
/// output alphabets, the good radius-1 stars on each side, the relation
/// between input and output configurations, and (optionally) longer label
/// windows promised absent from the input.
struct LclTask {
  std::string name;
  int degree = 2;
  std::vector<Label> in_labels;   // sorted
  std::set<Star> in_stars;
  std::vector<Label> out_labels;  // sorted
  std::set<Star> out_stars;
  DeltaSpec delta;
  std::vector<std::vector<Label>> forbidden_windows;  // checked in both orientations

  bool has_in_label(const Label& l) const;
  bool has_out_label(const Label& l) const;
};

/// Membership of a star in the side's good-star set.
enum class Side { in, out };
bool good_star(const LclTask& task, Side side, const Star& star);

/// True iff every length-3 slice of the label window is a good input star
/// and no slice matches a forbidden window in either orientation. Windows
/// shorter than 3 pass the star check vacuously.
bool window_ok(const LclTask& task, const std::vector<Label>& labels);

/// Incremental form: assuming the window without its last label passed,
/// checks only the constraints that involve the last label.
bool window_ok_suffix(const LclTask& task, const std::vector<Label>& labels);

/// Parses a task document (UTF-8 JSON, see docs/formats.md), or expands a
/// builtin by name: "mis", "coloring:k", "3col-to-mis", "3col-no-xyzyx".
/// Throws SyntaxError / SemanticError.
LclTask parse_task(const std::string& text);
LclTask builtin_task(const std::string& name);

/// Names of the available builtins, for CLI help.
std::vector<std::string> builtin_names();

/// The complex whose facets are the (d+1)-tuples of input labels whose
/// induced star (center at name 0) is good. Throws EmptyComplex.
Complex build_input_complex(const LclTask& task);

/// Mirror construction over the output side.
Complex build_output_complex(const LclTask& task);

/// Whether the output facet is legal for the input facet under the task's
/// relation.
bool delta_allows(const LclTask& task, const Facet& in_facet, const Facet& out_facet);

/// Positionwise variant used internally: legality of output labels against
/// input labels at names (-1, 0, 1) for degree 2 or (0..d) generally.
bool delta_allows_labels(const LclTask& task, const std::vector<Label>& in_labels,
                         const std::vector<Label>& out_labels);

std::string task_to_json(const LclTask& task);

}  // namespace lclcx
