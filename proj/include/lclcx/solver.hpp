#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lclcx/views.hpp"

namespace lclcx {

enum class Verdict { sat, unsat, unknown };

const char* verdict_name(Verdict v);

struct ComponentReport {
  size_t vars = 0;
  uint64_t nodes = 0;
  bool exhausted = false;  // full assignment space covered (meaningful on unsat)
  bool sat = false;
};

struct SolveStats {
  size_t views = 0;
  size_t facet_constraints = 0;
  size_t edge_constraints = 0;
  uint64_t nodes = 0;
  std::vector<ComponentReport> components;
};

/// Outcome of a decision run. On SAT the witness is a total map from view
/// values to output labels; on UNSAT the per-component reports certify
/// that every component's assignment space was exhausted. UNKNOWN means
/// the node cap was hit before a verdict; it is never silently UNSAT.
struct SolveResult {
  Verdict verdict = Verdict::unknown;
  std::optional<MapTable> witness;
  SolveStats stats;
};

struct SolveOptions {
  uint64_t max_nodes = 10'000'000;  // per search component
  int threads = 0;                  // 0 machine default, 1 serial
};

/// Decides whether a name-preserving, name-independent simplicial map from
/// the t-round protocol complex to the output complex exists, respecting
/// the task relation on every reachable facet. Search variables are view
/// values (name independence is structural); constraints cover compatible
/// view triples and compatible view pairs, so a witness also preserves the
/// regime's boundary edges. Exact and deterministic: canonical variable
/// and label order, components solved independently, first witness found.
SolveResult solve(const LclTask& task, int t, const IdMode& mode,
                  const SolveOptions& opts = {});

/// Same decision restricted to 1-skeletons: only the edges of the protocol
/// complex must map to edges of the output complex (the task relation is
/// projected to edges likewise).
SolveResult solve_skeleton(const LclTask& task, int t, const IdMode& mode,
                           const SolveOptions& opts = {});

/// Independent oracle: enumerates every total assignment and checks the
/// constraints directly against the built complexes. Feasible only when
/// |out|^|views| <= guard (throws TooLarge otherwise).
SolveResult brute_force_solve(const LclTask& task, int t, const IdMode& mode,
                              bool skeleton = false, uint64_t guard = 10'000'000);

/// A t-round algorithm as a finite function from views to output labels.
struct AlgorithmTable {
  int rounds = 0;
  IdMode mode;
  std::vector<Label> out_labels;
  std::map<Value, Label> entries;
  /// In ID regimes: the table keyed by rank patterns, present only when
  /// the witness is order-invariant (all views with one canonical form
  /// agree).
  std::optional<std::map<Value, Label>> canonical_entries;

  const Label& lookup(const Value& view) const;  // throws MissingView
  std::string to_json() const;
  static AlgorithmTable from_json(const std::string& text);
};

/// Turns a SAT witness into an executable algorithm table, total on
/// enumerate_views(task, t, mode).
AlgorithmTable extract_algorithm(const SolveResult& result, const LclTask& task, int t,
                                 const IdMode& mode);

std::string solve_result_to_json(const SolveResult& r);

}  // namespace lclcx
