#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lclcx/solver.hpp"

namespace lclcx {

enum class IdDiscipline { none, arbitrary, increasing_wrap };

IdDiscipline discipline_for(const IdMode& mode);
const char* discipline_name(IdDiscipline d);

/// A concrete labeled ring, optionally with an ID assignment. Under the
/// increasing discipline IDs rise along positions 0..n-1 with the single
/// descent at the wrap.
struct RingInstance {
  std::vector<Label> labels;
  std::optional<std::vector<int>> ids;

  size_t n() const { return labels.size(); }
};

struct RunViolation {
  size_t position;
  Star star;
};

struct RunReport {
  std::vector<Label> outputs;
  bool legal = false;
  std::vector<RunViolation> violations;
};

/// Enumerates (or samples, see cross_validate) the rings of size n whose
/// cyclic labeling satisfies the task promise, paired with ID assignments
/// from {1..pool} under the discipline. Deterministic order.
/// Throws InfeasiblePromise when no labeling of C_n satisfies the promise.
class InstanceStream {
public:
  InstanceStream(const LclTask& task, size_t n, IdDiscipline discipline, int id_pool);

  std::optional<RingInstance> next();

  /// Number of promise-satisfying labelings, saturating at the exhaustive
  /// cap + 1; the full instance count multiplies in the ID assignments.
  uint64_t labeling_count() const { return labeling_count_; }
  uint64_t instance_count() const;  // saturating

  static constexpr uint64_t kExhaustiveCap = 1'000'000;

private:
  const LclTask& task_;
  size_t n_;
  IdDiscipline discipline_;
  int pool_;
  uint64_t labeling_count_ = 0;
  std::vector<std::vector<uint8_t>> labelings_;  // label indices, canonical order
  size_t label_pos_ = 0;
  std::vector<int> id_state_;
  bool id_fresh_ = true;
  bool exhausted_ = false;

  bool advance_ids();
  RingInstance make(size_t label_index) const;
};

/// True iff the cyclic labeling satisfies every radius-1 star of the
/// promise and avoids the forbidden windows (both orientations, cyclically).
bool cyclic_promise_ok(const LclTask& task, const std::vector<Label>& labels);

/// Executes the table on the ring: output[i] = table(radius-t view at i,
/// read cyclically). Rings as small as n = 2t+1 are accepted: the window
/// then never passes a position twice, so every view read off a proper
/// instance is one the table covers. Legality is checked star by star
/// against the output stars and the task relation. Throws MissingView if
/// a node's view is absent from the table (table/regime mismatch).
RunReport run(const AlgorithmTable& table, const LclTask& task, const RingInstance& inst);

/// The classic two-pass recoloring of a properly 3-colored ring into an
/// MIS, as a 2-round table: color-3 nodes first join if no neighbor has
/// color 1, then color-2 nodes do the same against current colors; a node
/// outputs 1 iff its final color is 1.
AlgorithmTable reference_linial_table();

struct CrossValidateOptions {
  uint64_t trials = 1000;      // per ring size, when sampling
  uint64_t seed = 0x5eed;      // sampling seed
  int threads = 0;
  int id_pool = 0;             // 0: table's R (or n for ID-less tasks)
};

struct CrossValidateReport {
  uint64_t instances = 0;
  uint64_t illegal = 0;
  bool pass = false;
  bool sampled = false;
  std::vector<std::pair<size_t, RunViolation>> first_violations;  // (n, violation)
  std::vector<std::pair<size_t, uint64_t>> per_n;                 // (n, instances)
};

/// Runs the table on every admissible instance for n in [n_lo, n_hi]
/// (exhaustive when the instance count allows, otherwise a fixed-seed
/// uniform-rejection sample of `trials` per n) and aggregates legality.
CrossValidateReport cross_validate(const AlgorithmTable& table, const LclTask& task,
                                   size_t n_lo, size_t n_hi,
                                   const CrossValidateOptions& opts = {});

std::string cross_report_to_json(const CrossValidateReport& r);
std::string run_report_to_json(const RunReport& r);

std::string instance_to_json(const RingInstance& inst);
RingInstance instance_from_json(const std::string& text);

}  // namespace lclcx
