// Acceptance suite: one line per criterion, exit 1 if anything fails.
// Each check pins the expected combinatorial facts exactly; runtimes are
// reported so the per-criterion budgets are visible.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <vector>

#include "helpers.hpp"
#include "lclcx/errors.hpp"
#include "lclcx/reduction.hpp"

using namespace lclcx;
using namespace lclcx::testing;
using clock_type = std::chrono::steady_clock;

namespace {

int failures = 0;

struct Criterion {
  std::string name;
  clock_type::time_point start = clock_type::now();
  bool ok = true;
  std::string detail;

  explicit Criterion(std::string n) : name(std::move(n)) {}

  void expect(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    } else if (!cond) {
      detail += "; " + what;
    }
  }

  ~Criterion() {
    double ms =
        std::chrono::duration<double, std::milli>(clock_type::now() - start).count();
    std::printf("criterion %-38s %s (%.0f ms)%s%s\n", name.c_str(),
                ok ? "PASS" : "FAIL", ms, ok ? "" : " -- ", detail.c_str());
    if (!ok) ++failures;
  }
};

std::string run_cli(const std::string& args, int& exit_code) {
  std::string cmd = std::string(LCLCX_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  std::string out;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  int status = pclose(pipe);
  exit_code = WEXITSTATUS(status);
  return out;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void criterion_1_round_ladder() {
  Criterion c("1 (0/1/2-round ladder)");
  LclTask t = builtin_task("3col-to-mis");
  for (auto [rounds, expect] : std::vector<std::pair<int, Verdict>>{
           {0, Verdict::unsat}, {1, Verdict::unsat}, {2, Verdict::sat}}) {
    auto t0 = clock_type::now();
    SolveResult res = solve(t, rounds, IdMode::none());
    double s = std::chrono::duration<double>(clock_type::now() - t0).count();
    c.expect(res.verdict == expect,
             "t=" + std::to_string(rounds) + " verdict " + verdict_name(res.verdict));
    c.expect(s < 10.0, "t=" + std::to_string(rounds) + " exceeded 10 s");
    if (rounds == 2 && res.verdict == Verdict::sat) {
      Complex p2 = build_protocol_complex(t, 2, IdMode::none());
      Complex m2 = build_output_complex(t);
      c.expect(!verify_simplicial(*res.witness, p2, m2).has_value(),
               "t=2 witness is not simplicial");
    }
  }
}

void criterion_2_zero_round_ids() {
  Criterion c("2 (0-round witnesses with IDs)");
  LclTask t = builtin_task("3col-to-mis");
  auto t0 = clock_type::now();
  SolveResult r3 = solve(t, 0, IdMode::arbitrary(3));
  SolveResult r4 = solve(t, 0, IdMode::arbitrary(4));
  double s = std::chrono::duration<double>(clock_type::now() - t0).count();
  c.expect(s < 20.0, "exceeded the time budget");
  c.expect(r3.verdict == Verdict::sat, "R=3 should be solvable");
  c.expect(r4.verdict == Verdict::unsat, "R=4 should be impossible");
  if (r3.witness) {
    bool some_j = false;
    for (int j = 1; j <= 3; ++j) {
      bool all = true;
      for (const auto& [v, out] : r3.witness->mapping)
        if (out != (v.as_id_label().id == j ? "1" : "0")) all = false;
      some_j |= all;
    }
    c.expect(some_j, "R=3 witness is not an indicator of one ID");
  }
}

void criterion_3_skeleton_split() {
  Criterion c("3 (skeleton vs full at one round)");
  LclTask t = builtin_task("3col-to-mis");
  c.expect(solve_skeleton(t, 1, IdMode::none()).verdict == Verdict::sat,
           "skeleton relaxation should be solvable");
  c.expect(solve(t, 1, IdMode::none()).verdict == Verdict::unsat,
           "the full decision should be impossible");
}

void criterion_4_restricted_promise() {
  Criterion c("4 (restricted promise, one round)");
  LclTask nx = builtin_task("3col-no-xyzyx");
  SolveResult res = solve(nx, 1, IdMode::none());
  c.expect(res.verdict == Verdict::sat, "restricted promise should be solvable");
  if (res.witness) {
    auto w123 = xyzyx_map("1", "2", "3");
    auto w321 = xyzyx_map("3", "2", "1");
    c.expect(res.witness->mapping == w123 || res.witness->mapping == w321,
             "witness is not the known one-round map up to the x/z role swap");
    Complex p1 = build_protocol_complex(nx, 1, IdMode::none());
    Complex m2 = build_output_complex(nx);
    c.expect(!verify_simplicial(*res.witness, p1, m2).has_value(),
             "witness is not simplicial");
    AlgorithmTable tab = extract_algorithm(res, nx, 1, IdMode::none());
    CrossValidateReport rep = cross_validate(tab, nx, 5, 12, {});
    c.expect(rep.pass && !rep.sampled, "witness fails on some restricted ring");
    c.expect(rep.instances == 5456,
             "expected 5456 restricted rings, saw " + std::to_string(rep.instances));
  }
}

void criterion_5_structure() {
  Criterion c("5 (structural regression)");
  LclTask t = builtin_task("3col-to-mis");
  Complex m2 = build_output_complex(t);
  c.expect(m2.vertices().size() == 6 && m2.facets().size() == 4, "MIS complex shape");
  auto v = [](int name, const char* l) { return Vertex{ProcessName{name}, Value::label(l)}; };
  c.expect(!is_simplex(m2, {v(-1, "0"), v(0, "0"), v(1, "0")}), "all-zero hole");
  c.expect(!is_simplex(m2, {v(-1, "1"), v(0, "1"), v(1, "1")}), "all-one hole");
  Complex c2 = build_input_complex(t);
  c.expect(c2.vertices().size() == 9 && c2.facets().size() == 12, "coloring complex shape");
  for (auto [rounds, blocks] : {std::pair{1, 3}, {2, 12}}) {
    Complex p = build_protocol_complex(t, rounds, IdMode::none());
    auto comps = connected_components(p);
    c.expect(comps.size() == static_cast<size_t>(blocks),
             "t=" + std::to_string(rounds) + " component count " +
                 std::to_string(comps.size()));
    std::set<ComponentSignature> sigs;
    for (const auto& b : comps) sigs.insert(component_signature(b));
    c.expect(sigs.size() == 1, "t=" + std::to_string(rounds) + " signatures differ");
  }
}

void criterion_6_oracle_matrix() {
  Criterion c("6 (search vs exhaustive oracle)");
  LclTask two_col = parse_task(R"({
    "name": "2col-to-mis", "degree": 2,
    "in_labels": ["1", "2"], "in_stars": "proper",
    "out_labels": ["0", "1"],
    "out_stars": [
      {"center": "1", "leaves": ["0", "0"]},
      {"center": "0", "leaves": ["0", "1"]},
      {"center": "0", "leaves": ["1", "1"]}
    ]})");
  LclTask id3 = parse_task(R"({
    "name": "id3", "degree": 2,
    "in_labels": ["1", "2", "3"], "in_stars": "proper",
    "out_labels": ["1", "2", "3"], "out_stars": "proper",
    "delta": {"per_node": [["1", "1"], ["2", "2"], ["3", "3"]]}})");
  struct Row {
    LclTask task;
    int t;
    IdMode mode;
  };
  std::vector<Row> matrix = {
      {builtin_task("3col-to-mis"), 0, IdMode::none()},
      {builtin_task("3col-to-mis"), 1, IdMode::none()},
      {builtin_task("3col-to-mis"), 0, IdMode::arbitrary(3)},
      {builtin_task("3col-to-mis"), 0, IdMode::arbitrary(4)},
      {builtin_task("3col-to-mis"), 0, IdMode::arbitrary(5)},
      {builtin_task("3col-to-mis"), 0, IdMode::increasing(3)},
      {builtin_task("3col-to-mis"), 0, IdMode::increasing(4)},
      {builtin_task("3col-no-xyzyx"), 1, IdMode::none()},
      {builtin_task("3col-no-xyzyx"), 0, IdMode::none()},
      {builtin_task("coloring:3"), 0, IdMode::none()},
      {builtin_task("coloring:3"), 0, IdMode::increasing(4)},
      {builtin_task("coloring:3"), 0, IdMode::increasing(5)},
      {builtin_task("coloring:3"), 1, IdMode::increasing(5)},
      {builtin_task("coloring:2"), 1, IdMode::none()},
      {builtin_task("mis"), 1, IdMode::none()},
      {two_col, 0, IdMode::none()},
      {id3, 0, IdMode::none()},
  };
  c.expect(matrix.size() >= 12, "matrix too small");
  for (const auto& row : matrix) {
    Verdict got = solve(row.task, row.t, row.mode).verdict;
    Verdict oracle = brute_force_solve(row.task, row.t, row.mode).verdict;
    c.expect(got == oracle, row.task.name + " t=" + std::to_string(row.t) + " " +
                                row.mode.name() + ": " + verdict_name(got) + " vs oracle " +
                                verdict_name(oracle));
  }
}

void criterion_7_simulation() {
  Criterion c("7 (simulator coherence)");
  LclTask t = builtin_task("3col-to-mis");
  auto t0 = clock_type::now();
  CrossValidateReport lin = cross_validate(reference_linial_table(), t, 5, 12, {});
  c.expect(lin.pass && !lin.sampled && lin.instances == 8160,
           "reference table: " + std::to_string(lin.illegal) + " illegal of " +
               std::to_string(lin.instances));
  SolveResult res = solve(t, 2, IdMode::none());
  if (res.verdict == Verdict::sat) {
    AlgorithmTable tab = extract_algorithm(res, t, 2, IdMode::none());
    CrossValidateReport rep = cross_validate(tab, t, 5, 12, {});
    c.expect(rep.pass && rep.instances == 8160,
             "t=2 witness: " + std::to_string(rep.illegal) + " illegal");
  } else {
    c.expect(false, "t=2 witness unavailable");
  }
  double s = std::chrono::duration<double>(clock_type::now() - t0).count();
  c.expect(s < 60.0, "exceeded 60 s");
}

void criterion_8_round_reduction() {
  Criterion c("8 (round-reduction machinery)");
  LclTask col3 = builtin_task("coloring:3");

  // the gluing map is simplicial, exhaustively over all facets
  for (int t : {1, 2}) {
    for (int R = 2 * t + 3; R <= 7; ++R) {
      Complex prev = build_protocol_complex(col3, t - 1, IdMode::increasing(R));
      Complex edges = protocol_edge_complex(col3, t, IdMode::increasing(R));
      for (const auto& f : prev.facets()) {
        std::vector<SetFamily> fams;
        for (const auto& v : f.entries) fams.push_back(f_of_view(v.value, R).family);
        if (!phi_facet_ok(edges, fams[0], fams[1], fams[2])) {
          c.expect(false, "gluing map not simplicial at t=" + std::to_string(t) +
                              " R=" + std::to_string(R));
          break;
        }
      }
    }
  }

  // the image of the two-coloring complex sits inside the 16-coloring one
  {
    Complex o2 = build_output_complex(builtin_task("coloring:2"));
    std::vector<std::vector<Value>> base = {
        {}, {Value::label("1")}, {Value::label("2")}, {Value::label("1"), Value::label("2")}};
    std::vector<SetFamily> fams;
    for (int mask = 0; mask < 16; ++mask) {
      std::vector<std::vector<Value>> sets;
      for (int i = 0; i < 4; ++i)
        if (mask >> i & 1) sets.push_back(base[i]);
      fams.push_back(SetFamily::canonical(std::move(sets)));
    }
    size_t count = 0;
    bool embed_ok = true;
    for (const auto& fa : fams)
      for (const auto& fb : fams)
        for (const auto& fc : fams) {
          if (!phi_facet_ok(o2, fa, fb, fc)) continue;
          ++count;
          mpz_class ca = color_code_encode(2, fa).code;
          mpz_class cb = color_code_encode(2, fb).code;
          mpz_class cc = color_code_encode(2, fc).code;
          if (ca == cb || cb == cc || ca < 1 || ca > 16 || cb < 1 || cb > 16 || cc < 1 ||
              cc > 16)
            embed_ok = false;
        }
    c.expect(embed_ok, "image family triple repeats a code");
    c.expect(count == 302, "expected 302 image facets, saw " + std::to_string(count));
  }

  // a full reduction pass on a solver-produced one-round table
  try {
    SolveResult res = solve(col3, 1, IdMode::increasing(5));
    c.expect(res.verdict == Verdict::sat, "no one-round table at R=5");
    if (res.verdict == Verdict::sat) {
      AlgorithmTable d1 = extract_algorithm(res, col3, 1, IdMode::increasing(5));
      AlgorithmTable d0 = reduce_once(d1);
      c.expect(d0.rounds == 0, "reduced table has wrong radius");
      mpz_class limit = 256;
      for (const auto& [v, l] : d0.entries) {
        mpz_class code(l);
        if (code < 1 || code > limit) c.expect(false, "code out of the 256-color range");
      }
    }
  } catch (const Error& e) {
    c.expect(false, std::string("reduction raised ") + errc_name(e.code()));
  }
}

void criterion_9_bounds() {
  Criterion c("9 (numeric bounds)");
  c.expect(tower_exact(4) == 65536, "tower(4)");
  c.expect(linial_bound(mpz_class(65536)) == 1, "bound at 65536");
  c.expect(linial_bound(tower_exact(5)) == 2, "bound at tower(5)");
  for (int h = 0; h <= 5; ++h)
    c.expect(log_star(tower_exact(h)) == h, "log* inversion at h=" + std::to_string(h));
}

void criterion_10_determinism() {
  Criterion c("10 (byte-level determinism)");
  LclTask t = builtin_task("3col-to-mis");

  // library level: serial vs parallel and run-to-run
  SolveOptions serial;
  serial.threads = 1;
  SolveOptions parallel;
  parallel.threads = 0;
  c.expect(solve_result_to_json(solve(t, 2, IdMode::none(), serial)) ==
               solve_result_to_json(solve(t, 2, IdMode::none(), parallel)),
           "solve differs across thread counts");
  CrossValidateOptions cv1, cvN;
  cv1.threads = 1;
  cvN.threads = 0;
  c.expect(cross_report_to_json(cross_validate(reference_linial_table(), t, 5, 10, cv1)) ==
               cross_report_to_json(cross_validate(reference_linial_table(), t, 5, 10, cvN)),
           "cross-validation differs across thread counts");

  // CLI level: repeated invocations and thread counts, bytes on disk
  std::string dir = "acceptance_tmp";
  c.expect(std::system(("mkdir -p " + dir).c_str()) == 0, "mkdir failed");
  {
    std::ofstream lin(dir + "/lin.json", std::ios::binary);
    lin << reference_linial_table().to_json();
  }
  struct Cmd {
    std::string args;
    std::string out;
    bool has_threads_flag;
  };
  std::vector<Cmd> cmds = {
      {"build --builtin 3col-to-mis --t 1 --out " + dir + "/p1.json --dot " + dir + "/p1.dot",
       dir + "/p1.json", false},
      {"solve --builtin 3col-to-mis --t 2 --json --out " + dir + "/w2.json",
       dir + "/w2.json", true},
      {"extract --builtin coloring:3 --t 1 --ids increasing --R 5 --out " + dir + "/d1.json",
       dir + "/d1.json", true},
      {"simulate --builtin 3col-to-mis --table " + dir + "/lin.json --n 5..9 --json --out " +
           dir + "/sim.json",
       dir + "/sim.json", true},
      {"reduce --table " + dir + "/d1.json --out " + dir + "/d0.json", dir + "/d0.json",
       true},
  };
  for (const auto& cmd : cmds) {
    int code1 = 0, code2 = 0, code3 = 0;
    std::string out1 = run_cli(cmd.args, code1);
    std::string file1 = slurp(cmd.out);
    std::string out2 = run_cli(cmd.args, code2);
    std::string file2 = slurp(cmd.out);
    c.expect(code1 == code2 && out1 == out2 && file1 == file2,
             "rerun differs: " + cmd.args);
    if (cmd.has_threads_flag) {
      std::string out3 = run_cli(cmd.args + " --threads 1", code3);
      std::string file3 = slurp(cmd.out);
      c.expect(code1 == code3 && out1 == out3 && file1 == file3,
               "thread count changes output: " + cmd.args);
    }
  }
}

}  // namespace

int main() {
  criterion_1_round_ladder();
  criterion_2_zero_round_ids();
  criterion_3_skeleton_split();
  criterion_4_restricted_promise();
  criterion_5_structure();
  criterion_6_oracle_matrix();
  criterion_7_simulation();
  criterion_8_round_reduction();
  criterion_9_bounds();
  criterion_10_determinism();
  if (failures) {
    std::printf("%d criterion(s) FAILED\n", failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
