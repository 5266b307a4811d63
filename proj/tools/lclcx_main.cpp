// Command-line front end: build complexes, decide round solvability,
// extract and simulate algorithm tables, run the round reduction, and
// evaluate the iterated-log lower bound.
//
// Exit codes: 0 SAT/PASS/success, 1 UNSAT/FAIL, 2 error, 3 unknown.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "lclcx/errors.hpp"
#include "lclcx/reduction.hpp"
#include "lclcx/simulator.hpp"
#include "lclcx/solver.hpp"

using namespace lclcx;

namespace {

struct TaskArgs {
  std::string builtin;
  std::string task_file;
};

void add_task_args(CLI::App* cmd, TaskArgs& args) {
  auto* b = cmd->add_option("--builtin", args.builtin, "builtin task name");
  auto* f = cmd->add_option("--task", args.task_file, "task description file (JSON)");
  b->excludes(f);
}

LclTask load_task(const TaskArgs& args) {
  if (!args.builtin.empty()) return builtin_task(args.builtin);
  if (args.task_file.empty())
    fail(Errc::semantic_error, "a task is required (--builtin or --task)");
  std::ifstream in(args.task_file);
  if (!in) fail(Errc::semantic_error, "cannot open task file: " + args.task_file);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_task(ss.str());
}

IdMode parse_mode(const std::string& ids, int R, int t, int degree) {
  if (ids == "none") return IdMode::none();
  if (R == 0) R = static_cast<int>(view_bound(degree, t + 1));  // documented default
  if (ids == "arbitrary") return IdMode::arbitrary(R);
  if (ids == "increasing") return IdMode::increasing(R);
  fail(Errc::semantic_error, "unknown ID mode: " + ids);
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::semantic_error, "cannot write " + path);
  out << content;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::semantic_error, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool parse_range(const std::string& s, size_t& lo, size_t& hi) {
  auto dots = s.find("..");
  try {
    if (dots == std::string::npos) {
      lo = hi = std::stoull(s);
    } else {
      lo = std::stoull(s.substr(0, dots));
      hi = std::stoull(s.substr(dots + 2));
    }
  } catch (...) {
    return false;
  }
  return lo >= 3 && lo <= hi;
}

int run_cli(int argc, char** argv) {
  CLI::App app{"local complexes for LCL tasks on rings"};
  app.require_subcommand(1);

  // build ------------------------------------------------------------
  auto* build = app.add_subcommand("build", "build input/output/protocol complexes");
  TaskArgs build_task;
  add_task_args(build, build_task);
  int build_t = 0;
  std::string build_ids = "none", build_side = "protocol";
  int build_R = 0;
  std::string build_out, build_dot;
  bool build_json = false;
  build->add_option("--t", build_t, "number of rounds")->check(CLI::NonNegativeNumber);
  build->add_option("--ids", build_ids, "none|arbitrary|increasing");
  build->add_option("--R", build_R, "ID range {1..R}; default is the ball bound N(d,t+1)");
  build->add_option("--side", build_side, "input|output|protocol (default protocol)");
  build->add_option("--out", build_out, "write complex JSON here");
  build->add_option("--dot", build_dot, "write 1-skeleton DOT here");
  build->add_flag("--json", build_json, "machine-readable stdout");

  // solve / solve-skeleton --------------------------------------------
  struct SolveArgs {
    TaskArgs task;
    int t = 0;
    std::string ids = "none";
    int R = 0;
    uint64_t max_nodes = 10'000'000;
    int threads = 0;
    std::string out;
    bool json = false;
  };
  SolveArgs sargs, skargs;
  auto add_solve_options = [](CLI::App* cmd, SolveArgs& a) {
    cmd->add_option("--t", a.t, "number of rounds")->check(CLI::NonNegativeNumber);
    cmd->add_option("--ids", a.ids, "none|arbitrary|increasing")->capture_default_str();
    cmd->add_option("--R", a.R,
                    "ID range {1..R}; defaults to the ball bound N(d,t+1). The classic "
                    "pigeonhole argument for the zero-round case needs R >= 24; exact "
                    "search already shows R = 4 suffices for impossibility.");
    cmd->add_option("--max-nodes", a.max_nodes, "search node cap per component")
        ->capture_default_str();
    cmd->add_option("--threads", a.threads, "0 = machine default, 1 = sequential")
        ->capture_default_str();
    cmd->add_option("--out", a.out, "write the solve result JSON here");
    cmd->add_flag("--json", a.json, "machine-readable stdout");
  };
  auto* solve_cmd = app.add_subcommand("solve", "decide t-round solvability");
  add_task_args(solve_cmd, sargs.task);
  add_solve_options(solve_cmd, sargs);
  auto* skel_cmd = app.add_subcommand("solve-skeleton", "decide the 1-skeleton relaxation");
  add_task_args(skel_cmd, skargs.task);
  add_solve_options(skel_cmd, skargs);

  // extract ------------------------------------------------------------
  auto* extract_cmd = app.add_subcommand("extract", "solve and export an algorithm table");
  SolveArgs eargs;
  add_task_args(extract_cmd, eargs.task);
  add_solve_options(extract_cmd, eargs);

  // simulate -----------------------------------------------------------
  auto* sim_cmd = app.add_subcommand("simulate", "run a table on rings and check legality");
  TaskArgs sim_task;
  add_task_args(sim_cmd, sim_task);
  std::string sim_table, sim_range = "5..8", sim_out;
  uint64_t sim_trials = 1000, sim_seed = 0x5eed;
  int sim_threads = 0, sim_pool = 0;
  bool sim_json = false;
  sim_cmd->add_option("--table", sim_table, "algorithm table JSON")->required();
  sim_cmd->add_option("--n", sim_range, "ring size or range lo..hi");
  sim_cmd->add_option("--pool", sim_pool, "ID pool size (default: table's R)");
  sim_cmd->add_option("--trials", sim_trials, "samples per n when not exhaustive");
  sim_cmd->add_option("--seed", sim_seed, "sampling seed");
  sim_cmd->add_option("--threads", sim_threads, "0 = machine default, 1 = sequential");
  sim_cmd->add_option("--out", sim_out, "write the report JSON here");
  sim_cmd->add_flag("--json", sim_json, "machine-readable stdout");

  // reduce ---------------------------------------------------------------
  auto* reduce_cmd = app.add_subcommand("reduce", "one round-elimination step on a table");
  std::string red_table, red_out;
  int red_threads = 0;
  bool red_json = false;
  reduce_cmd->add_option("--table", red_table, "increasing-ID coloring table JSON")->required();
  reduce_cmd->add_option("--out", red_out, "write the reduced table JSON here");
  reduce_cmd->add_option("--threads", red_threads, "0 = machine default, 1 = sequential");
  reduce_cmd->add_flag("--json", red_json, "machine-readable stdout");

  // bound ------------------------------------------------------------------
  auto* bound_cmd = app.add_subcommand("bound", "iterated-log coloring lower bound");
  std::string bound_n;
  bool bound_json = false;
  bound_cmd->add_option("n", bound_n, "ring size (decimal)")->required();
  bound_cmd->add_flag("--json", bound_json, "machine-readable stdout");

  // export -------------------------------------------------------------------
  auto* export_cmd = app.add_subcommand("export", "convert a stored complex");
  std::string exp_in, exp_dot, exp_json_path;
  export_cmd->add_option("--in", exp_in, "complex JSON file")->required();
  export_cmd->add_option("--dot", exp_dot, "write DOT here");
  export_cmd->add_option("--out", exp_json_path, "rewrite canonical JSON here");

  CLI11_PARSE(app, argc, argv);

  if (*build) {
    LclTask task = load_task(build_task);
    IdMode mode = parse_mode(build_ids, build_R, build_t, task.degree);
    Complex k = build_side == "input"    ? build_input_complex(task)
                : build_side == "output" ? build_output_complex(task)
                : build_side == "protocol"
                    ? build_protocol_complex(task, build_t, mode)
                    : (fail(Errc::semantic_error, "unknown side: " + build_side), Complex{});
    auto comps = connected_components(k);
    std::ostringstream line;
    line << "vertices=" << k.vertices().size() << " facets=" << k.facets().size()
         << " components=" << comps.size();
    if (!build_out.empty()) write_file(build_out, complex_to_json(k));
    if (!build_dot.empty()) write_file(build_dot, complex_to_dot(k));
    if (build_json) {
      nlohmann::json j;
      j["vertices"] = k.vertices().size();
      j["facets"] = k.facets().size();
      j["components"] = comps.size();
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << line.str() << "\n";
    }
    return 0;
  }

  auto run_solve = [&](SolveArgs& a, bool skeleton, bool extract_table) {
    LclTask task = load_task(a.task);
    IdMode mode = parse_mode(a.ids, a.R, a.t, task.degree);
    SolveOptions opts;
    opts.max_nodes = a.max_nodes;
    opts.threads = a.threads;
    SolveResult res =
        skeleton ? solve_skeleton(task, a.t, mode, opts) : solve(task, a.t, mode, opts);
    if (!a.out.empty()) {
      if (extract_table && res.verdict == Verdict::sat)
        write_file(a.out, extract_algorithm(res, task, a.t, mode).to_json());
      else
        write_file(a.out, solve_result_to_json(res));
    }
    if (a.json) {
      std::cout << solve_result_to_json(res);
    } else {
      std::string v = verdict_name(res.verdict);
      for (auto& c : v) c = static_cast<char>(toupper(c));
      std::cout << v << " views=" << res.stats.views << " components="
                << res.stats.components.size() << " nodes=" << res.stats.nodes << "\n";
    }
    switch (res.verdict) {
      case Verdict::sat: return 0;
      case Verdict::unsat: return 1;
      case Verdict::unknown: return 3;
    }
    return 3;
  };

  if (*solve_cmd) return run_solve(sargs, false, false);
  if (*skel_cmd) return run_solve(skargs, true, false);
  if (*extract_cmd) {
    if (eargs.out.empty()) fail(Errc::semantic_error, "extract needs --out");
    return run_solve(eargs, false, true);
  }

  if (*sim_cmd) {
    LclTask task = load_task(sim_task);
    AlgorithmTable table = AlgorithmTable::from_json(read_file(sim_table));
    size_t lo = 0, hi = 0;
    if (!parse_range(sim_range, lo, hi))
      fail(Errc::semantic_error, "bad ring range: " + sim_range);
    if (lo < static_cast<size_t>(2 * table.rounds + 1))
      fail(Errc::semantic_error, "rings must satisfy n >= 2t+1 for a radius-" +
                                     std::to_string(table.rounds) + " table");
    CrossValidateOptions opts;
    opts.trials = sim_trials;
    opts.seed = sim_seed;
    opts.threads = sim_threads;
    opts.id_pool = sim_pool;
    CrossValidateReport rep = cross_validate(table, task, lo, hi, opts);
    if (!sim_out.empty()) write_file(sim_out, cross_report_to_json(rep));
    if (sim_json)
      std::cout << cross_report_to_json(rep);
    else
      std::cout << (rep.pass ? "PASS" : "FAIL") << " instances=" << rep.instances
                << " illegal=" << rep.illegal << (rep.sampled ? " (sampled)" : "") << "\n";
    return rep.pass ? 0 : 1;
  }

  if (*reduce_cmd) {
    AlgorithmTable table = AlgorithmTable::from_json(read_file(red_table));
    AlgorithmTable reduced = reduce_once(table, red_threads);
    if (!red_out.empty()) write_file(red_out, reduced.to_json());
    if (red_json) {
      nlohmann::json j;
      j["rounds"] = reduced.rounds;
      j["colors_used"] = reduced.out_labels.size();
      j["views"] = reduced.entries.size();
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << "reduced to t=" << reduced.rounds << " colors_used="
                << reduced.out_labels.size() << " views=" << reduced.entries.size() << "\n";
    }
    return 0;
  }

  if (*bound_cmd) {
    mpz_class n;
    if (n.set_str(bound_n, 10) != 0 || n < 3)
      fail(Errc::semantic_error, "n must be a decimal integer >= 3");
    int ls = log_star(n);
    int b = linial_bound(n);
    std::ostringstream trace;
    trace << "log*(n)=" << ls << " since tower(" << ls << ")"
          << (ls <= 5 ? " = " + tower_exact(ls).get_str() : "") << " >= n"
          << "; bound = ceil(" << ls << "/2) - 1";
    if (bound_json) {
      nlohmann::json j;
      j["bound"] = b;
      j["log_star"] = ls;
      j["trace"] = trace.str();
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << b << "\n" << trace.str() << "\n";
    }
    return 0;
  }

  if (*export_cmd) {
    Complex k = complex_from_json(read_file(exp_in));
    if (!exp_dot.empty()) write_file(exp_dot, complex_to_dot(k));
    if (!exp_json_path.empty()) write_file(exp_json_path, complex_to_json(k));
    std::cout << "vertices=" << k.vertices().size() << " facets=" << k.facets().size()
              << "\n";
    return 0;
  }
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  // LCLCX_VERBOSE only adds stderr timing; semantics flow through flags.
  const char* verbose = std::getenv("LCLCX_VERBOSE");
  auto t0 = std::chrono::steady_clock::now();
  try {
    int code = run_cli(argc, argv);
    if (verbose && *verbose && *verbose != '0')
      std::cerr << "elapsed "
                << std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - t0)
                       .count()
                << " ms\n";
    return code;
  } catch (const Error& e) {
    std::cerr << "error: " << errc_name(e.code()) << ": " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
