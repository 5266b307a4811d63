// Compares the OpenMP kernels against the sequential reference paths
// (--threads 1) and checks that both produce identical results.

#include <chrono>
#include <iostream>

#include "lclcx/parallel.hpp"
#include "lclcx/reduction.hpp"
#include "lclcx/simulator.hpp"
#include "lclcx/solver.hpp"

using namespace lclcx;
using clock_type = std::chrono::steady_clock;

namespace {

double ms_since(clock_type::time_point t0) {
  return std::chrono::duration<double, std::milli>(clock_type::now() - t0).count();
}

void report(const std::string& name, double serial_ms, double parallel_ms, bool same) {
  std::cout << name << ": serial " << serial_ms << " ms, parallel " << parallel_ms
            << " ms, speedup " << (parallel_ms > 0 ? serial_ms / parallel_ms : 0.0)
            << (same ? "" : "  [MISMATCH]") << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  size_t n_hi = argc > 1 ? std::stoull(argv[1]) : 16;
  std::cout << "threads available: " << hardware_threads() << "\n";

  LclTask mis = builtin_task("3col-to-mis");
  AlgorithmTable linial = reference_linial_table();

  {
    CrossValidateOptions o1, oN;
    o1.threads = 1;
    oN.threads = 0;
    cross_validate(linial, mis, 5, std::min<size_t>(n_hi, 12), o1);  // warmup
    auto t0 = clock_type::now();
    auto r1 = cross_validate(linial, mis, 5, n_hi, o1);
    double s = ms_since(t0);
    t0 = clock_type::now();
    auto rN = cross_validate(linial, mis, 5, n_hi, oN);
    double p = ms_since(t0);
    bool same = cross_report_to_json(r1) == cross_report_to_json(rN);
    report("cross-validate n<=" + std::to_string(n_hi) + " (" +
               std::to_string(r1.instances) + " rings)",
           s, p, same);
  }

  {
    SolveOptions o1, oN;
    o1.threads = 1;
    oN.threads = 0;
    auto t0 = clock_type::now();
    auto r1 = solve(mis, 3, IdMode::none(), o1);
    double s = ms_since(t0);
    t0 = clock_type::now();
    auto rN = solve(mis, 3, IdMode::none(), oN);
    double p = ms_since(t0);
    report("solve t=3", s, p, solve_result_to_json(r1) == solve_result_to_json(rN));
  }

  {
    LclTask col3 = builtin_task("coloring:3");
    auto res = solve(col3, 1, IdMode::increasing(10), SolveOptions{});
    if (res.verdict == Verdict::sat) {
      AlgorithmTable d1 = extract_algorithm(res, col3, 1, IdMode::increasing(10));
      reduce_once(d1, 1);  // warmup
      auto t0 = clock_type::now();
      auto r1 = reduce_once(d1, 1);
      double s = ms_since(t0);
      t0 = clock_type::now();
      auto rN = reduce_once(d1, 0);
      double p = ms_since(t0);
      report("reduce R=10", s, p, r1.to_json() == rN.to_json());
    }
  }
  return 0;
}
