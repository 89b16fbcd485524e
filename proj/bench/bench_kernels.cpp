// Serial versus OpenMP kernels. Usage: ovoid_bench [q ...] (default 7 9 11).
#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <vector>

#include "ovoid/search.hpp"
#include "ovoid/sl2.hpp"

using namespace ovoid;

namespace {

template <class F>
double seconds(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void row(const char* kernel, int q, double serial, double parallel, bool same) {
  std::printf("%-18s q=%-3d serial %9.4fs  omp %9.4fs  speedup %5.2f  %s\n", kernel, q, serial, parallel,
              parallel > 0 ? serial / parallel : 0.0, same ? "match" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> qs;
  for (int i = 1; i < argc; ++i) qs.push_back(std::atoi(argv[i]));
  if (qs.empty()) qs = {7, 9, 11};
  const int threads = omp_get_max_threads();
  std::printf("threads: %d\n", threads);

  for (int q : qs) {
    const Field F = Field::make(q);
    const auto pts = enumerate_sl2(F);

    std::vector<Bitset> a, b;
    const double ts = seconds([&] { a = build_adjacency_serial(F, pts); });
    const double tp = seconds([&] { b = build_adjacency_omp(F, pts); });
    row("adjacency", q, ts, tp, a == b);

    CriteriaSweep cs, cp;
    const double ss = seconds([&] { cs = sweep_criteria_serial(F, pts); });
    const double sp = seconds([&] { cp = sweep_criteria_omp(F, pts); });
    row("criteria sweep", q, ss, sp,
        cs.pairs == cp.pairs && cs.disagreements == cp.disagreements && cs.collinear_pairs == cp.collinear_pairs);

    if (q <= 9) {
      const SearchProblem P = build_problem(F);
      SearchOptions o1, on;
      on.jobs = threads;
      SearchResult r1, rn;
      const double s1 = seconds([&] { r1 = search_all(P, o1); });
      const double sn = seconds([&] { rn = search_all(P, on); });
      row("search", q, s1, sn, r1.solutions == rn.solutions && r1.stats.nodes == rn.stats.nodes);
    }
  }
}
