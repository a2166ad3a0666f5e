// Compares the serial reference engine against the sweep engine (serial and
// OpenMP) on representative distance queries.

#include <chrono>
#include <cstdio>
#include <string>

#include "pbm/bounds.hpp"
#include "pbm/brp.hpp"
#include "pbm/metric_reference.hpp"
#include "pbm/termgen.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

double now() {
#ifdef _OPENMP
  return omp_get_wtime();
#else
  return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
      .count();
#endif
}

struct Workload {
  std::string name;
  pbm::TermPtr left, right;
  unsigned depth;
  pbm::Rat lambda;
};

void run(const Workload& w) {
  using namespace pbm;
  MetricOptions serial;
  serial.parallel = false;
  MetricOptions parallel;
  parallel.parallel = true;

  double t0 = now();
  Rat ref = referenceUptoK(w.left, w.right, w.depth, w.lambda);
  double t1 = now();
  Rat serialV = uptoK(w.left, w.right, w.depth, w.lambda, serial);
  double t2 = now();
  Rat parallelV = uptoK(w.left, w.right, w.depth, w.lambda, parallel);
  double t3 = now();

  bool agree = ref == serialV && serialV == parallelV;
  std::printf("%-28s d_%-2u  ref %8.3fs   sweep %8.3fs   omp %8.3fs   %s\n", w.name.c_str(),
              w.depth, t1 - t0, t2 - t1, t3 - t2, agree ? "agree" : "MISMATCH");
}

}  // namespace

int main() {
  using namespace pbm;

#ifdef _OPENMP
  std::printf("OpenMP: %d threads\n", omp_get_max_threads());
#else
  std::printf("OpenMP: disabled at build time\n");
#endif

  BrpParams brp;
  brp.N = 2;
  brp.T = 1;
  brp.p = Rat(1, 10);
  brp.q = Rat(1, 10);
  run({"brp N=2 spec vs impl", buildBrp(brp.asSpec()), buildBrp(brp), 20, Rat(1)});

  Witnesses bw = witness(CombinatorId::simple(CombKind::Bang), Rat(4, 5), {Rat(1, 4)});
  run({"bang witnesses", mkBang(bw.left[0]), mkBang(bw.right[0]), 7, Rat(4, 5)});

  std::vector<Action> alphabet{"a", "b"};
  TermPtr l = mkInterleave(randomTerm(11, 4, alphabet), randomTerm(12, 3, alphabet));
  TermPtr r = mkInterleave(randomTerm(13, 4, alphabet), randomTerm(14, 3, alphabet));
  run({"random interleavings", l, r, 12, Rat(4, 5)});

  return 0;
}
