// Times the oscillatory transform kernel: serial reference vs the OpenMP
// version, on Kijowski-density workloads of growing size.  Run manually:
//
//   ./build/bench/toa_bench [repeats]
//
// TOA_THREADS caps the parallel team as everywhere else.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <vector>

#include "toa/arrival.hpp"
#include "toa/finite_diff.hpp"
#include "toa/oscillatory.hpp"
#include "toa/parallel.hpp"
#include "toa/states.hpp"

using namespace toa;
using num::cplx;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  const int repeats = argc > 1 ? std::atoi(argv[1]) : 3;

  std::printf("threads available: %d\n", par::max_threads());
  std::printf("%8s %8s %12s %12s %9s %9s\n", "n_p", "n_t", "serial[s]", "openmp[s]",
              "speedup", "max|diff|");

  for (const auto [np, nt] : std::vector<std::pair<int, int>>{
           {2048, 1201}, {4096, 2401}, {8192, 4801}, {16384, 4801}}) {
    auto st = states::build_state({{5.0, 0.2, -10.0, 1.0}}, {}, 10.0, np);
    const auto chi = arrival::positive_half(st);

    std::vector<cplx> weighted(chi.grid.n);
    std::vector<double> phase(chi.grid.n);
    for (int j = 0; j < chi.grid.n; ++j) {
      weighted[j] = std::sqrt(chi.grid.nodes[j]) * chi.values[j];
      phase[j] = chi.grid.nodes[j] * chi.grid.nodes[j];
    }
    num::ComplexSamples f(chi.grid, std::move(weighted));
    num::osc::PhasedSamples ps;
    ps.grid = &f.grid;
    ps.values = f.values;
    ps.phase = phase;
    ps.dphase_front = 2.0 * chi.grid.start;
    ps.dphase_back = 2.0 * chi.grid.stop;
    ps.df_front = num::end_derivative_front(f);
    ps.df_back = num::end_derivative_back(f);

    std::vector<double> c(nt);
    for (int k = 0; k < nt; ++k) c[k] = (-10.0 + 24.0 * k / (nt - 1)) / 2.0;

    double t_serial = 1e300, t_parallel = 1e300;
    std::vector<cplx> ref, par_out;
    for (int r = 0; r < repeats; ++r) {
      auto t0 = Clock::now();
      ref = num::osc::transform_serial(ps, c);
      t_serial = std::min(t_serial, seconds_since(t0));

      t0 = Clock::now();
      par_out = num::osc::transform(ps, c);
      t_parallel = std::min(t_parallel, seconds_since(t0));
    }

    double max_diff = 0.0;
    for (size_t k = 0; k < ref.size(); ++k)
      max_diff = std::max(max_diff, std::abs(ref[k] - par_out[k]));

    std::printf("%8d %8d %12.4f %12.4f %8.2fx %9.1e\n", np, nt, t_serial, t_parallel,
                t_serial / t_parallel, max_diff);
  }
  return 0;
}
