#pragma once

#include <span>
#include <vector>

#include "toa/grid.hpp"

namespace toa::num::osc {

// Dense evaluation of oscillatory sums
//
//     S(c) = integral f(u) exp(-i c phi(u)) du
//
// over a uniform sample grid, one output per requested c.  The rule is the
// trapezoid with the Euler-Maclaurin endpoint correction
//
//     S ~= h * sum'' g_j - h^2/12 [g'(b) - g'(a)],   g = f exp(-i c phi),
//
// which keeps the boundary error at O(h^4) for any phase the grid resolves.
// Resolution is the caller's contract: refine the grid until the phase
// advance per step, |c| * max|dphi|, is inside the guard (pi/4 for the
// stated accuracy, hard failure beyond pi).
struct PhasedSamples {
  const Grid* grid = nullptr;           // uniform
  std::span<const cplx> values;         // f_j
  std::span<const double> phase;        // phi_j, strictly monotone not required
  double dphase_front = 1.0;            // phi' at grid start
  double dphase_back = 1.0;             // phi' at grid end
  cplx df_front = 0.0;                  // f' at grid start
  cplx df_back = 0.0;                   // f' at grid end
};

// Largest phase advance per grid step over all requested c.
double max_phase_step(const PhasedSamples& s, std::span<const double> c);

cplx transform_point(const PhasedSamples& s, double c);

// Serial reference implementation (kept verbatim for the equivalence tests
// and the benchmark).
std::vector<cplx> transform_serial(const PhasedSamples& s, std::span<const double> c);

// Production entry point: OpenMP over output points, each point evaluated by
// the same serial routine, so results are bitwise equal to transform_serial
// for every thread count.
std::vector<cplx> transform(const PhasedSamples& s, std::span<const double> c);

// Convenience: fill a PhasedSamples for a plain Fourier phase phi(u) = u,
// estimating the endpoint derivatives of f from the samples.
PhasedSamples linear_phase(const ComplexSamples& s);

}  // namespace toa::num::osc
