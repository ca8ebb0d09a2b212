#pragma once

#include <functional>
#include <span>

#include "toa/constants.hpp"
#include "toa/distribution.hpp"
#include "toa/report.hpp"

namespace toa::halfline {

using num::cplx;
using num::ComplexSamples;
using num::Grid;

// Normalized state on the position half-line [0, xmax].  in_domain marks
// psi(0) = 0 (membership in D(p) up to the sampling resolution).
struct HalfLineState {
  PhysicalConstants constants;
  ComplexSamples samples;
  bool in_domain = false;
};

// Sample, normalize and classify a wavefunction given as a callable.
HalfLineState make_state(const std::function<cplx(double)>& psi,
                         const PhysicalConstants& constants, double xmax, int n);

// The reference family psi(x) = 2 lambda^(3/2) x e^{-lambda x} (unit norm,
// psi(0) = 0, psi'(0) = 2 lambda^(3/2) != 0).
HalfLineState exponential_state(double lambda, const PhysicalConstants& constants,
                                double xmax = 0.0, int n = 0);

// Momentum density of the half-line POVM:
//   Pi(p) = | (2 pi hbar)^{-1/2} integral_0^xmax e^{-ipx/hbar} psi(x) dx |^2,
// i.e. the full-line momentum density of Theta(x) psi.  Guards: the x grid
// must resolve the largest requested |p| (phase advance per step <= pi), and
// every p cell must either satisfy the Nyquist bound dp * xmax / hbar <= pi
// or lie in the far-field regime (dp <= 0.05 |p| and truncation ringing below
// 1e-10 of the density peak), which is what stretched tail grids rely on.
Distribution momentum_density(const HalfLineState& state, const Grid& p_grid);

// n-th moment of a sampled density by quadrature.  The density must have
// decayed below 1e-12 of its peak at the grid edges; otherwise a tail error
// reporting the measured edge envelope (and the pⁿ-weighted edge integrand)
// is raised.
double moment(const Distribution& dist, int n);

// <psi| p^n psi> with p = -i hbar d/dx applied by finite differences; the
// imaginary part is the anomaly signal for n = 3 when psi'(0) != 0.
cplx operator_moment(const HalfLineState& state, int n);

// Smeared non-orthogonality identity of the generalized eigenfunctions: for
// window functions f, g on a common momentum grid,
//   < int f psi_p' dp', int g psi_p dp >  =  1/2 int conj(f) g dp
//       + (i / 2 pi) P-int-int conj(f)(p') g(p) / (p - p') dp' dp.
// Both sides are computed numerically; the report carries their relative
// difference (tolerance 1e-4).
CheckReport overlap_kernel_check(const ComplexSamples& f, const ComplexSamples& g,
                                 const PhysicalConstants& constants,
                                 double xmax = 60.0, int nx = 24001);

}  // namespace toa::halfline
