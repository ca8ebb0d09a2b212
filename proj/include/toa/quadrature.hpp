#pragma once

#include <span>
#include <vector>

#include "toa/grid.hpp"

namespace toa::num {

// Composite quadrature of sampled data.  On uniform grids this is the
// trapezoid rule with the Euler-Maclaurin endpoint correction (a higher-order
// composite rule: exact for constants and linears, O(h^4) boundary error for
// smooth integrands); on non-uniform grids it is the plain trapezoid.
cplx integrate(const ComplexSamples& s);
double integrate(const Grid& g, std::span<const double> values);

// Half-line Fourier transform  (1/sqrt(2 pi hbar)) * integral f(E) e^{-iEt/hbar} dE
// over the sample window.  Raises a resolution error when the phase advance
// per grid step |t| * dE / hbar exceeds pi.
cplx half_fourier(const ComplexSamples& s, double t, double hbar);
std::vector<cplx> half_fourier_many(const ComplexSamples& s, std::span<const double> t,
                                    double hbar);

// Principal value integral  P int f(x)/(x - s0) dx  on a grid symmetric about
// s0.  Symmetric nodes are paired so the singularity cancels:
//     P int = int_0^U g(u) du,   g(u) = (f(s0+u) - f(s0-u))/u,
// with g(0) = 2 f'(s0) filled in by Richardson extrapolation from the first
// two pair samples.  An even f about s0 gives exactly 0 by construction.
cplx principal_value(const ComplexSamples& f, double s0);

}  // namespace toa::num
