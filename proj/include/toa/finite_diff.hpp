#pragma once

#include <span>
#include <vector>

#include "toa/grid.hpp"

namespace toa::num {

// Fornberg weights for the m-th derivative at z from nodes x (any spacing).
std::vector<double> fd_weights(double z, std::span<const double> x, int m);

// First derivative of uniformly sampled data: 4th-order central stencils in
// the interior, 6-point one-sided stencils at the edges.  Requires n >= 5.
ComplexSamples derivative(const ComplexSamples& s);

// First derivative at the two end nodes only (5-point one-sided).
// Used for the Euler-Maclaurin endpoint corrections.
cplx end_derivative_front(const ComplexSamples& s);
cplx end_derivative_back(const ComplexSamples& s);

}  // namespace toa::num
