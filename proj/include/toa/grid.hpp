#pragma once

#include <complex>
#include <vector>

#include "toa/errors.hpp"

namespace toa::num {

using cplx = std::complex<double>;

// Sampling grid.  Nodes are strictly increasing but need not be uniform
// (induced energy grids and stretched tail grids are non-uniform);
// `spacing` is the nominal mean spacing (stop - start)/(n - 1).
struct Grid {
  double start = 0.0;
  double stop = 0.0;
  int n = 0;
  double spacing = 0.0;
  std::vector<double> nodes;

  static Grid uniform(double start, double stop, int n);

  // Symmetric grid on [-half_width, half_width] with an even node count,
  // so no node falls on 0.  Used for momentum grids.
  static Grid staggered_symmetric(double half_width, int n);

  // Geometrically stretched nodes from start to stop (both > 0),
  // n nodes, ratio nodes[j+1]/nodes[j] constant.
  static Grid geometric(double start, double stop, int n);

  static Grid from_nodes(std::vector<double> nodes);

  bool is_uniform(double rel_tol = 1e-9) const;
  double max_step() const;

  // Mirror through 0: nodes -> { -nodes[n-1], ..., -nodes[0] }.
  Grid reflected() const;

  void validate() const;
};

struct ComplexSamples {
  Grid grid;
  std::vector<cplx> values;

  ComplexSamples() = default;
  ComplexSamples(Grid g, std::vector<cplx> v);

  int size() const { return grid.n; }
};

// Pointwise |v|^2 of a sample set, as a real array.
std::vector<double> abs_squared(const ComplexSamples& s);

}  // namespace toa::num
