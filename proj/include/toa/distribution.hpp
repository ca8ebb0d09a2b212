#pragma once

#include <string>
#include <vector>

#include "toa/grid.hpp"

namespace toa {

// Sampled probability density (over momentum, time, ...) with its
// normalization bookkeeping.
struct Distribution {
  num::Grid grid;
  std::vector<double> density;  // >= 0 elementwise
  double total = 0.0;           // quadrature of density over the grid

  struct Meta {
    double plus_total = 0.0;    // per-channel share, when channels exist
    double minus_total = 0.0;
    std::vector<double> plus_density;   // per-channel contributions
    std::vector<double> minus_density;
    double max_phase_step = 0.0;  // worst phase advance per step seen
    double edge_envelope = 0.0;   // max density at the grid edges / peak
    std::string source;
  } meta;

  double max_density() const {
    double m = 0.0;
    for (double d : density) m = std::max(m, d);
    return m;
  }
};

}  // namespace toa
