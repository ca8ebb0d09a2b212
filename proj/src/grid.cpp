#include "toa/grid.hpp"

#include <cmath>
#include <utility>

namespace toa::num {

Grid Grid::uniform(double start, double stop, int n) {
  if (n < 2) throw invalid_grid_error("Grid::uniform: n must be >= 2");
  if (!(stop > start)) throw invalid_grid_error("Grid::uniform: stop must exceed start");
  Grid g;
  g.start = start;
  g.stop = stop;
  g.n = n;
  g.spacing = (stop - start) / (n - 1);
  g.nodes.resize(n);
  if (start == -stop) {
    // Bitwise-mirrored nodes, so even/odd symmetries cancel exactly.
    for (int j = 0; j < n / 2; ++j) {
      g.nodes[n - 1 - j] = stop - j * g.spacing;
      g.nodes[j] = -g.nodes[n - 1 - j];
    }
    if (n % 2 == 1) g.nodes[n / 2] = 0.0;
  } else {
    for (int j = 0; j < n; ++j) g.nodes[j] = start + j * g.spacing;
    g.nodes.back() = stop;
  }
  return g;
}

Grid Grid::staggered_symmetric(double half_width, int n) {
  if (n < 2 || n % 2 != 0)
    throw invalid_grid_error("Grid::staggered_symmetric: n must be even and >= 2");
  if (!(half_width > 0.0))
    throw invalid_grid_error("Grid::staggered_symmetric: half_width must be > 0");
  // With even n the uniform nodes are +-h/2, +-3h/2, ...; none lands on 0.
  return uniform(-half_width, half_width, n);
}

Grid Grid::geometric(double start, double stop, int n) {
  if (n < 2) throw invalid_grid_error("Grid::geometric: n must be >= 2");
  if (!(start > 0.0) || !(stop > start))
    throw invalid_grid_error("Grid::geometric: need 0 < start < stop");
  std::vector<double> nodes(n);
  const double ratio = std::pow(stop / start, 1.0 / (n - 1));
  double x = start;
  for (int j = 0; j < n; ++j) {
    nodes[j] = x;
    x *= ratio;
  }
  nodes.back() = stop;
  return from_nodes(std::move(nodes));
}

Grid Grid::from_nodes(std::vector<double> nodes) {
  Grid g;
  g.n = static_cast<int>(nodes.size());
  g.nodes = std::move(nodes);
  if (g.n < 2) throw invalid_grid_error("Grid::from_nodes: n must be >= 2");
  g.start = g.nodes.front();
  g.stop = g.nodes.back();
  g.spacing = (g.stop - g.start) / (g.n - 1);
  g.validate();
  return g;
}

void Grid::validate() const {
  if (n < 2 || static_cast<int>(nodes.size()) != n)
    throw invalid_grid_error("Grid: node count mismatch or n < 2");
  if (!(spacing > 0.0)) throw invalid_grid_error("Grid: spacing must be > 0");
  for (int j = 1; j < n; ++j)
    if (!(nodes[j] > nodes[j - 1]))
      throw invalid_grid_error("Grid: nodes must be strictly increasing");
}

bool Grid::is_uniform(double rel_tol) const {
  for (int j = 1; j < n; ++j)
    if (std::abs((nodes[j] - nodes[j - 1]) - spacing) > rel_tol * spacing) return false;
  return true;
}

double Grid::max_step() const {
  double m = 0.0;
  for (int j = 1; j < n; ++j) m = std::max(m, nodes[j] - nodes[j - 1]);
  return m;
}

Grid Grid::reflected() const {
  std::vector<double> r(n);
  for (int j = 0; j < n; ++j) r[j] = -nodes[n - 1 - j];
  return from_nodes(std::move(r));
}

ComplexSamples::ComplexSamples(Grid g, std::vector<cplx> v)
    : grid(std::move(g)), values(std::move(v)) {
  grid.validate();
  if (static_cast<int>(values.size()) != grid.n)
    throw invalid_grid_error("ComplexSamples: values length must equal grid.n");
}

std::vector<double> abs_squared(const ComplexSamples& s) {
  std::vector<double> out(s.values.size());
  for (size_t j = 0; j < s.values.size(); ++j) out[j] = std::norm(s.values[j]);
  return out;
}

}  // namespace toa::num
