#include "toa/finite_diff.hpp"

#include <algorithm>
#include <cmath>

namespace toa::num {

// Fornberg's recurrence (Math. Comp. 51, 1988).  Returns the weights w_j such
// that f^(m)(z) ~= sum_j w_j f(x_j), exact for polynomials up to degree n-1.
std::vector<double> fd_weights(double z, std::span<const double> x, int m) {
  const int n = static_cast<int>(x.size());
  if (n < m + 1) throw invalid_param_error("fd_weights: need at least m+1 nodes");
  std::vector<std::vector<double>> c(n, std::vector<double>(m + 1, 0.0));
  double c1 = 1.0;
  double c4 = x[0] - z;
  c[0][0] = 1.0;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[i] - z;
    for (int j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k)
          c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n);
  for (int j = 0; j < n; ++j) w[j] = c[j][m];
  return w;
}

namespace {

cplx apply_stencil(const ComplexSamples& s, int first, std::span<const double> w) {
  cplx acc = 0.0;
  for (size_t k = 0; k < w.size(); ++k) acc += w[k] * s.values[first + k];
  return acc;
}

}  // namespace

ComplexSamples derivative(const ComplexSamples& s) {
  const Grid& g = s.grid;
  g.validate();
  if (g.n < 5) throw invalid_grid_error("derivative: need n >= 5");
  if (!g.is_uniform(1e-8))
    throw invalid_grid_error("derivative: uniform grid required");

  const double h = g.spacing;
  const int n = g.n;
  const int edge_pts = std::min(6, n);  // 6-point one-sided (5th order) if possible
  std::vector<double> offs(edge_pts);

  std::vector<cplx> out(n);

  // Interior: 4th-order central.
  static const double c4[5] = {1.0 / 12, -8.0 / 12, 0.0, 8.0 / 12, -1.0 / 12};
  for (int j = 2; j < n - 2; ++j) {
    cplx acc = 0.0;
    for (int k = 0; k < 5; ++k) acc += c4[k] * s.values[j - 2 + k];
    out[j] = acc / h;
  }

  // Edges: one-sided stencils from the Fornberg weights.
  for (int k = 0; k < edge_pts; ++k) offs[k] = k * h;
  for (int j = 0; j < std::min(2, n); ++j) {
    auto w = fd_weights(j * h, offs, 1);
    out[j] = apply_stencil(s, 0, w);
  }
  for (int j = std::max(n - 2, 2); j < n; ++j) {
    auto w = fd_weights((j - (n - edge_pts)) * h, offs, 1);
    out[j] = apply_stencil(s, n - edge_pts, w);
  }

  return {g, std::move(out)};
}

namespace {

cplx end_derivative(const ComplexSamples& s, bool front) {
  const Grid& g = s.grid;
  if (g.n < 5) throw invalid_grid_error("end_derivative: need n >= 5");
  const double h = g.spacing;
  double offs[5] = {0, h, 2 * h, 3 * h, 4 * h};
  if (front) {
    auto w = fd_weights(0.0, offs, 1);
    return apply_stencil(s, 0, w);
  }
  auto w = fd_weights(4 * h, offs, 1);
  return apply_stencil(s, g.n - 5, w);
}

}  // namespace

cplx end_derivative_front(const ComplexSamples& s) { return end_derivative(s, true); }
cplx end_derivative_back(const ComplexSamples& s) { return end_derivative(s, false); }

}  // namespace toa::num
