#include "toa/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "toa/finite_diff.hpp"
#include "toa/oscillatory.hpp"

namespace toa::num {

namespace {

template <typename T>
T trapezoid(const Grid& g, std::span<const T> v) {
  T acc{};
  for (int j = 1; j < g.n; ++j)
    acc += 0.5 * (g.nodes[j] - g.nodes[j - 1]) * (v[j] + v[j - 1]);
  return acc;
}

}  // namespace

cplx integrate(const ComplexSamples& s) {
  s.grid.validate();
  if (s.grid.n < 2) throw invalid_grid_error("integrate: n < 2");
  cplx out = trapezoid<cplx>(s.grid, s.values);
  if (s.grid.is_uniform(1e-9) && s.grid.n >= 5) {
    const double h = s.grid.spacing;
    out -= h * h / 12.0 * (end_derivative_back(s) - end_derivative_front(s));
  }
  return out;
}

double integrate(const Grid& g, std::span<const double> values) {
  g.validate();
  if (static_cast<int>(values.size()) != g.n)
    throw invalid_grid_error("integrate: values length mismatch");
  double out = trapezoid<double>(g, values);
  if (g.is_uniform(1e-9) && g.n >= 5) {
    std::vector<cplx> cv(values.begin(), values.end());
    ComplexSamples cs(g, std::move(cv));
    const double h = g.spacing;
    out -= h * h / 12.0 *
           (end_derivative_back(cs).real() - end_derivative_front(cs).real());
  }
  return out;
}

std::vector<cplx> half_fourier_many(const ComplexSamples& s, std::span<const double> t,
                                    double hbar) {
  s.grid.validate();
  if (!(hbar > 0.0)) throw invalid_param_error("half_fourier: hbar must be > 0");
  const double scale = 1.0 / std::sqrt(2.0 * std::numbers::pi * hbar);

  std::vector<double> c(t.size());
  for (size_t k = 0; k < t.size(); ++k) c[k] = t[k] / hbar;

  double cmax = 0.0;
  for (double ck : c) cmax = std::max(cmax, std::abs(ck));
  const double step = cmax * s.grid.max_step();
  if (step > std::numbers::pi)
    throw resolution_error("half_fourier: phase advance per step " +
                           std::to_string(step) + " exceeds pi; refine the grid");

  std::vector<cplx> out(t.size());
  if (s.grid.is_uniform(1e-9) && s.grid.n >= 5) {
    auto ps = osc::linear_phase(s);
    out = osc::transform(ps, c);
  } else {
    // Non-uniform window: plain trapezoid per output point.
    for (size_t k = 0; k < t.size(); ++k) {
      cplx acc = 0.0;
      for (int j = 1; j < s.grid.n; ++j) {
        const cplx g0 = s.values[j - 1] * std::polar(1.0, -c[k] * s.grid.nodes[j - 1]);
        const cplx g1 = s.values[j] * std::polar(1.0, -c[k] * s.grid.nodes[j]);
        acc += 0.5 * (s.grid.nodes[j] - s.grid.nodes[j - 1]) * (g0 + g1);
      }
      out[k] = acc;
    }
  }
  for (auto& v : out) v *= scale;
  return out;
}

cplx half_fourier(const ComplexSamples& s, double t, double hbar) {
  const double ts[1] = {t};
  return half_fourier_many(s, ts, hbar)[0];
}

cplx principal_value(const ComplexSamples& f, double s0) {
  const Grid& g = f.grid;
  g.validate();

  // Locate the pairing: every node above s0 must mirror to a node below it.
  const double tol = 1e-9 * g.spacing;
  std::vector<int> upper;
  int center = -1;
  for (int j = 0; j < g.n; ++j) {
    if (std::abs(g.nodes[j] - s0) < tol) {
      center = j;
    } else if (g.nodes[j] > s0) {
      upper.push_back(j);
    }
  }
  if (upper.empty()) throw precondition_error("principal_value: no nodes above s0");

  const int n_lower = g.n - static_cast<int>(upper.size()) - (center >= 0 ? 1 : 0);
  if (n_lower != static_cast<int>(upper.size()))
    throw precondition_error("principal_value: grid not symmetric about s0");

  std::vector<double> u(upper.size());
  std::vector<cplx> pair_g(upper.size());
  for (size_t k = 0; k < upper.size(); ++k) {
    const int ju = upper[k];
    const int jl = (center >= 0 ? center : static_cast<int>(upper.size())) - 1 -
                   static_cast<int>(k);
    u[k] = g.nodes[ju] - s0;
    if (std::abs((s0 - g.nodes[jl]) - u[k]) > 1e-7 * (std::abs(u[k]) + g.spacing))
      throw precondition_error("principal_value: asymmetric node spacing about s0");
    pair_g[k] = (f.values[ju] - f.values[jl]) / u[k];
  }

  // g(0) = 2 f'(s0); Richardson from the first two samples removes the O(u^2)
  // term when f is smooth (g is even in u, so the expansion has no odd terms).
  cplx g0 = pair_g[0];
  if (pair_g.size() >= 2) g0 = (4.0 * pair_g[0] - pair_g[1]) / 3.0;

  cplx acc = 0.5 * u[0] * (g0 + pair_g[0]);
  for (size_t k = 1; k < u.size(); ++k)
    acc += 0.5 * (u[k] - u[k - 1]) * (pair_g[k] + pair_g[k - 1]);

  // Endpoint correction when the pair samples form a uniform ladder starting
  // at u[0] = h: g'(0) = 0 by evenness, g'(umax) from a one-sided stencil.
  if (u.size() >= 5 && std::abs(u[1] - 2.0 * u[0]) < 1e-9 * u[0]) {
    const double h = u[0];
    Grid ug = Grid::uniform(u[0], u.back(), static_cast<int>(u.size()));
    ComplexSamples gs(std::move(ug), std::vector<cplx>(pair_g));
    acc -= h * h / 12.0 * end_derivative_back(gs);
  }
  return acc;
}

}  // namespace toa::num
