#include "toa/oscillatory.hpp"

#include <cmath>

#include "toa/finite_diff.hpp"
#include "toa/parallel.hpp"

namespace toa::num::osc {

namespace {

void check(const PhasedSamples& s) {
  if (!s.grid) throw invalid_grid_error("osc::transform: null grid");
  s.grid->validate();
  if (!s.grid->is_uniform(1e-8))
    throw invalid_grid_error("osc::transform: uniform grid required");
  if (s.values.size() != static_cast<size_t>(s.grid->n) ||
      s.phase.size() != static_cast<size_t>(s.grid->n))
    throw invalid_grid_error("osc::transform: values/phase length mismatch");
}

}  // namespace

double max_phase_step(const PhasedSamples& s, std::span<const double> c) {
  double dphi = 0.0;
  for (int j = 1; j < s.grid->n; ++j)
    dphi = std::max(dphi, std::abs(s.phase[j] - s.phase[j - 1]));
  double cmax = 0.0;
  for (double ck : c) cmax = std::max(cmax, std::abs(ck));
  return cmax * dphi;
}

cplx transform_point(const PhasedSamples& s, double c) {
  const int n = s.grid->n;
  const double h = s.grid->spacing;

  cplx acc = 0.5 * (s.values[0] * std::polar(1.0, -c * s.phase[0]) +
                    s.values[n - 1] * std::polar(1.0, -c * s.phase[n - 1]));
  for (int j = 1; j < n - 1; ++j)
    acc += s.values[j] * std::polar(1.0, -c * s.phase[j]);
  cplx out = h * acc;

  // Endpoint correction: g' = (f' - i c phi' f) e^{-i c phi}.
  const cplx ic(0.0, c);
  const cplx gp_a = (s.df_front - ic * s.dphase_front * s.values[0]) *
                    std::polar(1.0, -c * s.phase[0]);
  const cplx gp_b = (s.df_back - ic * s.dphase_back * s.values[n - 1]) *
                    std::polar(1.0, -c * s.phase[n - 1]);
  out -= h * h / 12.0 * (gp_b - gp_a);
  return out;
}

std::vector<cplx> transform_serial(const PhasedSamples& s, std::span<const double> c) {
  check(s);
  std::vector<cplx> out(c.size());
  for (size_t k = 0; k < c.size(); ++k) out[k] = transform_point(s, c[k]);
  return out;
}

std::vector<cplx> transform(const PhasedSamples& s, std::span<const double> c) {
  check(s);
  std::vector<cplx> out(c.size());
  const long nk = static_cast<long>(c.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(toa::par::max_threads())
#endif
  for (long k = 0; k < nk; ++k) out[k] = transform_point(s, c[k]);
  return out;
}

PhasedSamples linear_phase(const ComplexSamples& s) {
  PhasedSamples ps;
  ps.grid = &s.grid;
  ps.values = s.values;
  ps.phase = s.grid.nodes;
  ps.dphase_front = 1.0;
  ps.dphase_back = 1.0;
  if (s.grid.n >= 5) {
    ps.df_front = end_derivative_front(s);
    ps.df_back = end_derivative_back(s);
  }
  return ps;
}

}  // namespace toa::num::osc
