#include "toa/states.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "toa/quadrature.hpp"

namespace toa::states {

namespace {

std::vector<double> density_of(const ComplexSamples& s) { return num::abs_squared(s); }

double norm2_of(const ComplexSamples& s) {
  return num::integrate(s.grid, density_of(s));
}

}  // namespace

double MomentumState::norm2() const { return norm2_of(samples); }

double EnergyChannels::norm2() const { return norm2_of(plus) + norm2_of(minus); }

MomentumState build_state(const std::vector<GaussianSpec>& specs,
                          const PhysicalConstants& constants, double pmax, int n) {
  constants.validate();
  if (specs.empty()) throw invalid_param_error("build_state: need at least one packet");
  double wsum = 0.0;
  for (const auto& s : specs) {
    if (!(s.sigma_p > 0.0)) throw invalid_param_error("build_state: sigma_p must be > 0");
    wsum += std::abs(s.weight);
  }
  if (wsum == 0.0) throw invalid_param_error("build_state: all packet weights are zero");

  Grid grid = Grid::staggered_symmetric(pmax, n);
  std::vector<cplx> v(grid.n, 0.0);
  for (const auto& s : specs) {
    const double amp = std::pow(2.0 * std::numbers::pi * s.sigma_p * s.sigma_p, -0.25);
    for (int j = 0; j < grid.n; ++j) {
      const double p = grid.nodes[j];
      const double arg = (p - s.p0) / (2.0 * s.sigma_p);
      v[j] += s.weight * amp * std::exp(-arg * arg) *
              std::polar(1.0, -p * s.x0 / constants.hbar);
    }
  }

  ComplexSamples samples(std::move(grid), std::move(v));

  // Coverage: the density envelope must be below 1e-12 of its peak at the
  // grid edges, otherwise the normalization integral is silently truncated.
  const auto dens = density_of(samples);
  const double peak = *std::max_element(dens.begin(), dens.end());
  if (peak == 0.0) throw invalid_param_error("build_state: state vanishes on the grid");
  const double edge = std::max(dens.front(), dens.back());
  if (edge > 1e-12 * peak)
    throw precondition_error(
        "build_state: grid does not cover the packets to the 1e-12 envelope "
        "(edge density " + std::to_string(edge / peak) + " of peak)");

  const double nrm = std::sqrt(norm2_of(samples));
  for (auto& x : samples.values) x /= nrm;
  return {constants, std::move(samples)};
}

EnergyChannels to_energy_channels(const MomentumState& state) {
  const Grid& g = state.samples.grid;
  const int n = g.n;
  if (n % 2 != 0 || !(g.start < 0.0) || !(g.stop > 0.0))
    throw precondition_error("to_energy_channels: symmetric staggered momentum grid required");

  const int half = n / 2;
  const double m = state.constants.mass;
  std::vector<double> e_nodes(half);
  std::vector<cplx> plus(half), minus(half);
  for (int k = 0; k < half; ++k) {
    const double p = g.nodes[half + k];  // h/2, 3h/2, ...
    e_nodes[k] = p * p / (2.0 * m);
    const double w = std::pow(m / (2.0 * e_nodes[k]), 0.25);
    plus[k] = w * state.samples.values[half + k];
    minus[k] = w * state.samples.values[half - 1 - k];
  }
  Grid e_grid = Grid::from_nodes(std::move(e_nodes));
  ComplexSamples plus_s(e_grid, std::move(plus));
  ComplexSamples minus_s(std::move(e_grid), std::move(minus));
  return {state.constants, std::move(plus_s), std::move(minus_s)};
}

namespace {

// 4-point Lagrange interpolation of channel data viewed as a function of
// q = sqrt(2mE); q_nodes are strictly increasing.
cplx interp_channel_at(const std::vector<double>& q_nodes, std::span<const cplx> vals,
                       double q) {
  const int n = static_cast<int>(q_nodes.size());
  auto it = std::lower_bound(q_nodes.begin(), q_nodes.end(), q);
  int i = static_cast<int>(it - q_nodes.begin());
  int first = std::clamp(i - 2, 0, n - 4);
  cplx acc = 0.0;
  for (int a = 0; a < 4; ++a) {
    double w = 1.0;
    for (int b = 0; b < 4; ++b) {
      if (a == b) continue;
      w *= (q - q_nodes[first + b]) / (q_nodes[first + a] - q_nodes[first + b]);
    }
    acc += w * vals[first + a];
  }
  return acc;
}

}  // namespace

MomentumState from_energy_channels(const EnergyChannels& channels, const Grid& p_grid) {
  const double m = channels.constants.mass;
  const Grid& eg = channels.plus.grid;
  if (eg.n < 4) throw precondition_error("from_energy_channels: need >= 4 energy nodes");

  // Strip the measure factor at the nodes: s_pm(q_j) = sqrt(q_j/m) psi_pm(E_j)
  // equals psi(+-q_j) exactly; interpolation acts on this smooth object.
  std::vector<double> q(eg.n);
  std::vector<cplx> s_plus(eg.n), s_minus(eg.n);
  for (int j = 0; j < eg.n; ++j) {
    q[j] = std::sqrt(2.0 * m * eg.nodes[j]);
    const double w = std::sqrt(q[j] / m);
    s_plus[j] = w * channels.plus.values[j];
    s_minus[j] = w * channels.minus.values[j];
  }

  std::vector<cplx> v(p_grid.n);
  for (int j = 0; j < p_grid.n; ++j) {
    const double p = p_grid.nodes[j];
    const double aq = std::abs(p);
    if (aq > q.back()) {
      v[j] = 0.0;  // beyond the channel window
    } else if (p >= 0.0) {
      v[j] = interp_channel_at(q, s_plus, aq);
    } else {
      v[j] = interp_channel_at(q, s_minus, aq);
    }
  }
  return {channels.constants, ComplexSamples(p_grid, std::move(v))};
}

MomentumState evolve_free(const MomentumState& state, double tau) {
  MomentumState out = state;
  const double c = tau / (2.0 * state.constants.mass * state.constants.hbar);
  for (int j = 0; j < out.samples.grid.n; ++j) {
    const double p = out.samples.grid.nodes[j];
    out.samples.values[j] *= std::polar(1.0, -c * p * p);
  }
  return out;
}

EnergyChannels evolve_channels(const EnergyChannels& channels, double tau) {
  EnergyChannels out = channels;
  const double c = tau / channels.constants.hbar;
  for (int j = 0; j < out.plus.grid.n; ++j) {
    const cplx ph = std::polar(1.0, -c * out.plus.grid.nodes[j]);
    out.plus.values[j] *= ph;
    out.minus.values[j] *= ph;
  }
  return out;
}

ComplexSamples boost_position(const ComplexSamples& position_samples, double q,
                              double hbar) {
  ComplexSamples out = position_samples;
  for (int j = 0; j < out.grid.n; ++j)
    out.values[j] *= std::polar(1.0, -q * out.grid.nodes[j] / hbar);
  return out;
}

}  // namespace toa::states
