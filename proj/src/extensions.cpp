#include "toa/extensions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "toa/arrival.hpp"
#include "toa/quadrature.hpp"

namespace toa::ext {

namespace {

// Channel samples as functions of q = sqrt(2mE) on the positive momentum
// grid; the sqrt(q/m) factor strips the energy measure, so the values are
// exactly psi(+-q) for channels produced by the isomorphism.
ComplexSamples channel_in_q(const ComplexSamples& channel, double mass) {
  std::vector<double> q(channel.grid.n);
  std::vector<cplx> v(channel.grid.n);
  for (int j = 0; j < channel.grid.n; ++j) {
    q[j] = std::sqrt(2.0 * mass * channel.grid.nodes[j]);
    v[j] = std::sqrt(q[j] / mass) * channel.values[j];
  }
  return {Grid::from_nodes(std::move(q)), std::move(v)};
}

double channel_norm2(const ComplexSamples& channel) {
  return num::integrate(channel.grid, num::abs_squared(channel));
}

}  // namespace

ComplexSamples unfold(const EnergyChannels& channels, double alpha) {
  const Grid& eg = channels.plus.grid;
  const int k = eg.n;
  std::vector<double> nodes(2 * k);
  std::vector<cplx> values(2 * k);
  const cplx phase = std::polar(1.0, -alpha);
  for (int j = 0; j < k; ++j) {
    nodes[k - 1 - j] = -eg.nodes[j];
    values[k - 1 - j] = phase * channels.minus.values[j];
    nodes[k + j] = eg.nodes[j];
    values[k + j] = channels.plus.values[j];
  }
  return {Grid::from_nodes(std::move(nodes)), std::move(values)};
}

Distribution alpha_distribution(const EnergyChannels& channels, double alpha,
                                const Grid& tau_grid) {
  tau_grid.validate();
  const auto& c = channels.constants;

  const ComplexSamples chi_plus = channel_in_q(channels.plus, c.mass);
  const ComplexSamples chi_minus = channel_in_q(channels.minus, c.mass);

  const double emax = channels.plus.grid.stop;
  if (tau_grid.max_step() * emax / c.hbar > std::numbers::pi / 4.0)
    throw resolution_error("alpha_distribution: tau grid too coarse");

  // E > 0 piece is the plus-channel arrival amplitude; the E < 0 piece picks
  // up the reversed phase sign and the e^{-i alpha} gluing factor.
  const auto a_plus =
      arrival::channel_amplitude(chi_plus, c, tau_grid.nodes, +1.0);
  const auto a_minus =
      arrival::channel_amplitude(chi_minus, c, tau_grid.nodes, -1.0);
  const cplx glue = std::polar(1.0, -alpha);

  Distribution dist;
  dist.grid = tau_grid;
  dist.density.resize(tau_grid.n);
  std::vector<double> dplus(tau_grid.n), dminus(tau_grid.n);
  for (int k = 0; k < tau_grid.n; ++k) {
    dist.density[k] = std::norm(a_plus[k] + glue * a_minus[k]);
    dplus[k] = std::norm(a_plus[k]);
    dminus[k] = std::norm(a_minus[k]);
  }
  dist.total = num::integrate(tau_grid, dist.density);
  dist.meta.plus_total = num::integrate(tau_grid, dplus);
  dist.meta.minus_total = num::integrate(tau_grid, dminus);
  dist.meta.plus_density = std::move(dplus);
  dist.meta.minus_density = std::move(dminus);
  dist.meta.source = "alpha-extension";
  return dist;
}

CovarianceMeasure alpha_covariance_measure(const EnergyChannels& channels, double alpha,
                                           double tau_shift, const Grid& tau_grid) {
  const Distribution ref = alpha_distribution(channels, alpha, tau_grid);

  std::vector<double> shifted(tau_grid.n);
  for (int k = 0; k < tau_grid.n; ++k) shifted[k] = tau_grid.nodes[k] - tau_shift;
  const Distribution ev = alpha_distribution(
      states::evolve_channels(channels, tau_shift), alpha,
      Grid::from_nodes(std::move(shifted)));

  CovarianceMeasure m;
  m.max_density = ref.max_density();
  for (int k = 0; k < tau_grid.n; ++k)
    m.violation = std::max(m.violation, std::abs(ev.density[k] - ref.density[k]));
  return m;
}

CheckReport alpha_covariance_violation(const EnergyChannels& channels, double alpha,
                                       double tau_shift, const Grid& tau_grid) {
  const double n_plus = channel_norm2(channels.plus);
  const double n_minus = channel_norm2(channels.minus);
  const double total = n_plus + n_minus;
  if (total <= 0.0)
    throw precondition_error("alpha_covariance_violation: zero state");
  if (std::min(n_plus, n_minus) < 0.10 * total)
    throw precondition_error(
        "alpha_covariance_violation: both channels need >= 10% mass "
        "(plus " + std::to_string(n_plus / total) + ", minus " +
        std::to_string(n_minus / total) + ")");

  const CovarianceMeasure m =
      alpha_covariance_measure(channels, alpha, tau_shift, tau_grid);

  // The check asserts NON-covariance: it passes when the violation exceeds
  // 1e-2 of the density peak, so `measured` is the shortfall below that bar.
  const double required = 1e-2 * m.max_density;
  const double shortfall = std::max(0.0, required - m.violation);
  return make_report("alpha-violation", shortfall, 0.0,
                     "violation = " + std::to_string(m.violation) +
                         ", required > " + std::to_string(required) +
                         ", tau_shift = " + std::to_string(tau_shift));
}

double alpha_operator_moment(const EnergyChannels& channels, int n) {
  if (n < 0 || n > 3)
    throw unsupported_error("alpha_operator_moment: n must be in [0, 3]");
  const auto& c = channels.constants;

  // T'_alpha = T_+ (+) (-T_-); in the momentum variable both channels obey
  // the same differential expression, the minus channel with sign (-1)^n.
  auto moment_of = [&](const ComplexSamples& chi, double sign) {
    ComplexSamples acted = chi;
    for (int k = 0; k < n; ++k)
      acted = arrival::arrival_expression(acted, c).samples;
    std::vector<cplx> integrand(chi.grid.n);
    for (int j = 0; j < chi.grid.n; ++j)
      integrand[j] = std::conj(chi.values[j]) * acted.values[j];
    return sign * num::integrate(ComplexSamples(chi.grid, std::move(integrand))).real();
  };

  const ComplexSamples chi_plus = channel_in_q(channels.plus, c.mass);
  const ComplexSamples chi_minus = channel_in_q(channels.minus, c.mass);
  const double sign_minus = (n % 2 == 0) ? 1.0 : -1.0;
  return moment_of(chi_plus, 1.0) + moment_of(chi_minus, sign_minus);
}

Distribution constant_field_distribution(const MomentumState& state, double g) {
  if (g == 0.0)
    throw invalid_param_error("constant_field_distribution: g must be nonzero");
  const Grid& pg = state.samples.grid;
  const double mg = state.constants.mass * g;

  // Exact pushforward of |psi(p)|^2 under t = p / (m g).
  std::vector<double> t(pg.n);
  std::vector<double> dens(pg.n);
  for (int j = 0; j < pg.n; ++j) {
    const int src = (g > 0.0) ? j : pg.n - 1 - j;
    t[j] = pg.nodes[src] / mg;
    dens[j] = std::abs(mg) * std::norm(state.samples.values[src]);
  }

  Distribution dist;
  dist.grid = Grid::from_nodes(std::move(t));
  dist.density = std::move(dens);
  dist.total = num::integrate(dist.grid, dist.density);
  dist.meta.source = "constant-field";
  return dist;
}

}  // namespace toa::ext
