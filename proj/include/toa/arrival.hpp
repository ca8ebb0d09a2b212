#pragma once

#include <span>
#include <vector>

#include "toa/distribution.hpp"
#include "toa/report.hpp"
#include "toa/states.hpp"

namespace toa::arrival {

using num::cplx;
using num::ComplexSamples;
using num::Grid;
using states::MomentumState;

// Raw differential expression of the arrival-time operator in the momentum
// representation,
//     (i hbar m / 2) (psi / p^2 - (2/p) psi'),
// applied without any domain test (it is also the action of the adjoint,
// which is what the deficiency checks need).  A node at p = 0, if present,
// is excluded (value set to 0) and its index reported.
struct AppliedOperator {
  ComplexSamples samples;
  int excluded_node = -1;
};
AppliedOperator arrival_expression(const ComplexSamples& psi_p,
                                   const PhysicalConstants& constants);

// Numerical domain test: |psi|/|p|^(3/2) must decrease toward p = 0 over the
// five nodes nearest the origin on each side (relative slack 1e-3; nodes with
// |psi| below 1e-12 of the peak are treated as zero).  This realizes the
// condition psi(p)/p^(3/2) -> 0 at the sampled resolution.
bool in_domain(const MomentumState& state);
void require_domain(const MomentumState& state);  // throws not_in_domain

// Checked application: domain test first, then the differential expression.
AppliedOperator apply_arrival_op(const MomentumState& state);

// Verifies that both deficiency candidates Theta(+-p) sqrt(+-p) e^{-p^2/2m hbar}
// are eigenvectors of the adjoint with eigenvalue +i (L2 residual on the
// interior of the grid, away from the endpoints), and that the -i candidate
// sqrt(p) e^{+p^2/2m hbar} has diverging truncated norms.
CheckReport deficiency_check(const PhysicalConstants& constants, double p_lo = 1e-3,
                             double p_hi = 8.0, int n = 4096);

// Arrival amplitude of one momentum channel:
//   A(t) = integral_0^inf dq sqrt(q / 2 pi m hbar)
//            exp(-i sign q^2 t / 2 m hbar) chi(q) dq,
// with chi the channel samples on a positive uniform q grid (chi(q) = psi(q)
// for right-movers, psi(-q) for left-movers).
std::vector<cplx> channel_amplitude(const ComplexSamples& chi,
                                    const PhysicalConstants& constants,
                                    std::span<const double> t, double sign = 1.0);

// Positive/negative channel samples of a momentum state on the shared
// positive q grid.
ComplexSamples positive_half(const MomentumState& state);
ComplexSamples negative_half_mirrored(const MomentumState& state);

// Kijowski's arrival-time density Pi(t) = |A_+(t)|^2 + |A_-(t)|^2 on a
// uniform t grid.  Guards: q-phase advance per step <= pi, t sampling
// dt * pmax^2/(2 m hbar) <= pi/4.
Distribution kijowski_distribution(const MomentumState& state, const Grid& t_grid);

// sup_t |Pi_{U(tau) psi}(t - tau) - Pi_psi(t)|, passes below 1e-4 * max Pi.
CheckReport covariance_check(const MomentumState& state, double tau, const Grid& t_grid);

// psi(0,t) and d/dx psi(0,t) from the momentum samples (shared by the flux
// and presence-time quotients).
struct OriginWave {
  std::vector<cplx> value;  // psi(0, t_k)
  std::vector<cplx> dx;     // d/dx psi(0, t_k)
};
OriginWave wave_at_origin(const MomentumState& state, const Grid& t_grid);

// Mean arrival time from the probability current J(0,t) against the operator
// expectation <T>; the two agree within 1e-3 relative on domain states.
struct FluxMean {
  double mean_flux = 0.0;      // integral t J dt / integral J dt
  double mean_operator = 0.0;  // Re <psi| T psi>
  double flux_total = 0.0;     // integral J dt
  CheckReport report;
};
FluxMean flux_mean(const MomentumState& state, const Grid& t_grid);

// Mean presence time at x = 0: the operator quotient
//   -(m/2) <psi| p^-2 x + x p^-2 |psi> / <psi| p^-1 |psi>
// cross-checked against its defining time integral of |psi(0,t)|^2.
// Restricted to states with no negative-momentum content.
struct PresenceMean {
  double mean_quotient = 0.0;
  double mean_time_integral = 0.0;
  CheckReport report;
};
PresenceMean presence_mean(const MomentumState& state, const Grid& t_grid);

// integral t^2 Pi dt  against  ||T psi||^2  (1e-3 relative).
CheckReport second_moment_check(const MomentumState& state, const Grid& t_grid);

}  // namespace toa::arrival
