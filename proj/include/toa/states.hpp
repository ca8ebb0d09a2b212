#pragma once

#include <vector>

#include "toa/constants.hpp"
#include "toa/grid.hpp"

namespace toa::states {

using num::cplx;
using num::ComplexSamples;
using num::Grid;

// One Gaussian component of a momentum wavepacket:
//   w * (2 pi sigma^2)^(-1/4) exp(-(p-p0)^2 / 4 sigma^2) exp(-i p x0 / hbar).
// sigma_p is the momentum-space standard deviation of |psi|^2; x0 places the
// packet in position space.
struct GaussianSpec {
  double p0 = 0.0;
  double sigma_p = 1.0;
  double x0 = 0.0;
  cplx weight = 1.0;
};

// Unit-norm wavefunction sampled on a symmetric momentum grid with no node
// at p = 0.
struct MomentumState {
  PhysicalConstants constants;
  ComplexSamples samples;

  double norm2() const;
};

// Image of a MomentumState under the energy-channel map: a pair of samples
// (positive- and negative-momentum channels) on the induced energy grid
// E_j = p_j^2 / 2m, which is non-uniform.
struct EnergyChannels {
  PhysicalConstants constants;
  ComplexSamples plus;
  ComplexSamples minus;

  double norm2() const;  // integral (|psi+|^2 + |psi-|^2) dE
};

// Superpose the packets on a staggered symmetric grid [-pmax, pmax] (n even)
// and normalize.  The grid must cover every packet to the 1e-12 density
// envelope (|psi| < 1e-6 of its peak at the edges).
MomentumState build_state(const std::vector<GaussianSpec>& specs,
                          const PhysicalConstants& constants, double pmax, int n);

// psi_pm(E) = (m/2E)^(1/4) psi(+-sqrt(2mE)); unitary up to quadrature.
EnergyChannels to_energy_channels(const MomentumState& state);

// Inverse map onto a target momentum grid.  Node-exact when the target grid
// induced the channels; cubic interpolation in |p| otherwise, with the
// sqrt(|p|/m) prefactor applied analytically.
MomentumState from_energy_channels(const EnergyChannels& channels, const Grid& p_grid);

// Free evolution psi(p) <- exp(-i p^2 tau / 2 m hbar) psi(p).
MomentumState evolve_free(const MomentumState& state, double tau);

// Channel-side free evolution: multiply both channels by exp(-i E tau / hbar).
EnergyChannels evolve_channels(const EnergyChannels& channels, double tau);

// Momentum boost acting on position samples: psi(x) <- exp(-i q x / hbar) psi(x).
ComplexSamples boost_position(const ComplexSamples& position_samples, double q,
                              double hbar);

}  // namespace toa::states
