// Wavepacket construction, the momentum <-> energy-channel map, free
// evolution and boosts.

#include "doctest.h"

#include <cmath>
#include <complex>
#include <random>

#include "test_helpers.hpp"
#include "toa/quadrature.hpp"
#include "toa/states.hpp"

using namespace toa;
using num::cplx;
using num::ComplexSamples;
using num::Grid;
using states::GaussianSpec;

TEST_SUITE_BEGIN("states");

TEST_CASE("build_state: unit norm, peak at p0, even superpositions") {
  auto st = states::build_state({{5.0, 0.2, -10.0, 1.0}}, {}, 10.0, 4096);
  CHECK(std::abs(st.norm2() - 1.0) < 1e-10);

  // |psi(p0)|^2 is the grid maximum.
  int argmax = 0;
  double best = 0.0;
  for (int j = 0; j < st.samples.grid.n; ++j) {
    const double d = std::norm(st.samples.values[j]);
    if (d > best) best = d, argmax = j;
  }
  CHECK(std::abs(st.samples.grid.nodes[argmax] - 5.0) < 2.0 * st.samples.grid.spacing);

  // Equal real weights at +-p0 give |psi(p)| even in p.
  auto even = states::build_state({{5.0, 0.3, 0.0, 1.0}, {-5.0, 0.3, 0.0, 1.0}},
                                  {}, 10.0, 4096);
  const int n = even.samples.grid.n;
  for (int j = 0; j < n; ++j)
    CHECK(std::abs(std::abs(even.samples.values[j]) -
                   std::abs(even.samples.values[n - 1 - j])) < 1e-12);
}

TEST_CASE("build_state: degenerate and uncovered packets are rejected") {
  CHECK_THROWS_AS((void)states::build_state({{5.0, 0.2, 0.0, 0.0}}, {}, 10.0, 512),
                  toa::Error);
  // pmax = 6 does not cover p0 = 5 with sigma = 0.5 to the 1e-12 envelope.
  CHECK_THROWS_AS((void)states::build_state({{5.0, 0.5, 0.0, 1.0}}, {}, 6.0, 512),
                  toa::Error);
  CHECK_THROWS_AS((void)states::build_state({}, {}, 10.0, 512), toa::Error);
}

TEST_CASE("to_energy_channels: symmetry and support") {
  auto even = states::build_state({{5.0, 0.3, 0.0, 1.0}, {-5.0, 0.3, 0.0, 1.0}},
                                  {}, 10.0, 4096);
  auto ch = states::to_energy_channels(even);
  for (int j = 0; j < ch.plus.grid.n; ++j)
    CHECK(std::abs(ch.plus.values[j] - ch.minus.values[j]) < 1e-12);

  auto right = states::build_state({{5.0, 0.2, 0.0, 1.0}}, {}, 10.0, 4096);
  auto chr = states::to_energy_channels(right);
  for (const auto& v : chr.minus.values) CHECK(std::abs(v) < 1e-30);
}

TEST_CASE("to_energy_channels: channel norm matches the positive-momentum mass") {
  auto st = states::build_state({{5.0, 0.2, 0.0, 1.0}}, {}, 10.0, 4096);
  auto ch = states::to_energy_channels(st);

  const double e_side = num::integrate(ch.plus.grid, num::abs_squared(ch.plus));
  // integral over p > 0 of |psi|^2, on the positive half of the grid
  const auto& g = st.samples.grid;
  std::vector<double> half_nodes(g.nodes.begin() + g.n / 2, g.nodes.end());
  std::vector<double> half_dens(g.n / 2);
  for (int k = 0; k < g.n / 2; ++k)
    half_dens[k] = std::norm(st.samples.values[g.n / 2 + k]);
  const double p_side =
      num::integrate(Grid::from_nodes(std::move(half_nodes)), half_dens);
  CHECK(std::abs(e_side - p_side) < 1e-6);
}

TEST_CASE("isomorphism: unitary and invertible on random superpositions") {
  std::mt19937 rng(20240811);
  for (int trial = 0; trial < 10; ++trial) {
    auto st = toa::testing::random_state(rng, /*two_sided=*/trial % 2 == 1);
    auto ch = states::to_energy_channels(st);
    CHECK(std::abs(ch.norm2() - st.norm2()) < 1e-6);

    auto back = states::from_energy_channels(ch, st.samples.grid);
    CHECK(toa::testing::l2_distance(back.samples, st.samples) < 1e-6);
  }
}

TEST_CASE("from_energy_channels: zero channels and channel symmetry") {
  auto st = states::build_state({{4.5, 0.25, -3.0, 1.0}}, {}, 10.0, 2048);
  auto ch = states::to_energy_channels(st);

  for (auto& v : ch.minus.values) v = ch.plus.values[&v - ch.minus.values.data()];
  auto sym = states::from_energy_channels(ch, st.samples.grid);
  const int n = sym.samples.grid.n;
  for (int j = 0; j < n; ++j)
    CHECK(std::abs(sym.samples.values[j] - sym.samples.values[n - 1 - j]) < 1e-12);

  for (auto& v : ch.plus.values) v = 0.0;
  for (auto& v : ch.minus.values) v = 0.0;
  auto zero = states::from_energy_channels(ch, st.samples.grid);
  for (const auto& v : zero.samples.values) CHECK(std::abs(v) == 0.0);
}

TEST_CASE("evolve_free: pointwise phase, group property") {
  auto st = states::build_state({{5.0, 0.2, -10.0, 1.0}}, {}, 10.0, 2048);

  auto id = states::evolve_free(st, 0.0);
  for (int j = 0; j < st.samples.grid.n; ++j)
    CHECK(std::abs(id.samples.values[j] - st.samples.values[j]) == 0.0);

  auto ev = states::evolve_free(st, 2.7);
  for (int j = 0; j < st.samples.grid.n; ++j)
    CHECK(std::abs(std::abs(ev.samples.values[j]) - std::abs(st.samples.values[j])) <
          1e-15);

  auto two_step = states::evolve_free(states::evolve_free(st, 1.3), -4.0);
  auto one_step = states::evolve_free(st, -2.7);
  for (int j = 0; j < st.samples.grid.n; ++j)
    CHECK(std::abs(two_step.samples.values[j] - one_step.samples.values[j]) < 1e-14);
}

TEST_CASE("evolve_free commutes with the channel map") {
  std::mt19937 rng(7);
  auto st = toa::testing::random_state(rng, true);
  const double tau = 1.7;

  auto lhs = states::to_energy_channels(states::evolve_free(st, tau));
  auto rhs = states::evolve_channels(states::to_energy_channels(st), tau);
  for (int j = 0; j < lhs.plus.grid.n; ++j) {
    CHECK(std::abs(lhs.plus.values[j] - rhs.plus.values[j]) < 1e-10);
    CHECK(std::abs(lhs.minus.values[j] - rhs.minus.values[j]) < 1e-10);
  }
}

TEST_CASE("boost_position: phase only, additive in q") {
  const Grid g = Grid::uniform(0.0, 30.0, 501);
  std::vector<cplx> v(g.n);
  for (int j = 0; j < g.n; ++j) v[j] = g.nodes[j] * std::exp(-g.nodes[j]);
  const ComplexSamples psi(g, std::move(v));

  auto b0 = states::boost_position(psi, 0.0, 1.0);
  for (int j = 0; j < g.n; ++j) CHECK(std::abs(b0.values[j] - psi.values[j]) == 0.0);

  auto b1 = states::boost_position(psi, 1.2, 1.0);
  for (int j = 0; j < g.n; ++j)
    CHECK(std::abs(std::abs(b1.values[j]) - std::abs(psi.values[j])) < 1e-15);

  auto twice = states::boost_position(states::boost_position(psi, 0.7, 1.0), 1.8, 1.0);
  auto once = states::boost_position(psi, 2.5, 1.0);
  for (int j = 0; j < g.n; ++j)
    CHECK(std::abs(twice.values[j] - once.values[j]) < 1e-14);
}

TEST_SUITE_END();
