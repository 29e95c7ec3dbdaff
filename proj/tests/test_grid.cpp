/// Grids, Maxwellian weights and the discrete inner products. Expected values
/// come from closed-form Gaussian moments, not from the code under test.

#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <numbers>

#include "linbgk/field.hpp"
#include "linbgk/grid.hpp"

using namespace linbgk;

namespace {

// Independent oracle: Gaussian moments E[v^k] for mean u, variance T.
double gauss_moment(int k, double u, double T) {
  switch (k) {
    case 0: return 1.0;
    case 1: return u;
    case 2: return u * u + T;
    case 3: return u * u * u + 3.0 * u * T;
    case 4: return std::pow(u, 4) + 6.0 * u * u * T + 3.0 * T * T;
    default: return 0.0;
  }
}

std::vector<double> ones(int n) { return std::vector<double>(n, 1.0); }

}  // namespace

TEST_CASE("spatial grid cell centers") {
  const auto g = build_spatial_grid(4, 1.0);
  CHECK(g.spacing == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(g.nodes[0] == doctest::Approx(0.125).epsilon(1e-15));
  CHECK(g.nodes[1] == doctest::Approx(0.375).epsilon(1e-15));
  CHECK(g.nodes[2] == doctest::Approx(0.625).epsilon(1e-15));
  CHECK(g.nodes[3] == doctest::Approx(0.875).epsilon(1e-15));
  CHECK(g.spacing * g.n_x == doctest::Approx(g.length).epsilon(1e-15));

  const auto g2 = build_spatial_grid(8, 2.0 * std::numbers::pi);
  CHECK(g2.spacing == doctest::Approx(std::numbers::pi / 4.0).epsilon(1e-15));

  CHECK_THROWS_AS(build_spatial_grid(0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(build_spatial_grid(8, -1.0), std::invalid_argument);
  CHECK(g.wrap(-1) == 3);
  CHECK(g.wrap(4) == 0);
}

TEST_CASE("velocity grid quadrature weights") {
  const auto g = centered_velocity_grid(129, 0.0, 8.0);
  CHECK(g.v_min < 0.0);
  CHECK(g.v_max > 0.0);
  double wsum = 0.0;
  for (double w : g.quad_weights) wsum += w;
  CHECK(wsum == doctest::Approx(g.v_max - g.v_min).epsilon(1e-14));
  // nodes symmetric about the center
  for (int j = 0; j < g.n_v; ++j)
    CHECK(g.nodes[j] == doctest::Approx(-g.nodes[g.n_v - 1 - j]).epsilon(1e-13));
}

TEST_CASE("maxwellian point values") {
  const auto p = make_params(1.0, 0.0, 1.0, 0.0, 0.0);
  CHECK(p.maxwellian(0.0) == doctest::Approx(1.0 / std::sqrt(2.0 * std::numbers::pi)).epsilon(1e-14));
  const auto p2 = make_params(2.0, 0.0, 1.0, 0.0, 0.0);
  CHECK(p2.maxwellian(0.0) == doctest::Approx(2.0 / std::sqrt(2.0 * std::numbers::pi)).epsilon(1e-14));
  const auto p3 = make_params(1.0, 1.0, 1.0, 0.0, 0.0);
  CHECK(p3.maxwellian(1.0) == doctest::Approx(1.0 / std::sqrt(2.0 * std::numbers::pi)).epsilon(1e-14));
  // symmetry about the mean
  CHECK(p3.maxwellian(1.0 + 0.7) == doctest::Approx(p3.maxwellian(1.0 - 0.7)).epsilon(1e-14));
}

TEST_CASE("affine family derivatives") {
  const auto p = make_params(1.0, 0.5, 1.0, 0.1, 1.0);
  CHECK(p.dz_u(1) == 0.1);
  CHECK(p.dz_u(2) == 0.0);
  CHECK(p.dz_u(3) == 0.0);
  CHECK(p.dz_sqrt_temp(1) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(p.dz_sqrt_temp(2) == doctest::Approx(-0.25).epsilon(1e-14));
  CHECK(p.dz_sqrt_temp(3) == doctest::Approx(3.0 / 8.0).epsilon(1e-14));
  CHECK_THROWS_AS(p.at(-2.0), std::invalid_argument);  // T(z) <= 0
  CHECK(p.at(0.5).temp == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(p.at(0.5).u == doctest::Approx(0.55).epsilon(1e-14));
}

TEST_CASE("weighted inner product against Gaussian moments") {
  const auto grid = centered_velocity_grid(129, 0.0, 8.0);
  const auto p = make_params(1.0, 0.0, 1.0, 0.0, 0.0);
  const auto one = ones(grid.n_v);
  std::vector<double> v = grid.nodes;

  CHECK(inner_weighted(one, one, p, grid) == doctest::Approx(gauss_moment(0, 0, 1)).epsilon(1e-8));
  CHECK(inner_weighted(v, v, p, grid) == doctest::Approx(gauss_moment(2, 0, 1)).epsilon(1e-8));
  CHECK(std::abs(inner_weighted(one, v, p, grid)) <= 1e-12);

  std::vector<double> short_vec(5, 1.0);
  CHECK_THROWS_AS(inner_weighted(short_vec, one, p, grid), std::invalid_argument);
}

TEST_CASE("quadrature converges to the analytic mass") {
  const auto p = make_params(1.3, 0.4, 1.7, 0.0, 0.0);
  double prev_err = 1.0;
  for (int n_v : {65, 129, 257}) {
    const auto grid = centered_velocity_grid(n_v, p.u, 8.5 * std::sqrt(p.temp));
    const auto one = ones(n_v);
    const double err = std::abs(inner_weighted(one, one, p, grid) - p.rho);
    CHECK(err <= prev_err + 1e-14);
    prev_err = err;
  }
  CHECK(prev_err <= 1e-10);
}

TEST_CASE("phase-space pairing") {
  PhaseGrid g{build_spatial_grid(8, 2.0), centered_velocity_grid(17, 0.0, 4.0)};
  DistributionField a(8, 17), b(8, 17);
  CHECK(inner_xv(a, b, g) == 0.0);

  a.fill(1.0);
  CHECK(inner_xv(a, a, g) == doctest::Approx(2.0 * 8.0).epsilon(1e-13));  // L * V

  // Parseval spot check: nested-loop sum vs flattened accumulation.
  for (size_t idx = 0; idx < a.data.size(); ++idx) a.data[idx] = std::sin(0.1 * idx) + 0.3;
  double flat = 0.0;
  for (int i = 0; i < a.nx; ++i)
    for (int j = 0; j < a.nv; ++j)
      flat += g.x.spacing * g.v.quad_weights[j] * a.at(i, j) * a.at(i, j);
  CHECK(inner_xv(a, a, g) == doctest::Approx(flat).epsilon(1e-13));

  DistributionField c(4, 17);
  CHECK_THROWS_AS(inner_xv(a, c, g), std::invalid_argument);
}
