/// Verification machinery: finite-difference combinations, growth fits,
/// envelope checks, moment inversion and the acoustic system.

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "linbgk/harness.hpp"

using namespace linbgk;

namespace {

DistributionField constant_field(int nx, int nv, double value) {
  DistributionField f(nx, nv);
  f.fill(value);
  return f;
}

}  // namespace

TEST_CASE("central finite differences are exact on low-degree polynomials") {
  const double delta = 0.25;
  // fields proportional to z^k at z = -delta, 0, delta, ...
  auto poly_nodes = [&](int n_z, int degree) {
    std::vector<DistributionField> nodes;
    const int half = (n_z - 1) / 2;
    for (int k = -half; k <= half; ++k)
      nodes.push_back(constant_field(2, 3, std::pow(k * delta, degree)));
    return nodes;
  };

  // affine: 3-point first derivative recovers the slope exactly
  {
    std::vector<DistributionField> nodes;
    for (int k = -1; k <= 1; ++k) nodes.push_back(constant_field(2, 3, 7.5 * k * delta));
    const auto d1 = fd_combine(nodes, delta, 1);
    for (double x : d1.data) CHECK(x == doctest::Approx(7.5).epsilon(1e-13));
  }
  // 3-point second derivative of z^2 is exactly 2
  {
    const auto nodes = poly_nodes(3, 2);
    const auto d2 = fd_combine(nodes, delta, 2);
    for (double x : d2.data) CHECK(x == doctest::Approx(2.0).epsilon(1e-12));
  }
  // 5-point stencils on z^4: d^3 -> 0, d^4 -> 24
  {
    const auto nodes = poly_nodes(5, 4);
    const auto d3 = fd_combine(nodes, delta, 3);
    for (double x : d3.data) CHECK(std::abs(x) <= 1e-10);
    const auto d4 = fd_combine(nodes, delta, 4);
    for (double x : d4.data) CHECK(x == doctest::Approx(24.0).epsilon(1e-10));
  }
  // unsupported configurations
  {
    auto nodes = poly_nodes(3, 1);
    CHECK_THROWS_AS(fd_combine(nodes, delta, 3), std::invalid_argument);
    nodes.pop_back();
    CHECK_THROWS_AS(fd_combine(nodes, delta, 1), std::invalid_argument);
  }
}

TEST_CASE("growth-exponent fit on synthetic power laws") {
  std::vector<double> t, y;
  for (int i = 0; i < 200; ++i) {
    t.push_back(1.0 + i * 0.5);
    y.push_back(3.0 * t.back() * t.back());
  }
  const auto fit = fit_growth_exponent(t, y, 1.0, 101.0);
  CHECK(fit.exponent == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(fit.prefactor == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(fit.r2 == doctest::Approx(1.0).epsilon(1e-12));

  // (t, t + 100): exponent tends to 1 on late windows
  std::vector<double> t2, y2;
  for (int i = 0; i < 2000; ++i) {
    t2.push_back(1.0 + i * 10.0);
    y2.push_back(t2.back() + 100.0);
  }
  const auto late = fit_growth_exponent(t2, y2, 5000.0, 20000.0);
  CHECK(late.exponent > 0.95);
  CHECK(late.exponent <= 1.0 + 1e-9);
  const auto early = fit_growth_exponent(t2, y2, 1.0, 300.0);
  CHECK(early.exponent < late.exponent);

  CHECK_THROWS_AS(fit_growth_exponent(t, y, 90.0, 95.0), std::invalid_argument);
}

TEST_CASE("envelope verification and its negative control") {
  NormSeries s;
  s.norms.resize(2);
  for (int i = 0; i <= 10; ++i) {
    s.times.push_back(0.1 * i);
    s.steps.push_back(i);
    s.norms[0].push_back(0.0);
    s.norms[1].push_back(0.2 * i);
    s.moments.push_back({0.0, 0.0, 0.0});
  }
  NormSeries::Envelope env;
  env.order = 1;
  for (double t : s.times) env.curve.push_back(2.0 * t + 1e-6);
  s.envelopes["bound"] = env;

  CHECK(verify_envelope(s, "bound").pass);
  CHECK_THROWS_AS(verify_envelope(s, "missing"), std::invalid_argument);

  // deliberately corrupted series: norms doubled -> fail with a clear margin
  for (auto& v : s.norms[1]) v *= 2.0;
  const auto bad = verify_envelope(s, "bound");
  CHECK(!bad.pass);
  CHECK(bad.max_violation > 1.0);

  // zero solution trivially passes the decay check
  CHECK(verify_nonincreasing(s, 0).pass);
  // an uptick is flagged
  s.norms[0].back() = 1.0;
  CHECK(!verify_nonincreasing(s, 0).pass);
}

TEST_CASE("moment inversion round trip") {
  const auto params = make_params(1.3, 0.7, 2.1, 0.0, 0.0);
  const double rho = params.rho, u = params.u, T = params.temp;
  const std::array<double, 3> U{0.37, -0.82, 1.44};
  const std::array<double, 3> m{
      U[0], U[0] * u + rho * U[1],
      U[0] * (u * u + T) + 2.0 * rho * u * U[1] + rho * U[2]};
  const auto back = invert_moments(m, params);
  for (int c = 0; c < 3; ++c) CHECK(back[c] == doctest::Approx(U[c]).epsilon(1e-12));
}

TEST_CASE("linearized moments of simple fields") {
  const auto params = make_params(1.0, 0.0, 1.0, 0.0, 0.0);
  PhaseGrid grid{build_spatial_grid(8, 1.0), centered_velocity_grid(129, 0.0, 8.0)};

  DistributionField zero(8, 129);
  const auto st0 = linearized_moments(zero, grid, params);
  for (int i = 0; i < 8; ++i) {
    CHECK(st0.rho_t[i] == 0.0);
    CHECK(st0.u_t[i] == 0.0);
    CHECK(st0.T_t[i] == 0.0);
  }

  // f = 1 (the normalized constant mode at rho = 1): a pure density bump
  DistributionField one(8, 129);
  one.fill(1.0);
  const auto st1 = linearized_moments(one, grid, params);
  for (int i = 0; i < 8; ++i) {
    CHECK(st1.rho_t[i] == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(std::abs(st1.u_t[i]) <= 1e-10);
    CHECK(std::abs(st1.T_t[i]) <= 1e-7);
  }
}

TEST_CASE("acoustic matrix, characteristic speeds and the shift property") {
  const auto p = make_params(1.0, 0.0, 1.0, 0.0, 0.0);
  const auto A = acoustic_matrix(p);
  CHECK(A[0][0] == 0.0);
  CHECK(A[0][1] == 1.0);
  CHECK(A[0][2] == 0.0);
  CHECK(A[1][0] == 1.0);
  CHECK(A[1][1] == 0.0);
  CHECK(A[1][2] == 1.0);
  CHECK(A[2][0] == 0.0);
  CHECK(A[2][1] == 2.0);
  CHECK(A[2][2] == 0.0);

  const auto sp = acoustic_char_speeds(A);
  CHECK(std::abs(sp[0] + std::sqrt(3.0)) <= 1e-12);
  CHECK(std::abs(sp[1]) <= 1e-12);
  CHECK(std::abs(sp[2] - std::sqrt(3.0)) <= 1e-12);

  // A(rho, u, T) = u I + A(rho, 0, T): speeds shift by u
  const auto pu = make_params(1.3, 0.7, 2.0, 0.0, 0.0);
  const auto p0 = make_params(1.3, 0.0, 2.0, 0.0, 0.0);
  const auto su = acoustic_char_speeds(acoustic_matrix(pu));
  const auto s0 = acoustic_char_speeds(acoustic_matrix(p0));
  for (int k = 0; k < 3; ++k) CHECK(su[k] == doctest::Approx(0.7 + s0[k]).epsilon(1e-12));
}

TEST_CASE("acoustic residual vanishes without gradients") {
  const auto params = make_params(1.0, 0.0, 1.0, 0.0, 0.0);
  const int nx = 16;
  AcousticState flat;
  flat.rho_t.assign(nx, 0.3);
  flat.u_t.assign(nx, -0.1);
  flat.T_t.assign(nx, 0.2);
  std::vector<AcousticState> states(5, flat);
  std::vector<double> times{0.0, 0.1, 0.2, 0.3, 0.4};
  for (double r : acoustic_limit_residual(times, states, params, 0.1)) CHECK(r <= 1e-13);

  AcousticState zero;
  zero.rho_t.assign(nx, 0.0);
  zero.u_t.assign(nx, 0.0);
  zero.T_t.assign(nx, 0.0);
  std::vector<AcousticState> zstates(3, zero);
  std::vector<double> ztimes{0.0, 0.1, 0.2};
  for (double r : acoustic_limit_residual(ztimes, zstates, params, 0.1)) CHECK(r == 0.0);

  CHECK_THROWS_AS(acoustic_limit_residual(ztimes, states, params, 0.1), std::invalid_argument);
}
