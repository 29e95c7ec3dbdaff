/// Projection-defect collision operator: null space, spectral action,
/// conservation and the dissipativity properties, on random grid functions.

#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <random>

#include "linbgk/collision.hpp"

using namespace linbgk;

namespace {

struct Setup {
  MaxwellianParams p = make_params(1.0, 0.0, 1.0, 0.0, 0.0);
  VelocityGrid grid = centered_velocity_grid(129, 0.0, 8.0);
  CollisionOperator op = make_collision_operator(p, grid, WeightFrame::unit, 2);
};

double rand_pm1(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-52 - 1.0; }

}  // namespace

TEST_CASE("projection of v^3 under the unit Maxwellian is 3v") {
  Setup s;
  std::vector<double> f(s.grid.n_v), out(s.grid.n_v);
  for (int j = 0; j < s.grid.n_v; ++j) f[j] = std::pow(s.grid.nodes[j], 3);
  s.op.project(f, out);
  // Oracle: <v, v^3> = E[v^4] = 3 for the standard Gaussian, so m[v^3] = 3v.
  for (int j = 0; j < s.grid.n_v; ++j)
    CHECK(std::abs(out[j] - 3.0 * s.grid.nodes[j]) <= 1e-6 * (1.0 + std::abs(3.0 * s.grid.nodes[j])));

  // apply(v^3) = 3v - v^3
  s.op.apply(f, out);
  for (int j = 0; j < s.grid.n_v; ++j) {
    const double expect = 3.0 * s.grid.nodes[j] - f[j];
    CHECK(std::abs(out[j] - expect) <= 1e-6 * (1.0 + std::abs(expect)));
  }
}

TEST_CASE("projection fixes basis elements and kills extra modes") {
  Setup s;
  std::vector<double> out(s.grid.n_v);
  s.op.project(s.op.basis().chi[2], out);
  for (int j = 0; j < s.grid.n_v; ++j) CHECK(std::abs(out[j] - s.op.basis().chi[2][j]) <= 1e-12);

  s.op.project(s.op.basis().chi[3], out);
  for (int j = 0; j < s.grid.n_v; ++j) CHECK(std::abs(out[j]) <= 1e-12);

  // idempotence on a generic slice
  std::vector<double> f(s.grid.n_v), once(s.grid.n_v), twice(s.grid.n_v);
  for (int j = 0; j < s.grid.n_v; ++j) f[j] = std::sin(0.3 * j) + 0.2 * j * 0.01;
  s.op.project(f, once);
  s.op.project(once, twice);
  for (int j = 0; j < s.grid.n_v; ++j) CHECK(std::abs(once[j] - twice[j]) <= 1e-12);
}

TEST_CASE("null space of the collision operator is exact") {
  Setup s;
  std::vector<double> f(s.grid.n_v), out(s.grid.n_v);
  for (int k = 0; k <= 2; ++k) {
    for (int j = 0; j < s.grid.n_v; ++j) f[j] = std::pow(s.grid.nodes[j], k);
    s.op.apply(f, out);
    const double scale = std::sqrt(s.op.basis().inner(f, f));
    CHECK(std::sqrt(s.op.basis().inner(out, out)) <= 1e-12 * scale);
  }
  // zero maps to zero
  f.assign(s.grid.n_v, 0.0);
  s.op.apply(f, out);
  for (double x : out) CHECK(x == 0.0);
}

TEST_CASE("weighted moments vanish on the collision range") {
  Setup s;
  std::mt19937_64 rng(17);
  std::vector<double> f(s.grid.n_v), lf(s.grid.n_v);
  for (int trial = 0; trial < 50; ++trial) {
    for (auto& x : f) x = rand_pm1(rng);
    s.op.apply(f, lf);
    for (double m : s.op.moments_weighted(lf)) CHECK(std::abs(m) <= 1e-12);
  }
  const auto m0 = s.op.moments_weighted(s.op.basis().chi[0]);
  // chi_0 = 1 for rho = 1: moments are the plain Gaussian moments (1, 0, 1)
  CHECK(m0[0] == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(std::abs(m0[1]) <= 1e-12);
  CHECK(m0[2] == doctest::Approx(1.0).epsilon(1e-8));
  const auto mz = s.op.moments_weighted(std::vector<double>(s.grid.n_v, 0.0));
  for (double m : mz) CHECK(m == 0.0);
}

TEST_CASE("coercivity, self-adjointness and contraction on random fields") {
  Setup s;
  const auto& b = s.op.basis();
  std::mt19937_64 rng(99);
  std::vector<double> f(s.grid.n_v), g(s.grid.n_v), lf(s.grid.n_v), lg(s.grid.n_v);
  for (int trial = 0; trial < 1000; ++trial) {
    for (auto& x : f) x = rand_pm1(rng);
    for (auto& x : g) x = rand_pm1(rng);
    s.op.apply(f, lf);
    s.op.apply(g, lg);
    const double nf = std::sqrt(b.inner(f, f)), ng = std::sqrt(b.inner(g, g));
    CHECK(b.inner(lf, f) <= 1e-12 * std::max(1.0, nf * nf));
    CHECK(std::abs(b.inner(lf, g) - b.inner(f, lg)) <= 1e-12 * nf * ng);
    // projection defect is a contraction, and the stated bound sqrt(d) = 1
    CHECK(std::sqrt(b.inner(lf, lf)) <= nf * (1.0 + 1e-12));
  }
}

TEST_CASE("spectral action on higher modes") {
  Setup s;
  std::vector<double> out(s.grid.n_v);
  for (int m = 3; m < s.op.basis().n_modes(); ++m) {
    s.op.apply(s.op.basis().chi[m], out);
    for (int j = 0; j < s.grid.n_v; ++j)
      CHECK(std::abs(out[j] + s.op.basis().chi[m][j]) <= 1e-12);
  }
}

TEST_CASE("operator is linear") {
  Setup s;
  std::mt19937_64 rng(7);
  std::vector<double> f(s.grid.n_v), g(s.grid.n_v), sum(s.grid.n_v);
  std::vector<double> lf(s.grid.n_v), lg(s.grid.n_v), lsum(s.grid.n_v);
  for (auto& x : f) x = rand_pm1(rng);
  for (auto& x : g) x = rand_pm1(rng);
  for (int j = 0; j < s.grid.n_v; ++j) sum[j] = 2.0 * f[j] - 3.0 * g[j];
  s.op.apply(f, lf);
  s.op.apply(g, lg);
  s.op.apply(sum, lsum);
  for (int j = 0; j < s.grid.n_v; ++j)
    CHECK(std::abs(lsum[j] - (2.0 * lf[j] - 3.0 * lg[j])) <= 1e-12);
}

TEST_CASE("slice size mismatch is rejected") {
  Setup s;
  std::vector<double> bad(7, 1.0), out(s.grid.n_v);
  CHECK_THROWS_AS(s.op.project(bad, out), std::invalid_argument);
}
