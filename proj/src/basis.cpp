#include "linbgk/basis.hpp"

#include <stdexcept>
#include <string>

namespace linbgk {

CollisionBasis build_collision_basis(const MaxwellianParams& params, const VelocityGrid& grid,
                                     int extra_modes) {
  if (extra_modes < 0) throw std::invalid_argument("build_collision_basis: extra_modes < 0");
  const double sigma8 = 8.0 * std::sqrt(params.temp);
  if (params.u - grid.v_min < sigma8 || grid.v_max - params.u < sigma8)
    throw std::invalid_argument(
        "build_collision_basis: velocity grid must cover >= 8 standard deviations around u");

  CollisionBasis b;
  b.extra_modes = extra_modes;
  b.weight = params;
  b.grid = grid;
  b.weight_row.resize(grid.n_v);
  b.weight_min = 0.0;
  b.weight_max = 0.0;
  for (int j = 0; j < grid.n_v; ++j) {
    const double m = params.maxwellian(grid.nodes[j]);
    b.weight_row[j] = grid.quad_weights[j] * m;
    if (j == 0 || m < b.weight_min) b.weight_min = m;
    if (j == 0 || m > b.weight_max) b.weight_max = m;
  }

  const int n = b.n_modes();
  const double sqt = std::sqrt(params.temp);
  b.chi.assign(n, std::vector<double>(grid.n_v));
  double first_norm = 0.0;
  for (int m = 0; m < n; ++m) {
    // Monomials in the standardized variable (v - u)/sqrt(T) for conditioning.
    auto& c = b.chi[m];
    for (int j = 0; j < grid.n_v; ++j) c[j] = std::pow((grid.nodes[j] - params.u) / sqt, m);

    // Modified Gram-Schmidt with a second pass for round-off orthogonality.
    for (int pass = 0; pass < 2; ++pass) {
      for (int k = 0; k < m; ++k) {
        const double proj = b.inner(c, b.chi[k]);
        for (int j = 0; j < grid.n_v; ++j) c[j] -= proj * b.chi[k][j];
      }
    }
    const double nrm = std::sqrt(b.inner(c, c));
    if (m == 0) first_norm = nrm;
    if (!(nrm > 1e-10 * first_norm))
      throw std::runtime_error("build_collision_basis: grid too coarse, Gram matrix singular at mode " +
                               std::to_string(m));
    for (int j = 0; j < grid.n_v; ++j) c[j] /= nrm;
  }
  return b;
}

}  // namespace linbgk
