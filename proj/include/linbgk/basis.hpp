#pragma once

#include <cmath>
#include <vector>

#include "linbgk/grid.hpp"

namespace linbgk {

/// Discretely orthonormal functions chi_0..chi_{2+M} spanning {1, v, v^2, ...}
/// under the weighted inner product of a fixed Maxwellian. Built by
/// Gram-Schmidt on the grid, so orthonormality holds to round-off at any
/// resolution.
struct CollisionBasis {
  static constexpr int kHydroDim = 3;  // span{1, v, v^2} in 1D

  int extra_modes = 0;
  MaxwellianParams weight;
  VelocityGrid grid;
  std::vector<std::vector<double>> chi;
  std::vector<double> weight_row;  // quad_weights[j] * M(v_j)
  double weight_min = 0.0, weight_max = 0.0;

  int n_modes() const { return kHydroDim + extra_modes; }

  /// sqrt(max M / min M) on the grid: the factor through which the weighted
  /// and unweighted L2 norms are equivalent on the truncated velocity range.
  double norm_equivalence_factor() const { return std::sqrt(weight_max / weight_min); }

  double inner(std::span<const double> a, std::span<const double> b) const {
    double s = 0.0;
    for (int j = 0; j < grid.n_v; ++j) s += weight_row[j] * a[j] * b[j];
    return s;
  }
};

/// Gram-Schmidt orthonormalization of {1, v, ..., v^{2+extra_modes}} under the
/// discrete weighted product. Throws if the grid cannot resolve the requested
/// number of modes (numerically singular Gram matrix).
CollisionBasis build_collision_basis(const MaxwellianParams& params, const VelocityGrid& grid,
                                     int extra_modes = 0);

}  // namespace linbgk
