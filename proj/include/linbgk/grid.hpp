#pragma once

#include <cmath>
#include <numbers>
#include <span>
#include <vector>

namespace linbgk {

/// Periodic grid of cell centers on [0, length).
struct SpatialGrid {
  int n_x = 0;
  double length = 0.0;
  double spacing = 0.0;
  std::vector<double> nodes;

  int wrap(int i) const {
    int m = i % n_x;
    return m < 0 ? m + n_x : m;
  }
};

SpatialGrid build_spatial_grid(int n_x, double length);

/// Uniform velocity grid on [v_min, v_max] with composite-trapezoid weights.
struct VelocityGrid {
  int n_v = 0;
  double v_min = 0.0;
  double v_max = 0.0;
  std::vector<double> nodes;
  std::vector<double> quad_weights;

  double spacing() const { return (v_max - v_min) / (n_v - 1); }
  bool same_as(const VelocityGrid& o) const {
    return n_v == o.n_v && v_min == o.v_min && v_max == o.v_max;
  }
};

VelocityGrid build_velocity_grid(int n_v, double v_min, double v_max);
VelocityGrid centered_velocity_grid(int n_v, double center, double halfwidth);

/// Gaussian equilibrium parameters (rho, u, temp) evaluated at a point z of
/// the affine family u(z) = u0 + eps_u*z, T(z) = T0 + eps_T*z.
struct MaxwellianParams {
  double rho = 1.0;
  double u = 0.0;
  double temp = 1.0;
  double u0 = 0.0, eps_u = 0.0;
  double T0 = 1.0, eps_T = 0.0;
  double z = 0.0;

  double maxwellian(double v) const {
    const double d = v - u;
    return rho / std::sqrt(2.0 * std::numbers::pi * temp) * std::exp(-d * d / (2.0 * temp));
  }

  double u_at(double zz) const { return u0 + eps_u * zz; }
  double temp_at(double zz) const { return T0 + eps_T * zz; }

  /// n-th z-derivative of u(z); the family is affine, so zero for n >= 2.
  double dz_u(int n) const { return n == 1 ? eps_u : (n == 0 ? u : 0.0); }

  /// n-th z-derivative of sqrt(T(z)) in closed form:
  /// (1/2)(1/2-1)...(1/2-n+1) * eps_T^n * T^(1/2-n).
  double dz_sqrt_temp(int n) const;

  /// Same family re-evaluated at zz. Throws if T(zz) <= 0.
  MaxwellianParams at(double zz) const;
};

MaxwellianParams make_params(double rho, double u0, double T0, double eps_u, double eps_T,
                             double z = 0.0);

/// Discrete weighted inner product <a,b>_* = sum_j w_j a_j b_j M(v_j).
double inner_weighted(std::span<const double> a, std::span<const double> b,
                      const MaxwellianParams& params, const VelocityGrid& grid);

}  // namespace linbgk
