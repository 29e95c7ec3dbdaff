#include "linbgk/grid.hpp"

#include <stdexcept>
#include <string>

namespace linbgk {

SpatialGrid build_spatial_grid(int n_x, double length) {
  if (n_x < 4) throw std::invalid_argument("build_spatial_grid: n_x must be >= 4");
  if (!(length > 0.0)) throw std::invalid_argument("build_spatial_grid: length must be > 0");
  SpatialGrid g;
  g.n_x = n_x;
  g.length = length;
  g.spacing = length / n_x;
  g.nodes.resize(n_x);
  for (int i = 0; i < n_x; ++i) g.nodes[i] = (i + 0.5) * g.spacing;
  return g;
}

VelocityGrid build_velocity_grid(int n_v, double v_min, double v_max) {
  if (n_v < 2) throw std::invalid_argument("build_velocity_grid: n_v must be >= 2");
  if (!(v_min < v_max)) throw std::invalid_argument("build_velocity_grid: v_min < v_max required");
  VelocityGrid g;
  g.n_v = n_v;
  g.v_min = v_min;
  g.v_max = v_max;
  const double dv = (v_max - v_min) / (n_v - 1);
  g.nodes.resize(n_v);
  g.quad_weights.assign(n_v, dv);
  for (int j = 0; j < n_v; ++j) g.nodes[j] = v_min + j * dv;
  g.quad_weights.front() = 0.5 * dv;
  g.quad_weights.back() = 0.5 * dv;
  return g;
}

VelocityGrid centered_velocity_grid(int n_v, double center, double halfwidth) {
  if (!(halfwidth > 0.0))
    throw std::invalid_argument("centered_velocity_grid: halfwidth must be > 0");
  return build_velocity_grid(n_v, center - halfwidth, center + halfwidth);
}

double MaxwellianParams::dz_sqrt_temp(int n) const {
  if (n == 0) return std::sqrt(temp);
  double coef = 1.0;
  for (int i = 0; i < n; ++i) coef *= 0.5 - i;
  return coef * std::pow(eps_T, n) * std::pow(temp, 0.5 - n);
}

MaxwellianParams MaxwellianParams::at(double zz) const {
  MaxwellianParams p = *this;
  p.z = zz;
  p.u = u_at(zz);
  p.temp = temp_at(zz);
  if (!(p.temp > 0.0))
    throw std::invalid_argument("MaxwellianParams::at: T(z) <= 0 at z = " + std::to_string(zz));
  return p;
}

MaxwellianParams make_params(double rho, double u0, double T0, double eps_u, double eps_T,
                             double z) {
  if (!(rho > 0.0)) throw std::invalid_argument("make_params: rho must be > 0");
  MaxwellianParams p;
  p.rho = rho;
  p.u0 = u0;
  p.eps_u = eps_u;
  p.T0 = T0;
  p.eps_T = eps_T;
  return p.at(z);
}

double inner_weighted(std::span<const double> a, std::span<const double> b,
                      const MaxwellianParams& params, const VelocityGrid& grid) {
  if (a.size() != b.size() || static_cast<int>(a.size()) != grid.n_v)
    throw std::invalid_argument("inner_weighted: size mismatch with velocity grid");
  double s = 0.0;
  for (int j = 0; j < grid.n_v; ++j)
    s += grid.quad_weights[j] * a[j] * b[j] * params.maxwellian(grid.nodes[j]);
  return s;
}

}  // namespace linbgk
