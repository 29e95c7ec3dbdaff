#include "linbgk/collision.hpp"

#include <stdexcept>

namespace linbgk {

void CollisionOperator::check(std::span<const double> f) const {
  if (static_cast<int>(f.size()) != basis_.grid.n_v)
    throw std::invalid_argument("CollisionOperator: slice size does not match velocity grid");
}

void CollisionOperator::project(std::span<const double> f, std::span<double> out) const {
  check(f);
  check(out);
  std::array<double, CollisionBasis::kHydroDim> c{};
  for (int m = 0; m < CollisionBasis::kHydroDim; ++m) c[m] = basis_.inner(basis_.chi[m], f);
  for (int j = 0; j < basis_.grid.n_v; ++j)
    out[j] = c[0] * basis_.chi[0][j] + c[1] * basis_.chi[1][j] + c[2] * basis_.chi[2][j];
}

void CollisionOperator::apply(std::span<const double> f, std::span<double> out) const {
  project(f, out);
  for (int j = 0; j < basis_.grid.n_v; ++j) out[j] -= f[j];
}

std::array<double, 3> CollisionOperator::moments_weighted(std::span<const double> f) const {
  check(f);
  std::array<double, 3> m{0.0, 0.0, 0.0};
  for (int j = 0; j < basis_.grid.n_v; ++j) {
    const double v = basis_.grid.nodes[j];
    const double q = basis_.weight_row[j] * f[j];
    m[0] += q;
    m[1] += q * v;
    m[2] += q * v * v;
  }
  return m;
}

void CollisionOperator::apply_field(const DistributionField& w, DistributionField& out) const {
  if (!w.same_shape(out) || w.nv != basis_.grid.n_v)
    throw std::invalid_argument("CollisionOperator::apply_field: grid mismatch");
#pragma omp parallel for schedule(static)
  for (int i = 0; i < w.nx; ++i) apply(w.row(i), out.row(i));
}

double norm_xv_weighted(const DistributionField& w, const PhaseGrid& g, const CollisionBasis& b) {
  if (w.nx != g.x.n_x || w.nv != g.v.n_v || w.nv != b.grid.n_v)
    throw std::invalid_argument("norm_xv_weighted: grid mismatch");
  double s = 0.0;
  for (int i = 0; i < w.nx; ++i) {
    const auto r = w.row(i);
    double si = 0.0;
    for (int j = 0; j < w.nv; ++j) si += b.weight_row[j] * r[j] * r[j];
    s += si;
  }
  return std::sqrt(g.x.spacing * s);
}

CollisionOperator make_collision_operator(const MaxwellianParams& params, const VelocityGrid& grid,
                                          WeightFrame frame, int extra_modes) {
  MaxwellianParams weight = params;
  switch (frame) {
    case WeightFrame::star:
      break;
    case WeightFrame::zero_mean:
      weight.u = 0.0;
      break;
    case WeightFrame::unit:
      weight.u = 0.0;
      weight.temp = 1.0;
      break;
  }
  return {frame, build_collision_basis(weight, grid, extra_modes)};
}

}  // namespace linbgk
