#include "linbgk/field.hpp"

#include <cmath>
#include <stdexcept>

#include "linbgk/kernels.hpp"

namespace linbgk {

namespace {
void check_shapes(const DistributionField& a, const DistributionField& b, const PhaseGrid& g) {
  if (!a.same_shape(b) || a.nx != g.x.n_x || a.nv != g.v.n_v)
    throw std::invalid_argument("field: grid mismatch");
}
}  // namespace

double inner_xv(const DistributionField& a, const DistributionField& b, const PhaseGrid& g) {
  check_shapes(a, b, g);
  double s = 0.0;
  for (int i = 0; i < a.nx; ++i) {
    const auto ra = a.row(i);
    const auto rb = b.row(i);
    double si = 0.0;
    for (int j = 0; j < a.nv; ++j) si += g.v.quad_weights[j] * ra[j] * rb[j];
    s += si;
  }
  return g.x.spacing * s;
}

double norm_xv(const DistributionField& a, const PhaseGrid& g) {
  return std::sqrt(inner_xv(a, a, g));
}

std::array<double, 3> integrated_moments(const DistributionField& w, const PhaseGrid& g,
                                         const MaxwellianParams& weight) {
  if (w.nx != g.x.n_x || w.nv != g.v.n_v)
    throw std::invalid_argument("integrated_moments: grid mismatch");
  std::array<double, 3> m{0.0, 0.0, 0.0};
  for (int i = 0; i < w.nx; ++i) {
    const auto r = w.row(i);
    double m0 = 0.0, m1 = 0.0, m2 = 0.0;
    for (int j = 0; j < w.nv; ++j) {
      const double v = g.v.nodes[j];
      const double q = g.v.quad_weights[j] * weight.maxwellian(v) * r[j];
      m0 += q;
      m1 += q * v;
      m2 += q * v * v;
    }
    m[0] += m0;
    m[1] += m1;
    m[2] += m2;
  }
  for (auto& x : m) x *= g.x.spacing;
  return m;
}

DistributionField central_dx(const DistributionField& w, const PhaseGrid& g) {
  if (w.nx != g.x.n_x || w.nv != g.v.n_v) throw std::invalid_argument("central_dx: grid mismatch");
  DistributionField out(w.nx, w.nv, w.frame, w.order);
  out.time = w.time;
  kernels::central_dx_field(w.data.data(), out.data.data(), w.nx, w.nv, g.x.spacing);
  return out;
}

DistributionField central_dv(const DistributionField& w, const PhaseGrid& g) {
  if (w.nx != g.x.n_x || w.nv != g.v.n_v) throw std::invalid_argument("central_dv: grid mismatch");
  DistributionField out(w.nx, w.nv, w.frame, w.order);
  out.time = w.time;
  const double dv = g.v.spacing();
  for (int i = 0; i < w.nx; ++i) {
    const auto r = w.row(i);
    auto o = out.row(i);
    o[0] = (r[1] - r[0]) / dv;
    for (int j = 1; j < w.nv - 1; ++j) o[j] = (r[j + 1] - r[j - 1]) / (2.0 * dv);
    o[w.nv - 1] = (r[w.nv - 1] - r[w.nv - 2]) / dv;
  }
  return out;
}

bool all_finite(const DistributionField& w) {
  for (double x : w.data)
    if (!std::isfinite(x)) return false;
  return true;
}

}  // namespace linbgk
