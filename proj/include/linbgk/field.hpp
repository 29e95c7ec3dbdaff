#pragma once

#include <array>
#include <span>
#include <vector>

#include "linbgk/grid.hpp"

namespace linbgk {

enum class Frame { original, shifted, scaled };

struct PhaseGrid {
  SpatialGrid x;
  VelocityGrid v;
};

/// Scalar field w(x,v) tabulated on a phase grid, row-major (x outer, v inner).
/// Tagged with its frame and sensitivity order.
struct DistributionField {
  int nx = 0, nv = 0;
  Frame frame = Frame::original;
  int order = 0;
  double time = 0.0;
  std::vector<double> data;

  DistributionField() = default;
  DistributionField(int nx_, int nv_, Frame f = Frame::original, int ord = 0)
      : nx(nx_), nv(nv_), frame(f), order(ord), data(static_cast<size_t>(nx_) * nv_, 0.0) {}

  double& at(int i, int j) { return data[static_cast<size_t>(i) * nv + j]; }
  double at(int i, int j) const { return data[static_cast<size_t>(i) * nv + j]; }
  std::span<double> row(int i) { return {data.data() + static_cast<size_t>(i) * nv, static_cast<size_t>(nv)}; }
  std::span<const double> row(int i) const {
    return {data.data() + static_cast<size_t>(i) * nv, static_cast<size_t>(nv)};
  }
  bool same_shape(const DistributionField& o) const { return nx == o.nx && nv == o.nv; }
  void fill(double val) { data.assign(data.size(), val); }
};

/// Unweighted discrete L2(dx dv) pairing: sum_ij dx * w_j * a_ij * b_ij.
double inner_xv(const DistributionField& a, const DistributionField& b, const PhaseGrid& g);
double norm_xv(const DistributionField& a, const PhaseGrid& g);

/// x-integrated weighted moments of w against {1, v, v^2}.
std::array<double, 3> integrated_moments(const DistributionField& w, const PhaseGrid& g,
                                         const MaxwellianParams& weight);

/// Centered periodic x-derivative (the discrete derivative used for sources).
DistributionField central_dx(const DistributionField& w, const PhaseGrid& g);

/// Centered v-derivative, one-sided at the grid ends.
DistributionField central_dv(const DistributionField& w, const PhaseGrid& g);

bool all_finite(const DistributionField& w);

}  // namespace linbgk
