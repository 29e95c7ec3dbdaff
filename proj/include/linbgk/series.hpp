#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

namespace linbgk {

/// Sampled history of a run: norms per sensitivity order, weighted
/// x-integrated moments of the order-0 field, and named bound envelopes for
/// post-hoc verification.
///
/// Two norms are tracked side by side. `norms` is the plain L2(dx dv) norm;
/// `norms_w` is the Maxwellian-weighted L2(M dx dv) norm, the energy
/// functional that the collision operator actually makes dissipative (the
/// projection is orthogonal only under the weighted product). Bound checks
/// run on the weighted norm; both are reported.
struct NormSeries {
  std::vector<double> times;
  std::vector<long> steps;
  std::vector<std::vector<double>> norms;      // [order][sample], L2(dx dv)
  std::vector<std::vector<double>> norms_w;    // [order][sample], L2(M dx dv)
  std::vector<std::array<double, 3>> moments;  // order-0: mass, momentum, energy
  std::vector<double> dx_norm;                 // ||d_x w0||, when recorded
  std::vector<double> dx_norm_w;

  struct Envelope {
    int order = 0;
    bool weighted = false;  // which norm family the curve bounds
    std::vector<double> curve;
  };
  std::map<std::string, Envelope> envelopes;

  int n_orders() const { return static_cast<int>(norms.size()); }
  size_t n_samples() const { return times.size(); }
};

}  // namespace linbgk
