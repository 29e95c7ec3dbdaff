#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "linbgk/sensitivity.hpp"
#include "linbgk/series.hpp"

namespace linbgk {

struct EnvelopeReport {
  std::string name;
  bool pass = false;
  double max_violation = 0.0;          // worst norm - allowed excess, <= 0 when passing
  std::vector<double> margin;          // envelope*(1+tol) + tol_abs - norm per sample
};

/// Checks norms[order] <= envelope*(1 + tol_rel) + tol_abs at every sample.
EnvelopeReport verify_envelope(const NormSeries& series, const std::string& name,
                               double tol_rel = 1e-6, double tol_abs = 1e-10);

/// Monotone-decay check: each sample may exceed the previous one by at most
/// a per-step relative tolerance (scaled by the number of steps in between).
EnvelopeReport verify_nonincreasing(std::span<const double> values, std::span<const long> steps,
                                    const std::string& name, double per_step_tol = 1e-10);
EnvelopeReport verify_nonincreasing(const NormSeries& series, int order,
                                    double per_step_tol = 1e-10);

struct GrowthFit {
  double exponent = 0.0;
  double prefactor = 0.0;
  double r2 = 0.0;
  int n_samples = 0;
};

/// Least-squares slope of log(norm) vs log(t) on [t_lo, t_hi]. Requires at
/// least 20 usable samples with norms above the 1e-12 floor.
GrowthFit fit_growth_exponent(std::span<const double> times, std::span<const double> norms,
                              double t_lo, double t_hi);

/// Central finite-difference combination of per-node fields (3 or 5 equispaced
/// z-nodes, ascending) for the derivative of the given order.
DistributionField fd_combine(std::span<const DistributionField> nodes, double delta, int order);

struct CollocationProblem {
  PhaseGrid grid;
  MaxwellianParams params;  // family; evaluated per node
  Perturbation kind = Perturbation::velocity;
  SolverConfig cfg;
  DistributionField initial;  // z-independent initial data in the active frame
  int extra_modes = 1;
};

struct CollocationResult {
  std::vector<double> snap_times;
  // fd[d-1][s]: d-th z-derivative estimate at snapshot s
  std::vector<std::vector<DistributionField>> fd;
};

/// Solves the order-0 equation independently at each z node (the frame keeps
/// the collision operator z-independent; only the advection changes) and
/// returns central-difference sensitivities up to order n_z - 1.
CollocationResult collocation_oracle(const CollocationProblem& prob, double z0, double delta,
                                     int n_z, std::span<const double> snap_times);

/// Spatial profiles of the linearized macroscopic quantities.
struct AcousticState {
  std::vector<double> rho_t, u_t, T_t;
};

/// Solves the triangular relation (m0; m0 u + rho u~; m0(u^2+T) + 2 rho u u~
/// + rho T~) = m for (rho~, u~, T~).
std::array<double, 3> invert_moments(const std::array<double, 3>& m,
                                     const MaxwellianParams& params);

/// Weighted moments per x, inverted through the triangular relation.
AcousticState linearized_moments(const DistributionField& f, const PhaseGrid& grid,
                                 const MaxwellianParams& params);

using Mat3 = std::array<std::array<double, 3>, 3>;

/// [[u, rho, 0], [T/rho, u, 1], [0, 2T, u]].
Mat3 acoustic_matrix(const MaxwellianParams& params);

/// Real eigenvalues of the acoustic matrix, ascending (u - sqrt(3T), u,
/// u + sqrt(3T)); computed numerically from the characteristic polynomial.
std::array<double, 3> acoustic_char_speeds(const Mat3& A);

/// ||d_t U + A d_x U|| at interior sample times (centered differences in both
/// sampled time and x).
std::vector<double> acoustic_limit_residual(std::span<const double> times,
                                            std::span<const AcousticState> states,
                                            const MaxwellianParams& params, double dx);

}  // namespace linbgk
