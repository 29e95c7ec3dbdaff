#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "linbgk/collision.hpp"
#include "linbgk/field.hpp"
#include "linbgk/kernels.hpp"
#include "linbgk/series.hpp"

namespace linbgk {

/// Advection a(v) = advect_scale * v + advect_shift, constant in t and x:
/// a(v) = v (original), v + u* (shifted), sqrt(T*) v (scaled).
struct FrameSpec {
  Frame kind = Frame::original;
  double advect_scale = 1.0;
  double advect_shift = 0.0;

  std::vector<double> speeds(const VelocityGrid& g) const;
  double max_speed(const VelocityGrid& g) const;

  static FrameSpec original() { return {Frame::original, 1.0, 0.0}; }
  static FrameSpec shifted(double u_star) { return {Frame::shifted, 1.0, u_star}; }
  static FrameSpec scaled(double T_star);
};

struct SolverConfig {
  double dt = 0.0;  // 0 -> derive from cfl_safety
  double t_end = 0.0;
  double knudsen = 1.0;
  double cfl_safety = 0.5;
  kernels::Scheme scheme = kernels::Scheme::upwind;
  long sample_stride = 0;  // 0 -> max(1, n_steps/500)
};

struct TimeGrid {
  double dt = 0.0;
  long n_steps = 0;
  long stride = 1;
};

/// Resolves dt, step count and sample stride against the grid and frame.
/// Throws if an explicit dt violates the CFL condition.
TimeGrid resolve_time(const SolverConfig& cfg, const PhaseGrid& grid, const FrameSpec& frame);

/// Raised when a step produces non-finite entries; carries the last valid
/// field for diagnostics.
struct SolverAbort : std::runtime_error {
  SolverAbort(const std::string& msg, DistributionField last, double t, long step)
      : std::runtime_error(msg), last_valid(std::move(last)), t_abort(t), step_abort(step) {}
  DistributionField last_valid;
  double t_abort = 0.0;
  long step_abort = 0;
};

/// Scratch buffers reused across steps.
struct SolverWorkspace {
  DistributionField a, b;
  void resize(const DistributionField& like) {
    if (!a.same_shape(like)) {
      a = like;
      b = like;
    }
  }
};

/// Conservative upwind/MUSCL transport update over dt (total unweighted mass
/// exactly conserved by telescoping fluxes).
void transport_substep(DistributionField& w, const PhaseGrid& grid, const FrameSpec& frame,
                       double dt, kernels::Scheme scheme, SolverWorkspace& ws);

/// One Strang step: half transport, exact collision relaxation with Duhamel
/// source weights, half transport. src (if present) is the midpoint source.
/// Deterministic: identical inputs give bit-identical outputs.
void step(DistributionField& w, const DistributionField* src, const PhaseGrid& grid,
          const CollisionOperator& op, const FrameSpec& frame, double dt, double knudsen,
          kernels::Scheme scheme, SolverWorkspace& ws);

/// Fills `src` with the source at time t (midpoint of the current step).
using SourceFn = std::function<void(double t, DistributionField& src)>;

struct SolveOptions {
  bool record_dx_norm = false;
  std::function<void(long step, const DistributionField& w)> on_sample;
};

/// Integrates w to t_end, recording norms, weighted moments and (optionally)
/// the norm of the discrete x-derivative at every sample.
NormSeries solve(DistributionField& w, const SolverConfig& cfg, const PhaseGrid& grid,
                 const CollisionOperator& op, const FrameSpec& frame, const SourceFn& src = nullptr,
                 const SolveOptions& opts = {});

/// g(x, v) = f(x, v - u_star), monotone cubic interpolation in v per x-row.
/// Throws if an evaluation point leaves the source grid.
DistributionField frame_transform_shift(const DistributionField& f, const VelocityGrid& src_grid,
                                        const VelocityGrid& dst_grid, double u_star);

/// p(x, v) = f(x, v / sqrt(T_star)), analogous to the shift transform.
DistributionField frame_transform_scale(const DistributionField& f, const VelocityGrid& src_grid,
                                        const VelocityGrid& dst_grid, double T_star);

}  // namespace linbgk
