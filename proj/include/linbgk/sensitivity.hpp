#pragma once

#include <vector>

#include "linbgk/solver.hpp"

namespace linbgk {

enum class Perturbation { velocity, temperature };

/// Coupled hierarchy of z-derivative fields of orders 0..n_max, all in one
/// frame and at one time. Order 0 satisfies the sourceless equation; order k
/// is forced by binomial combinations of the orders below it.
struct SensitivityStack {
  Perturbation kind = Perturbation::velocity;
  MaxwellianParams params;  // evaluated at z0
  std::vector<DistributionField> fields;

  int n_max() const { return static_cast<int>(fields.size()) - 1; }
  double time() const { return fields.empty() ? 0.0 : fields[0].time; }
};

SensitivityStack make_stack(const DistributionField& order0, int n_max, Perturbation kind,
                            const MaxwellianParams& params);

/// Replaces the (zero) higher-order initial data with the chain-rule values
/// induced by z-independent original-frame data: order n = eps_u^n d_v^n w0
/// for velocity; order 1 = eps_T/(2T) v d_v w0 for temperature (orders >= 2
/// are not supported in the temperature case).
void apply_chain_rule_init(SensitivityStack& stack, const PhaseGrid& grid);

/// Source of order k at the stack's current time:
/// velocity:    -sum_{n=1}^{k} C(k,n) (d_z^n u) d_x w^{(k-n)}  (affine: -k eps_u d_x w^{(k-1)})
/// temperature: -sum_{m=1}^{k} C(k,m) (d_z^m sqrt(T)) v d_x w^{(k-m)}
/// d_x is the centered periodic difference.
void velocity_source(const SensitivityStack& stack, int k, const PhaseGrid& grid,
                     DistributionField& out);
void temperature_source(const SensitivityStack& stack, int k, const PhaseGrid& grid,
                        DistributionField& out);

struct StackWorkspace {
  std::vector<DistributionField> old_fields;
  DistributionField mid, ddx, src;
  SolverWorkspace sw;
};

/// Advances all orders by one step, lower orders first; order k's source is
/// evaluated on the time-midpoint (average of pre- and post-step) states of
/// the orders below it, so results for orders < n are independent of n_max.
void advance_stack(SensitivityStack& stack, const PhaseGrid& grid, const CollisionOperator& op,
                   const FrameSpec& frame, double dt, double knudsen, kernels::Scheme scheme,
                   StackWorkspace& ws);

/// Integrates the stack to t_end, recording per-order norms and order-0
/// moments (and optionally the order-0 x-derivative norm) at every sample.
NormSeries solve_stack(SensitivityStack& stack, const SolverConfig& cfg, const PhaseGrid& grid,
                       const CollisionOperator& op, const FrameSpec& frame,
                       const SolveOptions& opts = {});

/// Original-frame first z-derivative recovered from a velocity stack; the
/// result is tabulated on the original-frame nodes v + u* (a pure relabeling
/// of the shifted grid). Inherits the O(dv^2) error of the centered d_v.
/// Temperature stacks are rejected: the scaled-frame chain rule is verified
/// in the scaled frame only.
DistributionField frame_sensitivity_convert(const SensitivityStack& stack, const PhaseGrid& grid);

}  // namespace linbgk
