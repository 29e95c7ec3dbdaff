#include "linbgk/sensitivity.hpp"

#include <cmath>
#include <stdexcept>

namespace linbgk {

namespace {

double binomial(int n, int k) {
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

/// out += coef * d_x(w), optionally multiplied by v per node.
void add_scaled_dx(const DistributionField& w, const PhaseGrid& grid, double coef, bool times_v,
                   DistributionField& ddx, DistributionField& out) {
  kernels::central_dx_field(w.data.data(), ddx.data.data(), w.nx, w.nv, grid.x.spacing);
  for (int i = 0; i < w.nx; ++i) {
    const auto d = ddx.row(i);
    auto o = out.row(i);
    if (times_v) {
      for (int j = 0; j < w.nv; ++j) o[j] += coef * grid.v.nodes[j] * d[j];
    } else {
      for (int j = 0; j < w.nv; ++j) o[j] += coef * d[j];
    }
  }
}

/// Source of order k built from explicitly supplied lower-order states.
void source_from(Perturbation kind, const MaxwellianParams& params,
                 const std::vector<const DistributionField*>& lower, int k, const PhaseGrid& grid,
                 DistributionField& ddx, DistributionField& out) {
  out.fill(0.0);
  for (int m = 1; m <= k; ++m) {
    const double deriv =
        kind == Perturbation::velocity ? params.dz_u(m) : params.dz_sqrt_temp(m);
    if (deriv == 0.0) continue;
    const double coef = -binomial(k, m) * deriv;
    add_scaled_dx(*lower[k - m], grid, coef, kind == Perturbation::temperature, ddx, out);
  }
}

void check_order(const SensitivityStack& stack, int k) {
  if (k < 1 || k > stack.n_max())
    throw std::invalid_argument("sensitivity source: orders below k must be available");
}

}  // namespace

SensitivityStack make_stack(const DistributionField& order0, int n_max, Perturbation kind,
                            const MaxwellianParams& params) {
  if (n_max < 0) throw std::invalid_argument("make_stack: n_max must be >= 0");
  SensitivityStack s;
  s.kind = kind;
  s.params = params;
  s.fields.reserve(n_max + 1);
  s.fields.push_back(order0);
  s.fields[0].order = 0;
  for (int n = 1; n <= n_max; ++n) {
    DistributionField f(order0.nx, order0.nv, order0.frame, n);
    f.time = order0.time;
    s.fields.push_back(std::move(f));
  }
  return s;
}

void apply_chain_rule_init(SensitivityStack& stack, const PhaseGrid& grid) {
  const int n_max = stack.n_max();
  if (n_max == 0) return;
  if (stack.kind == Perturbation::velocity) {
    DistributionField d = stack.fields[0];
    for (int n = 1; n <= n_max; ++n) {
      d = central_dv(d, grid);
      stack.fields[n] = d;
      for (auto& x : stack.fields[n].data) x *= std::pow(stack.params.eps_u, n);
      stack.fields[n].order = n;
    }
    return;
  }
  if (n_max > 1)
    throw std::invalid_argument(
        "apply_chain_rule_init: temperature chain rule supports n_max <= 1");
  DistributionField d = central_dv(stack.fields[0], grid);
  const double c = stack.params.eps_T / (2.0 * stack.params.temp);
  for (int i = 0; i < d.nx; ++i) {
    auto r = d.row(i);
    for (int j = 0; j < d.nv; ++j) r[j] *= c * grid.v.nodes[j];
  }
  d.order = 1;
  stack.fields[1] = std::move(d);
}

void velocity_source(const SensitivityStack& stack, int k, const PhaseGrid& grid,
                     DistributionField& out) {
  if (stack.kind != Perturbation::velocity)
    throw std::invalid_argument("velocity_source: stack is not a velocity perturbation");
  check_order(stack, k);
  std::vector<const DistributionField*> lower;
  for (const auto& f : stack.fields) lower.push_back(&f);
  DistributionField ddx(out.nx, out.nv, out.frame, out.order);
  source_from(stack.kind, stack.params, lower, k, grid, ddx, out);
}

void temperature_source(const SensitivityStack& stack, int k, const PhaseGrid& grid,
                        DistributionField& out) {
  if (stack.kind != Perturbation::temperature)
    throw std::invalid_argument("temperature_source: stack is not a temperature perturbation");
  if (!(stack.params.temp > 0.0)) throw std::invalid_argument("temperature_source: T(z0) <= 0");
  check_order(stack, k);
  std::vector<const DistributionField*> lower;
  for (const auto& f : stack.fields) lower.push_back(&f);
  DistributionField ddx(out.nx, out.nv, out.frame, out.order);
  source_from(stack.kind, stack.params, lower, k, grid, ddx, out);
}

void advance_stack(SensitivityStack& stack, const PhaseGrid& grid, const CollisionOperator& op,
                   const FrameSpec& frame, double dt, double knudsen, kernels::Scheme scheme,
                   StackWorkspace& ws) {
  const int n_max = stack.n_max();
  ws.old_fields.assign(stack.fields.begin(), stack.fields.begin() + n_max);
  if (!ws.src.same_shape(stack.fields[0])) {
    ws.src = stack.fields[0];
    ws.mid = stack.fields[0];
    ws.ddx = stack.fields[0];
  }

  step(stack.fields[0], nullptr, grid, op, frame, dt, knudsen, scheme, ws.sw);
  for (int k = 1; k <= n_max; ++k) {
    ws.src.fill(0.0);
    for (int m = 1; m <= k; ++m) {
      const double deriv = stack.kind == Perturbation::velocity
                               ? stack.params.dz_u(m)
                               : stack.params.dz_sqrt_temp(m);
      if (deriv == 0.0) continue;
      const double coef = -binomial(k, m) * deriv;
      const auto& pre = ws.old_fields[k - m];
      const auto& post = stack.fields[k - m];
      for (size_t idx = 0; idx < ws.mid.data.size(); ++idx)
        ws.mid.data[idx] = 0.5 * (pre.data[idx] + post.data[idx]);
      add_scaled_dx(ws.mid, grid, coef, stack.kind == Perturbation::temperature, ws.ddx, ws.src);
    }
    step(stack.fields[k], &ws.src, grid, op, frame, dt, knudsen, scheme, ws.sw);
  }
}

NormSeries solve_stack(SensitivityStack& stack, const SolverConfig& cfg, const PhaseGrid& grid,
                       const CollisionOperator& op, const FrameSpec& frame,
                       const SolveOptions& opts) {
  const TimeGrid tg = resolve_time(cfg, grid, frame);
  const int n_orders = stack.n_max() + 1;
  StackWorkspace ws;

  NormSeries series;
  series.norms.resize(n_orders);
  series.norms_w.resize(n_orders);
  auto record = [&](long step_idx) {
    series.times.push_back(stack.time());
    series.steps.push_back(step_idx);
    for (int n = 0; n < n_orders; ++n) {
      series.norms[n].push_back(norm_xv(stack.fields[n], grid));
      series.norms_w[n].push_back(norm_xv_weighted(stack.fields[n], grid, op.basis()));
    }
    series.moments.push_back(integrated_moments(stack.fields[0], grid, op.basis().weight));
    if (opts.record_dx_norm) {
      const DistributionField dx = central_dx(stack.fields[0], grid);
      series.dx_norm.push_back(norm_xv(dx, grid));
      series.dx_norm_w.push_back(norm_xv_weighted(dx, grid, op.basis()));
    }
    if (opts.on_sample) opts.on_sample(step_idx, stack.fields[0]);
  };
  record(0);
  if (tg.n_steps == 0) return series;

  for (long k = 1; k <= tg.n_steps; ++k) {
    advance_stack(stack, grid, op, frame, tg.dt, cfg.knudsen, cfg.scheme, ws);
    for (int n = 0; n < n_orders; ++n)
      if (!all_finite(stack.fields[n]))
        throw SolverAbort("solve_stack: non-finite order-" + std::to_string(n) + " field",
                          stack.fields[n], stack.time(), k);
    if (k % tg.stride == 0 || k == tg.n_steps) record(k);
  }
  return series;
}

DistributionField frame_sensitivity_convert(const SensitivityStack& stack, const PhaseGrid& grid) {
  if (stack.kind != Perturbation::velocity)
    throw std::invalid_argument(
        "frame_sensitivity_convert: temperature stacks are not convertible");
  if (stack.n_max() < 1)
    throw std::invalid_argument("frame_sensitivity_convert: order 1 not available");
  DistributionField out = stack.fields[1];
  const DistributionField dv = central_dv(stack.fields[0], grid);
  const double eps = stack.params.eps_u;
  for (size_t idx = 0; idx < out.data.size(); ++idx) out.data[idx] -= eps * dv.data[idx];
  out.frame = Frame::original;
  return out;
}

}  // namespace linbgk
