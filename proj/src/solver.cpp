#include "linbgk/solver.hpp"

#include <algorithm>
#include <cmath>

namespace linbgk {

std::vector<double> FrameSpec::speeds(const VelocityGrid& g) const {
  std::vector<double> a(g.n_v);
  for (int j = 0; j < g.n_v; ++j) a[j] = advect_scale * g.nodes[j] + advect_shift;
  return a;
}

double FrameSpec::max_speed(const VelocityGrid& g) const {
  double m = 0.0;
  for (int j = 0; j < g.n_v; ++j)
    m = std::max(m, std::abs(advect_scale * g.nodes[j] + advect_shift));
  return m;
}

FrameSpec FrameSpec::scaled(double T_star) {
  if (!(T_star > 0.0)) throw std::invalid_argument("FrameSpec::scaled: T_star must be > 0");
  return {Frame::scaled, std::sqrt(T_star), 0.0};
}

TimeGrid resolve_time(const SolverConfig& cfg, const PhaseGrid& grid, const FrameSpec& frame) {
  if (cfg.t_end < 0.0) throw std::invalid_argument("resolve_time: t_end must be >= 0");
  if (!(cfg.cfl_safety > 0.0) || cfg.cfl_safety > 1.0)
    throw std::invalid_argument("resolve_time: cfl_safety must be in (0, 1]");
  const double max_a = frame.max_speed(grid.v);
  const double dt_cfl = max_a > 0.0 ? cfg.cfl_safety * grid.x.spacing / max_a
                                    : (cfg.t_end > 0.0 ? cfg.t_end : 1.0);
  double dt0 = cfg.dt;
  if (dt0 > 0.0) {
    if (dt0 > dt_cfl * (1.0 + 1e-12))
      throw std::invalid_argument("resolve_time: dt violates the CFL condition");
  } else {
    dt0 = dt_cfl;
  }
  TimeGrid tg;
  if (cfg.t_end == 0.0) {
    tg.dt = dt0;
    tg.n_steps = 0;
    tg.stride = 1;
    return tg;
  }
  tg.n_steps = static_cast<long>(std::ceil(cfg.t_end / dt0 - 1e-12));
  tg.n_steps = std::max(tg.n_steps, 1L);
  tg.dt = cfg.t_end / static_cast<double>(tg.n_steps);
  tg.stride = cfg.sample_stride > 0 ? cfg.sample_stride : std::max(1L, tg.n_steps / 500);
  return tg;
}

void transport_substep(DistributionField& w, const PhaseGrid& grid, const FrameSpec& frame,
                       double dt, kernels::Scheme scheme, SolverWorkspace& ws) {
  if (w.nx != grid.x.n_x || w.nv != grid.v.n_v)
    throw std::invalid_argument("transport_substep: grid mismatch");
  const auto speeds = frame.speeds(grid.v);
  const double nu_max = frame.max_speed(grid.v) * dt / grid.x.spacing;
  if (nu_max > 1.0 + 1e-12) throw std::invalid_argument("transport_substep: CFL violation");
  ws.resize(w);
  kernels::TransportArgs args{w.nx, w.nv, speeds.data(), dt, grid.x.spacing, scheme};
  kernels::transport(w.data.data(), ws.a.data.data(), args);
  w.data.swap(ws.a.data);
}

void step(DistributionField& w, const DistributionField* src, const PhaseGrid& grid,
          const CollisionOperator& op, const FrameSpec& frame, double dt, double knudsen,
          kernels::Scheme scheme, SolverWorkspace& ws) {
  if (src && !src->same_shape(w)) throw std::invalid_argument("step: source grid mismatch");
  if (w.nv != op.basis().grid.n_v) throw std::invalid_argument("step: operator grid mismatch");
  ws.resize(w);
  transport_substep(w, grid, frame, 0.5 * dt, scheme, ws);
  const auto& b = op.basis();
  kernels::RelaxArgs ra{w.nx,
                        w.nv,
                        {b.chi[0].data(), b.chi[1].data(), b.chi[2].data()},
                        b.weight_row.data(),
                        dt,
                        knudsen,
                        src ? src->data.data() : nullptr};
  kernels::relax_source(w.data.data(), ws.b.data.data(), ra);
  w.data.swap(ws.b.data);
  transport_substep(w, grid, frame, 0.5 * dt, scheme, ws);
  w.time += dt;
}

namespace {

void record_sample(NormSeries& s, const DistributionField& w, const PhaseGrid& grid,
                   const CollisionBasis& basis, long step_idx, bool with_dx) {
  s.times.push_back(w.time);
  s.steps.push_back(step_idx);
  s.norms[0].push_back(norm_xv(w, grid));
  s.norms_w[0].push_back(norm_xv_weighted(w, grid, basis));
  s.moments.push_back(integrated_moments(w, grid, basis.weight));
  if (with_dx) {
    const DistributionField dx = central_dx(w, grid);
    s.dx_norm.push_back(norm_xv(dx, grid));
    s.dx_norm_w.push_back(norm_xv_weighted(dx, grid, basis));
  }
}

}  // namespace

NormSeries solve(DistributionField& w, const SolverConfig& cfg, const PhaseGrid& grid,
                 const CollisionOperator& op, const FrameSpec& frame, const SourceFn& src,
                 const SolveOptions& opts) {
  const TimeGrid tg = resolve_time(cfg, grid, frame);
  SolverWorkspace ws;
  ws.resize(w);

  NormSeries series;
  series.norms.resize(1);
  series.norms_w.resize(1);
  record_sample(series, w, grid, op.basis(), 0, opts.record_dx_norm);
  if (opts.on_sample) opts.on_sample(0, w);
  if (tg.n_steps == 0) return series;

  DistributionField src_field;
  if (src) src_field = DistributionField(w.nx, w.nv, w.frame, w.order);
  DistributionField last_good = w;

  for (long k = 1; k <= tg.n_steps; ++k) {
    const DistributionField* src_ptr = nullptr;
    if (src) {
      const double t_mid = w.time + 0.5 * tg.dt;
      src(t_mid, src_field);
      src_ptr = &src_field;
    }
    step(w, src_ptr, grid, op, frame, tg.dt, cfg.knudsen, cfg.scheme, ws);
    if (!all_finite(w))
      throw SolverAbort("solve: non-finite field after step " + std::to_string(k), last_good,
                        w.time, k);
    if (k % tg.stride == 0 || k == tg.n_steps) {
      record_sample(series, w, grid, op.basis(), k, opts.record_dx_norm);
      if (opts.on_sample) opts.on_sample(k, w);
      last_good = w;
    }
  }
  return series;
}

namespace {

/// Fritsch-Carlson monotone slopes on an equispaced grid.
void pchip_slopes(std::span<const double> y, double h, std::vector<double>& d) {
  const int n = static_cast<int>(y.size());
  d.resize(n);
  if (n == 2) {
    d[0] = d[1] = (y[1] - y[0]) / h;
    return;
  }
  auto secant = [&](int k) { return (y[k + 1] - y[k]) / h; };
  for (int k = 1; k < n - 1; ++k) {
    const double dl = secant(k - 1), dr = secant(k);
    d[k] = (dl * dr > 0.0) ? 2.0 * dl * dr / (dl + dr) : 0.0;
  }
  auto end_slope = [](double d_edge, double d_next) {
    double s = 1.5 * d_edge - 0.5 * d_next;
    if (s * d_edge <= 0.0) return 0.0;
    if (std::abs(s) > 3.0 * std::abs(d_edge)) return 3.0 * d_edge;
    return s;
  };
  d[0] = end_slope(secant(0), secant(1));
  d[n - 1] = end_slope(secant(n - 2), secant(n - 3));
}

double pchip_eval(std::span<const double> y, std::span<const double> d, double v0, double h,
                  double q) {
  const int n = static_cast<int>(y.size());
  int k = static_cast<int>(std::floor((q - v0) / h));
  k = std::clamp(k, 0, n - 2);
  const double t = (q - (v0 + k * h)) / h;
  const double t2 = t * t, t3 = t2 * t;
  return y[k] * (2.0 * t3 - 3.0 * t2 + 1.0) + h * d[k] * (t3 - 2.0 * t2 + t) +
         y[k + 1] * (-2.0 * t3 + 3.0 * t2) + h * d[k + 1] * (t3 - t2);
}

DistributionField transform_eval(const DistributionField& f, const VelocityGrid& src_grid,
                                 const VelocityGrid& dst_grid, Frame dst_frame,
                                 const std::function<double(double)>& pullback) {
  if (f.nv != src_grid.n_v)
    throw std::invalid_argument("frame transform: field does not match source grid");
  const double tol = 1e-12 * (src_grid.v_max - src_grid.v_min);
  std::vector<double> q(dst_grid.n_v);
  for (int j = 0; j < dst_grid.n_v; ++j) {
    q[j] = pullback(dst_grid.nodes[j]);
    if (q[j] < src_grid.v_min - tol || q[j] > src_grid.v_max + tol)
      throw std::invalid_argument("frame transform: evaluation point outside the velocity grid");
  }
  DistributionField out(f.nx, dst_grid.n_v, dst_frame, f.order);
  out.time = f.time;
  const double h = src_grid.spacing();
  std::vector<double> slopes;
  for (int i = 0; i < f.nx; ++i) {
    const auto row = f.row(i);
    pchip_slopes(row, h, slopes);
    auto o = out.row(i);
    for (int j = 0; j < dst_grid.n_v; ++j)
      o[j] = pchip_eval(row, slopes, src_grid.v_min, h, q[j]);
  }
  return out;
}

}  // namespace

DistributionField frame_transform_shift(const DistributionField& f, const VelocityGrid& src_grid,
                                        const VelocityGrid& dst_grid, double u_star) {
  return transform_eval(f, src_grid, dst_grid, Frame::shifted,
                        [u_star](double v) { return v - u_star; });
}

DistributionField frame_transform_scale(const DistributionField& f, const VelocityGrid& src_grid,
                                        const VelocityGrid& dst_grid, double T_star) {
  if (!(T_star > 0.0))
    throw std::invalid_argument("frame_transform_scale: T_star must be > 0");
  const double inv_sqrt = 1.0 / std::sqrt(T_star);
  return transform_eval(f, src_grid, dst_grid, Frame::scaled,
                        [inv_sqrt](double v) { return v * inv_sqrt; });
}

}  // namespace linbgk
