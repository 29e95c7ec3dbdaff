#include "linbgk/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace linbgk {

EnvelopeReport verify_envelope(const NormSeries& series, const std::string& name, double tol_rel,
                               double tol_abs) {
  auto it = series.envelopes.find(name);
  if (it == series.envelopes.end())
    throw std::invalid_argument("verify_envelope: no envelope named '" + name + "'");
  const auto& env = it->second;
  if (env.order >= series.n_orders() || env.curve.size() != series.n_samples())
    throw std::invalid_argument("verify_envelope: envelope/series shape mismatch");
  EnvelopeReport r;
  r.name = name;
  r.margin.resize(series.n_samples());
  r.max_violation = -std::numeric_limits<double>::infinity();
  const auto& norms = env.weighted ? series.norms_w[env.order] : series.norms[env.order];
  for (size_t s = 0; s < series.n_samples(); ++s) {
    const double allowed = env.curve[s] * (1.0 + tol_rel) + tol_abs;
    r.margin[s] = allowed - norms[s];
    r.max_violation = std::max(r.max_violation, norms[s] - allowed);
  }
  r.pass = r.max_violation <= 0.0;
  return r;
}

EnvelopeReport verify_nonincreasing(std::span<const double> values, std::span<const long> steps,
                                    const std::string& name, double per_step_tol) {
  if (values.size() != steps.size() || values.empty())
    throw std::invalid_argument("verify_nonincreasing: bad series");
  EnvelopeReport r;
  r.name = name;
  r.margin.resize(values.size(), 0.0);
  r.max_violation = -std::numeric_limits<double>::infinity();
  for (size_t s = 1; s < values.size(); ++s) {
    const double n_steps = static_cast<double>(steps[s] - steps[s - 1]);
    const double allowed = values[s - 1] * (1.0 + per_step_tol * n_steps);
    r.margin[s] = allowed - values[s];
    r.max_violation = std::max(r.max_violation, values[s] - allowed);
  }
  r.pass = r.max_violation <= 0.0;
  return r;
}

EnvelopeReport verify_nonincreasing(const NormSeries& series, int order, double per_step_tol) {
  if (order >= series.n_orders()) throw std::invalid_argument("verify_nonincreasing: bad order");
  return verify_nonincreasing(series.norms[order], series.steps,
                              "nonincreasing_order" + std::to_string(order), per_step_tol);
}

GrowthFit fit_growth_exponent(std::span<const double> times, std::span<const double> norms,
                              double t_lo, double t_hi) {
  if (times.size() != norms.size()) throw std::invalid_argument("fit_growth_exponent: size mismatch");
  std::vector<double> lt, ln;
  for (size_t s = 0; s < times.size(); ++s) {
    if (times[s] < t_lo || times[s] > t_hi) continue;
    if (!(times[s] > 0.0) || !(norms[s] > 1e-12)) continue;
    lt.push_back(std::log(times[s]));
    ln.push_back(std::log(norms[s]));
  }
  const int n = static_cast<int>(lt.size());
  if (n < 20) throw std::invalid_argument("fit_growth_exponent: degenerate window (< 20 samples)");
  double mx = 0.0, my = 0.0;
  for (int i = 0; i < n; ++i) {
    mx += lt[i];
    my += ln[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (int i = 0; i < n; ++i) {
    sxx += (lt[i] - mx) * (lt[i] - mx);
    sxy += (lt[i] - mx) * (ln[i] - my);
    syy += (ln[i] - my) * (ln[i] - my);
  }
  if (!(sxx > 0.0)) throw std::invalid_argument("fit_growth_exponent: degenerate window");
  GrowthFit fit;
  fit.exponent = sxy / sxx;
  fit.prefactor = std::exp(my - fit.exponent * mx);
  fit.r2 = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  fit.n_samples = n;
  return fit;
}

DistributionField fd_combine(std::span<const DistributionField> nodes, double delta, int order) {
  const int n = static_cast<int>(nodes.size());
  if (!(delta > 0.0)) throw std::invalid_argument("fd_combine: delta must be > 0");
  std::vector<double> c;
  double scale = 1.0;
  if (n == 3) {
    if (order == 1) {
      c = {-0.5, 0.0, 0.5};
      scale = 1.0 / delta;
    } else if (order == 2) {
      c = {1.0, -2.0, 1.0};
      scale = 1.0 / (delta * delta);
    } else {
      throw std::invalid_argument("fd_combine: 3-point stencil supports orders 1-2");
    }
  } else if (n == 5) {
    switch (order) {
      case 1:
        c = {1.0, -8.0, 0.0, 8.0, -1.0};
        scale = 1.0 / (12.0 * delta);
        break;
      case 2:
        c = {-1.0, 16.0, -30.0, 16.0, -1.0};
        scale = 1.0 / (12.0 * delta * delta);
        break;
      case 3:
        c = {-1.0, 2.0, 0.0, -2.0, 1.0};
        scale = 1.0 / (2.0 * delta * delta * delta);
        break;
      case 4:
        c = {1.0, -4.0, 6.0, -4.0, 1.0};
        scale = 1.0 / (delta * delta * delta * delta);
        break;
      default:
        throw std::invalid_argument("fd_combine: 5-point stencil supports orders 1-4");
    }
  } else {
    throw std::invalid_argument("fd_combine: expected 3 or 5 nodes");
  }
  DistributionField out(nodes[0].nx, nodes[0].nv, nodes[0].frame, order);
  out.time = nodes[0].time;
  for (int k = 0; k < n; ++k) {
    if (!nodes[k].same_shape(out)) throw std::invalid_argument("fd_combine: node shape mismatch");
    const double w = c[k] * scale;
    if (w == 0.0) continue;
    for (size_t idx = 0; idx < out.data.size(); ++idx) out.data[idx] += w * nodes[k].data[idx];
  }
  return out;
}

CollocationResult collocation_oracle(const CollocationProblem& prob, double z0, double delta,
                                     int n_z, std::span<const double> snap_times) {
  if (n_z != 3 && n_z != 5) throw std::invalid_argument("collocation_oracle: n_z must be 3 or 5");
  if (!(delta > 0.0)) throw std::invalid_argument("collocation_oracle: delta must be > 0");

  // z nodes and their frames; params.at throws on T(z) <= 0 (range violation).
  const int half = (n_z - 1) / 2;
  std::vector<MaxwellianParams> node_params;
  std::vector<FrameSpec> node_frames;
  for (int k = -half; k <= half; ++k) {
    const auto p = prob.params.at(z0 + k * delta);
    node_params.push_back(p);
    node_frames.push_back(prob.kind == Perturbation::velocity ? FrameSpec::shifted(p.u)
                                                              : FrameSpec::scaled(p.temp));
  }

  // The frame keeps the collision operator z-independent.
  const CollisionOperator op = make_collision_operator(
      prob.params, prob.grid.v,
      prob.kind == Perturbation::velocity ? WeightFrame::zero_mean : WeightFrame::unit,
      prob.extra_modes);

  // One common dt so snapshots of all nodes align step-for-step.
  double dt = std::numeric_limits<double>::infinity();
  for (const auto& fr : node_frames) dt = std::min(dt, resolve_time(prob.cfg, prob.grid, fr).dt);
  const long n_steps = std::max(1L, static_cast<long>(std::ceil(prob.cfg.t_end / dt - 1e-12)));
  dt = prob.cfg.t_end / static_cast<double>(n_steps);

  std::vector<long> snap_steps;
  for (double t : snap_times) {
    long s = std::lround(t / dt);
    snap_steps.push_back(std::clamp(s, 0L, n_steps));
  }

  // nodes x snapshots field storage
  std::vector<std::vector<DistributionField>> snaps(n_z);
  for (int k = 0; k < n_z; ++k) {
    DistributionField w = prob.initial;
    SolverWorkspace ws;
    size_t next = 0;
    auto capture = [&](long step_idx) {
      while (next < snap_steps.size() && snap_steps[next] == step_idx) {
        snaps[k].push_back(w);
        ++next;
      }
    };
    capture(0);
    for (long s = 1; s <= n_steps; ++s) {
      step(w, nullptr, prob.grid, op, node_frames[k], dt, prob.cfg.knudsen, prob.cfg.scheme, ws);
      capture(s);
    }
    if (!all_finite(w))
      throw SolverAbort("collocation_oracle: non-finite node solution", w, w.time, n_steps);
  }

  CollocationResult res;
  for (long s : snap_steps) res.snap_times.push_back(s * dt);
  const int max_order = n_z - 1;
  res.fd.resize(max_order);
  for (int d = 1; d <= max_order; ++d) {
    for (size_t s = 0; s < snap_steps.size(); ++s) {
      std::vector<DistributionField> at_s;
      for (int k = 0; k < n_z; ++k) at_s.push_back(snaps[k][s]);
      res.fd[d - 1].push_back(fd_combine(at_s, delta, d));
    }
  }
  return res;
}

std::array<double, 3> invert_moments(const std::array<double, 3>& m,
                                     const MaxwellianParams& params) {
  const double rho = params.rho, u = params.u, T = params.temp;
  const double rho_t = m[0];
  const double u_t = (m[1] - rho_t * u) / rho;
  const double T_t = (m[2] - rho_t * (u * u + T) - 2.0 * rho * u * u_t) / rho;
  return {rho_t, u_t, T_t};
}

AcousticState linearized_moments(const DistributionField& f, const PhaseGrid& grid,
                                 const MaxwellianParams& params) {
  if (f.nx != grid.x.n_x || f.nv != grid.v.n_v)
    throw std::invalid_argument("linearized_moments: grid mismatch");
  AcousticState st;
  st.rho_t.resize(f.nx);
  st.u_t.resize(f.nx);
  st.T_t.resize(f.nx);
  for (int i = 0; i < f.nx; ++i) {
    const auto r = f.row(i);
    double m0 = 0.0, m1 = 0.0, m2 = 0.0;
    for (int j = 0; j < f.nv; ++j) {
      const double v = grid.v.nodes[j];
      const double q = grid.v.quad_weights[j] * params.maxwellian(v) * r[j];
      m0 += q;
      m1 += q * v;
      m2 += q * v * v;
    }
    const auto U = invert_moments({m0, m1, m2}, params);
    st.rho_t[i] = U[0];
    st.u_t[i] = U[1];
    st.T_t[i] = U[2];
  }
  return st;
}

Mat3 acoustic_matrix(const MaxwellianParams& params) {
  const double rho = params.rho, u = params.u, T = params.temp;
  return {{{u, rho, 0.0}, {T / rho, u, 1.0}, {0.0, 2.0 * T, u}}};
}

std::array<double, 3> acoustic_char_speeds(const Mat3& A) {
  // Characteristic polynomial  l^3 - a l^2 + b l - c, solved by the
  // trigonometric formula (the acoustic system has three real speeds).
  const double a = A[0][0] + A[1][1] + A[2][2];
  const double b = (A[0][0] * A[1][1] - A[0][1] * A[1][0]) +
                   (A[0][0] * A[2][2] - A[0][2] * A[2][0]) +
                   (A[1][1] * A[2][2] - A[1][2] * A[2][1]);
  const double c = A[0][0] * (A[1][1] * A[2][2] - A[1][2] * A[2][1]) -
                   A[0][1] * (A[1][0] * A[2][2] - A[1][2] * A[2][0]) +
                   A[0][2] * (A[1][0] * A[2][1] - A[1][1] * A[2][0]);
  const double p = b - a * a / 3.0;
  const double q = a * b / 3.0 - 2.0 * a * a * a / 27.0 - c;
  std::array<double, 3> roots;
  if (p >= -1e-300) {
    roots = {a / 3.0, a / 3.0, a / 3.0};
    return roots;
  }
  const double m = 2.0 * std::sqrt(-p / 3.0);
  double arg = 3.0 * q / (p * m);
  arg = std::clamp(arg, -1.0, 1.0);
  const double theta = std::acos(arg) / 3.0;
  for (int k = 0; k < 3; ++k)
    roots[k] = a / 3.0 + m * std::cos(theta - 2.0 * std::numbers::pi * k / 3.0);
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::vector<double> acoustic_limit_residual(std::span<const double> times,
                                            std::span<const AcousticState> states,
                                            const MaxwellianParams& params, double dx) {
  if (times.size() != states.size() || times.size() < 3)
    throw std::invalid_argument("acoustic_limit_residual: need >= 3 aligned samples");
  const Mat3 A = acoustic_matrix(params);
  const int nx = static_cast<int>(states[0].rho_t.size());
  std::vector<double> res;
  for (size_t s = 1; s + 1 < times.size(); ++s) {
    const double inv_2dt = 1.0 / (times[s + 1] - times[s - 1]);
    double acc = 0.0;
    for (int i = 0; i < nx; ++i) {
      const int im1 = (i - 1 + nx) % nx;
      const int ip1 = (i + 1) % nx;
      const std::array<double, 3> dUdt = {
          (states[s + 1].rho_t[i] - states[s - 1].rho_t[i]) * inv_2dt,
          (states[s + 1].u_t[i] - states[s - 1].u_t[i]) * inv_2dt,
          (states[s + 1].T_t[i] - states[s - 1].T_t[i]) * inv_2dt};
      const std::array<double, 3> dUdx = {
          (states[s].rho_t[ip1] - states[s].rho_t[im1]) / (2.0 * dx),
          (states[s].u_t[ip1] - states[s].u_t[im1]) / (2.0 * dx),
          (states[s].T_t[ip1] - states[s].T_t[im1]) / (2.0 * dx)};
      for (int r = 0; r < 3; ++r) {
        const double e = dUdt[r] + A[r][0] * dUdx[0] + A[r][1] * dUdx[1] + A[r][2] * dUdx[2];
        acc += e * e * dx;
      }
    }
    res.push_back(std::sqrt(acc));
  }
  return res;
}

}  // namespace linbgk
