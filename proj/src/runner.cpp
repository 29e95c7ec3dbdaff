#include "linbgk/runner.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

namespace linbgk {

namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

double uniform_pm1(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-52 - 1.0;
}

DistributionField read_field_file(const std::string& path, int nx, int nv) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open initial-data file '" + path + "'");
  DistributionField f(nx, nv);
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < nv; ++j)
      if (!(in >> f.at(i, j)))
        throw ConfigError("initial-data file '" + path + "' is smaller than n_x * n_v");
  return f;
}

}  // namespace

Experiment build_experiment(const ExperimentConfig& cfg) {
  const auto errs = validate(cfg);
  if (!errs.empty()) {
    std::string msg;
    for (const auto& e : errs) msg += e + "\n";
    throw ConfigError(msg);
  }
  const MaxwellianParams params = make_params(cfg.rho, cfg.u0, cfg.T0, cfg.eps_u, cfg.eps_T, cfg.z0);
  const bool scaled = cfg.perturbation == Perturbation::temperature;
  const double halfwidth = cfg.v_halfwidth_sigmas * std::sqrt(scaled ? 1.0 : params.temp);
  PhaseGrid grid{build_spatial_grid(cfg.n_x, cfg.length),
                 centered_velocity_grid(cfg.n_v, 0.0, halfwidth)};
  const int extra = std::max(1, cfg.initial.mode - 2 + 1);
  CollisionOperator op = make_collision_operator(
      params, grid.v, scaled ? WeightFrame::unit : WeightFrame::zero_mean, extra);
  FrameSpec frame = scaled ? FrameSpec::scaled(params.temp) : FrameSpec::shifted(params.u);

  DistributionField init(cfg.n_x, cfg.n_v, scaled ? Frame::scaled : Frame::shifted, 0);
  if (cfg.initial.profile == ExperimentConfig::Profile::file) {
    init.data = read_field_file(cfg.initial.path, cfg.n_x, cfg.n_v).data;
  } else {
    const auto& chi = op.basis().chi[cfg.initial.mode];
    for (int i = 0; i < cfg.n_x; ++i) {
      const double x = grid.x.nodes[i];
      double profile;
      if (cfg.initial.profile == ExperimentConfig::Profile::sine_wave) {
        profile = std::sin(2.0 * std::numbers::pi * cfg.initial.wavenumber * x / cfg.length);
      } else {
        double d = std::abs(x - cfg.initial.x0);
        d = std::min(d, cfg.length - d);
        profile = std::exp(-d * d / (2.0 * cfg.initial.sigma_x * cfg.initial.sigma_x));
      }
      profile *= cfg.initial.amplitude;
      auto row = init.row(i);
      for (int j = 0; j < cfg.n_v; ++j) row[j] = profile * chi[j];
    }
  }
  return {cfg, std::move(grid), params, frame, std::move(op), std::move(init)};
}

PrimaryRun run_primary(const Experiment& ex) {
  PrimaryRun run;
  const auto kind = ex.cfg.perturbation;
  run.stack = make_stack(ex.initial, ex.cfg.n_max, kind, ex.params);
  if (ex.cfg.init_sensitivity == ExperimentConfig::InitSensitivity::chain_rule_from_f)
    apply_chain_rule_init(run.stack, ex.grid);

  // Bound constants, in the weighted energy norm the estimates live in.
  run.dx_norm0 = norm_xv_weighted(central_dx(ex.initial, ex.grid), ex.grid, ex.op.basis());
  run.keq = ex.op.basis().norm_equivalence_factor();
  {
    // d_t p_i from the equation at t = 0: L p_i - a(v) d_x p_i.
    DistributionField dtp(ex.initial.nx, ex.initial.nv, ex.initial.frame, 0);
    ex.op.apply_field(ex.initial, dtp);
    const DistributionField ddx = central_dx(ex.initial, ex.grid);
    const auto speeds = ex.frame.speeds(ex.grid.v);
    for (int i = 0; i < dtp.nx; ++i) {
      auto o = dtp.row(i);
      const auto d = ddx.row(i);
      for (int j = 0; j < dtp.nv; ++j) o[j] = o[j] / ex.cfg.knudsen - speeds[j] * d[j];
    }
    run.dt_p0 = norm_xv_weighted(dtp, ex.grid, ex.op.basis());
  }
  const double norm_init0 = norm_xv_weighted(ex.initial, ex.grid, ex.op.basis());
  const double norm_init1 =
      ex.cfg.n_max >= 1 ? norm_xv_weighted(run.stack.fields[1], ex.grid, ex.op.basis()) : 0.0;

  SolverConfig scfg{ex.cfg.dt,         ex.cfg.t_end, ex.cfg.knudsen,
                    ex.cfg.cfl_safety, ex.cfg.scheme, ex.cfg.sample_stride};
  SolveOptions opts;
  opts.record_dx_norm = true;
  run.series = solve_stack(run.stack, scfg, ex.grid, ex.op, ex.frame, opts);

  if (ex.cfg.n_max >= 1) {
    NormSeries::Envelope env;
    env.order = 1;
    env.weighted = true;
    env.curve.resize(run.series.n_samples());
    if (kind == Perturbation::velocity) {
      const double c = std::abs(ex.params.eps_u) * run.dx_norm0;
      for (size_t s = 0; s < run.series.n_samples(); ++s)
        env.curve[s] = norm_init1 + c * run.series.times[s];
      run.series.envelopes["thm32"] = std::move(env);
    } else {
      const double c = std::abs(ex.params.eps_T) / (2.0 * ex.params.temp) *
                       (run.keq * norm_init0 + run.dt_p0);
      for (size_t s = 0; s < run.series.n_samples(); ++s)
        env.curve[s] = norm_init1 + c * run.series.times[s];
      run.series.envelopes["thm41"] = std::move(env);
    }
  }
  return run;
}

namespace checks {

CheckResult collision_properties(const CollisionOperator& op, int n_fields) {
  const int nv = op.basis().grid.n_v;
  const auto& b = op.basis();
  const auto& vg = b.grid;
  std::mt19937_64 rng(0x5eedULL);
  std::vector<double> f(nv), g(nv), lf(nv), lg(nv);
  double max_coercive = -std::numeric_limits<double>::infinity();
  double max_selfadj = 0.0, max_null = 0.0, max_moment = 0.0, max_contract = 0.0;
  auto wnorm = [&](std::span<const double> a) { return std::sqrt(b.inner(a, a)); };
  for (int trial = 0; trial < n_fields; ++trial) {
    for (int j = 0; j < nv; ++j) f[j] = uniform_pm1(rng);
    for (int j = 0; j < nv; ++j) g[j] = uniform_pm1(rng);
    op.apply(f, lf);
    op.apply(g, lg);
    const double nf = wnorm(f), ng = wnorm(g);
    max_coercive = std::max(max_coercive, b.inner(lf, f) / std::max(1.0, nf * nf));
    max_selfadj = std::max(max_selfadj,
                           std::abs(b.inner(lf, g) - b.inner(f, lg)) / std::max(1e-300, nf * ng));
    const auto mom = op.moments_weighted(lf);
    for (double m : mom) max_moment = std::max(max_moment, std::abs(m) / std::max(1.0, nf));
    max_contract = std::max(max_contract, wnorm(lf) - nf);  // also the sqrt(d)=1 bound
    // random element of span{1, v, v^2}
    const double c0 = uniform_pm1(rng), c1 = uniform_pm1(rng), c2 = uniform_pm1(rng);
    for (int j = 0; j < nv; ++j) {
      const double v = vg.nodes[j];
      g[j] = c0 + c1 * v + c2 * v * v;
    }
    op.apply(g, lg);
    max_null = std::max(max_null, wnorm(lg) / std::max(1e-300, wnorm(g)));
  }
  CheckResult r;
  r.name = "collision";
  r.pass = max_coercive <= 1e-12 && max_selfadj <= 1e-12 && max_null <= 1e-12 &&
           max_moment <= 1e-12 && max_contract <= 1e-12;
  std::ostringstream os;
  os << "coercivity " << fmt(max_coercive) << ", self-adjoint " << fmt(max_selfadj) << ", null "
     << fmt(max_null) << ", moments " << fmt(max_moment) << ", contraction excess "
     << fmt(max_contract);
  r.detail = os.str();
  return r;
}

CheckResult decay_order0(const NormSeries& s, const std::string& name, double per_step_tol) {
  const auto rep = verify_nonincreasing(s.norms_w[0], s.steps, name, per_step_tol);
  return {name, rep.pass, "max violation " + fmt(rep.max_violation)};
}

CheckResult gradient_bound(const NormSeries& s, double tol_rel) {
  if (s.dx_norm_w.empty()) return {"thm31", false, "d_x norm not recorded"};
  const double bound = s.dx_norm_w[0] * (1.0 + tol_rel);
  double worst = -std::numeric_limits<double>::infinity();
  for (double v : s.dx_norm_w) worst = std::max(worst, v - bound);
  return {"thm31", worst <= 0.0, "max excess over ||d_x w(0)|| = " + fmt(worst)};
}

CheckResult growth_envelope(const NormSeries& s, const std::string& env_name, double tol_rel,
                            double tol_abs) {
  const auto rep = verify_envelope(s, env_name, tol_rel, tol_abs);
  return {env_name, rep.pass, "max violation " + fmt(rep.max_violation)};
}

CheckResult growth_exponent(const NormSeries& s, int order, double t_lo, double t_hi,
                            double max_exponent) {
  CheckResult r;
  r.name = "exponent_order" + std::to_string(order);
  try {
    const auto fit = fit_growth_exponent(s.times, s.norms_w[order], t_lo, t_hi);
    r.pass = fit.exponent <= max_exponent;
    r.detail = "exponent " + fmt(fit.exponent) + ", prefactor " + fmt(fit.prefactor) + ", r2 " +
               fmt(fit.r2);
  } catch (const std::exception& e) {
    r.pass = false;
    r.detail = e.what();
  }
  return r;
}

CheckResult polynomial_ratio(const NormSeries& s, int order, double t_lo, double t_hi) {
  CheckResult r;
  r.name = "ratio_order" + std::to_string(order);
  double first = -1.0, maxr = -1.0, prev = -1.0;
  bool nonincreasing = true;
  for (size_t i = 0; i < s.n_samples(); ++i) {
    const double t = s.times[i];
    if (t < t_lo || t > t_hi || !(t > 0.0)) continue;
    const double ratio = s.norms_w[order][i] / std::pow(t, order);
    if (first < 0.0) first = ratio;
    maxr = std::max(maxr, ratio);
    if (prev >= 0.0 && ratio > prev * (1.0 + 1e-12)) nonincreasing = false;
    prev = ratio;
  }
  if (first < 0.0) return {r.name, false, "no samples in window"};
  r.pass = nonincreasing || maxr <= 1.05 * first;
  r.detail = "window max/start = " + fmt(maxr / first) +
             (nonincreasing ? " (nonincreasing)" : "");
  return r;
}

CheckResult conservation(const NormSeries& s, double tol_rel) {
  const char* names[3] = {"mass", "momentum", "energy"};
  double scale = s.norms[0][0];
  for (double m : s.moments[0]) scale = std::max(scale, std::abs(m));
  scale = std::max(scale, 1e-300);
  double worst = 0.0;
  std::string worst_name = "mass";
  for (size_t i = 0; i < s.n_samples(); ++i) {
    for (int c = 0; c < 3; ++c) {
      const double drift = std::abs(s.moments[i][c] - s.moments[0][c]) / scale;
      if (drift > worst) {
        worst = drift;
        worst_name = names[c];
      }
    }
  }
  return {"conservation", worst <= tol_rel, "max relative drift " + fmt(worst) + " (" + worst_name + ")"};
}

}  // namespace checks

void CsvSink::write(const std::string& name, const std::string& content) {
  written.push_back(name);
  if (dir.empty()) return;
  std::filesystem::create_directories(dir);
  std::ofstream out(std::filesystem::path(dir) / name, std::ios::binary);
  out << content;
}

std::string series_csv(const NormSeries& s) {
  std::ostringstream os;
  os << "time";
  for (int n = 0; n < s.n_orders(); ++n) os << ",norm_order" << n;
  os << ",mass,momentum,energy";
  for (int n = 0; n < s.n_orders(); ++n) os << ",wnorm_order" << n;
  if (!s.dx_norm.empty()) os << ",dxnorm,dxnorm_w";
  for (const auto& [name, env] : s.envelopes) os << ",envelope_" << name;
  os << "\n";
  for (size_t i = 0; i < s.n_samples(); ++i) {
    os << fmt(s.times[i]);
    for (int n = 0; n < s.n_orders(); ++n) os << "," << fmt(s.norms[n][i]);
    for (int c = 0; c < 3; ++c) os << "," << fmt(s.moments[i][c]);
    for (int n = 0; n < s.n_orders(); ++n) os << "," << fmt(s.norms_w[n][i]);
    if (!s.dx_norm.empty()) os << "," << fmt(s.dx_norm[i]) << "," << fmt(s.dx_norm_w[i]);
    for (const auto& [name, env] : s.envelopes) os << "," << fmt(env.curve[i]);
    os << "\n";
  }
  return os.str();
}

namespace {

// ---------------------------------------------------------------------------
// oracle suite: direct first-order sensitivity vs finite-difference
// collocation in z at delta and delta/2, plus the absolute check at 1e-2.
// ---------------------------------------------------------------------------
std::vector<CheckResult> suite_oracle(const Experiment& ex, CsvSink& sink) {
  const double delta = ex.cfg.resolved_fd_delta();
  const auto kind = ex.cfg.perturbation;

  // One common dt for the direct run and every collocation node, taken from
  // the widest stencil so CFL holds everywhere. The smooth unlimited
  // second-order transport is used here: the finite-difference limit is the
  // z-derivative of the discrete flow, and the first-order upwind flux is not
  // differentiable enough in the advection speed for a clean O(delta^2) fit.
  SolverConfig scfg{ex.cfg.dt,
                    ex.cfg.t_end,
                    ex.cfg.knudsen,
                    ex.cfg.cfl_safety,
                    kernels::Scheme::lax_wendroff,
                    0};
  double dt = resolve_time(scfg, ex.grid, ex.frame).dt;
  for (double zk : {ex.cfg.z0 - delta, ex.cfg.z0 + delta}) {
    const auto p = ex.params.at(zk);
    const FrameSpec fr =
        kind == Perturbation::velocity ? FrameSpec::shifted(p.u) : FrameSpec::scaled(p.temp);
    dt = std::min(dt, resolve_time(scfg, ex.grid, fr).dt);
  }
  const long n_steps = std::max(1L, static_cast<long>(std::ceil(ex.cfg.t_end / dt - 1e-12)));
  dt = ex.cfg.t_end / static_cast<double>(n_steps);
  SolverConfig cfg_common = scfg;
  cfg_common.dt = dt;
  cfg_common.sample_stride = std::max(1L, n_steps / 10);

  // Direct hierarchy with order-1 snapshots at the sample times.
  SensitivityStack stack = make_stack(ex.initial, 1, kind, ex.params);
  std::vector<DistributionField> h1_snaps;
  std::vector<double> snap_times;
  SolveOptions opts;
  opts.on_sample = [&](long step_idx, const DistributionField&) {
    if (step_idx == 0) return;
    h1_snaps.push_back(stack.fields[1]);
    snap_times.push_back(stack.time());
  };
  solve_stack(stack, cfg_common, ex.grid, ex.op, ex.frame, opts);

  CollocationProblem prob{ex.grid, ex.params, kind, cfg_common, ex.initial,
                          ex.op.basis().extra_modes};
  auto discrepancy = [&](double dlt) {
    const auto fd = collocation_oracle(prob, ex.cfg.z0, dlt, 3, snap_times);
    std::vector<double> per_snap;
    double worst = 0.0;
    for (size_t s = 0; s < snap_times.size(); ++s) {
      DistributionField diff = h1_snaps[s];
      for (size_t idx = 0; idx < diff.data.size(); ++idx)
        diff.data[idx] -= fd.fd[0][s].data[idx];
      const double d = norm_xv_weighted(diff, ex.grid, ex.op.basis());
      per_snap.push_back(d);
      worst = std::max(worst, d);
    }
    return std::make_pair(worst, per_snap);
  };

  const auto [d_full, per_full] = discrepancy(delta);
  const auto [d_half, per_half] = discrepancy(0.5 * delta);
  const auto [d_abs, per_abs] = discrepancy(1e-2);
  const double ratio = d_half > 0.0 ? d_full / d_half : std::numeric_limits<double>::infinity();

  std::ostringstream os;
  os << "time,norm_direct,diff_delta,diff_half,diff_1em2\n";
  for (size_t s = 0; s < snap_times.size(); ++s)
    os << fmt(snap_times[s]) << "," << fmt(norm_xv_weighted(h1_snaps[s], ex.grid, ex.op.basis()))
       << "," << fmt(per_full[s]) << "," << fmt(per_half[s]) << "," << fmt(per_abs[s]) << "\n";
  sink.write("oracle.csv", os.str());

  std::vector<CheckResult> out;
  out.push_back({"oracle_richardson", ratio >= 3.5 && ratio <= 4.5,
                 "discrepancy ratio D(" + fmt(delta) + ")/D(" + fmt(0.5 * delta) + ") = " +
                     fmt(ratio)});
  out.push_back({"oracle_absolute", d_abs <= 1e-3,
                 "max ||direct - fd|| at delta = 1e-2: " + fmt(d_abs)});
  return out;
}

// ---------------------------------------------------------------------------
// acoustic suite: residual of the moment system across Kn plus the
// characteristic-speed identity.
// ---------------------------------------------------------------------------
std::vector<CheckResult> suite_acoustic(const Experiment& ex, CsvSink& sink) {
  std::vector<CheckResult> out;

  const Mat3 A = acoustic_matrix(ex.params);
  const auto speeds = acoustic_char_speeds(A);
  const double s3t = std::sqrt(3.0 * ex.params.temp);
  const double eig_err = std::max({std::abs(speeds[0] - (ex.params.u - s3t)),
                                   std::abs(speeds[1] - ex.params.u),
                                   std::abs(speeds[2] - (ex.params.u + s3t))});
  out.push_back({"acoustic_speeds", eig_err <= 1e-12,
                 "max |eigen-speed - (u, u +/- sqrt(3T))| = " + fmt(eig_err)});

  // Original-frame solves on smooth hydrodynamic wave data.
  const double halfwidth = ex.cfg.v_halfwidth_sigmas * std::sqrt(ex.params.temp);
  PhaseGrid grid{ex.grid.x, centered_velocity_grid(ex.cfg.n_v, ex.params.u, halfwidth)};
  CollisionOperator op = make_collision_operator(ex.params, grid.v, WeightFrame::star, 1);
  const FrameSpec frame = FrameSpec::original();

  DistributionField init(ex.cfg.n_x, ex.cfg.n_v, Frame::original, 0);
  for (int i = 0; i < init.nx; ++i) {
    const double profile = ex.cfg.initial.amplitude *
                           std::sin(2.0 * std::numbers::pi * ex.cfg.initial.wavenumber *
                                    grid.x.nodes[i] / ex.cfg.length);
    auto row = init.row(i);
    for (int j = 0; j < init.nv; ++j) row[j] = profile * op.basis().chi[0][j];
  }

  const double kn_values[3] = {1.0, 0.1, 0.01};
  std::array<double, 3> metric{};
  std::ostringstream allcsv;
  allcsv << "knudsen,residual_mean\n";
  for (int r = 0; r < 3; ++r) {
    SolverConfig scfg;
    scfg.t_end = std::min(ex.cfg.t_end, 5.0);
    scfg.knudsen = kn_values[r];
    scfg.cfl_safety = ex.cfg.cfl_safety;
    scfg.scheme = kernels::Scheme::lax_wendroff;  // smooth data; low dissipation floor
    std::vector<double> times;
    std::vector<AcousticState> states;
    DistributionField w = init;
    SolveOptions opts;
    opts.on_sample = [&](long, const DistributionField& field) {
      times.push_back(field.time);
      states.push_back(linearized_moments(field, grid, ex.params));
    };
    solve(w, scfg, grid, op, frame, nullptr, opts);
    const auto res = acoustic_limit_residual(times, states, ex.params, grid.x.spacing);
    double mean = 0.0;
    for (double v : res) mean += v;
    mean /= static_cast<double>(res.size());
    metric[r] = mean;
    allcsv << fmt(kn_values[r]) << "," << fmt(mean) << "\n";

    std::ostringstream os;
    os << "time,residual\n";
    for (size_t s = 0; s < res.size(); ++s) os << fmt(times[s + 1]) << "," << fmt(res[s]) << "\n";
    char name[64];
    std::snprintf(name, sizeof(name), "acoustic_res_kn%g.csv", kn_values[r]);
    sink.write(name, os.str());
  }
  sink.write("acoustic.csv", allcsv.str());
  out.push_back({"acoustic_residual", metric[0] > metric[1] && metric[1] > metric[2],
                 "mean residual Kn {1, 0.1, 0.01} = {" + fmt(metric[0]) + ", " + fmt(metric[1]) +
                     ", " + fmt(metric[2]) + "}"});
  return out;
}

// ---------------------------------------------------------------------------
// mms suite: forced-equation refinement study for the declared orders.
// ---------------------------------------------------------------------------
double mms_error(const Experiment& ex, int nx, int nv, kernels::Scheme scheme) {
  const bool scaled = ex.cfg.perturbation == Perturbation::temperature;
  const double halfwidth = ex.cfg.v_halfwidth_sigmas * std::sqrt(scaled ? 1.0 : ex.params.temp);
  PhaseGrid grid{build_spatial_grid(nx, ex.cfg.length),
                 centered_velocity_grid(nv, 0.0, halfwidth)};
  CollisionOperator op = make_collision_operator(
      ex.params, grid.v, scaled ? WeightFrame::unit : WeightFrame::zero_mean, 1);
  const FrameSpec frame = ex.frame;
  const auto speeds = frame.speeds(grid.v);
  const double khat = 2.0 * std::numbers::pi / ex.cfg.length;
  const double omega = 1.0;
  const double kn = ex.cfg.knudsen;

  std::vector<double> q(nv), lq(nv);
  for (int j = 0; j < nv; ++j) {
    const double v = grid.v.nodes[j];
    q[j] = v * std::exp(-v * v / 4.0);
  }
  op.apply(q, lq);

  auto exact = [&](double t, DistributionField& w) {
    for (int i = 0; i < nx; ++i) {
      const double phi = std::sin(khat * grid.x.nodes[i] - omega * t);
      auto row = w.row(i);
      for (int j = 0; j < nv; ++j) row[j] = phi * q[j];
    }
  };

  DistributionField w(nx, nv, ex.initial.frame, 0);
  exact(0.0, w);
  SolverConfig scfg;
  scfg.t_end = 1.0;
  scfg.knudsen = kn;
  scfg.cfl_safety = ex.cfg.cfl_safety;
  scfg.scheme = scheme;
  SourceFn src = [&](double t, DistributionField& s) {
    for (int i = 0; i < nx; ++i) {
      const double theta = khat * grid.x.nodes[i] - omega * t;
      const double cphi = std::cos(theta);
      const double phi = std::sin(theta);
      auto row = s.row(i);
      for (int j = 0; j < nv; ++j)
        row[j] = (-omega + speeds[j] * khat) * cphi * q[j] - phi * lq[j] / kn;
    }
  };
  solve(w, scfg, grid, op, frame, src);

  DistributionField wex(nx, nv, w.frame, 0);
  exact(scfg.t_end, wex);
  for (size_t idx = 0; idx < w.data.size(); ++idx) w.data[idx] -= wex.data[idx];
  return norm_xv(w, grid);
}

std::vector<CheckResult> suite_mms(const Experiment& ex, CsvSink& sink) {
  struct Level {
    int nx, nv;
  };
  const Level levels[3] = {{32, 33}, {64, 65}, {128, 129}};
  std::ostringstream os;
  os << "scheme,nx,nv,error,observed_order\n";
  std::vector<CheckResult> out;
  const struct {
    kernels::Scheme scheme;
    const char* name;
    double min_order;
  } runs[2] = {{kernels::Scheme::upwind, "upwind", 0.9},
               {kernels::Scheme::muscl_minmod, "muscl", 1.8}};
  for (const auto& r : runs) {
    double prev = 0.0, order = 0.0;
    for (int l = 0; l < 3; ++l) {
      const double err = mms_error(ex, levels[l].nx, levels[l].nv, r.scheme);
      order = l > 0 ? std::log2(prev / err) : 0.0;
      os << r.name << "," << levels[l].nx << "," << levels[l].nv << "," << fmt(err) << ","
         << fmt(order) << "\n";
      prev = err;
    }
    out.push_back({std::string("mms_") + r.name, order >= r.min_order,
                   "finest observed order " + fmt(order) + " (required >= " + fmt(r.min_order) +
                       ")"});
  }
  sink.write("mms.csv", os.str());
  return out;
}

}  // namespace

std::vector<CheckResult> run_suite(const std::string& suite, const Experiment& ex,
                                   const PrimaryRun& primary, CsvSink& sink) {
  const auto kind = ex.cfg.perturbation;
  const bool velocity = kind == Perturbation::velocity;
  auto need = [&](bool ok, const std::string& why) -> std::vector<CheckResult> {
    if (ok) return {};
    return {{suite, false, why}};
  };

  if (suite == "collision") return {checks::collision_properties(ex.op)};
  if (suite == "lemma31") return {checks::decay_order0(primary.series, "lemma31")};
  if (suite == "lemma41") {
    if (auto e = need(!velocity, "lemma41 requires perturbation = temperature"); !e.empty())
      return e;
    return {checks::decay_order0(primary.series, "lemma41")};
  }
  if (suite == "thm31") {
    if (auto e = need(velocity, "thm31 requires perturbation = velocity"); !e.empty()) return e;
    return {checks::gradient_bound(primary.series)};
  }
  if (suite == "thm32") {
    if (auto e = need(velocity && ex.cfg.n_max >= 1, "thm32 requires velocity and n_max >= 1");
        !e.empty())
      return e;
    return {checks::growth_envelope(primary.series, "thm32"),
            checks::growth_exponent(primary.series, 1, ex.cfg.fit_lo(), ex.cfg.fit_hi(), 1.1)};
  }
  if (suite == "thm41") {
    if (auto e = need(!velocity && ex.cfg.n_max >= 1, "thm41 requires temperature and n_max >= 1");
        !e.empty())
      return e;
    return {checks::growth_envelope(primary.series, "thm41")};
  }
  if (suite == "thm33" || suite == "thm42") {
    const bool want_velocity = suite == "thm33";
    if (auto e = need(velocity == want_velocity && ex.cfg.n_max >= 2,
                      suite + " requires n_max >= 2 and the matching perturbation");
        !e.empty())
      return e;
    std::vector<CheckResult> out;
    for (int n = 2; n <= ex.cfg.n_max; ++n)
      out.push_back(checks::polynomial_ratio(primary.series, n, ex.cfg.fit_lo(), ex.cfg.fit_hi()));
    return out;
  }
  if (suite == "oracle") {
    if (auto e = need(velocity, "oracle requires perturbation = velocity"); !e.empty()) return e;
    return suite_oracle(ex, sink);
  }
  if (suite == "conservation") return {checks::conservation(primary.series)};
  if (suite == "acoustic") return suite_acoustic(ex, sink);
  if (suite == "mms") return suite_mms(ex, sink);
  return {{suite, false, "unknown suite '" + suite + "'"}};
}

std::vector<std::pair<std::string, std::string>> list_suites() {
  return {
      {"collision", "collision-operator property suite (coercive, self-adjoint, null space, moments)"},
      {"lemma31", "order-0 L2(dx dv) norm nonincreasing at every sample"},
      {"lemma41", "same decay check, named for temperature runs"},
      {"thm31", "||d_x w|| stays below its initial value"},
      {"thm32", "first-order velocity sensitivity under its linear-growth envelope + exponent fit"},
      {"thm33", "||w^(n)||/t^n bounded on the late window (velocity, n >= 2)"},
      {"thm41", "first-order temperature sensitivity under its linear-growth envelope"},
      {"thm42", "||w^(n)||/t^n bounded on the late window (temperature, n >= 2)"},
      {"oracle", "direct sensitivity vs finite-difference collocation in z (Richardson + absolute)"},
      {"conservation", "x-integrated weighted mass/momentum/energy drift"},
      {"acoustic", "moment-system residual ordering across Kn and characteristic speeds"},
      {"mms", "forced-equation grid-refinement orders for upwind and MUSCL transport"},
  };
}

int run_experiment(const ExperimentConfig& cfg, const RunOptions& opts) {
  if (opts.threads > 0) omp_set_num_threads(opts.threads);
  ExperimentConfig run_cfg = cfg;
  if (!opts.output_dir_override.empty()) run_cfg.out_dir = opts.output_dir_override;
  {
    const auto errs = validate(run_cfg);
    if (!errs.empty()) {
      for (const auto& e : errs) std::fprintf(stderr, "config error: %s\n", e.c_str());
      return 2;
    }
  }

  CsvSink sink{run_cfg.out_dir, {}};
  std::ostringstream report;
  try {
    const Experiment ex = build_experiment(run_cfg);
    const PrimaryRun primary = run_primary(ex);
    sink.write("series.csv", series_csv(primary.series));

    report << "run: " << (run_cfg.perturbation == Perturbation::velocity ? "velocity" : "temperature")
           << " perturbation, n_max = " << run_cfg.n_max << ", t_end = " << fmt(run_cfg.t_end)
           << "\n";
    report << "constants: ||d_x w0|| = " << fmt(primary.dx_norm0)
           << ", norm-equivalence K_eq = " << fmt(primary.keq)
           << ", ||d_t p_i|| = " << fmt(primary.dt_p0) << "\n\n";

    std::vector<CheckResult> results;
    for (const auto& suite : run_cfg.suites) {
      const auto rs = run_suite(suite, ex, primary, sink);
      results.insert(results.end(), rs.begin(), rs.end());
    }

    std::ostringstream summary;
    summary << "check,pass,detail\n";
    bool all_pass = true;
    for (const auto& r : results) {
      all_pass = all_pass && r.pass;
      report << (r.pass ? "pass" : "FAIL") << "  " << r.name << ": " << r.detail << "\n";
      std::string quoted = r.detail;
      for (auto& ch : quoted)
        if (ch == ',') ch = ';';
      summary << r.name << "," << (r.pass ? 1 : 0) << "," << quoted << "\n";
    }
    sink.write("summary.csv", summary.str());
    sink.write("report.txt", report.str());
    return all_pass ? 0 : 1;
  } catch (const SolverAbort& e) {
    std::fprintf(stderr, "numerical abort: %s (t = %g, step %ld)\n", e.what(), e.t_abort,
                 e.step_abort);
    std::ostringstream os;
    for (int i = 0; i < e.last_valid.nx; ++i) {
      const auto r = e.last_valid.row(i);
      for (int j = 0; j < e.last_valid.nv; ++j) os << (j ? "," : "") << fmt(r[j]);
      os << "\n";
    }
    sink.write("abort_dump.csv", os.str());
    return 3;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}

}  // namespace linbgk
