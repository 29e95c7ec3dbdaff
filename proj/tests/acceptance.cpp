/// Acceptance suite: runs the full verification matrix at desk scale and
/// prints one pass/fail line per criterion. Exit status 0 iff all pass.
///
///  1. collision-operator property suite (1000 random fields)
///  2. order-0 L2 decay in both frames, every sourceless run
///  3. gradient-norm bound in the shifted frame
///  4. first-order velocity growth envelope + fitted exponent <= 1.1
///  5. first-order temperature growth envelope with assembled constants
///  6. ||w^(n)||/t^n bounded on the late window, n = 2, 3, both frames
///  7. direct sensitivity vs collocation: Richardson ratio and absolute error
///  8. conservation audit of the weighted moments
///  9. acoustic-limit residual ordering across Kn + characteristic speeds
/// 10. forced-equation refinement orders for both transport schemes

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "linbgk/runner.hpp"

using namespace linbgk;

namespace {

struct Criterion {
  int id;
  std::string title;
  std::vector<CheckResult> checks;

  bool pass() const {
    bool ok = !checks.empty();
    for (const auto& c : checks) ok = ok && c.pass;
    return ok;
  }
};

ExperimentConfig velocity_config() {
  ExperimentConfig cfg;  // defaults are the standard experiment
  cfg.n_max = 3;
  cfg.fit_t_lo = 25.0;
  cfg.fit_t_hi = 50.0;
  return cfg;
}

ExperimentConfig temperature_config() {
  ExperimentConfig cfg;
  cfg.u0 = 0.0;
  cfg.eps_u = 0.0;
  cfg.perturbation = Perturbation::temperature;
  cfg.n_max = 3;
  cfg.fit_t_lo = 25.0;
  cfg.fit_t_hi = 50.0;
  return cfg;
}

}  // namespace

int main() {
  std::vector<Criterion> criteria;
  CsvSink sink;  // artifacts are dropped; ctest output is the record

  std::printf("building velocity-perturbation experiment...\n");
  const Experiment exv = build_experiment(velocity_config());
  const PrimaryRun runv = run_primary(exv);
  std::printf("building temperature-perturbation experiment...\n");
  const Experiment ext = build_experiment(temperature_config());
  const PrimaryRun runt = run_primary(ext);
  std::printf("norm-equivalence factor K_eq = %.6g, ||d_t p_i|| = %.6g\n\n", runt.keq,
              runt.dt_p0);

  // property suite in all three weight frames, including a general (u, T)
  const MaxwellianParams pstar = make_params(1.3, 0.6, 2.1, 0.0, 0.0);
  const CollisionOperator star_op = make_collision_operator(
      pstar, centered_velocity_grid(129, pstar.u, 8.0 * std::sqrt(pstar.temp)), WeightFrame::star,
      2);
  criteria.push_back({1,
                      "collision-operator property suite",
                      {checks::collision_properties(exv.op), checks::collision_properties(ext.op),
                       checks::collision_properties(star_op)}});

  criteria.push_back({2, "order-0 norm nonincreasing (both frames)",
                      {checks::decay_order0(runv.series, "lemma31"),
                       checks::decay_order0(runt.series, "lemma41")}});

  criteria.push_back({3, "gradient-norm bound", {checks::gradient_bound(runv.series)}});

  criteria.push_back(
      {4, "first-order velocity envelope and exponent",
       {checks::growth_envelope(runv.series, "thm32"),
        checks::growth_exponent(runv.series, 1, exv.cfg.fit_lo(), exv.cfg.fit_hi(), 1.1)}});

  criteria.push_back(
      {5, "first-order temperature envelope", {checks::growth_envelope(runt.series, "thm41")}});

  criteria.push_back({6, "t^n boundedness of orders 2 and 3",
                      {checks::polynomial_ratio(runv.series, 2, exv.cfg.fit_lo(), exv.cfg.fit_hi()),
                       checks::polynomial_ratio(runv.series, 3, exv.cfg.fit_lo(), exv.cfg.fit_hi()),
                       checks::polynomial_ratio(runt.series, 2, ext.cfg.fit_lo(), ext.cfg.fit_hi()),
                       checks::polynomial_ratio(runt.series, 3, ext.cfg.fit_lo(), ext.cfg.fit_hi())}});

  std::printf("running collocation oracle...\n");
  criteria.push_back({7, "oracle equivalence", run_suite("oracle", exv, runv, sink)});

  criteria.push_back({8, "conservation audit",
                      {checks::conservation(runv.series), checks::conservation(runt.series)}});

  std::printf("running acoustic-limit sweep...\n");
  criteria.push_back({9, "acoustic limit", run_suite("acoustic", exv, runv, sink)});

  std::printf("running refinement study...\n");
  criteria.push_back({10, "scheme verification", run_suite("mms", exv, runv, sink)});

  std::printf("\n");
  int failures = 0;
  for (const auto& c : criteria) {
    const bool ok = c.pass();
    failures += ok ? 0 : 1;
    std::printf("[%s] criterion %2d: %s\n", ok ? "PASS" : "FAIL", c.id, c.title.c_str());
    for (const auto& chk : c.checks)
      std::printf("        %-18s %s  (%s)\n", chk.name.c_str(), chk.pass ? "ok" : "FAILED",
                  chk.detail.c_str());
  }
  std::printf("\nACCEPTANCE: %zu/%zu criteria passed\n", criteria.size() - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
