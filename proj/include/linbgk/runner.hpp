#pragma once

#include <string>
#include <utility>
#include <vector>

#include "linbgk/config.hpp"
#include "linbgk/harness.hpp"

namespace linbgk {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Assembled experiment: phase grid, collision operator, frame and initial
/// data derived from a config.
struct Experiment {
  ExperimentConfig cfg;
  PhaseGrid grid;
  MaxwellianParams params;  // at z0
  FrameSpec frame;
  CollisionOperator op;
  DistributionField initial;
};

Experiment build_experiment(const ExperimentConfig& cfg);

/// The main hierarchy solve with bound envelopes and their constants.
struct PrimaryRun {
  NormSeries series;
  SensitivityStack stack;  // final state
  double dx_norm0 = 0.0;   // ||d_x w^(0)(0)||
  double keq = 0.0;        // weighted/unweighted norm-equivalence factor
  double dt_p0 = 0.0;      // ||d_t p_i|| assembled from the equation at t = 0
};

PrimaryRun run_primary(const Experiment& ex);

namespace checks {

/// Coercivity, self-adjointness, null space, moment conservation and the
/// contraction bounds of the projection defect, on random grid slices.
CheckResult collision_properties(const CollisionOperator& op, int n_fields = 1000);
CheckResult decay_order0(const NormSeries& s, const std::string& name,
                         double per_step_tol = 1e-10);
CheckResult gradient_bound(const NormSeries& s, double tol_rel = 1e-8);
CheckResult growth_envelope(const NormSeries& s, const std::string& env_name,
                            double tol_rel = 1e-6, double tol_abs = 1e-10);
CheckResult growth_exponent(const NormSeries& s, int order, double t_lo, double t_hi,
                            double max_exponent);
CheckResult polynomial_ratio(const NormSeries& s, int order, double t_lo, double t_hi);
CheckResult conservation(const NormSeries& s, double tol_rel = 1e-8);

}  // namespace checks

/// Collects CSV artifacts; dir empty -> contents are dropped.
struct CsvSink {
  std::string dir;
  std::vector<std::string> written;
  void write(const std::string& name, const std::string& content);
};

std::vector<CheckResult> run_suite(const std::string& suite, const Experiment& ex,
                                   const PrimaryRun& primary, CsvSink& sink);

std::string series_csv(const NormSeries& s);

struct RunOptions {
  std::string output_dir_override;
  int threads = 0;
};

/// Executes the configured suites, writes CSV artifacts, summary.csv and
/// report.txt. Exit-code semantics: 0 all checks pass, 1 check failure,
/// 2 invalid config, 3 numerical abort.
int run_experiment(const ExperimentConfig& cfg, const RunOptions& opts = {});

std::vector<std::pair<std::string, std::string>> list_suites();

}  // namespace linbgk
