#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "linbgk/kernels.hpp"
#include "linbgk/sensitivity.hpp"

namespace linbgk {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Declarative experiment description. Parsed from a flat, sectioned
/// key-value file (see README for the grammar).
struct ExperimentConfig {
  // [grid]
  int n_x = 128;
  double length = 6.283185307179586;  // 2*pi
  int n_v = 129;
  double v_halfwidth_sigmas = 8.0;

  // [physics]
  double rho = 1.0;
  double u0 = 0.5;
  double T0 = 1.0;
  double eps_u = 0.1;
  double eps_T = 0.1;
  double knudsen = 1.0;
  double z0 = 0.0;

  // [run]
  double dt = 0.0;  // 0 -> from cfl_safety
  double cfl_safety = 0.5;
  double t_end = 50.0;
  int n_max = 1;
  Perturbation perturbation = Perturbation::velocity;
  kernels::Scheme scheme = kernels::Scheme::upwind;
  enum class InitSensitivity { zero_in_frame, chain_rule_from_f };
  InitSensitivity init_sensitivity = InitSensitivity::zero_in_frame;

  // [initial]
  enum class Profile { sine_wave, gaussian_bump, file };
  struct Initial {
    Profile profile = Profile::sine_wave;
    double amplitude = 1.0;
    int wavenumber = 1;
    int mode = 3;  // basis-function index in v
    double x0 = 3.141592653589793;
    double sigma_x = 0.5;
    std::string path;
  } initial;

  // [verify]
  std::vector<std::string> suites;
  double fd_delta = 0.0;  // 0 -> 1e-2 of the admissible z half-range
  double fit_t_lo = -1.0;  // < 0 -> t_end/2
  double fit_t_hi = -1.0;  // < 0 -> t_end

  // [output]
  std::string out_dir = "out";
  long sample_stride = 0;

  double resolved_fd_delta() const;
  double fit_lo() const { return fit_t_lo >= 0.0 ? fit_t_lo : 0.5 * t_end; }
  double fit_hi() const { return fit_t_hi >= 0.0 ? fit_t_hi : t_end; }
};

/// Parses the file; throws ConfigError with line information on malformed
/// input or unknown keys.
ExperimentConfig parse_config(const std::string& path);
ExperimentConfig parse_config_text(const std::string& text, const std::string& origin = "<text>");

/// Returns every validation failure at once (empty means valid).
std::vector<std::string> validate(const ExperimentConfig& cfg);

}  // namespace linbgk
