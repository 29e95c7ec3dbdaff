#include "linbgk/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace linbgk {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct Parser {
  ExperimentConfig cfg;
  std::string origin;
  std::vector<std::string> errors;

  void fail(int line, const std::string& msg) {
    errors.push_back(origin + ":" + std::to_string(line) + ": " + msg);
  }

  double num(const std::string& v, int line) {
    try {
      size_t pos = 0;
      const double x = std::stod(v, &pos);
      if (pos != v.size()) throw std::invalid_argument("trailing characters");
      return x;
    } catch (const std::exception&) {
      fail(line, "expected a number, got '" + v + "'");
      return 0.0;
    }
  }

  int integer(const std::string& v, int line) {
    const double x = num(v, line);
    if (x != std::floor(x)) fail(line, "expected an integer, got '" + v + "'");
    return static_cast<int>(x);
  }

  void set(const std::string& section, const std::string& key, const std::string& val, int line) {
    auto is = [&](const char* s, const char* k) { return section == s && key == k; };
    if (is("grid", "n_x")) cfg.n_x = integer(val, line);
    else if (is("grid", "length")) cfg.length = num(val, line);
    else if (is("grid", "n_v")) cfg.n_v = integer(val, line);
    else if (is("grid", "v_halfwidth_sigmas")) cfg.v_halfwidth_sigmas = num(val, line);
    else if (is("physics", "rho")) cfg.rho = num(val, line);
    else if (is("physics", "u0")) cfg.u0 = num(val, line);
    else if (is("physics", "T0")) cfg.T0 = num(val, line);
    else if (is("physics", "eps_u")) cfg.eps_u = num(val, line);
    else if (is("physics", "eps_T")) cfg.eps_T = num(val, line);
    else if (is("physics", "knudsen")) cfg.knudsen = num(val, line);
    else if (is("physics", "z0")) cfg.z0 = num(val, line);
    else if (is("run", "dt")) cfg.dt = num(val, line);
    else if (is("run", "cfl_safety")) cfg.cfl_safety = num(val, line);
    else if (is("run", "t_end")) cfg.t_end = num(val, line);
    else if (is("run", "n_max")) cfg.n_max = integer(val, line);
    else if (is("run", "perturbation")) {
      if (val == "velocity") cfg.perturbation = Perturbation::velocity;
      else if (val == "temperature") cfg.perturbation = Perturbation::temperature;
      else fail(line, "perturbation must be 'velocity' or 'temperature'");
    } else if (is("run", "scheme")) {
      if (val == "upwind") cfg.scheme = kernels::Scheme::upwind;
      else if (val == "muscl") cfg.scheme = kernels::Scheme::muscl_minmod;
      else if (val == "lw") cfg.scheme = kernels::Scheme::lax_wendroff;
      else fail(line, "scheme must be 'upwind', 'muscl' or 'lw'");
    } else if (is("run", "init_sensitivity")) {
      if (val == "zero_in_frame") cfg.init_sensitivity = ExperimentConfig::InitSensitivity::zero_in_frame;
      else if (val == "chain_rule_from_f")
        cfg.init_sensitivity = ExperimentConfig::InitSensitivity::chain_rule_from_f;
      else fail(line, "init_sensitivity must be 'zero_in_frame' or 'chain_rule_from_f'");
    } else if (is("initial", "profile")) {
      if (val == "sine_wave") cfg.initial.profile = ExperimentConfig::Profile::sine_wave;
      else if (val == "gaussian_bump") cfg.initial.profile = ExperimentConfig::Profile::gaussian_bump;
      else if (val == "file") cfg.initial.profile = ExperimentConfig::Profile::file;
      else fail(line, "profile must be 'sine_wave', 'gaussian_bump' or 'file'");
    } else if (is("initial", "amplitude")) cfg.initial.amplitude = num(val, line);
    else if (is("initial", "wavenumber")) cfg.initial.wavenumber = integer(val, line);
    else if (is("initial", "mode")) cfg.initial.mode = integer(val, line);
    else if (is("initial", "x0")) cfg.initial.x0 = num(val, line);
    else if (is("initial", "sigma_x")) cfg.initial.sigma_x = num(val, line);
    else if (is("initial", "path")) cfg.initial.path = val;
    else if (is("verify", "suites")) {
      std::stringstream ss(val);
      std::string item;
      while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) cfg.suites.push_back(item);
      }
    } else if (is("verify", "fd_delta")) cfg.fd_delta = num(val, line);
    else if (is("verify", "fit_t_lo")) cfg.fit_t_lo = num(val, line);
    else if (is("verify", "fit_t_hi")) cfg.fit_t_hi = num(val, line);
    else if (is("output", "directory")) cfg.out_dir = val;
    else if (is("output", "sample_stride")) cfg.sample_stride = integer(val, line);
    else fail(line, "unknown key '" + key + "' in section [" + section + "]");
  }
};

const char* kSections[] = {"grid", "physics", "run", "initial", "verify", "output"};

}  // namespace

double ExperimentConfig::resolved_fd_delta() const {
  if (fd_delta > 0.0) return fd_delta;
  // 1e-2 of the admissible half-range keeping T(z) > 0 (capped for eps_T ~ 0).
  const double half = eps_T != 0.0 ? T0 / std::abs(eps_T) : 10.0;
  return 1e-2 * std::min(half, 10.0);
}

ExperimentConfig parse_config_text(const std::string& text, const std::string& origin) {
  Parser p;
  p.origin = origin;
  std::string section;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = trim(raw);
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = trim(line.substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        p.fail(line_no, "malformed section header '" + line + "'");
        continue;
      }
      section = trim(line.substr(1, line.size() - 2));
      bool known = false;
      for (const char* s : kSections) known = known || section == s;
      if (!known) p.fail(line_no, "unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      p.fail(line_no, "expected 'key = value', got '" + line + "'");
      continue;
    }
    if (section.empty()) {
      p.fail(line_no, "key before any [section] header");
      continue;
    }
    p.set(section, trim(line.substr(0, eq)), trim(line.substr(eq + 1)), line_no);
  }
  if (!p.errors.empty()) {
    std::string msg;
    for (const auto& e : p.errors) msg += e + "\n";
    throw ConfigError(msg);
  }
  return p.cfg;
}

ExperimentConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  ExperimentConfig cfg = parse_config_text(buf.str(), path);
  const auto errs = validate(cfg);
  if (!errs.empty()) {
    std::string msg;
    for (const auto& e : errs) msg += e + "\n";
    throw ConfigError(msg);
  }
  return cfg;
}

std::vector<std::string> validate(const ExperimentConfig& cfg) {
  std::vector<std::string> errs;
  auto require = [&](bool ok, const std::string& msg) {
    if (!ok) errs.push_back(msg);
  };
  require(cfg.n_x >= 4, "grid.n_x must be >= 4");
  require(cfg.length > 0.0, "grid.length must be > 0");
  require(cfg.n_v >= 8, "grid.n_v must be >= 8");
  require(cfg.v_halfwidth_sigmas >= 8.0, "grid.v_halfwidth_sigmas must be >= 8");
  require(cfg.rho > 0.0, "physics.rho must be > 0");
  require(cfg.T0 > 0.0, "physics.T0 must be > 0");
  require(cfg.knudsen > 0.0, "physics.knudsen must be > 0");
  require(cfg.dt >= 0.0, "run.dt must be >= 0");
  require(cfg.cfl_safety > 0.0 && cfg.cfl_safety <= 1.0, "run.cfl_safety must be in (0, 1]");
  require(cfg.t_end >= 0.0, "run.t_end must be >= 0");
  require(cfg.n_max >= 0 && cfg.n_max <= 4, "run.n_max must be in 0..4");
  require(cfg.initial.amplitude != 0.0 || cfg.initial.profile == ExperimentConfig::Profile::file,
          "initial.amplitude must be nonzero");
  require(cfg.initial.mode >= 0 && cfg.initial.mode <= 8, "initial.mode must be in 0..8");
  if (cfg.initial.profile == ExperimentConfig::Profile::sine_wave)
    require(cfg.initial.wavenumber >= 1, "initial.wavenumber must be >= 1");
  if (cfg.initial.profile == ExperimentConfig::Profile::gaussian_bump)
    require(cfg.initial.sigma_x > 0.0, "initial.sigma_x must be > 0");
  if (cfg.initial.profile == ExperimentConfig::Profile::file)
    require(!cfg.initial.path.empty(), "initial.path required for profile = file");
  require(cfg.fd_delta >= 0.0, "verify.fd_delta must be >= 0");
  require(cfg.sample_stride >= 0, "output.sample_stride must be >= 0");

  if (cfg.perturbation == Perturbation::temperature)
    require(cfg.u0 == 0.0, "run.perturbation = temperature requires physics.u0 = 0 "
                           "(the scaled frame assumes a zero-mean linearization point)");
  if (cfg.perturbation == Perturbation::temperature &&
      cfg.init_sensitivity == ExperimentConfig::InitSensitivity::chain_rule_from_f)
    require(cfg.n_max <= 1,
            "init_sensitivity = chain_rule_from_f supports n_max <= 1 for temperature runs");

  // Physical positivity over the full collocation stencil z0 +/- 2*delta.
  if (cfg.T0 > 0.0) {
    const double delta = cfg.resolved_fd_delta();
    for (int k = -2; k <= 2; ++k) {
      const double zk = cfg.z0 + k * delta;
      const double Tk = cfg.T0 + cfg.eps_T * zk;
      if (!(Tk > 0.0))
        errs.push_back("T(z) <= 0 at stencil node z = z0 + (" + std::to_string(k) +
                       ")*delta = " + std::to_string(zk));
    }
  }
  return errs;
}

}  // namespace linbgk
