#include <CLI11.hpp>
#include <cstdio>

#include "linbgk/config.hpp"
#include "linbgk/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"linbgk: linearized BGK solver and sensitivity verification harness"};
  app.require_subcommand(1);

  std::string config_path;
  std::string output_dir;
  int threads = 0;

  auto* run = app.add_subcommand("run", "run the experiment described by a config file");
  run->add_option("config", config_path, "config file (sectioned key = value text)")->required();
  run->add_option("--output-dir", output_dir, "override [output] directory");
  run->add_option("--threads", threads, "cap the worker thread count");

  auto* val = app.add_subcommand("validate", "parse and validate a config file");
  val->add_option("config", config_path, "config file")->required();

  auto* ls = app.add_subcommand("list-suites", "list the available verification suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (ls->parsed()) {
      for (const auto& [name, desc] : linbgk::list_suites())
        std::printf("%-13s %s\n", name.c_str(), desc.c_str());
      return 0;
    }
    if (val->parsed()) {
      linbgk::parse_config(config_path);
      std::printf("%s: valid\n", config_path.c_str());
      return 0;
    }
    const auto cfg = linbgk::parse_config(config_path);
    linbgk::RunOptions opts;
    opts.output_dir_override = output_dir;
    opts.threads = threads;
    return linbgk::run_experiment(cfg, opts);
  } catch (const linbgk::ConfigError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
