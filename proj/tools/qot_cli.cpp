// Command line front end: validate configs, run experiments, run the
// built-in demos.  Reports are canonical JSON (stable bytes for a fixed
// config and seed); human readable progress goes to stderr.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "harness.hpp"

namespace {

constexpr long long kDimGuard = 1LL << 12;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << bytes;
}

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::optional<double> tol_quadrature;
  std::optional<std::string> out;
  std::string csv;
  bool parallel_trials = false;
  bool allow_large = false;
};

void apply(const Overrides& ov, qot::harness::ExperimentConfig& cfg) {
  if (ov.seed) cfg.seed = *ov.seed;
  if (ov.trials) cfg.trials = *ov.trials;
  if (ov.tol_quadrature) cfg.tol_quadrature = *ov.tol_quadrature;
  if (ov.out) cfg.output = *ov.out;
  cfg.parallel_trials = ov.parallel_trials;
}

int run_config(const qot::harness::ExperimentConfig& cfg, const Overrides& ov) {
  long long dim = cfg.shape().dim();
  if (dim > kDimGuard && !ov.allow_large) {
    std::cerr << "error: total dimension " << dim << " exceeds " << kDimGuard
              << "; pass --allow-large to proceed\n";
    return 2;
  }

  qot::RunReport report = qot::harness::run_experiment(cfg);
  std::string bytes = report.to_json(false).dump();
  bytes.push_back('\n');

  if (!ov.csv.empty()) write_file(ov.csv, report.to_csv());

  if (cfg.output.empty() || cfg.output == "-") {
    std::cout << bytes;
    for (const auto& t : report.tasks)
      std::cerr << "task " << t.task << ": " << (t.pass() ? "pass" : "FAIL") << " ("
                << t.assertions.size() << " assertions, " << static_cast<long long>(t.wall_ms)
                << " ms)\n";
  } else {
    write_file(cfg.output, bytes);
    for (const auto& t : report.tasks)
      std::cout << "task " << t.task << ": " << (t.pass() ? "pass" : "FAIL") << " ("
                << t.assertions.size() << " assertions, " << static_cast<long long>(t.wall_ms)
                << " ms)\n";
    std::cout << "report written to " << cfg.output << "\n";
  }
  std::cerr << (report.pass() ? "PASS" : "FAIL") << "\n";
  return report.pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"transport distances, recovery maps and concentration bounds for small qudit registers"};
  app.require_subcommand(1);

  Overrides ov;
  std::string config_path;
  std::string demo_name;
  bool emit_config = false;

  auto add_run_flags = [&](CLI::App* cmd) {
    cmd->add_option("--seed", ov.seed, "override the config seed");
    cmd->add_option("--trials", ov.trials, "override the config trial count")
        ->check(CLI::Range(1, 100000));
    cmd->add_option("--tol-quadrature", ov.tol_quadrature, "override the quadrature tolerance")
        ->check(CLI::Range(1e-14, 1e-2));
    cmd->add_option("--out", ov.out, "report destination ('-' for stdout)");
    cmd->add_option("--csv", ov.csv, "also write a per-assertion CSV summary");
    cmd->add_flag("--parallel-trials", ov.parallel_trials,
                  "sample trials concurrently (per-trial streams, identical results)");
    cmd->add_flag("--allow-large", ov.allow_large, "lift the total-dimension guard of 4096");
  };

  CLI::App* run = app.add_subcommand("run", "run an experiment config");
  run->add_option("config", config_path, "path to a config JSON document")->required();
  add_run_flags(run);

  CLI::App* validate = app.add_subcommand("validate", "parse and validate a config");
  validate->add_option("config", config_path, "path to a config JSON document")->required();

  CLI::App* demo = app.add_subcommand("demo", "run a built-in demo config");
  demo->add_option("name", demo_name, "demo name (see --list)");
  demo->add_flag("--emit-config", emit_config, "print the demo config instead of running it");
  bool list_demos = false;
  demo->add_flag("--list", list_demos, "list demo names");
  add_run_flags(demo);

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      auto cfg = qot::harness::parse_config(read_file(config_path));
      apply(ov, cfg);
      return run_config(cfg, ov);
    }
    if (validate->parsed()) {
      auto cfg = qot::harness::parse_config(read_file(config_path));
      long long dim = cfg.shape().dim();
      std::cout << "valid: dimension " << dim << ", " << cfg.tasks.size() << " task(s), "
                << cfg.betas.size() << " beta value(s)\n";
      if (dim > kDimGuard)
        std::cout << "note: running needs --allow-large (dimension exceeds " << kDimGuard << ")\n";
      return 0;
    }
    if (demo->parsed()) {
      const auto& demos = qot::harness::demo_configs();
      if (list_demos) {
        for (const auto& [name, text] : demos) std::cout << name << "\n";
        return 0;
      }
      if (demo_name.empty()) {
        std::cerr << "error: demo name required (try --list)\n";
        return 2;
      }
      auto it = demos.find(demo_name);
      if (it == demos.end()) {
        std::cerr << "error: unknown demo '" << demo_name << "'; available:";
        for (const auto& [name, text] : demos) std::cerr << " " << name;
        std::cerr << "\n";
        return 2;
      }
      if (emit_config) {
        std::cout << it->second;
        return 0;
      }
      auto cfg = qot::harness::parse_config(it->second);
      apply(ov, cfg);
      return run_config(cfg, ov);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
