#pragma once
// Experiment harness behind the command line tool: config parsing with
// field-precise error messages, and the task orchestrator that turns a
// parsed config into a RunReport.  Lives outside the core library so the
// JSON input dependency stays out of installed headers.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qot/hamiltonian.hpp"
#include "qot/register.hpp"
#include "qot/report.hpp"

namespace qot::harness {

struct ExperimentConfig {
  int d = 2;
  std::vector<int> sites;
  std::vector<HamTerm> edges;
  std::vector<double> betas;        // singleton when the config said "beta"
  std::vector<std::string> tasks;   // validated, nonempty, duplicate-free
  int trials = 10;
  std::uint64_t seed = 0;
  double tol_quadrature = 1e-8;
  std::string output;               // empty = stdout
  bool parallel_trials = false;     // scheduling hint, never affects results

  RegisterShape shape() const;
  HypergraphHamiltonian hamiltonian() const;
};

// Task names accepted in "tasks", in canonical order.
const std::vector<std::string>& known_tasks();

// Parses and validates a config document.  Throws std::invalid_argument
// whose message starts with the dotted path of the offending field
// (e.g. "config.system.edges[1].matrix: not Hermitian").
ExperimentConfig parse_config(const std::string& text);

// Effective config re-serialized in canonical field order; this is the
// "config" echo embedded in reports, so it reflects flag overrides.
JsonValue config_echo(const ExperimentConfig& cfg);

// Runs every requested task in config order.  A task that throws is recorded
// as a failed task (error message in details, failing completion assertion)
// and the run continues.  Deterministic for a fixed config.
RunReport run_experiment(const ExperimentConfig& cfg);

// Built-in demo configs, keyed by name: product-qubits, ising-chain-3,
// ising-ring-3.  The same documents ship as files under configs/.
const std::map<std::string, std::string>& demo_configs();

}  // namespace qot::harness
