// qclocksync: run a clock-synchronization experiment and write a JSON report.
//
//   qclocksync <mode> --delta <s> --delta-max <s> --n-bits <k> --epsilon <e>
//              --trials <t> --delay <fixed:d|uniform:a,b|exp:m> --seed <u64>
//              --out <path> [--csv <path>] [--config <file>]
//
// Modes: ramsey, phase_estimation, invariance_audit, oracle_check.
// Exit codes: 0 success, 2 configuration error, 3 I/O error.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "qclocksync/harness.hpp"
#include "qclocksync/report.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

}  // namespace

int main(int argc, char** argv) {
  using namespace qcs::harness;

  CLI::App app{"Quantum clock synchronization experiments"};
  app.set_config("--config", "", "Read options from a TOML/INI file; flags override it");

  std::string mode = "phase_estimation";
  ExperimentSpec spec;
  std::string delay = "fixed:1";
  std::string holding;
  std::optional<double> omega;
  std::string out_path;
  std::string csv_path;
  int threads = 0;

  app.add_option("mode", mode, "ramsey | phase_estimation | invariance_audit | oracle_check")
      ->required()
      ->check(CLI::IsMember({"ramsey", "phase_estimation", "invariance_audit", "oracle_check"}));
  app.add_option("--delta", spec.delta_true, "True clock offset (s)");
  app.add_option("--delta-max", spec.delta_max, "Known bound on |delta| (s)")->capture_default_str();
  app.add_option("--n-bits", spec.n_bits, "Target bits of omega*delta")->capture_default_str();
  app.add_option("--epsilon", spec.epsilon, "Allowed failure probability")->capture_default_str();
  app.add_option("--trials", spec.trials, "Independent trials")->capture_default_str();
  app.add_option("--delay", delay, "Transit delay: fixed:d | uniform:a,b | exp:m")
      ->capture_default_str();
  app.add_option("--holding", holding, "Bob's holding time model (default: same as --delay)");
  app.add_option("--omega", omega, "Base tick rate in rad/s (default 1/(2 delta-max))");
  app.add_flag("--parallel-t", spec.parallel_t, "Build T with one ancilla per register qubit");
  app.add_option("--seed", spec.seed, "Master seed")->required();
  app.add_option("--out", out_path, "JSON report path")->required();
  app.add_option("--csv", csv_path, "Optional per-trial CSV path");
  app.add_option("--threads", threads, "OpenMP threads for trials (0 = runtime default)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#endif

  try {
    spec.mode = parse_mode(mode);
    spec.omega = omega;
    try {
      spec.delay = qcs::clocks::DelayModel::parse(delay);
    } catch (const std::invalid_argument& e) {
      throw ConfigError("delay", e.what());
    }
    if (!holding.empty()) {
      try {
        spec.holding = qcs::clocks::DelayModel::parse(holding);
      } catch (const std::invalid_argument& e) {
        throw ConfigError("holding", e.what());
      }
    }

    const Report report = run(spec);
    std::optional<std::filesystem::path> csv;
    if (!csv_path.empty()) csv = csv_path;
    emit_report(report, out_path, csv, std::cout);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kExitIo;
  }
  return 0;
}
