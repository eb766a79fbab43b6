#pragma once

// Experiment runner: specs, seeded batch execution, exact oracles.

#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qclocksync/clocks.hpp"
#include "qclocksync/rng.hpp"

namespace qcs::harness {

enum class Mode { ramsey, phase_estimation, invariance_audit, oracle_check };

std::string_view to_string(Mode mode);
/// Throws ConfigError("mode") for an unknown name.
Mode parse_mode(std::string_view name);

/// Invalid experiment configuration. field() names the offending setting.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// Failure to read or write a file. path() is the file involved.
class IoError : public std::runtime_error {
 public:
  IoError(std::string path, const std::string& message)
      : std::runtime_error(path + ": " + message), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

struct ExperimentSpec {
  Mode mode = Mode::phase_estimation;
  /// True offset, seconds. |delta_true| <= delta_max.
  double delta_true = 0.0;
  /// Known bound on |delta|, seconds.
  double delta_max = 1.0;
  int n_bits = 4;
  double epsilon = 0.25;
  std::uint64_t trials = 1;
  clocks::DelayModel delay = clocks::DelayModel::fixed(1.0);
  /// Bob's holding time; the transit model when unset.
  std::optional<clocks::DelayModel> holding;
  std::uint64_t seed = 0;
  /// Base tick rate override, rad/s. Defaults to 1 / (2 delta_max).
  std::optional<double> omega;
  bool parallel_t = false;

  /// Throws ConfigError naming the first bad field.
  void validate() const;
  double omega_base() const;
  /// Register size for phase estimation.
  int m() const;

  friend bool operator==(const ExperimentSpec&, const ExperimentSpec&) = default;
};

struct TraceDigest {
  std::uint64_t handshakes = 0;
  double transit_total = 0.0;
  double holding_total = 0.0;
  /// Largest timestamp-identity violation over the trial's handshakes.
  double max_residual = 0.0;

  friend bool operator==(const TraceDigest&, const TraceDigest&) = default;
};

struct TrialRecord {
  std::uint64_t trial = 0;
  std::uint64_t seed = 0;
  /// Offset used by this trial (oracle_check draws its own).
  double delta_true = 0.0;
  /// Tick rate used by this trial, rad/s.
  double omega = 0.0;
  /// Measured outcome (phase register value, or the Ramsey bit).
  std::optional<std::uint64_t> j;
  std::optional<double> omega_delta_hat;
  std::optional<double> delta_hat;
  std::optional<bool> success;
  std::uint64_t qubit_messages = 0;
  /// Largest deviation found by this trial's oracle comparison.
  std::optional<double> check_error;
  TraceDigest traces;

  friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

struct Aggregates {
  std::uint64_t trials = 0;
  /// Trials that carry a success flag.
  std::uint64_t scored_trials = 0;
  std::uint64_t successes = 0;
  /// successes / scored_trials, 0 when nothing is scored.
  double success_rate = 0.0;
  /// Mean |delta_hat - delta_true| over trials with an estimate.
  std::optional<double> mean_abs_error;
  std::uint64_t total_qubit_messages = 0;
  std::uint64_t total_handshakes = 0;
  std::optional<double> max_check_error;

  friend bool operator==(const Aggregates&, const Aggregates&) = default;
};

struct RamseySummary {
  double omega = 0.0;
  std::uint64_t repetitions = 0;
  std::uint64_t zeros = 0;
  double p0_hat = 0.0;
  /// cos^2(2 omega delta_true).
  double p0_expected = 0.0;
  std::vector<double> candidates_omega_delta;
  std::vector<double> candidates_delta;
  /// Some candidate lies within 2^{-n_bits} of omega * delta_true.
  bool success = false;

  friend bool operator==(const RamseySummary&, const RamseySummary&) = default;
};

struct Report {
  ExperimentSpec config;
  int m = 0;
  double omega_base = 0.0;
  std::vector<TrialRecord> trials;
  Aggregates aggregates;
  std::optional<RamseySummary> ramsey;

  friend bool operator==(const Report&, const Report&) = default;
};

/// Recomputes aggregates from per-trial records.
Aggregates aggregate(const std::vector<TrialRecord>& records);

/// Runs `spec.trials` independent trials. Trial i uses
/// Rng(derive_seed(spec.seed, i)), so the result is a pure function of spec.
/// Trials may run concurrently; records are stored by trial index.
Report run(const ExperimentSpec& spec);

/// Dense row-major square matrix.
struct DenseMatrix {
  std::size_t dim = 0;
  std::vector<std::complex<double>> data;

  std::complex<double> operator()(std::size_t r, std::size_t c) const { return data[r * dim + c]; }
};

inline constexpr int kOracleMaxQubits = 5;
inline constexpr int kExactDistributionMaxQubits = 20;

/// diag_k(e^{2 pi i k omega_delta}) on m <= 5 qubits. Throws std::invalid_argument.
DenseMatrix oracle_t_matrix(int m, double omega_delta);

/// Closed-form outcome probabilities of phase estimation:
/// P(j) = sin^2(pi 2^m d) / (2^{2m} sin^2(pi d)), d = omega_delta - j/2^m,
/// with P = 1 where sin(pi d) vanishes. m <= 20.
std::vector<double> exact_distribution(int m, double omega_delta);

/// Largest entrywise |a - b|; infinity on a size mismatch.
double max_abs_deviation(const std::vector<double>& a, const std::vector<double>& b);

struct TOracleCheck {
  /// Smallest |<oracle column k | simulated column k>| over basis states.
  double min_column_fidelity = 0.0;
  /// Largest |o_k - o_0| between column overlaps, i.e. disagreement in the
  /// global phase between columns.
  double max_phase_spread = 0.0;
  std::uint64_t qubit_messages = 0;
};

/// Builds T on m register qubits + one ancilla from handshakes, column by
/// column, and compares it with oracle_t_matrix(m, omega * world.delta()).
TOracleCheck check_t_against_oracle(int m, double omega, const clocks::WorldState& world,
                                    const clocks::DelayModel& delays, Rng& rng);

}  // namespace qcs::harness
