#pragma once

// Recovering the clock offset from handshakes.
//
// Ramsey repetition: prepare (|0>+|1>)/sqrt2, handshake, Hadamard, measure.
// P(0) = cos^2(2 omega delta), so n bits need on the order of 2^{2n} rounds.
//
// Phase estimation: an m-qubit register in uniform superposition picks up
// e^{2 pi i k omega delta} on |k> through the operator T, built from one
// handshake per register qubit at tick rate pi 2^{l-1} omega. The inverse QFT
// then concentrates the distribution at j ~ 2^m omega delta. 2m qubit
// transmissions give n bits with probability >= 1 - epsilon when
// m = n + ceil(log2(2 + 1/(2 epsilon))).

#include <cstdint>
#include <optional>
#include <vector>

#include "qclocksync/clocks.hpp"
#include "qclocksync/qsim.hpp"
#include "qclocksync/rng.hpp"
#include "qclocksync/tqh.hpp"

namespace qcs::estimators {

/// Sign of the handshake tick rate inside T_l, fixed by comparing the
/// handshake-built T against diag(e^{2 pi i k omega delta}) on two qubits.
/// With -1 the register would pick up e^{-2 pi i k omega delta}.
inline constexpr double kTickRateSign = +1.0;

/// Handshake tick rate used for register qubit `ell`: s * pi * 2^{ell-1} * omega.
double t_ell_tick_rate(int ell, double omega);

/// n_bits + ceil(log2(2 + 1/(2 epsilon))). Throws std::invalid_argument unless
/// n_bits >= 1 and 0 < epsilon < 1.
int required_m(int n_bits, double epsilon);

/// Default base tick rate for a known offset bound: 1 / (2 delta_max), which
/// keeps omega * delta in [-1/2, 1/2].
double omega_for_bound(double delta_max);

/// Distance between two phases on the unit circle (values taken mod 1).
double wrap_distance(double a, double b);

/// x mod 1 in [0, 1).
double frac(double x);

struct EstimatorConfig {
  int n_bits = 4;
  double epsilon = 0.25;
  /// Base tick rate in rad/s.
  double omega_base = 1.0;
  clocks::DelayModel delays = clocks::DelayModel::fixed(1.0);
  std::optional<clocks::DelayModel> holding;
  /// Use m ancillas and independent handshakes instead of one reused ancilla.
  bool parallel_t = false;
  /// Fixes the register size instead of deriving it from (n_bits, epsilon).
  std::optional<int> register_qubits;

  int m() const { return register_qubits.value_or(required_m(n_bits, epsilon)); }
  /// Throws std::invalid_argument on a bad field.
  void validate() const;
};

struct EstimateResult {
  int m = 0;
  std::uint64_t measured_j = 0;
  /// j / 2^m, in [0, 1).
  double omega_delta_hat = 0.0;
  /// omega_delta_hat mapped into [-1/2, 1/2) and divided by omega_base.
  double delta_hat = 0.0;
  std::uint64_t qubit_messages = 0;
  /// wrap_distance(omega_delta_hat, omega_base * delta) <= 2^{-n_bits}.
  bool success = false;
  /// Outcome distribution of the register right before measurement.
  std::vector<double> distribution;
  std::vector<tqh::TqhTrace> traces;
};

/// One Ramsey round on a fresh qubit. Returns the measured bit.
int ramsey_trial(double omega, tqh::Channel& channel, Rng& rng, tqh::TqhTrace* trace = nullptr);

struct RamseyEstimate {
  std::uint64_t repetitions = 0;
  std::uint64_t zeros = 0;
  double p0_hat = 0.0;
  /// Every x in [0, 1) with cos^2(2x) = p0_hat, ascending.
  std::vector<double> candidates;
};

/// Solutions of cos^2(2x) = p0 for x in [0, 1), ascending. p0 is clamped to [0, 1].
std::vector<double> ramsey_candidates(double p0);

/// Throws std::invalid_argument when repetitions < 1.
RamseyEstimate ramsey_estimate(double omega, std::uint64_t repetitions, tqh::Channel& channel,
                               Rng& rng);

/// CNOT(ell -> ancilla), handshake on the ancilla at t_ell_tick_rate(ell, omega),
/// CNOT again. Throws std::logic_error if the ancilla is not |0> on entry or exit.
qsim::StateVector apply_t_ell(qsim::StateVector state, int ell, int ancilla, double omega,
                              tqh::Channel& channel, Rng& rng,
                              std::vector<tqh::TqhTrace>* traces = nullptr);

/// T = T_0 ... T_{m-1} on register qubits 0..m-1 with one shared ancilla.
qsim::StateVector apply_t(qsim::StateVector state, int m, int ancilla, double omega,
                          tqh::Channel& channel, Rng& rng,
                          std::vector<tqh::TqhTrace>* traces = nullptr);

/// T with ancillas first_ancilla .. first_ancilla+m-1, one per register qubit.
qsim::StateVector apply_t_parallel(qsim::StateVector state, int m, int first_ancilla,
                                   double omega, tqh::Channel& channel, Rng& rng,
                                   std::vector<tqh::TqhTrace>* traces = nullptr);

/// Register state after Hadamards, T and the inverse QFT: qubits 0..m-1 hold
/// the phase register, the remaining qubits are ancillas back in |0>.
qsim::StateVector phase_register_state(const EstimatorConfig& cfg, tqh::Channel& channel,
                                       Rng& rng, std::vector<tqh::TqhTrace>* traces = nullptr);

/// Full phase-estimation run against the offset held in `world`. The world
/// is advanced by the handshakes.
EstimateResult phase_estimate(const EstimatorConfig& cfg, clocks::WorldState& world, Rng& rng);

}  // namespace qcs::estimators
