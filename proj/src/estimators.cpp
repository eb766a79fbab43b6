#include "qclocksync/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qcs::estimators {

using qsim::StateVector;

double t_ell_tick_rate(int ell, double omega) {
  return kTickRateSign * std::numbers::pi * std::ldexp(1.0, ell - 1) * omega;
}

int required_m(int n_bits, double epsilon) {
  if (n_bits < 1) throw std::invalid_argument("n_bits must be >= 1");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must be in (0, 1)");
  // Smallest c with 2^c >= 2 + 1/(2 epsilon); avoids log2 rounding at exact powers.
  const double target = 2.0 + 1.0 / (2.0 * epsilon);
  int extra = 0;
  while (std::ldexp(1.0, extra) < target) ++extra;
  return n_bits + extra;
}

double omega_for_bound(double delta_max) {
  if (!(delta_max > 0.0) || !std::isfinite(delta_max)) {
    throw std::invalid_argument("delta_max must be finite and > 0");
  }
  return 1.0 / (2.0 * delta_max);
}

double frac(double x) {
  const double f = x - std::floor(x);
  return f >= 1.0 ? 0.0 : f;
}

double wrap_distance(double a, double b) {
  const double d = frac(a - b);
  return std::min(d, 1.0 - d);
}

void EstimatorConfig::validate() const {
  if (register_qubits && *register_qubits < 1) {
    throw std::invalid_argument("register_qubits must be >= 1");
  }
  const int m = this->m();
  const int registers = parallel_t ? 2 * m : m + 1;
  if (registers > qsim::StateVector::kMaxQubits) {
    throw std::invalid_argument("n_bits/epsilon need " + std::to_string(registers) +
                                " qubits, above the simulator cap");
  }
  if (!std::isfinite(omega_base)) throw std::invalid_argument("omega_base must be finite");
  delays.validate();
  if (holding) holding->validate();
}

int ramsey_trial(double omega, tqh::Channel& channel, Rng& rng, tqh::TqhTrace* trace) {
  StateVector state = qsim::apply_single(StateVector(1), 0, qsim::gates::hadamard());
  tqh::TqhOutcome out = tqh::tqh_run(std::move(state), 0, omega, channel, rng);
  if (trace) *trace = out.trace;
  state = qsim::apply_single(std::move(out.state), 0, qsim::gates::hadamard());
  const int qubits[] = {0};
  return static_cast<int>(qsim::measure(std::move(state), qubits, rng).outcome);
}

std::vector<double> ramsey_candidates(double p0) {
  p0 = std::clamp(p0, 0.0, 1.0);
  // cos^2(2x) = p0  <=>  2x = +-a + k pi with a = acos(sqrt(p0)) in [0, pi/2].
  const double a = std::acos(std::sqrt(p0));
  std::vector<double> roots;
  for (int k = 0; k * std::numbers::pi / 2.0 - a / 2.0 < 1.0; ++k) {
    for (const double x : {(a + k * std::numbers::pi) / 2.0, (-a + k * std::numbers::pi) / 2.0}) {
      if (x >= 0.0 && x < 1.0) roots.push_back(x);
    }
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end(),
                          [](double l, double r) { return std::abs(l - r) < 1e-15; }),
              roots.end());
  return roots;
}

RamseyEstimate ramsey_estimate(double omega, std::uint64_t repetitions, tqh::Channel& channel,
                               Rng& rng) {
  if (repetitions < 1) throw std::invalid_argument("repetitions must be >= 1");
  RamseyEstimate est;
  est.repetitions = repetitions;
  for (std::uint64_t r = 0; r < repetitions; ++r) {
    if (ramsey_trial(omega, channel, rng) == 0) ++est.zeros;
  }
  est.p0_hat = static_cast<double>(est.zeros) / static_cast<double>(repetitions);
  est.candidates = ramsey_candidates(est.p0_hat);
  return est;
}

namespace {

constexpr double kAncillaTol = 1e-10;

void require_ancilla_zero(const StateVector& state, int ancilla, const char* when) {
  const int qubits[] = {ancilla};
  const double p1 = qsim::outcome_distribution(state, qubits)[1];
  if (p1 > kAncillaTol) {
    throw std::logic_error(std::string("apply_t_ell: ancilla not |0> ") + when +
                           " (P(1) = " + std::to_string(p1) + ")");
  }
}

}  // namespace

StateVector apply_t_ell(StateVector state, int ell, int ancilla, double omega,
                        tqh::Channel& channel, Rng& rng, std::vector<tqh::TqhTrace>* traces) {
  require_ancilla_zero(state, ancilla, "on entry");
  state = qsim::apply_cnot(std::move(state), ell, ancilla);
  tqh::TqhOutcome out = tqh::tqh_run(std::move(state), ancilla, t_ell_tick_rate(ell, omega),
                                     channel, rng);
  if (traces) traces->push_back(out.trace);
  state = qsim::apply_cnot(std::move(out.state), ell, ancilla);
  require_ancilla_zero(state, ancilla, "on exit");
  return state;
}

StateVector apply_t(StateVector state, int m, int ancilla, double omega, tqh::Channel& channel,
                    Rng& rng, std::vector<tqh::TqhTrace>* traces) {
  for (int ell = 0; ell < m; ++ell) {
    state = apply_t_ell(std::move(state), ell, ancilla, omega, channel, rng, traces);
  }
  return state;
}

StateVector apply_t_parallel(StateVector state, int m, int first_ancilla, double omega,
                             tqh::Channel& channel, Rng& rng,
                             std::vector<tqh::TqhTrace>* traces) {
  // All CNOTs first, then the m handshakes, then the uncomputing CNOTs.
  for (int ell = 0; ell < m; ++ell) require_ancilla_zero(state, first_ancilla + ell, "on entry");
  for (int ell = 0; ell < m; ++ell) state = qsim::apply_cnot(std::move(state), ell, first_ancilla + ell);
  for (int ell = 0; ell < m; ++ell) {
    tqh::TqhOutcome out = tqh::tqh_run(std::move(state), first_ancilla + ell,
                                       t_ell_tick_rate(ell, omega), channel, rng);
    if (traces) traces->push_back(out.trace);
    state = std::move(out.state);
  }
  for (int ell = 0; ell < m; ++ell) state = qsim::apply_cnot(std::move(state), ell, first_ancilla + ell);
  for (int ell = 0; ell < m; ++ell) require_ancilla_zero(state, first_ancilla + ell, "on exit");
  return state;
}

StateVector phase_register_state(const EstimatorConfig& cfg, tqh::Channel& channel, Rng& rng,
                                 std::vector<tqh::TqhTrace>* traces) {
  cfg.validate();
  const int m = cfg.m();
  const int num_qubits = cfg.parallel_t ? 2 * m : m + 1;

  StateVector state(num_qubits);
  for (int q = 0; q < m; ++q) state = qsim::apply_single(std::move(state), q, qsim::gates::hadamard());
  state = cfg.parallel_t ? apply_t_parallel(std::move(state), m, m, cfg.omega_base, channel, rng, traces)
                         : apply_t(std::move(state), m, m, cfg.omega_base, channel, rng, traces);

  std::vector<int> reg(static_cast<std::size_t>(m));
  std::iota(reg.begin(), reg.end(), 0);
  return qsim::apply_inverse_qft(std::move(state), reg);
}

EstimateResult phase_estimate(const EstimatorConfig& cfg, clocks::WorldState& world, Rng& rng) {
  tqh::Channel channel{world, cfg.delays, cfg.holding};
  EstimateResult result;
  result.m = cfg.m();

  StateVector state = phase_register_state(cfg, channel, rng, &result.traces);
  world = channel.world;

  std::vector<int> reg(static_cast<std::size_t>(result.m));
  std::iota(reg.begin(), reg.end(), 0);
  result.distribution = qsim::outcome_distribution(state, reg);
  const qsim::Measurement meas = qsim::measure(std::move(state), reg, rng);

  const double scale = std::ldexp(1.0, result.m);
  result.measured_j = meas.outcome;
  result.omega_delta_hat = static_cast<double>(meas.outcome) / scale;
  const double signed_phase =
      result.omega_delta_hat >= 0.5 ? result.omega_delta_hat - 1.0 : result.omega_delta_hat;
  result.delta_hat = cfg.omega_base != 0.0 ? signed_phase / cfg.omega_base : 0.0;
  result.qubit_messages = channel.qubit_messages;
  result.success = wrap_distance(result.omega_delta_hat, cfg.omega_base * world.delta()) <=
                   std::ldexp(1.0, -cfg.n_bits);
  return result;
}

}  // namespace qcs::estimators
