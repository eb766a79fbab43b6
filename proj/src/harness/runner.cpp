#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <numeric>

#include "qclocksync/estimators.hpp"
#include "qclocksync/harness.hpp"
#include "qclocksync/qsim.hpp"
#include "qclocksync/tqh.hpp"

namespace qcs::harness {
namespace {

constexpr double kStateTol = 1e-10;
constexpr double kDistributionTol = 1e-9;

clocks::WorldState initial_world(double delta) { return {0.0, 0.0, delta}; }

TraceDigest digest(const std::vector<tqh::TqhTrace>& traces, double delta) {
  TraceDigest d;
  d.handshakes = traces.size();
  for (const tqh::TqhTrace& t : traces) {
    d.transit_total += t.t12 + t.t45;
    d.holding_total += t.hold;
    d.max_residual = std::max(d.max_residual, t.residual(delta));
  }
  return d;
}

estimators::EstimatorConfig estimator_config(const ExperimentSpec& spec) {
  estimators::EstimatorConfig cfg;
  cfg.n_bits = spec.n_bits;
  cfg.epsilon = spec.epsilon;
  cfg.omega_base = spec.omega_base();
  cfg.delays = spec.delay;
  cfg.holding = spec.holding;
  cfg.parallel_t = spec.parallel_t;
  return cfg;
}

TrialRecord ramsey_record(const ExperimentSpec& spec, TrialRecord rec, Rng& rng) {
  tqh::Channel channel{initial_world(spec.delta_true), spec.delay, spec.holding};
  std::vector<tqh::TqhTrace> traces(1);
  rec.j = static_cast<std::uint64_t>(estimators::ramsey_trial(rec.omega, channel, rng, traces.data()));
  rec.qubit_messages = channel.qubit_messages;
  rec.traces = digest(traces, spec.delta_true);
  return rec;
}

TrialRecord phase_record(const ExperimentSpec& spec, TrialRecord rec, Rng& rng) {
  clocks::WorldState world = initial_world(spec.delta_true);
  const estimators::EstimateResult est = estimators::phase_estimate(estimator_config(spec), world, rng);
  rec.j = est.measured_j;
  rec.omega_delta_hat = est.omega_delta_hat;
  rec.delta_hat = est.delta_hat;
  rec.success = est.success;
  rec.qubit_messages = est.qubit_messages;
  rec.check_error = max_abs_deviation(
      est.distribution, exact_distribution(est.m, estimators::frac(rec.omega * spec.delta_true)));
  rec.traces = digest(est.traces, spec.delta_true);
  return rec;
}

// Random register of 1-4 qubits, random designated qubit and tick rate. The
// handshake output is compared with the direct e^{-2 i omega Z delta} oracle and
// with a second run under an independent delay stream.
TrialRecord invariance_record(const ExperimentSpec& spec, TrialRecord rec, Rng& rng) {
  const int num_qubits = 1 + static_cast<int>(rng.below(4));
  const int qubit = static_cast<int>(rng.below(static_cast<std::uint64_t>(num_qubits)));
  rec.omega = spec.omega_base() * (1.0 + 7.0 * rng.uniform());
  const qsim::StateVector input = qsim::random_state(num_qubits, rng);

  std::vector<tqh::TqhTrace> traces;
  tqh::Channel first{initial_world(spec.delta_true), spec.delay, spec.holding};
  tqh::TqhOutcome a = tqh::tqh_run(input, qubit, rec.omega, first, rng);
  traces.push_back(a.trace);
  tqh::Channel second{initial_world(spec.delta_true), spec.delay, spec.holding};
  tqh::TqhOutcome b = tqh::tqh_run(input, qubit, rec.omega, second, rng);
  traces.push_back(b.trace);

  const qsim::StateVector oracle =
      qsim::apply_single(input, qubit, qsim::gates::rot_z(-2.0 * rec.omega * spec.delta_true));
  const double err = std::max(1.0 - qsim::fidelity(a.state, oracle),
                              1.0 - qsim::fidelity(a.state, b.state));
  rec.check_error = err;
  rec.success = err <= kStateTol;
  rec.qubit_messages = first.qubit_messages + second.qubit_messages;
  rec.traces = digest(traces, spec.delta_true);
  return rec;
}

// Fresh offset in [-delta_max, delta_max]; checks the handshake-built T
// against the diagonal oracle and the simulated pipeline against the
// closed-form distribution.
TrialRecord oracle_record(const ExperimentSpec& spec, TrialRecord rec, Rng& rng) {
  rec.delta_true = spec.delta_max * (2.0 * rng.uniform() - 1.0);
  const clocks::WorldState world = initial_world(rec.delta_true);

  const int oracle_m = std::min(spec.m(), kOracleMaxQubits);
  const TOracleCheck t = check_t_against_oracle(oracle_m, rec.omega, world, spec.delay, rng);

  estimators::EstimatorConfig cfg = estimator_config(spec);
  tqh::Channel channel{world, spec.delay, spec.holding};
  std::vector<tqh::TqhTrace> traces;
  const qsim::StateVector state = estimators::phase_register_state(cfg, channel, rng, &traces);
  std::vector<int> reg(static_cast<std::size_t>(cfg.m()));
  std::iota(reg.begin(), reg.end(), 0);
  const double dist_err =
      max_abs_deviation(qsim::outcome_distribution(state, reg),
                        exact_distribution(cfg.m(), estimators::frac(rec.omega * rec.delta_true)));

  const double fid_err = 1.0 - t.min_column_fidelity;
  rec.check_error = std::max({fid_err, t.max_phase_spread, dist_err});
  rec.success = fid_err <= kStateTol && t.max_phase_spread <= kStateTol && dist_err <= kDistributionTol;
  rec.qubit_messages = t.qubit_messages + channel.qubit_messages;
  // Digest covers the pipeline handshakes; the column-by-column T build is
  // counted in qubit_messages only.
  rec.traces = digest(traces, rec.delta_true);
  return rec;
}

RamseySummary summarize_ramsey(const ExperimentSpec& spec, const std::vector<TrialRecord>& records) {
  RamseySummary s;
  s.omega = spec.omega_base();
  s.repetitions = records.size();
  for (const TrialRecord& r : records) {
    if (r.j && *r.j == 0) ++s.zeros;
  }
  s.p0_hat = s.repetitions ? static_cast<double>(s.zeros) / static_cast<double>(s.repetitions) : 0.0;
  const double c = std::cos(2.0 * s.omega * spec.delta_true);
  s.p0_expected = c * c;
  s.candidates_omega_delta = estimators::ramsey_candidates(s.p0_hat);
  const double truth = s.omega * spec.delta_true;
  const double tol = std::ldexp(1.0, -spec.n_bits);
  for (double x : s.candidates_omega_delta) {
    s.candidates_delta.push_back(s.omega != 0.0 ? x / s.omega : 0.0);
    if (std::abs(x - truth) <= tol) s.success = true;
  }
  return s;
}

}  // namespace

Aggregates aggregate(const std::vector<TrialRecord>& records) {
  Aggregates a;
  a.trials = records.size();
  double abs_err_sum = 0.0;
  std::uint64_t estimates = 0;
  for (const TrialRecord& r : records) {
    if (r.success) {
      ++a.scored_trials;
      if (*r.success) ++a.successes;
    }
    if (r.delta_hat) {
      abs_err_sum += std::abs(*r.delta_hat - r.delta_true);
      ++estimates;
    }
    a.total_qubit_messages += r.qubit_messages;
    a.total_handshakes += r.traces.handshakes;
    if (r.check_error) a.max_check_error = std::max(a.max_check_error.value_or(0.0), *r.check_error);
  }
  a.success_rate =
      a.scored_trials ? static_cast<double>(a.successes) / static_cast<double>(a.scored_trials) : 0.0;
  if (estimates) a.mean_abs_error = abs_err_sum / static_cast<double>(estimates);
  return a;
}

Report run(const ExperimentSpec& spec) {
  spec.validate();

  Report report;
  report.config = spec;
  report.m = spec.m();
  report.omega_base = spec.omega_base();
  report.trials.resize(spec.trials);

  const auto count = static_cast<std::int64_t>(spec.trials);
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t i = 0; i < count; ++i) {
    try {
      const auto index = static_cast<std::uint64_t>(i);
      TrialRecord rec;
      rec.trial = index;
      rec.seed = derive_seed(spec.seed, index);
      rec.delta_true = spec.delta_true;
      rec.omega = spec.omega_base();
      Rng rng(rec.seed);
      switch (spec.mode) {
        case Mode::ramsey:
          rec = ramsey_record(spec, rec, rng);
          break;
        case Mode::phase_estimation:
          rec = phase_record(spec, rec, rng);
          break;
        case Mode::invariance_audit:
          rec = invariance_record(spec, rec, rng);
          break;
        case Mode::oracle_check:
          rec = oracle_record(spec, rec, rng);
          break;
      }
      report.trials[index] = std::move(rec);
    } catch (...) {
#pragma omp critical(qcs_run_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  report.aggregates = aggregate(report.trials);
  if (spec.mode == Mode::ramsey) report.ramsey = summarize_ramsey(spec, report.trials);
  return report;
}

}  // namespace qcs::harness
