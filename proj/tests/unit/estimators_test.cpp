#include "qclocksync/estimators.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <numeric>

namespace qcs::estimators {
namespace {

using clocks::DelayModel;
using clocks::WorldState;
using qsim::Amplitude;
using qsim::StateVector;

constexpr double kPi = std::numbers::pi;
constexpr double kEq = 1.0 - 1e-10;

tqh::Channel make_channel(double delta, DelayModel delays = DelayModel::uniform(0.0, 10.0)) {
  return tqh::Channel{WorldState{0.0, 0.0, delta}, delays, std::nullopt};
}

// |(1/N) sum_k e^{2 pi i k (x - j/N)}|^2 by direct summation.
std::vector<double> brute_force_distribution(int m, double x) {
  const std::size_t n = std::size_t{1} << m;
  std::vector<double> p(n);
  for (std::size_t j = 0; j < n; ++j) {
    Amplitude sum{0.0, 0.0};
    for (std::size_t k = 0; k < n; ++k) {
      sum += std::polar(1.0, 2.0 * kPi * double(k) * (x - double(j) / double(n)));
    }
    p[j] = std::norm(sum / double(n));
  }
  return p;
}

std::vector<int> register_qubits(int m) {
  std::vector<int> r(m);
  std::iota(r.begin(), r.end(), 0);
  return r;
}

// Largest |<diag oracle column k | T column k>| defect and relative-phase spread,
// with T_l built by hand using tick-rate sign `sign`.
std::pair<double, double> audit_sign(double sign, int m, double omega, double delta, Rng& rng) {
  double worst_fid = 0.0;
  double spread = 0.0;
  Amplitude first;
  for (std::uint64_t k = 0; k < (1u << m); ++k) {
    tqh::Channel ch = make_channel(delta);
    StateVector s = qsim::basis_state(m + 1, k);
    for (int ell = 0; ell < m; ++ell) {
      s = qsim::apply_cnot(std::move(s), ell, m);
      s = tqh::tqh_run(std::move(s), m, sign * kPi * std::ldexp(1.0, ell - 1) * omega, ch, rng).state;
      s = qsim::apply_cnot(std::move(s), ell, m);
    }
    const Amplitude overlap = std::polar(1.0, -2.0 * kPi * double(k) * omega * delta) * s[k];
    if (k == 0) first = overlap;
    worst_fid = std::max(worst_fid, 1.0 - std::abs(overlap));
    spread = std::max(spread, std::abs(overlap - first));
  }
  return {worst_fid, spread};
}

TEST(SignAudit, PositiveTickRateReproducesDiagonalOracle) {
  Rng rng(1);
  for (double x : {0.1, 0.23, 0.37, 0.8}) {
    const auto plus = audit_sign(+1.0, 2, 1.0, x, rng);
    const auto minus = audit_sign(-1.0, 2, 1.0, x, rng);
    EXPECT_LT(plus.first, 1e-10);
    EXPECT_LT(plus.second, 1e-10);
    EXPECT_GT(minus.second, 1e-3) << "x=" << x;
  }
  EXPECT_EQ(kTickRateSign, +1.0);
  EXPECT_DOUBLE_EQ(t_ell_tick_rate(0, 2.0), kPi);
  EXPECT_DOUBLE_EQ(t_ell_tick_rate(3, 1.0), 4.0 * kPi);
}

TEST(RequiredM, Examples) {
  EXPECT_EQ(required_m(4, 0.25), 6);
  EXPECT_EQ(required_m(1, 0.5), 3);
  EXPECT_EQ(required_m(2, 0.1), 5);   // 2 + ceil(log2 7)
  EXPECT_EQ(required_m(3, 1.0 / 6.0), 6);  // 2 + 3 = 5 -> ceil(log2 5) = 3
  EXPECT_THROW(required_m(4, 0.0), std::invalid_argument);
  EXPECT_THROW(required_m(4, 1.0), std::invalid_argument);
  EXPECT_THROW(required_m(0, 0.5), std::invalid_argument);
}

TEST(RequiredM, GrowsLikeLogInverseEpsilon) {
  for (int e = 4; e <= 30; ++e) {
    const double eps = std::ldexp(1.0, -e);
    // 2 + 2^{e-1}: ceil(log2) is e for e >= 3.
    EXPECT_EQ(required_m(5, eps), 5 + e);
  }
}

TEST(WrapDistance, HandlesWraparound) {
  EXPECT_NEAR(wrap_distance(0.95, 0.05), 0.1, 1e-15);
  EXPECT_NEAR(wrap_distance(0.25, -0.25), 0.5, 1e-15);
  EXPECT_NEAR(wrap_distance(0.4, 1.4), 0.0, 1e-15);
  EXPECT_EQ(frac(-1e-18), 0.0);
}

TEST(RamseyTrial, ExtremeAngles) {
  Rng rng(2);
  for (int i = 0; i < 200; ++i) {
    tqh::Channel zero = make_channel(0.0);
    EXPECT_EQ(ramsey_trial(1.0, zero, rng), 0);
    tqh::Channel quarter = make_channel(kPi / 4);  // 2 omega delta = pi/2
    EXPECT_EQ(ramsey_trial(1.0, quarter, rng), 1);
  }
}

TEST(RamseyTrial, EighthTurnIsFair) {
  Rng rng(3);
  tqh::Channel ch = make_channel(kPi / 8);  // 2 omega delta = pi/4
  const RamseyEstimate est = ramsey_estimate(1.0, 10000, ch, rng);
  EXPECT_NEAR(est.p0_hat, 0.5, 0.015);
  EXPECT_EQ(ch.qubit_messages, 20000u);
}

TEST(RamseyEstimate, AllZerosIncludeZeroCandidate) {
  Rng rng(4);
  tqh::Channel ch = make_channel(0.0);
  const RamseyEstimate est = ramsey_estimate(0.7, 64, ch, rng);
  EXPECT_EQ(est.p0_hat, 1.0);
  ASSERT_FALSE(est.candidates.empty());
  EXPECT_EQ(est.candidates.front(), 0.0);
  EXPECT_THROW(ramsey_estimate(1.0, 0, ch, rng), std::invalid_argument);
}

TEST(RamseyCandidates, MatchDenseScan) {
  // Roots located by scanning cos^2(2x) - p on a fine grid of [0, 1).
  for (double p : {0.5, 0.1, 0.9, 0.02}) {
    std::vector<double> scanned;
    constexpr int kSteps = 1000000;
    auto f = [p](double x) { return std::cos(2 * x) * std::cos(2 * x) - p; };
    for (int i = 0; i < kSteps; ++i) {
      const double a = double(i) / kSteps;
      const double b = double(i + 1) / kSteps;
      if ((f(a) <= 0) != (f(b) <= 0)) scanned.push_back(0.5 * (a + b));
    }
    const std::vector<double> roots = ramsey_candidates(p);
    ASSERT_EQ(roots.size(), scanned.size()) << "p=" << p;
    for (std::size_t i = 0; i < roots.size(); ++i) {
      EXPECT_NEAR(roots[i], scanned[i], 1e-6);
      EXPECT_NEAR(std::pow(std::cos(2 * roots[i]), 2), p, 1e-12);
    }
  }
  // cos^2(2x) = 1/2 on [0, 1) has the single root pi/8.
  const auto half = ramsey_candidates(0.5);
  ASSERT_EQ(half.size(), 1u);
  EXPECT_NEAR(half[0], kPi / 8, 1e-15);
}

TEST(RamseyEstimate, RepetitionsForTargetStandardError) {
  // Binomial variance p(1-p)/R <= 1/(4R); R = 2^{2n} gives se <= 2^{-(n+1)}.
  for (int n = 1; n <= 10; ++n) {
    const double reps = std::ldexp(1.0, 2 * n);
    EXPECT_LE(std::sqrt(0.25 / reps), std::ldexp(1.0, -(n + 1)));
    EXPECT_GT(std::sqrt(0.25 / (reps - 1)), std::ldexp(1.0, -(n + 1)));
  }
}

TEST(ApplyTEll, ZeroOffsetLeavesStateAlone) {
  Rng rng(5);
  // Random register on qubits 0-1, ancilla (qubit 2) in |0>.
  std::vector<Amplitude> amps(8);
  const StateVector reg = qsim::random_state(2, rng);
  for (std::size_t i = 0; i < 4; ++i) amps[i] = reg[i];
  const StateVector input = StateVector::from_amplitudes(amps);
  tqh::Channel ch = make_channel(0.0);
  const StateVector out = apply_t_ell(input, 1, 2, 3.0, ch, rng);
  EXPECT_GT(qsim::fidelity(out, input), kEq);
}

TEST(ApplyTEll, HalfTurnFlipsSign) {
  Rng rng(6);
  const double r = 1.0 / std::sqrt(2.0);
  const StateVector plus = StateVector::from_amplitudes({r, r, 0.0, 0.0});
  const StateVector minus = StateVector::from_amplitudes({r, -r, 0.0, 0.0});
  tqh::Channel ch = make_channel(0.5);  // omega delta = 1/2
  EXPECT_GT(qsim::fidelity(apply_t_ell(plus, 0, 1, 1.0, ch, rng), minus), kEq);
}

TEST(ApplyTEll, FullMapMatchesBruteForceOracle) {
  Rng rng(7);
  for (int ell : {0, 1, 2}) {
    const int n = ell + 2;  // qubits 0..ell+1, ancilla last
    const int ancilla = n - 1;
    for (int rep = 0; rep < 10; ++rep) {
      const double x = rng.uniform();
      // Columns |k_ell = 0>|0> and |k_ell = 1>|0>.
      const std::uint64_t col0 = 0;
      const std::uint64_t col1 = std::uint64_t{1} << ell;
      tqh::Channel c0 = make_channel(x);
      tqh::Channel c1 = make_channel(x);
      const StateVector out0 = apply_t_ell(qsim::basis_state(n, col0), ell, ancilla, 1.0, c0, rng);
      const StateVector out1 = apply_t_ell(qsim::basis_state(n, col1), ell, ancilla, 1.0, c1, rng);
      const Amplitude g = out0[col0];
      EXPECT_NEAR(std::abs(g), 1.0, 1e-10);
      const Amplitude expected = g * std::polar(1.0, 2.0 * kPi * std::ldexp(1.0, ell) * x);
      EXPECT_LT(std::abs(out1[col1] - expected), 1e-10) << "ell=" << ell << " x=" << x;
    }
  }
}

TEST(ApplyTEll, RejectsDirtyAncilla) {
  Rng rng(8);
  tqh::Channel ch = make_channel(0.3);
  EXPECT_THROW(apply_t_ell(qsim::basis_state(2, 2), 0, 1, 1.0, ch, rng), std::logic_error);
}

TEST(ApplyT, QuarterTurnPhases) {
  Rng rng(9);
  const Amplitude i{0.0, 1.0};
  const std::vector<Amplitude> expected{1.0, i, -1.0, -i};
  Amplitude global;
  for (std::uint64_t k = 0; k < 4; ++k) {
    tqh::Channel ch = make_channel(0.25);
    const StateVector out = apply_t(qsim::basis_state(3, k), 2, 2, 1.0, ch, rng);
    if (k == 0) global = out[0];
    EXPECT_LT(std::abs(out[k] - global * expected[k]), 1e-10) << "k=" << k;
  }
}

TEST(ApplyT, ZeroOffsetIsIdentity) {
  Rng rng(10);
  for (std::uint64_t k = 0; k < 8; ++k) {
    tqh::Channel ch = make_channel(0.0);
    const StateVector out = apply_t(qsim::basis_state(4, k), 3, 3, 1.0, ch, rng);
    EXPECT_GT(qsim::fidelity(out, qsim::basis_state(4, k)), kEq);
  }
}

TEST(ApplyT, MatchesDiagonalOracleUpToOneGlobalPhase) {
  Rng rng(11);
  for (int m = 1; m <= 5; ++m) {
    for (int rep = 0; rep < 10; ++rep) {
      const auto [fid, spread] = audit_sign(kTickRateSign, m, 0.5, 2.0 * rng.uniform(), rng);
      EXPECT_LT(fid, 1e-10);
      EXPECT_LT(spread, 1e-10);
    }
  }
  // Same property through the library path with a random 3-qubit register.
  for (int rep = 0; rep < 20; ++rep) {
    const double x = rng.uniform();
    StateVector input(4);
    const StateVector reg = qsim::random_state(3, rng);
    std::vector<Amplitude> amps(16);
    std::vector<Amplitude> expected(16);
    for (std::size_t k = 0; k < 8; ++k) {
      amps[k] = reg[k];
      expected[k] = reg[k] * std::polar(1.0, 2.0 * kPi * double(k) * x);
    }
    tqh::Channel ch = make_channel(x);
    const StateVector out = apply_t(StateVector::from_amplitudes(amps), 3, 3, 1.0, ch, rng);
    EXPECT_GT(qsim::fidelity(out, StateVector::from_amplitudes(expected)), kEq);
    EXPECT_EQ(ch.qubit_messages, 6u);
  }
}

TEST(ApplyT, ParallelAncillasGiveTheSameRegisterState) {
  Rng rng(12);
  for (int rep = 0; rep < 10; ++rep) {
    EstimatorConfig cfg;
    cfg.n_bits = 1;
    cfg.epsilon = 0.5;  // m = 3
    cfg.omega_base = 1.0;
    const double x = rng.uniform();
    tqh::Channel seq_ch = make_channel(x);
    const StateVector seq = phase_register_state(cfg, seq_ch, rng);
    cfg.parallel_t = true;
    tqh::Channel par_ch = make_channel(x);
    const StateVector par = phase_register_state(cfg, par_ch, rng);
    ASSERT_EQ(par.num_qubits(), 6);
    // Ancillas are |0> in both, so the register amplitudes sit at indices < 8.
    std::vector<Amplitude> a(8), b(8);
    for (std::size_t k = 0; k < 8; ++k) {
      a[k] = seq[k];
      b[k] = par[k];
    }
    EXPECT_GT(qsim::fidelity(StateVector::from_amplitudes(a), StateVector::from_amplitudes(b)), kEq);
    EXPECT_EQ(seq_ch.qubit_messages, par_ch.qubit_messages);
  }
}

TEST(PhaseEstimate, ExactCaseFiveEighths) {
  Rng rng(13);
  EstimatorConfig cfg;
  cfg.n_bits = 1;
  cfg.epsilon = 0.5;
  cfg.omega_base = 1.0;
  ASSERT_EQ(cfg.m(), 3);
  for (int i = 0; i < 20; ++i) {
    WorldState world{0.0, 0.0, 5.0 / 8.0};
    const EstimateResult r = phase_estimate(cfg, world, rng);
    EXPECT_EQ(r.measured_j, 5u);
    EXPECT_NEAR(r.distribution[5], 1.0, 1e-10);
    EXPECT_EQ(r.omega_delta_hat, 0.625);
    EXPECT_EQ(r.qubit_messages, 6u);
    EXPECT_EQ(r.traces.size(), 3u);
    EXPECT_TRUE(r.success);
  }
}

TEST(PhaseEstimate, ExplicitRegisterSize) {
  Rng rng(16);
  EstimatorConfig cfg;
  cfg.register_qubits = 2;
  ASSERT_EQ(cfg.m(), 2);
  for (int j0 = 0; j0 < 4; ++j0) {
    WorldState world{0.0, 0.0, j0 / 4.0};
    const EstimateResult r = phase_estimate(cfg, world, rng);
    EXPECT_EQ(r.measured_j, static_cast<std::uint64_t>(j0));
    EXPECT_NEAR(r.distribution[static_cast<std::size_t>(j0)], 1.0, 1e-12);
    EXPECT_EQ(r.qubit_messages, 4u);
  }
  cfg.register_qubits = 0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
}

TEST(PhaseEstimate, ZeroOffsetGivesZero) {
  Rng rng(14);
  EstimatorConfig cfg;
  for (int i = 0; i < 10; ++i) {
    WorldState world{0.0, 2.0, 2.0};
    const EstimateResult r = phase_estimate(cfg, world, rng);
    EXPECT_EQ(r.measured_j, 0u);
    EXPECT_EQ(r.delta_hat, 0.0);
  }
}

TEST(PhaseEstimate, OneThirdMatchesDirichletKernel) {
  Rng rng(15);
  EstimatorConfig cfg;
  cfg.n_bits = 3;
  cfg.epsilon = 0.5;
  cfg.omega_base = 1.0;
  ASSERT_EQ(cfg.m(), 5);
  tqh::Channel ch = make_channel(1.0 / 3.0, DelayModel::exponential(4.0));
  const StateVector s = phase_register_state(cfg, ch, rng);
  const auto dist = qsim::outcome_distribution(s, register_qubits(5));
  const auto oracle = brute_force_distribution(5, 1.0 / 3.0);
  for (std::size_t j = 0; j < dist.size(); ++j) EXPECT_NEAR(dist[j], oracle[j], 1e-10);
  const auto peak = std::max_element(dist.begin(), dist.end()) - dist.begin();
  EXPECT_EQ(peak, 11);
  EXPECT_NEAR(dist[11], 0.684162, 1e-6);
}

TEST(PhaseEstimate, DelayInvarianceLiftsToPipeline) {
  EstimatorConfig cfg;  // m = 6
  cfg.omega_base = 1.0;
  cfg.delays = DelayModel::uniform(0.0, 100.0);
  std::vector<StateVector> outs;
  for (int seed = 0; seed < 20; ++seed) {
    Rng trial_rng(derive_seed(99, seed));
    tqh::Channel ch = make_channel(0.4172, cfg.delays);
    outs.push_back(phase_register_state(cfg, ch, trial_rng));
  }
  for (std::size_t i = 1; i < outs.size(); ++i) EXPECT_GT(qsim::fidelity(outs[0], outs[i]), kEq);
}

TEST(PhaseEstimate, PeakAtRoundedPhase) {
  Rng rng(17);
  EstimatorConfig cfg;
  cfg.n_bits = 3;
  cfg.epsilon = 0.5;  // m = 5
  cfg.omega_base = 1.0;
  for (int i = 0; i < 64; ++i) {
    const double x = (i + 0.3) / 64.0;
    tqh::Channel ch = make_channel(x);
    const auto dist = qsim::outcome_distribution(phase_register_state(cfg, ch, rng), register_qubits(5));
    const auto peak = std::max_element(dist.begin(), dist.end()) - dist.begin();
    const auto expected = static_cast<long>(std::floor(32.0 * x + 0.5)) % 32;
    EXPECT_EQ(peak, expected) << "x=" << x;
  }
}

TEST(PhaseEstimate, NegativeOffsetWrapsToSignedEstimate) {
  Rng rng(18);
  EstimatorConfig cfg;
  cfg.n_bits = 1;
  cfg.epsilon = 0.5;
  cfg.omega_base = omega_for_bound(1.0);  // 0.5 rad/s
  WorldState world{0.0, 0.0, -0.5};       // omega delta = -1/4 = 3/4 mod 1
  const EstimateResult r = phase_estimate(cfg, world, rng);
  EXPECT_EQ(r.measured_j, 6u);
  EXPECT_DOUBLE_EQ(r.delta_hat, -0.5);
  EXPECT_TRUE(r.success);
}

TEST(PhaseEstimate, MessageCountIsTwoPerRegisterQubit) {
  Rng rng(19);
  for (int n = 1; n <= 5; ++n) {
    for (double eps : {0.5, 0.25, 0.1}) {
      EstimatorConfig cfg;
      cfg.n_bits = n;
      cfg.epsilon = eps;
      WorldState world{0.0, 0.0, 0.1};
      EXPECT_EQ(phase_estimate(cfg, world, rng).qubit_messages, 2u * cfg.m());
    }
  }
}

}  // namespace
}  // namespace qcs::estimators
