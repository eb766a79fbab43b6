#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "qclocksync/estimators.hpp"
#include "qclocksync/harness.hpp"
#include "qclocksync/qsim.hpp"
#include "qclocksync/tqh.hpp"

namespace qcs::harness {

DenseMatrix oracle_t_matrix(int m, double omega_delta) {
  if (m < 1 || m > kOracleMaxQubits) {
    throw std::invalid_argument("oracle_t_matrix: m must be in [1, " +
                                std::to_string(kOracleMaxQubits) + "], got " + std::to_string(m));
  }
  DenseMatrix t;
  t.dim = std::size_t{1} << m;
  t.data.assign(t.dim * t.dim, {0.0, 0.0});
  for (std::size_t k = 0; k < t.dim; ++k) {
    t.data[k * t.dim + k] =
        std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) * omega_delta);
  }
  return t;
}

std::vector<double> exact_distribution(int m, double omega_delta) {
  if (m < 1 || m > kExactDistributionMaxQubits) {
    throw std::invalid_argument("exact_distribution: m must be in [1, " +
                                std::to_string(kExactDistributionMaxQubits) + "]");
  }
  const double n = std::ldexp(1.0, m);
  std::vector<double> probs(static_cast<std::size_t>(n));
  for (std::size_t j = 0; j < probs.size(); ++j) {
    const double scaled = n * omega_delta - static_cast<double>(j);  // 2^m d_j
    const double denom = std::sin(std::numbers::pi * scaled / n);
    if (std::abs(denom) < 1e-14) {
      probs[j] = 1.0;
      continue;
    }
    const double numer = std::sin(std::numbers::pi * scaled);
    probs[j] = (numer * numer) / (n * n * denom * denom);
  }
  return probs;
}

double max_abs_deviation(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

TOracleCheck check_t_against_oracle(int m, double omega, const clocks::WorldState& world,
                                    const clocks::DelayModel& delays, Rng& rng) {
  const DenseMatrix oracle = oracle_t_matrix(m, omega * world.delta());
  TOracleCheck check;
  check.min_column_fidelity = 1.0;
  std::complex<double> first_overlap;

  for (std::size_t k = 0; k < oracle.dim; ++k) {
    tqh::Channel channel{world, delays, std::nullopt};
    // Ancilla is qubit m, so basis index k has it in |0>.
    qsim::StateVector column =
        estimators::apply_t(qsim::basis_state(m + 1, k), m, m, omega, channel, rng);
    check.qubit_messages += channel.qubit_messages;

    const std::complex<double> overlap = std::conj(oracle(k, k)) * column[k];
    check.min_column_fidelity = std::min(check.min_column_fidelity, std::abs(overlap));
    if (k == 0) first_overlap = overlap;
    check.max_phase_spread = std::max(check.max_phase_spread, std::abs(overlap - first_overlap));
  }
  return check;
}

}  // namespace qcs::harness
