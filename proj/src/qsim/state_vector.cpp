#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "qclocksync/qsim.hpp"
#include "qclocksync/qsim/kernels.hpp"

namespace qcs::qsim {
namespace {

void check_qubit(const StateVector& state, int qubit, const char* what) {
  if (qubit < 0 || qubit >= state.num_qubits()) {
    throw std::invalid_argument(std::string(what) + " qubit " + std::to_string(qubit) +
                                " out of range for " + std::to_string(state.num_qubits()) +
                                "-qubit state");
  }
}

std::vector<unsigned> checked_list(const StateVector& state, std::span<const int> qubits) {
  std::vector<unsigned> out;
  out.reserve(qubits.size());
  for (int q : qubits) {
    check_qubit(state, q, "listed");
    if (std::find(out.begin(), out.end(), static_cast<unsigned>(q)) != out.end()) {
      throw std::invalid_argument("duplicate qubit " + std::to_string(q) + " in qubit list");
    }
    out.push_back(static_cast<unsigned>(q));
  }
  return out;
}

}  // namespace

Unitary2 Unitary2::adjoint() const {
  return Unitary2({std::conj(m_[0]), std::conj(m_[2]), std::conj(m_[1]), std::conj(m_[3])});
}

bool Unitary2::is_unitary(double tol) const {
  return (adjoint() * *this).max_abs_diff(gates::identity()) <= tol;
}

double Unitary2::max_abs_diff(const Unitary2& other) const {
  double worst = 0.0;
  for (std::size_t i = 0; i < 4; ++i) worst = std::max(worst, std::abs(m_[i] - other.m_[i]));
  return worst;
}

Unitary2 operator*(const Unitary2& a, const Unitary2& b) {
  return Unitary2({a(0, 0) * b(0, 0) + a(0, 1) * b(1, 0), a(0, 0) * b(0, 1) + a(0, 1) * b(1, 1),
                   a(1, 0) * b(0, 0) + a(1, 1) * b(1, 0), a(1, 0) * b(0, 1) + a(1, 1) * b(1, 1)});
}

namespace gates {

Unitary2 identity() { return Unitary2({1.0, 0.0, 0.0, 1.0}); }
Unitary2 pauli_x() { return Unitary2({0.0, 1.0, 1.0, 0.0}); }
Unitary2 pauli_y() { return Unitary2({0.0, Amplitude{0.0, -1.0}, Amplitude{0.0, 1.0}, 0.0}); }
Unitary2 pauli_z() { return Unitary2({1.0, 0.0, 0.0, -1.0}); }

Unitary2 hadamard() {
  const double r = 1.0 / std::numbers::sqrt2;
  return Unitary2({r, r, r, -r});
}

Unitary2 rot_z(double theta) {
  return Unitary2({std::polar(1.0, theta), 0.0, 0.0, std::polar(1.0, -theta)});
}

}  // namespace gates

StateVector::StateVector(int num_qubits) : num_qubits_(num_qubits) {
  if (num_qubits < 1 || num_qubits > kMaxQubits) {
    throw std::invalid_argument("num_qubits must be in [1, " + std::to_string(kMaxQubits) +
                                "], got " + std::to_string(num_qubits));
  }
  amps_.assign(std::size_t{1} << num_qubits, Amplitude{0.0, 0.0});
  amps_[0] = 1.0;
}

StateVector::StateVector(int num_qubits, std::vector<Amplitude> amps)
    : num_qubits_(num_qubits), amps_(std::move(amps)) {}

StateVector StateVector::from_amplitudes(std::vector<Amplitude> amps, double norm_tol) {
  const std::size_t n = amps.size();
  if (n < 2 || (n & (n - 1)) != 0 || n > (std::size_t{1} << kMaxQubits)) {
    throw std::invalid_argument("amplitude count must be 2^n with 1 <= n <= " +
                                std::to_string(kMaxQubits) + ", got " + std::to_string(n));
  }
  const int num_qubits = std::countr_zero(n);
  StateVector state(num_qubits, std::move(amps));
  if (!state.is_finite()) throw std::invalid_argument("amplitudes must be finite");
  if (std::abs(state.norm() - 1.0) > norm_tol) {
    throw std::invalid_argument("amplitudes are not normalized (norm " +
                                std::to_string(state.norm()) + ")");
  }
  return state;
}

double StateVector::norm() const { return std::sqrt(kernels::parallel::norm_squared(amps_)); }

bool StateVector::is_finite() const {
  return std::all_of(amps_.begin(), amps_.end(), [](const Amplitude& a) {
    return std::isfinite(a.real()) && std::isfinite(a.imag());
  });
}

StateVector basis_state(int num_qubits, std::uint64_t index) {
  StateVector state(num_qubits);
  if (index >= state.size()) {
    throw std::invalid_argument("basis index " + std::to_string(index) + " out of range for " +
                                std::to_string(num_qubits) + " qubits");
  }
  auto amps = state.mutable_amplitudes();
  amps[0] = 0.0;
  amps[index] = 1.0;
  return state;
}

StateVector random_state(int num_qubits, Rng& rng) {
  StateVector state(num_qubits);
  auto amps = state.mutable_amplitudes();
  double norm_sq = 0.0;
  for (Amplitude& a : amps) {
    // Box-Muller; 1 - u keeps the log argument in (0, 1].
    const double radius = std::sqrt(-2.0 * std::log(1.0 - rng.uniform()));
    const double angle = 2.0 * std::numbers::pi * rng.uniform();
    a = std::polar(radius, angle);
    norm_sq += std::norm(a);
  }
  const double scale = 1.0 / std::sqrt(norm_sq);
  for (Amplitude& a : amps) a *= scale;
  return state;
}

StateVector apply_single(StateVector state, int qubit, const Unitary2& u) {
  check_qubit(state, qubit, "target");
  kernels::parallel::apply_single(state.mutable_amplitudes(), static_cast<unsigned>(qubit),
                                  u.entries());
  return state;
}

StateVector apply_cnot(StateVector state, int control, int target) {
  check_qubit(state, control, "control");
  check_qubit(state, target, "target");
  if (control == target) throw std::invalid_argument("CNOT control and target must differ");
  kernels::parallel::apply_cnot(state.mutable_amplitudes(), static_cast<unsigned>(control),
                                static_cast<unsigned>(target));
  return state;
}

StateVector apply_controlled_phase(StateVector state, int control, int target, double angle) {
  check_qubit(state, control, "control");
  check_qubit(state, target, "target");
  if (control == target) {
    throw std::invalid_argument("controlled phase control and target must differ");
  }
  kernels::parallel::apply_controlled_phase(state.mutable_amplitudes(),
                                            static_cast<unsigned>(control),
                                            static_cast<unsigned>(target), angle);
  return state;
}

StateVector apply_inverse_qft(StateVector state, std::span<const int> qubits) {
  const std::vector<unsigned> list = checked_list(state, qubits);
  kernels::parallel::inverse_qft(state.mutable_amplitudes(), list);
  return state;
}

std::vector<double> outcome_distribution(const StateVector& state, std::span<const int> qubits) {
  const std::vector<unsigned> list = checked_list(state, qubits);
  return kernels::parallel::marginal_probabilities(state.amplitudes(), list);
}

Measurement measure(StateVector state, std::span<const int> qubits, Rng& rng) {
  const std::vector<unsigned> list = checked_list(state, qubits);
  const std::vector<double> probs =
      kernels::parallel::marginal_probabilities(state.amplitudes(), list);

  double total = 0.0;
  for (double p : probs) total += p;
  if (!(total > 0.0)) throw std::runtime_error("cannot measure a zero-norm state");

  const double u = rng.uniform() * total;
  std::uint64_t outcome = probs.size();
  double cumulative = 0.0;
  std::uint64_t last_nonzero = 0;
  for (std::uint64_t k = 0; k < probs.size(); ++k) {
    if (probs[k] > 0.0) last_nonzero = k;
    cumulative += probs[k];
    if (u < cumulative) {
      outcome = k;
      break;
    }
  }
  // Rounding can leave u just past the final cumulative sum.
  if (outcome == probs.size()) outcome = last_nonzero;

  kernels::parallel::project(state.mutable_amplitudes(), list, outcome,
                             1.0 / std::sqrt(probs[outcome]));
  return {outcome, std::move(state)};
}

Amplitude inner_product(const StateVector& a, const StateVector& b) {
  if (a.num_qubits() != b.num_qubits()) {
    throw std::invalid_argument("state dimension mismatch: " + std::to_string(a.num_qubits()) +
                                " vs " + std::to_string(b.num_qubits()) + " qubits");
  }
  return kernels::parallel::inner_product(a.amplitudes(), b.amplitudes());
}

double fidelity(const StateVector& a, const StateVector& b) {
  return std::min(1.0, std::abs(inner_product(a, b)));
}

}  // namespace qcs::qsim
