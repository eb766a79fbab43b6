#pragma once

// Dense state-vector simulator.
//
// Qubit q of a register is the 2^q bit of a basis index, so for a qubit list
// {q_0, ..., q_{m-1}} the decoded outcome is k = sum_l 2^l k_l. Every
// operation takes its state by value and returns the result, so callers that
// move a state in pay no copy.

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "qclocksync/rng.hpp"

namespace qcs::qsim {

using Amplitude = std::complex<double>;
using QubitList = std::vector<int>;

/// A 2x2 complex matrix. Constructed through the gate catalog or from entries.
class Unitary2 {
 public:
  /// Row-major entries {u00, u01, u10, u11}.
  constexpr explicit Unitary2(std::array<Amplitude, 4> entries) : m_(entries) {}

  constexpr const Amplitude& operator()(int row, int col) const { return m_[row * 2 + col]; }
  constexpr const std::array<Amplitude, 4>& entries() const { return m_; }

  Unitary2 adjoint() const;
  /// Entrywise check of U^dagger U = I.
  bool is_unitary(double tol = 1e-12) const;
  /// Largest entrywise modulus difference.
  double max_abs_diff(const Unitary2& other) const;

  friend Unitary2 operator*(const Unitary2& a, const Unitary2& b);

 private:
  std::array<Amplitude, 4> m_;
};

namespace gates {

Unitary2 identity();
Unitary2 pauli_x();
Unitary2 pauli_y();
Unitary2 pauli_z();
Unitary2 hadamard();
/// e^{i theta Z} = diag(e^{i theta}, e^{-i theta}).
Unitary2 rot_z(double theta);

}  // namespace gates

class StateVector {
 public:
  static constexpr int kMaxQubits = 24;

  /// |0...0> on `num_qubits` qubits. Throws std::invalid_argument outside [1, kMaxQubits].
  explicit StateVector(int num_qubits);

  /// Takes ownership of `amps`; the length must be 2^n for n in [1, kMaxQubits]
  /// and the norm must be 1 within `norm_tol`.
  static StateVector from_amplitudes(std::vector<Amplitude> amps, double norm_tol = 1e-10);

  int num_qubits() const { return num_qubits_; }
  std::size_t size() const { return amps_.size(); }

  const Amplitude& operator[](std::size_t index) const { return amps_[index]; }
  std::span<const Amplitude> amplitudes() const { return amps_; }
  std::span<Amplitude> mutable_amplitudes() { return amps_; }

  /// Euclidean norm.
  double norm() const;
  /// True when every amplitude is finite.
  bool is_finite() const;

 private:
  StateVector(int num_qubits, std::vector<Amplitude> amps);

  int num_qubits_;
  std::vector<Amplitude> amps_;
};

StateVector basis_state(int num_qubits, std::uint64_t index);

/// Haar-distributed pure state (normalized complex Gaussian vector).
StateVector random_state(int num_qubits, Rng& rng);

StateVector apply_single(StateVector state, int qubit, const Unitary2& u);
StateVector apply_cnot(StateVector state, int control, int target);
/// Multiplies the |11> component of (control, target) by e^{i angle}.
StateVector apply_controlled_phase(StateVector state, int control, int target, double angle);

/// On the listed qubits: |k> -> 2^{-m/2} sum_j e^{-2 pi i j k / 2^m} |j>.
StateVector apply_inverse_qft(StateVector state, std::span<const int> qubits);

/// Exact outcome probabilities for the listed qubits, indexed by decoded outcome.
std::vector<double> outcome_distribution(const StateVector& state, std::span<const int> qubits);

struct Measurement {
  std::uint64_t outcome;
  StateVector collapsed;
};

/// Projective measurement of the listed qubits. The outcome is drawn by
/// inverse CDF over outcome_distribution with one rng.uniform() draw.
Measurement measure(StateVector state, std::span<const int> qubits, Rng& rng);

/// |<a|b>|, insensitive to global phase.
double fidelity(const StateVector& a, const StateVector& b);

/// <a|b>
Amplitude inner_product(const StateVector& a, const StateVector& b);

}  // namespace qcs::qsim
