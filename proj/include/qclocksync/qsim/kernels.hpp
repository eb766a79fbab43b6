#pragma once

// In-place state-vector kernels.
//
// Two implementations share one signature set:
//   serial::   straightforward loops over every basis index. This is the
//              reference the parallel kernels are tested against.
//   parallel:: OpenMP kernels that walk only the index pairs/quads a gate
//              touches. Built serially when OpenMP is unavailable.
//
// Qubit q is the 2^q bit of a basis index. A qubit list decodes an outcome
// k = sum_l 2^l * bit(index, qubits[l]).
//
// Reductions (norms, inner products, marginals) are summed over a fixed
// chunking of the index range, so results do not depend on the thread count.

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace qcs::qsim::kernels {

using Amp = std::complex<double>;
/// Row-major 2x2 matrix {u00, u01, u10, u11}.
using Mat2 = std::array<Amp, 4>;

namespace serial {

void apply_single(std::span<Amp> amps, unsigned qubit, const Mat2& u);
void apply_cnot(std::span<Amp> amps, unsigned control, unsigned target);
/// Multiplies amplitudes with both bits set by e^{i angle}.
void apply_controlled_phase(std::span<Amp> amps, unsigned control, unsigned target,
                            double angle);
void swap_qubits(std::span<Amp> amps, unsigned a, unsigned b);
/// |k> -> 2^{-m/2} sum_j e^{-2 pi i j k / 2^m} |j> on the listed qubits,
/// evaluated as a dense DFT on every fibre of the remaining qubits.
void inverse_qft(std::span<Amp> amps, std::span<const unsigned> qubits);

double norm_squared(std::span<const Amp> amps);
/// <a|b>
Amp inner_product(std::span<const Amp> a, std::span<const Amp> b);
std::vector<double> marginal_probabilities(std::span<const Amp> amps,
                                           std::span<const unsigned> qubits);
/// Zeroes amplitudes whose listed qubits do not decode to `outcome` and
/// multiplies the rest by `scale`.
void project(std::span<Amp> amps, std::span<const unsigned> qubits, std::uint64_t outcome,
             double scale);

}  // namespace serial

namespace parallel {

void apply_single(std::span<Amp> amps, unsigned qubit, const Mat2& u);
void apply_cnot(std::span<Amp> amps, unsigned control, unsigned target);
void apply_controlled_phase(std::span<Amp> amps, unsigned control, unsigned target,
                            double angle);
void swap_qubits(std::span<Amp> amps, unsigned a, unsigned b);
/// Same map as serial::inverse_qft, built from swaps, controlled phases and
/// Hadamards (O(m^2) gates).
void inverse_qft(std::span<Amp> amps, std::span<const unsigned> qubits);

double norm_squared(std::span<const Amp> amps);
Amp inner_product(std::span<const Amp> a, std::span<const Amp> b);
std::vector<double> marginal_probabilities(std::span<const Amp> amps,
                                           std::span<const unsigned> qubits);
void project(std::span<Amp> amps, std::span<const unsigned> qubits, std::uint64_t outcome,
             double scale);

}  // namespace parallel

/// True when the parallel kernels were compiled with OpenMP.
bool openmp_enabled();

/// States with fewer amplitudes than this run the parallel kernels on one thread.
inline constexpr std::size_t kParallelThreshold = std::size_t{1} << 14;

/// Number of fixed chunks used by deterministic reductions.
inline constexpr std::size_t kReductionChunks = 64;

/// Outcome decoded from `index` by the listed qubits.
inline std::uint64_t gather_bits(std::uint64_t index, std::span<const unsigned> qubits) {
  std::uint64_t k = 0;
  for (std::size_t l = 0; l < qubits.size(); ++l) k |= ((index >> qubits[l]) & 1ULL) << l;
  return k;
}

/// Basis offset that places outcome bits of `k` on the listed qubits.
inline std::uint64_t scatter_bits(std::uint64_t k, std::span<const unsigned> qubits) {
  std::uint64_t index = 0;
  for (std::size_t l = 0; l < qubits.size(); ++l) index |= ((k >> l) & 1ULL) << qubits[l];
  return index;
}

}  // namespace qcs::qsim::kernels
