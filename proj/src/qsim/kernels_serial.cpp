#include "qclocksync/qsim/kernels.hpp"

#include <cmath>
#include <numbers>

namespace qcs::qsim::kernels::serial {

void apply_single(std::span<Amp> amps, unsigned qubit, const Mat2& u) {
  const std::uint64_t mask = 1ULL << qubit;
  for (std::uint64_t i = 0; i < amps.size(); ++i) {
    if (i & mask) continue;
    const Amp a0 = amps[i];
    const Amp a1 = amps[i | mask];
    amps[i] = u[0] * a0 + u[1] * a1;
    amps[i | mask] = u[2] * a0 + u[3] * a1;
  }
}

void apply_cnot(std::span<Amp> amps, unsigned control, unsigned target) {
  const std::uint64_t cmask = 1ULL << control;
  const std::uint64_t tmask = 1ULL << target;
  for (std::uint64_t i = 0; i < amps.size(); ++i) {
    if ((i & cmask) && !(i & tmask)) std::swap(amps[i], amps[i | tmask]);
  }
}

void apply_controlled_phase(std::span<Amp> amps, unsigned control, unsigned target,
                            double angle) {
  const std::uint64_t both = (1ULL << control) | (1ULL << target);
  const Amp phase = std::polar(1.0, angle);
  for (std::uint64_t i = 0; i < amps.size(); ++i) {
    if ((i & both) == both) amps[i] *= phase;
  }
}

void swap_qubits(std::span<Amp> amps, unsigned a, unsigned b) {
  const std::uint64_t amask = 1ULL << a;
  const std::uint64_t bmask = 1ULL << b;
  for (std::uint64_t i = 0; i < amps.size(); ++i) {
    if ((i & amask) && !(i & bmask)) std::swap(amps[i], amps[(i & ~amask) | bmask]);
  }
}

void inverse_qft(std::span<Amp> amps, std::span<const unsigned> qubits) {
  const std::uint64_t dim = 1ULL << qubits.size();
  const std::uint64_t selected = scatter_bits(dim - 1, qubits);
  const double scale = 1.0 / std::sqrt(static_cast<double>(dim));

  std::vector<std::uint64_t> offset(dim);
  for (std::uint64_t k = 0; k < dim; ++k) offset[k] = scatter_bits(k, qubits);

  // e^{-2 pi i t / dim} for t = 0..dim-1; jk is reduced mod dim.
  std::vector<Amp> root(dim);
  for (std::uint64_t t = 0; t < dim; ++t) {
    root[t] = std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(t) /
                                  static_cast<double>(dim));
  }

  std::vector<Amp> in(dim);
  for (std::uint64_t base = 0; base < amps.size(); ++base) {
    if (base & selected) continue;
    for (std::uint64_t k = 0; k < dim; ++k) in[k] = amps[base | offset[k]];
    for (std::uint64_t j = 0; j < dim; ++j) {
      Amp acc{0.0, 0.0};
      for (std::uint64_t k = 0; k < dim; ++k) acc += root[(j * k) % dim] * in[k];
      amps[base | offset[j]] = acc * scale;
    }
  }
}

double norm_squared(std::span<const Amp> amps) {
  double sum = 0.0;
  for (const Amp& a : amps) sum += std::norm(a);
  return sum;
}

Amp inner_product(std::span<const Amp> a, std::span<const Amp> b) {
  Amp sum{0.0, 0.0};
  for (std::size_t i = 0; i < a.size(); ++i) sum += std::conj(a[i]) * b[i];
  return sum;
}

std::vector<double> marginal_probabilities(std::span<const Amp> amps,
                                           std::span<const unsigned> qubits) {
  std::vector<double> probs(std::size_t{1} << qubits.size(), 0.0);
  for (std::uint64_t i = 0; i < amps.size(); ++i) probs[gather_bits(i, qubits)] += std::norm(amps[i]);
  return probs;
}

void project(std::span<Amp> amps, std::span<const unsigned> qubits, std::uint64_t outcome,
             double scale) {
  for (std::uint64_t i = 0; i < amps.size(); ++i) {
    if (gather_bits(i, qubits) == outcome) {
      amps[i] *= scale;
    } else {
      amps[i] = Amp{0.0, 0.0};
    }
  }
}

}  // namespace qcs::qsim::kernels::serial
