#include "qclocksync/qsim/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qcs::qsim::kernels {

bool openmp_enabled() {
#ifdef _OPENMP
  return true;
#else
  return false;
#endif
}

namespace parallel {
namespace {

inline std::uint64_t insert_zero(std::uint64_t i, unsigned bit) {
  const std::uint64_t low = i & ((1ULL << bit) - 1);
  return ((i >> bit) << (bit + 1)) | low;
}

// Index with zeros inserted at both bit positions, lo < hi.
inline std::uint64_t insert_two_zeros(std::uint64_t i, unsigned lo, unsigned hi) {
  return insert_zero(insert_zero(i, lo), hi);
}

inline bool wide(std::size_t n) { return n >= kParallelThreshold; }

struct Chunking {
  std::int64_t count;
  std::uint64_t size;
};

Chunking chunking(std::size_t n, std::size_t bins) {
  std::size_t count = kReductionChunks;
  // Bound scratch memory for marginals over many qubits.
  while (count > 1 && count * bins > (std::size_t{1} << 22)) count /= 2;
  const std::uint64_t size = (n + count - 1) / count;
  return {static_cast<std::int64_t>(count), size};
}

}  // namespace

void apply_single(std::span<Amp> amps, unsigned qubit, const Mat2& u) {
  const std::uint64_t mask = 1ULL << qubit;
  const auto half = static_cast<std::int64_t>(amps.size() / 2);
  Amp* data = amps.data();
#pragma omp parallel for if (wide(amps.size()))
  for (std::int64_t i = 0; i < half; ++i) {
    const std::uint64_t i0 = insert_zero(static_cast<std::uint64_t>(i), qubit);
    const std::uint64_t i1 = i0 | mask;
    const Amp a0 = data[i0];
    const Amp a1 = data[i1];
    data[i0] = u[0] * a0 + u[1] * a1;
    data[i1] = u[2] * a0 + u[3] * a1;
  }
}

void apply_cnot(std::span<Amp> amps, unsigned control, unsigned target) {
  const std::uint64_t cmask = 1ULL << control;
  const std::uint64_t tmask = 1ULL << target;
  const unsigned lo = std::min(control, target);
  const unsigned hi = std::max(control, target);
  const auto quarter = static_cast<std::int64_t>(amps.size() / 4);
  Amp* data = amps.data();
#pragma omp parallel for if (wide(amps.size()))
  for (std::int64_t i = 0; i < quarter; ++i) {
    const std::uint64_t base = insert_two_zeros(static_cast<std::uint64_t>(i), lo, hi) | cmask;
    std::swap(data[base], data[base | tmask]);
  }
}

void apply_controlled_phase(std::span<Amp> amps, unsigned control, unsigned target,
                            double angle) {
  const std::uint64_t both = (1ULL << control) | (1ULL << target);
  const unsigned lo = std::min(control, target);
  const unsigned hi = std::max(control, target);
  const Amp phase = std::polar(1.0, angle);
  const auto quarter = static_cast<std::int64_t>(amps.size() / 4);
  Amp* data = amps.data();
#pragma omp parallel for if (wide(amps.size()))
  for (std::int64_t i = 0; i < quarter; ++i) {
    data[insert_two_zeros(static_cast<std::uint64_t>(i), lo, hi) | both] *= phase;
  }
}

void swap_qubits(std::span<Amp> amps, unsigned a, unsigned b) {
  if (a == b) return;
  const std::uint64_t amask = 1ULL << a;
  const std::uint64_t bmask = 1ULL << b;
  const unsigned lo = std::min(a, b);
  const unsigned hi = std::max(a, b);
  const auto quarter = static_cast<std::int64_t>(amps.size() / 4);
  Amp* data = amps.data();
#pragma omp parallel for if (wide(amps.size()))
  for (std::int64_t i = 0; i < quarter; ++i) {
    const std::uint64_t base = insert_two_zeros(static_cast<std::uint64_t>(i), lo, hi);
    std::swap(data[base | amask], data[base | bmask]);
  }
}

void inverse_qft(std::span<Amp> amps, std::span<const unsigned> qubits) {
  const std::size_t m = qubits.size();
  const double r = 1.0 / std::numbers::sqrt2;
  const Mat2 hadamard{Amp{r, 0.0}, Amp{r, 0.0}, Amp{r, 0.0}, Amp{-r, 0.0}};

  // Reverse of the textbook forward circuit, with conjugated phases.
  for (std::size_t l = 0; l < m / 2; ++l) swap_qubits(amps, qubits[l], qubits[m - 1 - l]);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      const double angle = -2.0 * std::numbers::pi / std::ldexp(1.0, static_cast<int>(i - j + 1));
      apply_controlled_phase(amps, qubits[j], qubits[i], angle);
    }
    apply_single(amps, qubits[i], hadamard);
  }
}

double norm_squared(std::span<const Amp> amps) {
  const Chunking c = chunking(amps.size(), 1);
  std::vector<double> partial(static_cast<std::size_t>(c.count), 0.0);
#pragma omp parallel for if (wide(amps.size()))
  for (std::int64_t chunk = 0; chunk < c.count; ++chunk) {
    const std::uint64_t begin = static_cast<std::uint64_t>(chunk) * c.size;
    const std::uint64_t end = std::min<std::uint64_t>(begin + c.size, amps.size());
    double sum = 0.0;
    for (std::uint64_t i = begin; i < end; ++i) sum += std::norm(amps[i]);
    partial[static_cast<std::size_t>(chunk)] = sum;
  }
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

Amp inner_product(std::span<const Amp> a, std::span<const Amp> b) {
  const Chunking c = chunking(a.size(), 1);
  std::vector<Amp> partial(static_cast<std::size_t>(c.count));
#pragma omp parallel for if (wide(a.size()))
  for (std::int64_t chunk = 0; chunk < c.count; ++chunk) {
    const std::uint64_t begin = static_cast<std::uint64_t>(chunk) * c.size;
    const std::uint64_t end = std::min<std::uint64_t>(begin + c.size, a.size());
    Amp sum{0.0, 0.0};
    for (std::uint64_t i = begin; i < end; ++i) sum += std::conj(a[i]) * b[i];
    partial[static_cast<std::size_t>(chunk)] = sum;
  }
  Amp total{0.0, 0.0};
  for (const Amp& p : partial) total += p;
  return total;
}

std::vector<double> marginal_probabilities(std::span<const Amp> amps,
                                           std::span<const unsigned> qubits) {
  const std::size_t bins = std::size_t{1} << qubits.size();
  const Chunking c = chunking(amps.size(), bins);
  std::vector<double> partial(static_cast<std::size_t>(c.count) * bins, 0.0);
#pragma omp parallel for if (wide(amps.size()))
  for (std::int64_t chunk = 0; chunk < c.count; ++chunk) {
    const std::uint64_t begin = static_cast<std::uint64_t>(chunk) * c.size;
    const std::uint64_t end = std::min<std::uint64_t>(begin + c.size, amps.size());
    double* local = partial.data() + static_cast<std::size_t>(chunk) * bins;
    for (std::uint64_t i = begin; i < end; ++i) local[gather_bits(i, qubits)] += std::norm(amps[i]);
  }
  std::vector<double> probs(bins, 0.0);
  for (std::int64_t chunk = 0; chunk < c.count; ++chunk) {
    const double* local = partial.data() + static_cast<std::size_t>(chunk) * bins;
    for (std::size_t k = 0; k < bins; ++k) probs[k] += local[k];
  }
  return probs;
}

void project(std::span<Amp> amps, std::span<const unsigned> qubits, std::uint64_t outcome,
             double scale) {
  const auto n = static_cast<std::int64_t>(amps.size());
  Amp* data = amps.data();
#pragma omp parallel for if (wide(amps.size()))
  for (std::int64_t i = 0; i < n; ++i) {
    const auto index = static_cast<std::uint64_t>(i);
    if (gather_bits(index, qubits) == outcome) {
      data[index] *= scale;
    } else {
      data[index] = Amp{0.0, 0.0};
    }
  }
}

}  // namespace parallel
}  // namespace qcs::qsim::kernels
