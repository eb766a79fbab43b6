// Serial reference vs OpenMP kernels on dense states.
//
//   ./build/bench/kernel_bench --benchmark_filter=Single

#include <benchmark/benchmark.h>

#include <numeric>

#include "qclocksync/qsim.hpp"
#include "qclocksync/qsim/kernels.hpp"

namespace {

using qcs::qsim::kernels::Amp;
using qcs::qsim::kernels::Mat2;

std::vector<Amp> make_state(int n) {
  qcs::Rng rng(42);
  const auto s = qcs::qsim::random_state(n, rng);
  return {s.amplitudes().begin(), s.amplitudes().end()};
}

const Mat2 kHadamard{Amp{M_SQRT1_2, 0}, Amp{M_SQRT1_2, 0}, Amp{M_SQRT1_2, 0}, Amp{-M_SQRT1_2, 0}};

template <auto Kernel>
void BM_SingleQubit(benchmark::State& state) {
  auto amps = make_state(static_cast<int>(state.range(0)));
  const unsigned q = static_cast<unsigned>(state.range(0) / 2);
  for (auto _ : state) {
    Kernel(amps, q, kHadamard);
    benchmark::DoNotOptimize(amps.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(amps.size()));
}

template <auto Kernel>
void BM_Cnot(benchmark::State& state) {
  auto amps = make_state(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    Kernel(amps, 1, static_cast<unsigned>(state.range(0) - 1));
    benchmark::DoNotOptimize(amps.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(amps.size()));
}

template <auto Kernel>
void BM_Marginal(benchmark::State& state) {
  const auto amps = make_state(static_cast<int>(state.range(0)));
  std::vector<unsigned> qubits(6);
  std::iota(qubits.begin(), qubits.end(), 0u);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(amps, qubits));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(amps.size()));
}

// Serial inverse QFT is a dense DFT per fibre; keep m small.
template <auto Kernel>
void BM_InverseQft(benchmark::State& state) {
  auto amps = make_state(static_cast<int>(state.range(0)));
  std::vector<unsigned> qubits(6);
  std::iota(qubits.begin(), qubits.end(), 0u);
  for (auto _ : state) {
    Kernel(amps, qubits);
    benchmark::DoNotOptimize(amps.data());
  }
}

namespace serial = qcs::qsim::kernels::serial;
namespace parallel = qcs::qsim::kernels::parallel;

BENCHMARK(BM_SingleQubit<serial::apply_single>)->Name("Single/serial")->DenseRange(14, 22, 4);
BENCHMARK(BM_SingleQubit<parallel::apply_single>)->Name("Single/parallel")->DenseRange(14, 22, 4);
BENCHMARK(BM_Cnot<serial::apply_cnot>)->Name("Cnot/serial")->DenseRange(14, 22, 4);
BENCHMARK(BM_Cnot<parallel::apply_cnot>)->Name("Cnot/parallel")->DenseRange(14, 22, 4);
BENCHMARK(BM_Marginal<serial::marginal_probabilities>)->Name("Marginal/serial")->DenseRange(14, 22, 4);
BENCHMARK(BM_Marginal<parallel::marginal_probabilities>)->Name("Marginal/parallel")->DenseRange(14, 22, 4);
BENCHMARK(BM_InverseQft<serial::inverse_qft>)->Name("InverseQft6/serial")->DenseRange(14, 18, 4);
BENCHMARK(BM_InverseQft<parallel::inverse_qft>)->Name("InverseQft6/parallel")->DenseRange(14, 18, 4);

}  // namespace

BENCHMARK_MAIN();
