#include <cmath>
#include <string>

#include "qclocksync/estimators.hpp"
#include "qclocksync/harness.hpp"
#include "qclocksync/qsim.hpp"

namespace qcs::harness {

std::string_view to_string(Mode mode) {
  switch (mode) {
    case Mode::ramsey:
      return "ramsey";
    case Mode::phase_estimation:
      return "phase_estimation";
    case Mode::invariance_audit:
      return "invariance_audit";
    case Mode::oracle_check:
      return "oracle_check";
  }
  return "unknown";
}

Mode parse_mode(std::string_view name) {
  for (Mode m : {Mode::ramsey, Mode::phase_estimation, Mode::invariance_audit, Mode::oracle_check}) {
    if (name == to_string(m)) return m;
  }
  throw ConfigError("mode", "unknown mode '" + std::string(name) +
                                "' (expected ramsey, phase_estimation, invariance_audit or oracle_check)");
}

void ExperimentSpec::validate() const {
  if (!std::isfinite(delta_max) || !(delta_max > 0.0)) {
    throw ConfigError("delta-max", "must be finite and > 0");
  }
  if (!std::isfinite(delta_true)) throw ConfigError("delta", "must be finite");
  if (std::abs(delta_true) > delta_max) throw ConfigError("delta", "|delta| exceeds delta-max");
  if (n_bits < 1) throw ConfigError("n-bits", "must be >= 1");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw ConfigError("epsilon", "must be in (0, 1)");
  if (trials < 1) throw ConfigError("trials", "must be >= 1");
  if (omega && !std::isfinite(*omega)) throw ConfigError("omega", "must be finite");
  try {
    delay.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("delay", e.what());
  }
  if (holding) {
    try {
      holding->validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError("holding", e.what());
    }
  }
  const int m = estimators::required_m(n_bits, epsilon);
  const int register_qubits = parallel_t ? 2 * m : m + 1;
  if (register_qubits > qsim::StateVector::kMaxQubits) {
    throw ConfigError("n-bits", "needs " + std::to_string(register_qubits) +
                                    " qubits; the simulator cap is " +
                                    std::to_string(qsim::StateVector::kMaxQubits));
  }
}

double ExperimentSpec::omega_base() const {
  return omega ? *omega : estimators::omega_for_bound(delta_max);
}

int ExperimentSpec::m() const { return estimators::required_m(n_bits, epsilon); }

}  // namespace qcs::harness
