#include "qclocksync/tqh.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qcs::tqh {

using qsim::StateVector;
using qsim::Unitary2;

double TqhTrace::residual(double delta) const {
  return std::max(std::abs(t2b - (t1a + delta + t12)), std::abs(t5a - (t4b - delta + t45)));
}

Unitary2 correction(double omega, double sent_local, double received_local) {
  return qsim::gates::pauli_x() * qsim::gates::rot_z(-omega * (received_local - sent_local));
}

TqhOutcome tqh_run(StateVector state, int qubit, double omega, Channel& channel, Rng& rng) {
  if (qubit < 0 || qubit >= state.num_qubits()) {
    throw std::invalid_argument("tqh_run: qubit " + std::to_string(qubit) + " out of range");
  }
  if (!std::isfinite(omega)) throw std::invalid_argument("tqh_run: omega must be finite");

  clocks::WorldState& world = channel.world;
  TqhTrace trace;

  // 1: Alice sends (t1a, psi, omega).
  const TqhMessage outbound{clocks::now_alice(world), omega, qubit};
  trace.t1a = outbound.sent_at_local;

  // 2: the qubit ticks for t12 in flight.
  trace.t12 = clocks::sample_delay(channel.transit, rng);
  world = clocks::advance(world, trace.t12);
  state = qsim::apply_single(std::move(state), qubit, qsim::gates::rot_z(omega * trace.t12));
  ++channel.qubit_messages;
  trace.t2b = clocks::now_bob(world);

  // 3: Bob corrects with his local receive time.
  state = qsim::apply_single(std::move(state), qubit,
                             correction(outbound.omega, outbound.sent_at_local, trace.t2b));

  // 4: Bob holds the qubit frozen, then sends (t4b, psi', omega).
  trace.hold = clocks::sample_delay(channel.holding.value_or(channel.transit), rng);
  world = clocks::advance(world, trace.hold);
  if (channel.evolve_while_held) {
    state = qsim::apply_single(std::move(state), qubit, qsim::gates::rot_z(omega * trace.hold));
  }
  const TqhMessage reply{clocks::now_bob(world), omega, qubit};
  trace.t4b = reply.sent_at_local;

  // 5: ticks for t45 on the way back.
  trace.t45 = clocks::sample_delay(channel.transit, rng);
  world = clocks::advance(world, trace.t45);
  state = qsim::apply_single(std::move(state), qubit, qsim::gates::rot_z(omega * trace.t45));
  ++channel.qubit_messages;
  trace.t5a = clocks::now_alice(world);

  // 6: Alice corrects with her local receive time.
  state = qsim::apply_single(std::move(state), qubit,
                             correction(reply.omega, reply.sent_at_local, trace.t5a));

  return {std::move(state), trace};
}

}  // namespace qcs::tqh
