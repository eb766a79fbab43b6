#pragma once

// Ticking qubit handshake.
//
// Alice sends a qubit that precesses as e^{i omega t Z} while in flight. Bob
// undoes the precession he can account for with his own clock, flips it with
// X and sends it back; Alice does the same. Whatever the transit times, the
// designated qubit ends up transformed by e^{-2 i omega Z delta}, where delta
// is Bob's clock minus Alice's.

#include <cstdint>
#include <optional>

#include "qclocksync/clocks.hpp"
#include "qclocksync/qsim.hpp"
#include "qclocksync/rng.hpp"

namespace qcs::tqh {

/// What travels with the qubit: the sender's local send time and the tick rate.
struct TqhMessage {
  double sent_at_local = 0.0;
  double omega = 0.0;
  int qubit = 0;
};

/// Local clock readings at each step plus the true transit durations.
/// t2b = t1a + delta + t12 and t5a = t4b - delta + t45.
struct TqhTrace {
  double t1a = 0.0;
  double t2b = 0.0;
  double t4b = 0.0;
  double t5a = 0.0;
  double t12 = 0.0;
  double t45 = 0.0;
  /// Bob's holding time t4b - t2b.
  double hold = 0.0;

  /// Largest violation of the two timestamp identities for offset `delta`.
  double residual(double delta) const;

  friend bool operator==(const TqhTrace&, const TqhTrace&) = default;
};

/// Simulated link between Alice and Bob. Owned by one experiment.
struct Channel {
  clocks::WorldState world;
  clocks::DelayModel transit;
  /// Bob's holding-time distribution; the transit model when unset.
  std::optional<clocks::DelayModel> holding;
  /// Lets the qubit precess while Bob holds it. This breaks delay
  /// invariance and exists only to demonstrate that.
  bool evolve_while_held = false;

  /// Qubit transmissions so far (two per handshake).
  std::uint64_t qubit_messages = 0;
};

/// X e^{-i omega (received - sent) Z}.
qsim::Unitary2 correction(double omega, double sent_local, double received_local);

struct TqhOutcome {
  qsim::StateVector state;
  TqhTrace trace;
};

/// Runs the six-step round trip on `qubit` of `state`. The other qubits are
/// untouched; the designated one may be entangled with them.
TqhOutcome tqh_run(qsim::StateVector state, int qubit, double omega, Channel& channel,
                   Rng& rng);

}  // namespace qcs::tqh
