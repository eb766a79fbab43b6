#pragma once

#include <string>
#include <string_view>

#include "qclocksync/rng.hpp"

namespace qcs::clocks {

/// True time plus each party's clock offset, all in seconds.
/// Clocks run at the same rate, so delta() is fixed for an experiment.
struct WorldState {
  double true_time = 0.0;
  double offset_a = 0.0;
  double offset_b = 0.0;

  /// Bob's reading minus Alice's reading.
  double delta() const { return offset_b - offset_a; }

  friend bool operator==(const WorldState&, const WorldState&) = default;
};

inline double now_alice(const WorldState& w) { return w.true_time + w.offset_a; }
inline double now_bob(const WorldState& w) { return w.true_time + w.offset_b; }

/// Moves true time forward by dt >= 0 seconds. Throws std::invalid_argument otherwise.
WorldState advance(WorldState w, double dt);

enum class DelayKind { fixed, uniform, exponential };

/// Transit-time distribution, parameters in seconds.
///   fixed:       always `a`
///   uniform:     U[a, b]
///   exponential: mean `a`
struct DelayModel {
  DelayKind kind = DelayKind::fixed;
  double a = 0.0;
  double b = 0.0;

  static DelayModel fixed(double d);
  static DelayModel uniform(double lo, double hi);
  static DelayModel exponential(double mean);

  /// Parses "fixed:d", "uniform:a,b" or "exp:m". Throws std::invalid_argument.
  static DelayModel parse(std::string_view text);
  /// Inverse of parse().
  std::string to_string() const;

  /// Throws std::invalid_argument for negative, non-finite or inverted parameters.
  void validate() const;

  friend bool operator==(const DelayModel&, const DelayModel&) = default;
};

/// One nonnegative draw. Exponential uses -mean * log1p(-u).
double sample_delay(const DelayModel& model, Rng& rng);

}  // namespace qcs::clocks
