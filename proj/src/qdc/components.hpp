#pragma once

#include <cstdint>
#include <variant>

#include "qdc/core.hpp"

namespace qdc {

/// Memory-decay constant of the adaptive units. 0 <= value < 1.
struct Gamma {
  double value = 0.99;
};

/// Internal state of an adaptive polarizing beam splitter: the last message
/// seen at each input port plus an exponential-moving-average estimate of the
/// relative arrival rates. Ten floating-point numbers in total; x0 + x1 == 1.
struct AdaptivePbsState {
  JonesVector y0;
  JonesVector y1;
  double x0 = 0.5;
  double x1 = 0.5;
};

/// Randomized initial state: unit vectors drawn for both ports, x0 uniform on
/// [0, 1]. Draws exactly seven variates from `stream`.
AdaptivePbsState pbs_init(RandomStream& stream);

struct Emitted {
  Port port;
  JonesVector message;
};
struct Absorbed {};
struct Detected {
  int detector;
};
using UnitOutcome = std::variant<Emitted, Absorbed, Detected>;

/// Processes one messenger through an adaptive polarizing beam splitter.
///
/// The unit first learns from the arrival: the rate estimate for the arrival
/// port decays toward 1 (x_p <- gamma*x_p + 1-gamma, the other port toward 0)
/// and the arriving message overwrites the stored vector for that port. The
/// ten numbers are then assembled into the four-amplitude vector
/// (sqrt(x0)*y0, sqrt(x1)*y1), normalized, and passed through the lossless
/// beam-splitter unitary (horizontal transmits, vertical reflects with a
/// factor i). The output port is drawn with probability equal to the squared
/// amplitude routed there; the messenger leaves with that pair renormalized.
///
/// Output messages depend on the unit's memory and a random draw, so there is
/// no one-to-one map from input to output message.
Emitted pbs_process(AdaptivePbsState& state, const Gamma& gamma, Port in_port,
                    const JonesVector& msg, RandomStream& stream);

/// Half-wave plate at plate angle theta:
/// [[cos 2t, sin 2t], [sin 2t, -cos 2t]]. Stateless and deterministic.
JonesVector hwp_process(double theta, const JonesVector& msg);

/// Phase shifter: multiplies the whole message by e^{i*phi}.
JonesVector phase_process(double phi, const JonesVector& msg);

/// Polarizer aligned with (1,1)/sqrt(2): an adaptive beam splitter operated in
/// the 45-degree-rotated basis. Messengers leaving the transmit port pass
/// (message rotated back); the other port absorbs.
UnitOutcome polarizer_process(AdaptivePbsState& state, const Gamma& gamma,
                              const JonesVector& msg, RandomStream& stream);

/// Click tallies of the two ideal detectors.
struct DetectorCounts {
  std::uint64_t n0 = 0;
  std::uint64_t n1 = 0;
};

/// Ideal detector: increments the tally for `detector_id` by one. The message
/// itself is discarded.
void detector_process(DetectorCounts& counts, int detector_id, const JonesVector& msg);

/// Creates a messenger carrying (cos a, sin a); a = pi/4 gives the canonical
/// 45-degree source message (1,1)/sqrt(2).
Messenger source_emit(double alpha_prep);

}  // namespace qdc
