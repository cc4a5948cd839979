#include "qdc/components.hpp"

#include <cmath>
#include <stdexcept>

namespace qdc {

AdaptivePbsState pbs_init(RandomStream& stream) {
  (void)stream;
  // Neutral start: a port contributes no amplitude until it has seen its
  // first messenger. Non-empty registers on a port that is never hit would
  // leak a spurious amplitude that decays only as gamma^(k/2). Per-setting
  // randomness enters through the unit's routing stream instead.
  AdaptivePbsState state;
  state.y0 = JonesVector{};
  state.y1 = JonesVector{};
  state.x0 = 0.5;
  state.x1 = 0.5;
  return state;
}

Emitted pbs_process(AdaptivePbsState& state, const Gamma& gamma, Port in_port,
                    const JonesVector& msg, RandomStream& stream) {
  if (!nearly_unit(msg)) {
    throw std::invalid_argument("pbs_process: message must have unit norm");
  }
  const double g = gamma.value;

  // learn from the arrival; the complement form keeps x0 + x1 == 1 exactly
  if (in_port == Port::p0) {
    state.x0 = g * state.x0 + (1.0 - g);
    state.x1 = 1.0 - state.x0;
    state.y0 = msg;
  } else {
    state.x1 = g * state.x1 + (1.0 - g);
    state.x0 = 1.0 - state.x1;
    state.y1 = msg;
  }

  // four-amplitude vector weighted by the rate estimates
  const double r0 = std::sqrt(state.x0);
  const double r1 = std::sqrt(state.x1);
  Complex w0h = r0 * state.y0.h;
  Complex w0v = r0 * state.y0.v;
  Complex w1h = r1 * state.y1.h;
  Complex w1v = r1 * state.y1.v;
  const double n2 = std::norm(w0h) + std::norm(w0v) + std::norm(w1h) + std::norm(w1v);
  const double inv = 1.0 / std::sqrt(n2);
  w0h *= inv;
  w0v *= inv;
  w1h *= inv;
  w1v *= inv;

  // beam-splitter unitary: horizontal transmits, vertical reflects with i
  const Complex i_unit{0.0, 1.0};
  const Complex z0h = w0h;
  const Complex z0v = i_unit * w1v;
  const Complex z1h = w1h;
  const Complex z1v = i_unit * w0v;

  const double p0 = std::norm(z0h) + std::norm(z0v);
  if (stream.uniform() < p0) {
    return {Port::p0, jones_normalize(z0h, z0v)};
  }
  return {Port::p1, jones_normalize(z1h, z1v)};
}

JonesVector hwp_process(double theta, const JonesVector& msg) {
  const double c = std::cos(2.0 * theta);
  const double s = std::sin(2.0 * theta);
  return {c * msg.h + s * msg.v, s * msg.h - c * msg.v};
}

JonesVector phase_process(double phi, const JonesVector& msg) {
  const Complex f = std::polar(1.0, phi);
  return {f * msg.h, f * msg.v};
}

UnitOutcome polarizer_process(AdaptivePbsState& state, const Gamma& gamma,
                              const JonesVector& msg, RandomStream& stream) {
  if (!nearly_unit(msg)) {
    throw std::invalid_argument("polarizer_process: message must have unit norm");
  }
  // express the message on the ((H+V)/sqrt2, (H-V)/sqrt2) basis
  const JonesVector rotated{(msg.h + msg.v) * kInvSqrt2, (msg.h - msg.v) * kInvSqrt2};
  const Emitted out = pbs_process(state, gamma, Port::p0, rotated, stream);
  if (out.port == Port::p1) {
    return Absorbed{};
  }
  // rotate the transmitted message back to the laboratory basis
  const JonesVector back{(out.message.h + out.message.v) * kInvSqrt2,
                         (out.message.h - out.message.v) * kInvSqrt2};
  return Emitted{Port::p0, jones_normalize(back)};
}

void detector_process(DetectorCounts& counts, int detector_id, const JonesVector& msg) {
  (void)msg;  // ideal detector: every arriving messenger counts
  if (detector_id == 0) {
    ++counts.n0;
  } else if (detector_id == 1) {
    ++counts.n1;
  } else {
    throw std::invalid_argument("detector_process: unknown detector id");
  }
}

Messenger source_emit(double alpha_prep) {
  Messenger m;
  m.message = jones_normalize(Complex{std::cos(alpha_prep), 0.0},
                              Complex{std::sin(alpha_prep), 0.0});
  return m;
}

}  // namespace qdc
