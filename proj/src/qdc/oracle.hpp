#pragma once

#include "qdc/core.hpp"

namespace qdc {

/// Angles parameterizing the closed-form detector intensities.
struct OracleParams {
  double alpha = 0.0;
  double phi = 0.0;
  double delta0 = kPi / 8.0;
  double delta1 = -7.0 * kPi / 40.0;
};

struct Intensities {
  double i0 = 0.0;
  double i1 = 0.0;
};

/// Normalized D0/D1 intensities of the mixed (no-polarizer) configuration:
///   I0 = (1 + cos^2(a) cos(phi)) / 2,  I1 = (1 - cos^2(a) cos(phi)) / 2.
/// I0 + I1 == 1 for all inputs.
Intensities wheeler_intensities(const OracleParams& p);

/// Non-normalized D0/D1 intensities with the 45-degree polarizers in place:
///   I0 = 1/4 + cos^2(a) cos(phi)/4 + (sqrt2/4) sin(2a) cos(phi/2) cos(phi/2 + d0)
///   I1 = 1/4 - cos^2(a) cos(phi)/4 - (sqrt2/4) sin(2a) sin(phi/2) sin(phi/2 - d1)
/// Both are nonnegative; rounding dust below zero is clamped to 0.
Intensities quantum_intensities(const OracleParams& p);

/// I1 / (I0 + I1). Throws std::domain_error when I0 + I1 == 0 ("dark point").
double normalized_fraction_d1(double i0, double i1);

}  // namespace qdc
