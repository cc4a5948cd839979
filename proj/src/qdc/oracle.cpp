#include "qdc/oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace qdc {

namespace {

constexpr double kSqrt2Over4 = 0.353553390593273762200422181052424520;

double clamp_intensity(double v) {
  // analytically nonnegative (each value is |amplitude|^2 / 2); clear dust
  return v < 0.0 ? 0.0 : v;
}

}  // namespace

Intensities wheeler_intensities(const OracleParams& p) {
  const double c = std::cos(p.alpha);
  const double fringe = c * c * std::cos(p.phi);
  return {(1.0 + fringe) / 2.0, (1.0 - fringe) / 2.0};
}

Intensities quantum_intensities(const OracleParams& p) {
  const double c = std::cos(p.alpha);
  const double fringe = c * c * std::cos(p.phi);
  const double s2a = std::sin(2.0 * p.alpha);
  const double half = p.phi / 2.0;
  const double i0 = 0.25 + 0.25 * fringe +
                    kSqrt2Over4 * s2a * std::cos(half) * std::cos(half + p.delta0);
  const double i1 = 0.25 - 0.25 * fringe -
                    kSqrt2Over4 * s2a * std::sin(half) * std::sin(half - p.delta1);
  return {clamp_intensity(i0), clamp_intensity(i1)};
}

double normalized_fraction_d1(double i0, double i1) {
  const double total = i0 + i1;
  if (!(total > 0.0)) {
    throw std::domain_error("normalized_fraction_d1: dark point (I0 + I1 = 0)");
  }
  return i1 / total;
}

}  // namespace qdc
