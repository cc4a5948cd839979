#pragma once

#include <cstdint>
#include <vector>

#include "qdc/network.hpp"
#include "qdc/oracle.hpp"

namespace qdc {

inline constexpr std::uint64_t kDefaultSeed = 123456789ULL;

/// Wheeler: no polarizers, detectors see the raw merged beams.
/// QuantumChoice: a 45-degree polarizer sits on each detector arm.
enum class Mode { Wheeler, QuantumChoice };

std::string_view to_string(Mode mode);

/// Evenly spaced grid of `points` phase values over [0, 2*pi).
std::vector<double> default_phi_grid(int points = 50);

/// Full parameterization of a sweep.
struct ExperimentConfig {
  double alpha = 0.0;
  std::vector<double> phi_values = default_phi_grid();
  double delta0 = kPi / 8.0;
  double delta1 = -7.0 * kPi / 40.0;
  Gamma gamma{};
  std::uint64_t events_per_point = 10000;
  std::uint64_t seed = kDefaultSeed;
  Mode mode = Mode::Wheeler;
  int jobs = 0;  // worker threads for run_sweep; 0 = all hardware threads
};

/// Builds the interferometer network for one (mode, alpha, phi) setting.
///
/// Layout: the 45-degree source beam splits at pbs1 into two arms (arm 1
/// carries the phase shifter phi). A half-wave plate pair rotates each arm's
/// polarization to (cos a, sin a); pbs2 (two independent units, one per arm)
/// then routes the horizontal component into the closed interferometer pair
/// and the vertical component into the open pair. The closed pair merges at
/// pbs3_1, is mixed by the pi/8 plate, splits again at pbs3_2 and continues
/// through pbs4 (two independent units) and the shifters delta0/delta1. The
/// pbs5 units merge each closed-pair output with the matching open rail onto
/// a detector arm; QuantumChoice mode inserts one polarizer per arm.
/// Second output ports of the merging units only ever carry start-up
/// transients; they are wired to the same detector arm so every messenger
/// terminates at a detector or a polarizer.
NetworkTopology build_topology(Mode mode, double alpha, double phi,
                               double delta0, double delta1);

struct SweepRow {
  double phi = 0.0;
  double alpha = 0.0;
  Mode mode = Mode::Wheeler;
  std::uint64_t n0 = 0;
  std::uint64_t n1 = 0;
  std::uint64_t absorbed = 0;
  double f1_sim = 0.0;
  double f1_theory = 0.0;
};

struct SweepMeta {
  std::uint64_t seed = kDefaultSeed;
  double gamma = 0.99;
  std::uint64_t events = 10000;
  double delta0 = kPi / 8.0;
  double delta1 = -7.0 * kPi / 40.0;
};

struct SweepResult {
  SweepMeta meta;
  std::vector<SweepRow> rows;
};

class AllAbsorbedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Closed-form D1 fraction for a mode: Wheeler uses the normalized mixed-state
/// intensities, QuantumChoice the normalized polarizer intensities.
double theory_fraction_d1(Mode mode, const OracleParams& p);

/// Per-point seed: mixes the base seed with the canonical index of phi (its
/// position in the sorted grid), the preparation angle quantized to
/// nanoradians, and a mode tag. Reordering phi_values therefore cannot change
/// any row's content.
std::uint64_t point_seed(std::uint64_t base, std::size_t canonical_index,
                         double alpha, Mode mode);

/// One sweep point: fresh topology, freshly randomized unit states, then
/// events_per_point messengers. Throws AllAbsorbedError when no messenger
/// reaches a detector.
SweepRow run_point(const ExperimentConfig& config, double phi);

/// One row per configured phi, in configuration order. Points are independent
/// and run on a small worker pool (config.jobs).
SweepResult run_sweep(const ExperimentConfig& config);

struct DeviationStats {
  double max_abs = 0.0;
  double rms = 0.0;
};

/// Max and root-mean-square of |f1_sim - f1_theory| over all rows.
DeviationStats compare_to_theory(const SweepResult& result);
/// Same, restricted to rows of one mode.
DeviationStats compare_to_theory(const SweepResult& result, Mode mode);

}  // namespace qdc
