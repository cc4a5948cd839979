#include "qdc/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace qdc {

std::string_view to_string(Mode mode) {
  return mode == Mode::Wheeler ? "wheeler" : "quantum";
}

std::vector<double> default_phi_grid(int points) {
  std::vector<double> grid;
  grid.reserve(points);
  for (int j = 0; j < points; ++j) {
    grid.push_back(2.0 * kPi * static_cast<double>(j) / static_cast<double>(points));
  }
  return grid;
}

NetworkTopology build_topology(Mode mode, double alpha, double phi,
                               double delta0, double delta1) {
  NetworkTopology t;
  const double comp = kPi / 4.0;

  const int src = t.add_unit("src", UnitKind::Source, kPi / 4.0);
  const int pbs1 = t.add_unit("pbs1", UnitKind::Pbs);
  const int ps_phi = t.add_unit("phi", UnitKind::Phase, phi);
  const int comp_arm1 = t.add_unit("comp_arm1", UnitKind::Hwp, comp);
  const int prep_arm0 = t.add_unit("prep_arm0", UnitKind::Hwp, alpha / 2.0);
  const int prep_arm1 = t.add_unit("prep_arm1", UnitKind::Hwp, alpha / 2.0);
  const int pbs2a = t.add_unit("pbs2a", UnitKind::Pbs);
  const int pbs2b = t.add_unit("pbs2b", UnitKind::Pbs);
  const int comp_closed1 = t.add_unit("comp_closed1", UnitKind::Hwp, comp);
  const int pbs3_1 = t.add_unit("pbs3_1", UnitKind::Pbs);
  const int hwp_mix = t.add_unit("hwp_mix", UnitKind::Hwp, kPi / 8.0);
  const int comp_mix = t.add_unit("comp_mix", UnitKind::Hwp, comp);
  const int pbs3_2 = t.add_unit("pbs3_2", UnitKind::Pbs);
  const int comp_wave1 = t.add_unit("comp_wave1", UnitKind::Hwp, comp);
  const int pbs4a = t.add_unit("pbs4a", UnitKind::Pbs);
  const int pbs4b = t.add_unit("pbs4b", UnitKind::Pbs);
  const int ps_d0 = t.add_unit("delta0", UnitKind::Phase, delta0);
  const int ps_d1 = t.add_unit("delta1", UnitKind::Phase, delta1);
  const int hwp_open0 = t.add_unit("hwp_open0", UnitKind::Hwp, 0.0);
  const int hwp_open1 = t.add_unit("hwp_open1", UnitKind::Hwp, 0.0);
  const int pbs5_1 = t.add_unit("pbs5_1", UnitKind::Pbs);
  const int pbs5_2 = t.add_unit("pbs5_2", UnitKind::Pbs);
  const int d0 = t.add_unit("d0", UnitKind::Detector, 0.0);
  const int d1 = t.add_unit("d1", UnitKind::Detector, 1.0);

  t.source = src;
  t.detectors = {d0, d1};

  t.connect(src, Port::p0, pbs1, Port::p0);
  // pbs1: horizontal light continues on arm 0, vertical reflects onto arm 1
  // where it picks up the phase phi and is compensated back to horizontal
  t.connect(pbs1, Port::p0, prep_arm0, Port::p0);
  t.connect(pbs1, Port::p1, ps_phi, Port::p0);
  t.connect(ps_phi, Port::p0, comp_arm1, Port::p0);
  t.connect(comp_arm1, Port::p0, prep_arm1, Port::p0);
  // preparation plates rotate each arm to (cos a, sin a)
  t.connect(prep_arm0, Port::p0, pbs2a, Port::p0);
  t.connect(prep_arm1, Port::p0, pbs2b, Port::p0);
  // pbs2 pair: horizontal -> closed pair, vertical -> open pair
  t.connect(pbs2a, Port::p0, pbs3_1, Port::p0);
  t.connect(pbs2a, Port::p1, hwp_open0, Port::p0);
  t.connect(pbs2b, Port::p0, comp_closed1, Port::p0);
  t.connect(pbs2b, Port::p1, hwp_open1, Port::p0);
  t.connect(comp_closed1, Port::p0, pbs3_1, Port::p1);
  // closed pair: merge at pbs3_1, mix, split at pbs3_2
  t.connect(pbs3_1, Port::p0, hwp_mix, Port::p0);
  t.connect(pbs3_1, Port::p1, d0, Port::p0);      // start-up leakage
  t.connect(hwp_mix, Port::p0, comp_mix, Port::p0);
  t.connect(comp_mix, Port::p0, pbs3_2, Port::p0);
  t.connect(pbs3_2, Port::p0, pbs4a, Port::p0);   // cos(phi/2) output, horizontal
  t.connect(pbs3_2, Port::p1, comp_wave1, Port::p0);  // sin(phi/2) output, vertical
  t.connect(comp_wave1, Port::p0, pbs4b, Port::p0);
  t.connect(pbs4a, Port::p0, ps_d0, Port::p0);
  t.connect(pbs4a, Port::p1, d0, Port::p0);       // start-up leakage
  t.connect(pbs4b, Port::p0, ps_d1, Port::p0);
  t.connect(pbs4b, Port::p1, d1, Port::p0);       // start-up leakage
  t.connect(ps_d0, Port::p0, pbs5_2, Port::p0);
  t.connect(ps_d1, Port::p0, pbs5_1, Port::p0);
  t.connect(hwp_open0, Port::p0, pbs5_2, Port::p1);
  t.connect(hwp_open1, Port::p0, pbs5_1, Port::p1);

  if (mode == Mode::QuantumChoice) {
    const int pol_d0 = t.add_unit("pol_d0", UnitKind::Polarizer);
    const int pol_d1 = t.add_unit("pol_d1", UnitKind::Polarizer);
    t.connect(pbs5_2, Port::p0, pol_d0, Port::p0);
    t.connect(pol_d0, Port::p0, d0, Port::p0);
    t.connect(pbs5_1, Port::p0, pol_d1, Port::p0);
    t.connect(pol_d1, Port::p0, d1, Port::p0);
  } else {
    t.connect(pbs5_2, Port::p0, d0, Port::p0);
    t.connect(pbs5_1, Port::p0, d1, Port::p0);
  }
  // dark merge ports carry start-up transients only; count them at the
  // detector they sit in front of
  t.connect(pbs5_2, Port::p1, d0, Port::p0);
  t.connect(pbs5_1, Port::p1, d1, Port::p0);

  return t;
}

double theory_fraction_d1(Mode mode, const OracleParams& p) {
  const Intensities i =
      mode == Mode::Wheeler ? wheeler_intensities(p) : quantum_intensities(p);
  return normalized_fraction_d1(i.i0, i.i1);
}

std::uint64_t point_seed(std::uint64_t base, std::size_t canonical_index,
                         double alpha, Mode mode) {
  const auto quantized_alpha =
      static_cast<std::uint64_t>(static_cast<std::int64_t>(std::llround(alpha * 1e9)));
  const std::uint64_t mode_tag = mode == Mode::Wheeler ? 0x7768ULL : 0x7175ULL;
  return mix64(mix64(mix64(base, canonical_index), quantized_alpha), mode_tag);
}

namespace {

std::size_t canonical_phi_index(const std::vector<double>& values, double phi) {
  std::vector<double> sorted(values);
  std::sort(sorted.begin(), sorted.end());
  const auto it = std::find(sorted.begin(), sorted.end(), phi);
  if (it == sorted.end()) {
    throw std::invalid_argument("run_point: phi is not in the configured grid");
  }
  return static_cast<std::size_t>(it - sorted.begin());
}

void validate_config(const ExperimentConfig& config) {
  if (config.events_per_point < 1) {
    throw std::invalid_argument("config: events_per_point must be >= 1");
  }
  if (config.phi_values.empty()) {
    throw std::invalid_argument("config: phi_values must be non-empty");
  }
  if (!(config.gamma.value >= 0.0) || !(config.gamma.value < 1.0)) {
    throw std::invalid_argument("config: gamma must lie in [0, 1)");
  }
  if (!std::isfinite(config.alpha) || !std::isfinite(config.delta0) ||
      !std::isfinite(config.delta1)) {
    throw std::invalid_argument("config: angles must be finite");
  }
}

}  // namespace

SweepRow run_point(const ExperimentConfig& config, double phi) {
  validate_config(config);
  const std::size_t idx = canonical_phi_index(config.phi_values, phi);
  const std::uint64_t seed = point_seed(config.seed, idx, config.alpha, config.mode);

  const NetworkTopology topo =
      build_topology(config.mode, config.alpha, phi, config.delta0, config.delta1);
  NetworkState state(topo, seed, config.gamma);
  const RunTally tally = run_many(topo, state, config.events_per_point);

  const std::uint64_t registered = tally.counts.n0 + tally.counts.n1;
  if (registered == 0) {
    throw AllAbsorbedError("run_point: all events were absorbed");
  }

  SweepRow row;
  row.phi = phi;
  row.alpha = config.alpha;
  row.mode = config.mode;
  row.n0 = tally.counts.n0;
  row.n1 = tally.counts.n1;
  row.absorbed = tally.absorbed;
  row.f1_sim = static_cast<double>(tally.counts.n1) / static_cast<double>(registered);
  row.f1_theory = theory_fraction_d1(
      config.mode, {config.alpha, phi, config.delta0, config.delta1});
  return row;
}

SweepResult run_sweep(const ExperimentConfig& config) {
  validate_config(config);
  const std::size_t n = config.phi_values.size();

  SweepResult result;
  result.meta = {config.seed, config.gamma.value, config.events_per_point,
                 config.delta0, config.delta1};
  result.rows.resize(n);

  unsigned jobs = config.jobs > 0 ? static_cast<unsigned>(config.jobs)
                                  : std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, n));

  if (jobs <= 1) {
    for (std::size_t i = 0; i < n; ++i) {
      result.rows[i] = run_point(config, config.phi_values[i]);
    }
    return result;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        result.rows[i] = run_point(config, config.phi_values[i]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(jobs);
  for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
  for (auto& thread : pool) thread.join();
  if (error) std::rethrow_exception(error);
  return result;
}

DeviationStats compare_to_theory(const SweepResult& result) {
  DeviationStats stats;
  if (result.rows.empty()) return stats;
  double sum_sq = 0.0;
  for (const SweepRow& row : result.rows) {
    const double dev = std::abs(row.f1_sim - row.f1_theory);
    stats.max_abs = std::max(stats.max_abs, dev);
    sum_sq += dev * dev;
  }
  stats.rms = std::sqrt(sum_sq / static_cast<double>(result.rows.size()));
  return stats;
}

DeviationStats compare_to_theory(const SweepResult& result, Mode mode) {
  SweepResult filtered;
  for (const SweepRow& row : result.rows) {
    if (row.mode == mode) filtered.rows.push_back(row);
  }
  return compare_to_theory(filtered);
}

}  // namespace qdc
