// Acceptance suite: one line per criterion, nonzero exit when any fails.
// Covers the full phase sweeps in both modes, the mode-coincidence and
// open/closed limits, the per-component stationary frequencies, the core
// invariants and the seed-to-seed statistical spread.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <map>
#include <string>
#include <vector>

#include "qdc/experiment.hpp"

using namespace qdc;

namespace {

constexpr double kD0 = kPi / 8.0;
constexpr double kD1 = -7.0 * kPi / 40.0;
// sweeps run at the library's default seed; auxiliary statistics derive
// their own streams from it
constexpr std::uint64_t kBaseSeed = kDefaultSeed;

int g_failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
  std::printf("[%d] %-38s %s  %s\n", id, name.c_str(), pass ? "PASS" : "FAIL",
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

ExperimentConfig sweep_config(Mode mode, double alpha) {
  ExperimentConfig config;
  config.mode = mode;
  config.alpha = alpha;
  config.phi_values = default_phi_grid(50);
  config.events_per_point = 10000;
  config.seed = kBaseSeed;
  return config;
}

struct CurveBank {
  std::map<std::pair<int, int>, SweepResult> curves;  // (l, mode) -> sweep

  const SweepResult& get(int l, Mode mode) {
    const std::pair<int, int> key{l, mode == Mode::Wheeler ? 0 : 1};
    auto it = curves.find(key);
    if (it == curves.end()) {
      const ExperimentConfig config = sweep_config(mode, l * kPi / 8.0);
      it = curves.emplace(key, run_sweep(config)).first;
    }
    return it->second;
  }
};

CurveBank g_bank;

// criteria 1 and 2: 50-point sweeps at alpha = l*pi/8, max dev <= 0.03 and
// rms <= 0.015 against the closed-form fractions
void criterion_sweep(int id, Mode mode, const char* name) {
  double worst_max = 0.0;
  double worst_rms = 0.0;
  int worst_l = 0;
  bool pass = true;
  for (int l = 0; l < 8; ++l) {
    const DeviationStats stats = compare_to_theory(g_bank.get(l, mode));
    if (stats.max_abs > worst_max) {
      worst_max = stats.max_abs;
      worst_l = l;
    }
    worst_rms = std::max(worst_rms, stats.rms);
    pass = pass && stats.max_abs <= 0.03 && stats.rms <= 0.015;
  }
  char detail[160];
  std::snprintf(detail, sizeof detail,
                "worst max|dev|=%.4f (alpha=%d*pi/8, limit 0.03), worst rms=%.4f (limit 0.015)",
                worst_max, worst_l, worst_rms);
  report(id, name, pass, detail);
  if (!pass && mode == Mode::QuantumChoice) {
    std::printf("    note: at the dark-fringe points of this mode only ~1350 of the 10000\n"
                "    events reach a detector, so a single point carries a statistical spread\n"
                "    of ~0.010-0.018; the 0.03 bound sits within two spreads of zero there\n"
                "    and flips with the seed. See README (Validation) for the analysis.\n");
  }
}

void criterion_mode_coincidence() {
  double worst_theory = 0.0;
  double worst_sim = 0.0;
  for (const int l : {0, 4}) {  // alpha = 0 and pi/2
    const SweepResult& wheeler = g_bank.get(l, Mode::Wheeler);
    const SweepResult& quantum = g_bank.get(l, Mode::QuantumChoice);
    for (std::size_t i = 0; i < wheeler.rows.size(); ++i) {
      worst_theory = std::max(worst_theory,
                              std::abs(wheeler.rows[i].f1_theory - quantum.rows[i].f1_theory));
      worst_sim = std::max(worst_sim,
                           std::abs(wheeler.rows[i].f1_sim - quantum.rows[i].f1_sim));
    }
  }
  const bool pass = worst_theory <= 1e-12 && worst_sim <= 0.04;
  char detail[160];
  std::snprintf(detail, sizeof detail,
                "theory gap=%.2e (limit 1e-12), simulated gap=%.4f (limit 0.04)",
                worst_theory, worst_sim);
  report(3, "mode coincidence at alpha=0, pi/2", pass, detail);
}

// least-squares fit of f1 = a + b*cos(phi); returns |b|/a as the visibility
double fitted_visibility(const SweepResult& result) {
  double s1 = 0.0;
  double sc = 0.0;
  double scc = 0.0;
  double sf = 0.0;
  double scf = 0.0;
  for (const SweepRow& row : result.rows) {
    const double c = std::cos(row.phi);
    s1 += 1.0;
    sc += c;
    scc += c * c;
    sf += row.f1_sim;
    scf += c * row.f1_sim;
  }
  const double det = s1 * scc - sc * sc;
  const double a = (scc * sf - sc * scf) / det;
  const double b = (s1 * scf - sc * sf) / det;
  return std::abs(b) / a;
}

void criterion_limits() {
  double flat_worst = 0.0;
  for (const Mode mode : {Mode::Wheeler, Mode::QuantumChoice}) {
    for (const SweepRow& row : g_bank.get(4, mode).rows) {
      flat_worst = std::max(flat_worst, std::abs(row.f1_sim - 0.5));
    }
  }
  const double vis_wheeler = fitted_visibility(g_bank.get(0, Mode::Wheeler));
  const double vis_quantum = fitted_visibility(g_bank.get(0, Mode::QuantumChoice));
  const double vis = std::min(vis_wheeler, vis_quantum);
  const bool pass = flat_worst <= 0.03 && vis >= 0.95;
  char detail[160];
  std::snprintf(detail, sizeof detail,
                "alpha=pi/2 flatness=%.4f (limit 0.03), alpha=0 visibility=%.4f (need >= 0.95)",
                flat_worst, vis);
  report(4, "open and closed interferometer limits", pass, detail);
}

void criterion_component_frequencies() {
  const int transient = 1000;
  const int n = 10000;
  const double tol = 4.0 / std::sqrt(static_cast<double>(n));
  double worst = 0.0;
  bool pass = true;

  const std::vector<JonesVector> messages = {
      {Complex{1.0, 0.0}, Complex{0.0, 0.0}},
      {Complex{0.0, 0.0}, Complex{1.0, 0.0}},
      {Complex{kInvSqrt2, 0.0}, Complex{kInvSqrt2, 0.0}},
      {Complex{kInvSqrt2, 0.0}, Complex{-kInvSqrt2, 0.0}},
      {Complex{kInvSqrt2, 0.0}, Complex{0.0, kInvSqrt2}},
      {Complex{0.6, 0.0}, Complex{0.0, 0.8}},
      {Complex{std::cos(0.4), 0.0},
       Complex{std::sin(0.4) * std::cos(1.1), std::sin(0.4) * std::sin(1.1)}},
  };

  int case_index = 0;
  for (const JonesVector& msg : messages) {
    for (const Port port : {Port::p0, Port::p1}) {
      // brute-force per-message value: |h|^2 of the stationary transformed
      // state, which is |msg.h|^2 for port 0 feeds and |msg.v|^2 for port 1
      const double expected = port == Port::p0 ? std::norm(msg.h) : std::norm(msg.v);
      RandomStream rng(mix64(kBaseSeed, 900 + case_index++));
      AdaptivePbsState state = pbs_init(rng);
      for (int i = 0; i < transient; ++i) pbs_process(state, Gamma{}, port, msg, rng);
      int hits = 0;
      for (int i = 0; i < n; ++i) {
        if (pbs_process(state, Gamma{}, port, msg, rng).port == Port::p0) ++hits;
      }
      const double dev = std::abs(static_cast<double>(hits) / n - expected);
      worst = std::max(worst, dev);
      pass = pass && dev <= tol;
    }

    // polarizer pass fraction against the projection value
    const double expected_pass = std::norm((msg.h + msg.v) * kInvSqrt2);
    RandomStream rng(mix64(kBaseSeed, 950 + case_index));
    AdaptivePbsState state = pbs_init(rng);
    for (int i = 0; i < transient; ++i) polarizer_process(state, Gamma{}, msg, rng);
    int passed = 0;
    for (int i = 0; i < n; ++i) {
      if (std::holds_alternative<Emitted>(polarizer_process(state, Gamma{}, msg, rng))) {
        ++passed;
      }
    }
    const double dev = std::abs(static_cast<double>(passed) / n - expected_pass);
    worst = std::max(worst, dev);
    pass = pass && dev <= tol;
  }

  char detail[160];
  std::snprintf(detail, sizeof detail, "worst |freq - prob| = %.4f (limit %.4f)", worst, tol);
  report(5, "stationary component frequencies", pass, detail);
}

void criterion_invariants() {
  bool pass = true;
  std::string failed;

  // norm preservation across the component set
  {
    RandomStream rng(mix64(kBaseSeed, 1));
    AdaptivePbsState state = pbs_init(rng);
    for (int i = 0; i < 2000; ++i) {
      const Port port = rng.uniform() < 0.5 ? Port::p0 : Port::p1;
      JonesVector msg = random_unit_jones(rng);
      msg = hwp_process(rng.uniform() * kPi, msg);
      msg = phase_process(rng.uniform() * 2.0 * kPi, msg);
      if (std::abs(msg.norm2() - 1.0) > 1e-12) pass = false;
      const Emitted out = pbs_process(state, Gamma{}, port, msg, rng);
      if (std::abs(out.message.norm2() - 1.0) > 1e-12) pass = false;
      if (state.x0 + state.x1 != 1.0) pass = false;
    }
    if (!pass) failed += "norm/rate ";
  }

  // event conservation on the full topology
  {
    const NetworkTopology topo = build_topology(Mode::QuantumChoice, kPi / 4.0, 0.8, kD0, kD1);
    NetworkState state(topo, mix64(kBaseSeed, 2));
    const RunTally tally = run_many(topo, state, 5000);
    if (tally.counts.n0 + tally.counts.n1 + tally.absorbed != 5000) {
      pass = false;
      failed += "conservation ";
    }
  }

  // geometric convergence bound
  {
    RandomStream rng(mix64(kBaseSeed, 3));
    AdaptivePbsState state = pbs_init(rng);
    const Gamma gamma{0.99};
    const JonesVector h{Complex{1.0, 0.0}, Complex{0.0, 0.0}};
    for (int k = 1; k <= 1000; ++k) {
      pbs_process(state, gamma, Port::p0, h, rng);
      if (std::abs(state.x0 - 1.0) > std::pow(gamma.value, k) + 1e-12) {
        pass = false;
        failed += "convergence ";
        break;
      }
    }
  }

  // bit-exact reproducibility of a sweep
  {
    ExperimentConfig config = sweep_config(Mode::QuantumChoice, kPi / 8.0);
    config.phi_values = default_phi_grid(10);
    config.events_per_point = 2000;
    config.jobs = 4;
    const SweepResult a = run_sweep(config);
    const SweepResult b = run_sweep(config);
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
      if (std::memcmp(&a.rows[i], &b.rows[i], sizeof(SweepRow)) != 0) {
        pass = false;
        failed += "reproducibility ";
        break;
      }
    }
  }

  report(6, "invariant suite", pass, pass ? "norm, rates, conservation, convergence, reproducibility" : ("failed: " + failed));
}

void criterion_seed_spread() {
  struct Spot {
    Mode mode;
    double alpha;
    int phi_index;
  };
  const std::vector<Spot> spots = {
      {Mode::Wheeler, kPi / 8.0, 7},
      {Mode::QuantumChoice, kPi / 4.0, 5},
      {Mode::Wheeler, 3.0 * kPi / 8.0, 33},
  };
  const int seeds = 20;
  const std::uint64_t n = 10000;
  bool pass = true;
  double worst_ratio = 1.0;

  for (const Spot& spot : spots) {
    ExperimentConfig config = sweep_config(spot.mode, spot.alpha);
    config.events_per_point = n;
    const double phi = config.phi_values[spot.phi_index];

    std::vector<double> values;
    for (int s = 0; s < seeds; ++s) {
      config.seed = mix64(kBaseSeed, 3000 + s);
      values.push_back(run_point(config, phi).f1_sim);
    }
    double mean = 0.0;
    for (const double v : values) mean += v;
    mean /= values.size();
    double var = 0.0;
    for (const double v : values) var += (v - mean) * (v - mean);
    var /= (values.size() - 1);
    const double sd = std::sqrt(var);

    const double f = theory_fraction_d1(spot.mode,
                                        {spot.alpha, phi, config.delta0, config.delta1});
    const double binomial = std::sqrt(f * (1.0 - f) / static_cast<double>(n));
    const double ratio = sd / binomial;
    worst_ratio = std::max({worst_ratio, ratio, 1.0 / ratio});
    pass = pass && ratio >= 0.5 && ratio <= 2.0;
  }

  char detail[160];
  std::snprintf(detail, sizeof detail,
                "worst sd/binomial ratio = %.2f over 20 seeds (must lie in [0.5, 2])",
                worst_ratio);
  report(7, "seed-to-seed statistical spread", pass, detail);
}

}  // namespace

int main() {
  std::printf("acceptance: 50-phase sweeps, N=10000 events per point, gamma=0.99, "
              "delta0=pi/8, delta1=-7pi/40\n");
  criterion_sweep(1, Mode::Wheeler, "phase sweeps, wheeler mode");
  criterion_sweep(2, Mode::QuantumChoice, "phase sweeps, quantum mode");
  criterion_mode_coincidence();
  criterion_limits();
  criterion_component_frequencies();
  criterion_invariants();
  criterion_seed_spread();
  std::printf("acceptance: %d of 7 criteria passed\n", 7 - g_failures);
  return g_failures == 0 ? 0 : 1;
}
