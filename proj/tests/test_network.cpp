#include <doctest.h>

#include <cmath>
#include <string>

#include "qdc/experiment.hpp"
#include "qdc/network.hpp"

using namespace qdc;

namespace {

NetworkTopology direct_hit_topology() {
  NetworkTopology t;
  const int src = t.add_unit("src", UnitKind::Source, kPi / 4.0);
  const int d0 = t.add_unit("d0", UnitKind::Detector, 0.0);
  t.source = src;
  t.detectors = {d0};
  t.connect(src, Port::p0, d0, Port::p0);
  return t;
}

NetworkTopology polarizer_block_topology() {
  // source polarized along (1,-1)/sqrt2, orthogonal to the polarizer axis
  NetworkTopology t;
  const int src = t.add_unit("src", UnitKind::Source, -kPi / 4.0);
  const int pol = t.add_unit("pol", UnitKind::Polarizer);
  const int d0 = t.add_unit("d0", UnitKind::Detector, 0.0);
  t.source = src;
  t.detectors = {d0};
  t.connect(src, Port::p0, pol, Port::p0);
  t.connect(pol, Port::p0, d0, Port::p0);
  return t;
}

}  // namespace

TEST_CASE("single hop topology detects every messenger") {
  const NetworkTopology topo = direct_hit_topology();
  CHECK(validate_topology(topo).empty());
  NetworkState state(topo, 1);
  const RunTally tally = run_many(topo, state, 1000);
  CHECK(tally.counts.n0 == 1000);
  CHECK(tally.counts.n1 == 0);
  CHECK(tally.absorbed == 0);
  CHECK(tally.emitted == 1000);
}

TEST_CASE("orthogonal polarizer absorbs in the stationary regime") {
  const NetworkTopology topo = polarizer_block_topology();
  CHECK(validate_topology(topo).empty());
  NetworkState state(topo, 2);
  DetectorCounts scratch;
  for (int i = 0; i < 2000; ++i) run_one(topo, state, scratch);
  const RunTally tally = run_many(topo, state, 500);
  CHECK(tally.absorbed == 500);
  CHECK(tally.counts.n0 == 0);
}

TEST_CASE("run_many accounting is exact") {
  const NetworkTopology topo = build_topology(Mode::QuantumChoice, kPi / 4.0, 1.1,
                                              kPi / 8.0, -7.0 * kPi / 40.0);
  NetworkState state(topo, 3);
  const RunTally one = run_many(topo, state, 1);
  CHECK(one.emitted == 1);
  CHECK(one.counts.n0 + one.counts.n1 + one.absorbed == 1);

  NetworkState fresh(topo, 4);
  const RunTally many = run_many(topo, fresh, 10000);
  CHECK(many.emitted == 10000);
  CHECK(many.counts.n0 + many.counts.n1 + many.absorbed == 10000);

  CHECK_THROWS_AS(run_many(topo, fresh, 0), std::invalid_argument);
}

TEST_CASE("wheeler topology never absorbs") {
  const NetworkTopology topo = build_topology(Mode::Wheeler, 3.0 * kPi / 8.0, 2.2,
                                              kPi / 8.0, -7.0 * kPi / 40.0);
  NetworkState state(topo, 5);
  const RunTally tally = run_many(topo, state, 10000);
  CHECK(tally.absorbed == 0);
  CHECK(tally.counts.n0 + tally.counts.n1 == 10000);
}

TEST_CASE("quantum absorbed fraction tracks the unregistered intensity") {
  const OracleParams p{kPi / 4.0, 0.9, kPi / 8.0, -7.0 * kPi / 40.0};
  const NetworkTopology topo = build_topology(Mode::QuantumChoice, p.alpha, p.phi,
                                              p.delta0, p.delta1);
  NetworkState state(topo, 6);
  const std::uint64_t n = 10000;
  const RunTally tally = run_many(topo, state, n);
  const Intensities i = quantum_intensities(p);
  const double expected = 1.0 - (i.i0 + i.i1);
  const double simulated = static_cast<double>(tally.absorbed) / static_cast<double>(n);
  CHECK(std::abs(simulated - expected) <= 0.03);
}

TEST_CASE("closed interferometer at alpha 0 and phi 0 sends everything to d0") {
  const NetworkTopology topo =
      build_topology(Mode::Wheeler, 0.0, 0.0, kPi / 8.0, -7.0 * kPi / 40.0);
  NetworkState state(topo, 7);
  const RunTally tally = run_many(topo, state, 10000);
  const double f1 = static_cast<double>(tally.counts.n1) /
                    static_cast<double>(tally.counts.n0 + tally.counts.n1);
  CHECK(f1 <= 0.02);
}

TEST_CASE("validator flags dangling ports, cycles and unreachable detectors") {
  NetworkTopology topo = build_topology(Mode::Wheeler, 0.3, 0.4, 0.1, -0.1);
  CHECK(validate_topology(topo).empty());

  NetworkTopology dangling = topo;
  dangling.edges.erase({dangling.find("pbs5_1"), 0});
  const auto issues = validate_topology(dangling);
  REQUIRE(!issues.empty());
  bool found = false;
  for (const std::string& issue : issues) {
    found = found || issue.find("dangling") != std::string::npos;
  }
  CHECK(found);

  NetworkTopology cyclic = topo;
  const int phase = cyclic.find("phi");
  cyclic.edges[{phase, 0}] = PortRef{phase, Port::p0};  // self-loop
  const auto cycle_issues = validate_topology(cyclic);
  bool cycle_found = false;
  for (const std::string& issue : cycle_issues) {
    cycle_found = cycle_found || issue.find("cycle") != std::string::npos;
  }
  CHECK(cycle_found);

  NetworkTopology isolated;
  const int src = isolated.add_unit("src", UnitKind::Source, kPi / 4.0);
  const int d0 = isolated.add_unit("d0", UnitKind::Detector, 0.0);
  const int d1 = isolated.add_unit("d1", UnitKind::Detector, 1.0);
  isolated.source = src;
  isolated.detectors = {d0, d1};
  isolated.connect(src, Port::p0, d0, Port::p0);  // nothing feeds d1
  bool unreachable_found = false;
  for (const std::string& issue : validate_topology(isolated)) {
    unreachable_found = unreachable_found || issue.find("unreachable") != std::string::npos;
  }
  CHECK(unreachable_found);
}

TEST_CASE("engine reports miswired topologies") {
  NetworkTopology dangling = direct_hit_topology();
  dangling.edges.clear();
  NetworkState s1(dangling, 8);
  DetectorCounts counts;
  CHECK_THROWS_AS(run_one(dangling, s1, counts), TopologyError);

  NetworkTopology cyclic;
  const int src = cyclic.add_unit("src", UnitKind::Source, kPi / 4.0);
  const int loop = cyclic.add_unit("loop", UnitKind::Phase, 0.1);
  const int det = cyclic.add_unit("d0", UnitKind::Detector, 0.0);
  cyclic.source = src;
  cyclic.detectors = {det};
  cyclic.connect(src, Port::p0, loop, Port::p0);
  cyclic.connect(loop, Port::p0, loop, Port::p0);
  NetworkState s2(cyclic, 9);
  CHECK_THROWS_AS(run_one(cyclic, s2, counts), TopologyError);
}

TEST_CASE("runs are deterministic for a fixed seed") {
  const NetworkTopology topo = build_topology(Mode::QuantumChoice, kPi / 8.0, 0.77,
                                              kPi / 8.0, -7.0 * kPi / 40.0);
  NetworkState a(topo, 1234);
  NetworkState b(topo, 1234);
  const RunTally ta = run_many(topo, a, 4000);
  const RunTally tb = run_many(topo, b, 4000);
  CHECK(ta.counts.n0 == tb.counts.n0);
  CHECK(ta.counts.n1 == tb.counts.n1);
  CHECK(ta.absorbed == tb.absorbed);

  NetworkState c(topo, 1235);
  const RunTally tc = run_many(topo, c, 4000);
  const bool differs = tc.counts.n0 != ta.counts.n0 || tc.counts.n1 != ta.counts.n1 ||
                       tc.absorbed != ta.absorbed;
  CHECK(differs);
}

TEST_CASE("run_many is exactly n sequential run_one calls") {
  const NetworkTopology topo = build_topology(Mode::QuantumChoice, kPi / 8.0, 1.9,
                                              kPi / 8.0, -7.0 * kPi / 40.0);
  NetworkState batched(topo, 77);
  const RunTally tally = run_many(topo, batched, 500);

  NetworkState stepped(topo, 77);
  RunTally manual;
  for (int i = 0; i < 500; ++i) {
    const RunOutcome outcome = run_one(topo, stepped, manual.counts);
    if (!outcome.detected) ++manual.absorbed;
    ++manual.emitted;
  }
  CHECK(tally.counts.n0 == manual.counts.n0);
  CHECK(tally.counts.n1 == manual.counts.n1);
  CHECK(tally.absorbed == manual.absorbed);
  CHECK(tally.emitted == manual.emitted);
}

TEST_CASE("warm-up discard drops events without counting them") {
  const NetworkTopology topo = build_topology(Mode::Wheeler, kPi / 8.0, 0.5,
                                              kPi / 8.0, -7.0 * kPi / 40.0);
  NetworkState state(topo, 10);
  const RunTally tally = run_many(topo, state, 1000, 500);
  CHECK(tally.emitted == 1000);
  CHECK(tally.counts.n0 + tally.counts.n1 == 1000);
}

TEST_CASE("topology text listing is stable and complete") {
  const NetworkTopology topo = build_topology(Mode::Wheeler, 0.0, 0.0, kPi / 8.0,
                                              -7.0 * kPi / 40.0);
  const std::string text = topology_to_text(topo);
  CHECK(text == topology_to_text(topo));
  CHECK(text.find("unit 0 src source prep=0.7853981634") != std::string::npos);
  CHECK(text.find("pbs5_2") != std::string::npos);
  CHECK(text.find("edge src.0 -> pbs1.0") != std::string::npos);
  CHECK(text.find("detectors d0 d1") != std::string::npos);
  CHECK(text.find("polarizer") == std::string::npos);

  const NetworkTopology quantum = build_topology(Mode::QuantumChoice, 0.0, 0.0,
                                                 kPi / 8.0, -7.0 * kPi / 40.0);
  CHECK(topology_to_text(quantum).find("polarizer") != std::string::npos);
}
