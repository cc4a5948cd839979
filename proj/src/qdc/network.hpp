#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qdc/components.hpp"

namespace qdc {

enum class UnitKind { Source, Pbs, Hwp, Phase, Polarizer, Detector, Absorber };

std::string_view to_string(UnitKind kind);

/// Number of output ports a unit of this kind drives.
int output_port_count(UnitKind kind);

/// One processing unit of the network. `param` is the plate angle for Hwp,
/// the shift for Phase, the preparation angle for Source and the detector
/// index (0 or 1) for Detector.
struct UnitSpec {
  std::string name;
  UnitKind kind = UnitKind::Absorber;
  double param = 0.0;
};

struct PortRef {
  int unit = -1;
  Port port = Port::p0;
};

/// Directed graph of processing units. Edges map a unit's output port to the
/// next unit's input port; the event loop moves exactly one messenger at a
/// time from the source to a detector or an absorbing terminal.
struct NetworkTopology {
  std::vector<UnitSpec> units;
  std::map<std::pair<int, int>, PortRef> edges;
  int source = -1;
  std::vector<int> detectors;

  int add_unit(std::string name, UnitKind kind, double param = 0.0);
  void connect(int from, Port out, int to, Port in);
  /// Index of the unit with this name, or -1.
  int find(std::string_view name) const;
};

class TopologyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Structural checks: dangling output ports, edges out of terminal units,
/// missing/invalid source or detectors, unreachable detectors, cycles.
/// An empty list means the topology is valid.
std::vector<std::string> validate_topology(const NetworkTopology& topo);

/// Stable, human-readable listing of units and edges.
std::string topology_to_text(const NetworkTopology& topo);

struct RunTally {
  DetectorCounts counts;
  std::uint64_t absorbed = 0;
  std::uint64_t emitted = 0;
};

/// Mutable per-run state: the adaptive unit memories and their random
/// streams. Each adaptive unit's stream is seeded with
/// mix64(seed, fnv1a64(unit name)), so neither construction order nor sweep
/// scheduling can change a unit's random sequence.
class NetworkState {
 public:
  NetworkState(const NetworkTopology& topo, std::uint64_t seed, Gamma gamma = {});

  bool is_adaptive(int unit) const { return slots_[unit].has_value(); }
  AdaptivePbsState& adaptive(int unit) { return slots_[unit]->pbs; }
  const AdaptivePbsState& adaptive(int unit) const { return slots_[unit]->pbs; }
  RandomStream& stream(int unit) { return slots_[unit]->rng; }
  Gamma gamma() const { return gamma_; }
  std::uint64_t seed() const { return seed_; }

 private:
  struct Slot {
    AdaptivePbsState pbs;
    RandomStream rng;
  };
  std::vector<std::optional<Slot>> slots_;
  Gamma gamma_;
  std::uint64_t seed_;
};

struct RunOutcome {
  bool detected = false;
  int detector = -1;
};

/// Creates one messenger at the source and propagates it unit by unit until
/// it is detected or absorbed. Adaptive states update in visit order. Throws
/// TopologyError on a dangling port or when `hop_limit` is exceeded.
RunOutcome run_one(const NetworkTopology& topo, NetworkState& state,
                   DetectorCounts& counts, int hop_limit = 64);

/// Runs `n` messengers one by one against the same persistent unit states.
/// `discard` extra events are run (and not tallied) beforehand; the default
/// of zero matches the standard procedure of counting every event.
RunTally run_many(const NetworkTopology& topo, NetworkState& state,
                  std::uint64_t n, std::uint64_t discard = 0);

}  // namespace qdc
