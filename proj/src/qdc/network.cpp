#include "qdc/network.hpp"

#include <algorithm>
#include <cstdio>
#include <utility>

namespace qdc {

std::string_view to_string(UnitKind kind) {
  switch (kind) {
    case UnitKind::Source: return "source";
    case UnitKind::Pbs: return "pbs";
    case UnitKind::Hwp: return "hwp";
    case UnitKind::Phase: return "phase";
    case UnitKind::Polarizer: return "polarizer";
    case UnitKind::Detector: return "detector";
    case UnitKind::Absorber: return "absorber";
  }
  return "?";
}

int output_port_count(UnitKind kind) {
  switch (kind) {
    case UnitKind::Pbs: return 2;
    case UnitKind::Source:
    case UnitKind::Hwp:
    case UnitKind::Phase:
    case UnitKind::Polarizer: return 1;
    case UnitKind::Detector:
    case UnitKind::Absorber: return 0;
  }
  return 0;
}

int NetworkTopology::add_unit(std::string name, UnitKind kind, double param) {
  units.push_back({std::move(name), kind, param});
  return static_cast<int>(units.size()) - 1;
}

void NetworkTopology::connect(int from, Port out, int to, Port in) {
  edges[{from, index(out)}] = PortRef{to, in};
}

int NetworkTopology::find(std::string_view name) const {
  for (std::size_t i = 0; i < units.size(); ++i) {
    if (units[i].name == name) return static_cast<int>(i);
  }
  return -1;
}

std::vector<std::string> validate_topology(const NetworkTopology& topo) {
  std::vector<std::string> issues;
  const int n = static_cast<int>(topo.units.size());

  if (topo.source < 0 || topo.source >= n) {
    issues.push_back("no source unit");
  } else if (topo.units[topo.source].kind != UnitKind::Source) {
    issues.push_back("source index does not name a source unit");
  }
  if (topo.detectors.empty()) issues.push_back("no detector units");
  for (const int d : topo.detectors) {
    if (d < 0 || d >= n || topo.units[d].kind != UnitKind::Detector) {
      issues.push_back("detector list entry is not a detector unit");
    }
  }

  for (int u = 0; u < n; ++u) {
    const int outs = output_port_count(topo.units[u].kind);
    for (int p = 0; p < outs; ++p) {
      if (!topo.edges.contains({u, p})) {
        issues.push_back("dangling output port " + topo.units[u].name + "." + std::to_string(p));
      }
    }
  }
  for (const auto& [from, to] : topo.edges) {
    const auto [u, p] = from;
    if (u < 0 || u >= n || to.unit < 0 || to.unit >= n) {
      issues.push_back("edge references unknown unit");
      continue;
    }
    if (p >= output_port_count(topo.units[u].kind)) {
      issues.push_back("edge leaves nonexistent port " + topo.units[u].name + "." + std::to_string(p));
    }
  }

  // reachability and cycle detection over the unit graph
  if (topo.source >= 0 && topo.source < n) {
    std::vector<int> color(n, 0);  // 0 white, 1 on stack, 2 done
    std::vector<std::pair<int, int>> stack;  // (unit, next out port)
    bool cycle = false;
    stack.push_back({topo.source, 0});
    color[topo.source] = 1;
    while (!stack.empty() && !cycle) {
      auto& [u, next] = stack.back();
      if (next >= output_port_count(topo.units[u].kind)) {
        color[u] = 2;
        stack.pop_back();
        continue;
      }
      const auto it = topo.edges.find({u, next});
      ++next;
      if (it == topo.edges.end()) continue;
      const int v = it->second.unit;
      if (v < 0 || v >= n) continue;
      if (color[v] == 1) {
        issues.push_back("cycle through unit " + topo.units[v].name);
        cycle = true;
      } else if (color[v] == 0) {
        color[v] = 1;
        stack.push_back({v, 0});
      }
    }
    for (const int d : topo.detectors) {
      if (d >= 0 && d < n && color[d] == 0) {
        issues.push_back("detector " + topo.units[d].name + " unreachable from source");
      }
    }
  }
  return issues;
}

std::string topology_to_text(const NetworkTopology& topo) {
  std::string out;
  char buf[160];
  std::snprintf(buf, sizeof buf, "network units=%zu edges=%zu\n", topo.units.size(),
                topo.edges.size());
  out += buf;
  for (std::size_t i = 0; i < topo.units.size(); ++i) {
    const UnitSpec& u = topo.units[i];
    const char* label = nullptr;
    switch (u.kind) {
      case UnitKind::Hwp: label = "theta"; break;
      case UnitKind::Phase: label = "shift"; break;
      case UnitKind::Source: label = "prep"; break;
      case UnitKind::Detector: label = "id"; break;
      default: break;
    }
    if (label != nullptr) {
      std::snprintf(buf, sizeof buf, "unit %zu %s %s %s=%.10g\n", i, u.name.c_str(),
                    std::string(to_string(u.kind)).c_str(), label, u.param);
    } else {
      std::snprintf(buf, sizeof buf, "unit %zu %s %s\n", i, u.name.c_str(),
                    std::string(to_string(u.kind)).c_str());
    }
    out += buf;
  }
  for (const auto& [from, to] : topo.edges) {
    std::snprintf(buf, sizeof buf, "edge %s.%d -> %s.%d\n",
                  topo.units[from.first].name.c_str(), from.second,
                  topo.units[to.unit].name.c_str(), index(to.port));
    out += buf;
  }
  out += "source " + (topo.source >= 0 ? topo.units[topo.source].name : std::string("?"));
  out += "\ndetectors";
  for (const int d : topo.detectors) out += " " + topo.units[d].name;
  out += "\n";
  return out;
}

NetworkState::NetworkState(const NetworkTopology& topo, std::uint64_t seed, Gamma gamma)
    : gamma_(gamma), seed_(seed) {
  slots_.resize(topo.units.size());
  for (std::size_t i = 0; i < topo.units.size(); ++i) {
    const UnitKind kind = topo.units[i].kind;
    if (kind == UnitKind::Pbs || kind == UnitKind::Polarizer) {
      RandomStream rng(mix64(seed, fnv1a64(topo.units[i].name)));
      AdaptivePbsState pbs = pbs_init(rng);
      slots_[i].emplace(Slot{pbs, rng});
    }
  }
}

RunOutcome run_one(const NetworkTopology& topo, NetworkState& state,
                   DetectorCounts& counts, int hop_limit) {
  if (topo.source < 0 || topo.source >= static_cast<int>(topo.units.size())) {
    throw TopologyError("run_one: topology has no source");
  }
  Messenger messenger = source_emit(topo.units[topo.source].param);
  int unit = topo.source;
  Port out_port = Port::p0;

  for (int hop = 0; hop < hop_limit; ++hop) {
    const auto it = topo.edges.find({unit, index(out_port)});
    if (it == topo.edges.end()) {
      throw TopologyError("run_one: dangling output port at unit " + topo.units[unit].name);
    }
    messenger.unit = it->second.unit;
    messenger.port = it->second.port;
    unit = messenger.unit;
    const UnitSpec& spec = topo.units[unit];

    switch (spec.kind) {
      case UnitKind::Detector: {
        const int id = static_cast<int>(spec.param);
        detector_process(counts, id, messenger.message);
        return {true, id};
      }
      case UnitKind::Absorber:
        return {false, -1};
      case UnitKind::Hwp:
        messenger.message = hwp_process(spec.param, messenger.message);
        out_port = Port::p0;
        break;
      case UnitKind::Phase:
        messenger.message = phase_process(spec.param, messenger.message);
        out_port = Port::p0;
        break;
      case UnitKind::Pbs: {
        const Emitted e = pbs_process(state.adaptive(unit), state.gamma(), messenger.port,
                                      messenger.message, state.stream(unit));
        messenger.message = e.message;
        out_port = e.port;
        break;
      }
      case UnitKind::Polarizer: {
        const UnitOutcome o = polarizer_process(state.adaptive(unit), state.gamma(),
                                                messenger.message, state.stream(unit));
        if (std::holds_alternative<Absorbed>(o)) return {false, -1};
        const Emitted& e = std::get<Emitted>(o);
        messenger.message = e.message;
        out_port = Port::p0;
        break;
      }
      case UnitKind::Source:
        throw TopologyError("run_one: messenger re-entered a source unit");
    }
  }
  throw TopologyError("run_one: hop limit exceeded (wiring cycle?)");
}

RunTally run_many(const NetworkTopology& topo, NetworkState& state,
                  std::uint64_t n, std::uint64_t discard) {
  if (n < 1) throw std::invalid_argument("run_many: need at least one event");
  DetectorCounts warmup;
  for (std::uint64_t i = 0; i < discard; ++i) run_one(topo, state, warmup);

  RunTally tally;
  for (std::uint64_t i = 0; i < n; ++i) {
    const RunOutcome outcome = run_one(topo, state, tally.counts);
    if (!outcome.detected) ++tally.absorbed;
    ++tally.emitted;
  }
  return tally;
}

}  // namespace qdc
