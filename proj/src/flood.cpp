#include "ompr/flood.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>
#include <string>

namespace ompr {
namespace {

void check_source(const NetworkSnapshot& snapshot, NodeId source) {
  if (source < 0 || source >= snapshot.node_count()) {
    throw std::out_of_range("flood source " + std::to_string(source) +
                            " outside [0, " + std::to_string(snapshot.node_count()) + ")");
  }
}

// Hop-synchronous propagation. `forwards(v, selected)` decides whether a
// newly reached node retransmits; `selected` says whether v's relay status
// was granted by a transmitter of the previous hop under `rule` (only
// computed when `assignment` is given).
template <typename Forwards>
FloodOutcome propagate(const NetworkSnapshot& snapshot, NodeId source,
                       const RelayAssignment* assignment, MprForwarding rule,
                       FloodTrace* trace, Forwards forwards) {
  check_source(snapshot, source);
  const auto n = static_cast<std::size_t>(snapshot.node_count());
  FloodOutcome out;
  out.source = source;
  out.hops.assign(n, -1);
  out.hops[static_cast<std::size_t>(source)] = 0;

  std::vector<char> selected(n, 0);
  std::vector<NodeId> frontier{source};
  for (int hop = 1; !frontier.empty(); ++hop) {
    std::vector<NodeId> reached;
    for (NodeId u : frontier) {
      for (NodeId v : snapshot.out_links[static_cast<std::size_t>(u)]) {
        const auto vi = static_cast<std::size_t>(v);
        const int seen = out.hops[vi];
        if (seen != -1 && seen != hop) continue;
        const bool first_copy = seen == -1;
        if (first_copy) {
          out.hops[vi] = hop;
          reached.push_back(v);
        }
        if (assignment != nullptr &&
            (first_copy || rule == MprForwarding::kAnySelector) &&
            assignment->selected(u, v)) {
          selected[vi] = 1;
        }
        if (trace != nullptr) trace->push_back({hop, u, v});
      }
    }
    std::sort(reached.begin(), reached.end());
    frontier.clear();
    for (NodeId v : reached) {
      out.received.push_back(v);
      if (forwards(v, selected[static_cast<std::size_t>(v)] != 0)) frontier.push_back(v);
    }
    out.transmitted.insert(out.transmitted.end(), frontier.begin(), frontier.end());
  }
  std::sort(out.received.begin(), out.received.end());
  std::sort(out.transmitted.begin(), out.transmitted.end());
  return out;
}

}  // namespace

int FloodOutcome::max_hop() const {
  int deepest = 0;
  for (NodeId v : received) deepest = std::max(deepest, hops[static_cast<std::size_t>(v)]);
  return deepest;
}

int FloodOutcome::retransmissions_before_hop(int hop) const {
  return static_cast<int>(std::count_if(transmitted.begin(), transmitted.end(), [&](NodeId v) {
    return hops[static_cast<std::size_t>(v)] < hop;
  }));
}

FloodOutcome flood_pure(const NetworkSnapshot& snapshot, NodeId source, FloodTrace* trace) {
  return propagate(snapshot, source, nullptr, MprForwarding::kAnySelector, trace,
                   [](NodeId, bool) { return true; });
}

FloodOutcome flood_probabilistic(const NetworkSnapshot& snapshot, NodeId source,
                                 double p_r, RandomStream rng, FloodTrace* trace) {
  if (!(p_r >= 0.0 && p_r <= 1.0)) {
    throw std::invalid_argument("flood_probabilistic: p_r must be within [0, 1]");
  }
  std::vector<double> draws(static_cast<std::size_t>(snapshot.node_count()));
  for (double& d : draws) d = rng.uniform01();
  return propagate(snapshot, source, nullptr, MprForwarding::kAnySelector, trace,
                   [&](NodeId v, bool) {
    return draws[static_cast<std::size_t>(v)] < p_r;
  });
}

FloodOutcome flood_mpr(const NetworkSnapshot& snapshot, const RelayAssignment& assignment,
                       NodeId source, MprForwarding rule, FloodTrace* trace) {
  if (assignment.node_count() != snapshot.node_count()) {
    throw std::invalid_argument("flood_mpr: relay assignment has " +
                                std::to_string(assignment.node_count()) +
                                " nodes, snapshot has " +
                                std::to_string(snapshot.node_count()));
  }
  return propagate(snapshot, source, &assignment, rule, trace,
                   [](NodeId, bool selected) { return selected; });
}

void write_trace(std::ostream& out, const FloodTrace& trace) {
  for (const auto& e : trace) out << e.hop << ' ' << e.transmitter << ' ' << e.receiver << '\n';
}

}  // namespace ompr
