#pragma once

#include <iosfwd>
#include <vector>

#include "ompr/geometry.hpp"
#include "ompr/mpr.hpp"
#include "ompr/random.hpp"

namespace ompr {

// Result of propagating one RREQ. The source is in neither set.
struct FloodOutcome {
  NodeId source = 0;
  std::vector<NodeId> received;     // Rx, ascending
  std::vector<NodeId> transmitted;  // Tx, ascending
  std::vector<int> hops;            // first-reception hop per node; -1 if never, 0 for source

  // Deepest first-reception hop, 0 when nothing was received.
  [[nodiscard]] int max_hop() const;
  // Retransmitting nodes whose first reception happened before `hop`, i.e.
  // the forwarders needed to deliver up to ring `hop`.
  [[nodiscard]] int retransmissions_before_hop(int hop) const;

  friend bool operator==(const FloodOutcome&, const FloodOutcome&) = default;
};

// One delivery in round `hop`: `transmitter` reached `receiver`. Copies
// arriving after the receiver's first round are not recorded.
struct FloodEvent {
  int hop = 0;
  NodeId transmitter = 0;
  NodeId receiver = 0;
};
using FloodTrace = std::vector<FloodEvent>;

// Every node retransmits once on first reception.
FloodOutcome flood_pure(const NetworkSnapshot& snapshot, NodeId source,
                        FloodTrace* trace = nullptr);

// The source always transmits; node v retransmits on first reception iff the
// v-th of n uniform draws taken from `rng` is below p_r.
FloodOutcome flood_probabilistic(const NetworkSnapshot& snapshot, NodeId source,
                                 double p_r, RandomStream rng,
                                 FloodTrace* trace = nullptr);

// A node first reached at hop h retransmits iff some hop h-1 transmitter
// that reached it has it in its relay set; under kFirstCopy only the
// transmitter whose copy arrived first counts. Transmitters of one hop send in
// ascending id order. Throws std::invalid_argument when the assignment covers
// a different node count than the snapshot.
FloodOutcome flood_mpr(const NetworkSnapshot& snapshot, const RelayAssignment& assignment,
                       NodeId source, MprForwarding rule = MprForwarding::kFirstCopy,
                       FloodTrace* trace = nullptr);

// "hop transmitter receiver" per event.
void write_trace(std::ostream& out, const FloodTrace& trace);

}  // namespace ompr
