#pragma once

#include <iosfwd>
#include <vector>

#include "ompr/geometry.hpp"

namespace ompr {

// Relay selection problem of one node x: choose candidates from N1(x) whose
// coverage unions to N2(x).
struct CoverInstance {
  NodeId center = 0;
  std::vector<NodeId> candidates;           // N1(x), ascending
  std::vector<NodeId> targets;              // N2(x), ascending
  std::vector<std::vector<NodeId>> covers;  // covers[k]: targets heard from candidates[k]
};

struct RelaySet {
  NodeId center = 0;
  std::vector<NodeId> relays;  // ascending
  // Number of candidate relay sets generated (1 for the pure greedy).
  int sets_explored = 1;
  // Branching stopped early because branch_cap was reached.
  bool cap_hit = false;
};

struct RelayAssignment {
  std::vector<RelaySet> relay_sets;  // indexed by node id
  AdjacencyList selectors;           // selectors[y]: nodes x with y in MPR(x)

  [[nodiscard]] int node_count() const { return static_cast<int>(relay_sets.size()); }
  // True when `relay` belongs to MPR(selector).
  [[nodiscard]] bool selected(NodeId selector, NodeId relay) const;
};

enum class RelayHeuristic { kGreedy, kOmpr };

inline constexpr int kDefaultBranchCap = 10000;
inline constexpr int kBruteForceMaxCandidates = 20;

// Candidate y covers target z iff y -> z is a link, i.e. z is in N1(y).
CoverInstance make_cover_instance(const NeighborTables& tables, NodeId center);

// Throws std::invalid_argument if a target has no coverer, a covers list names
// a non-target, or the parallel arrays disagree.
void check_instance(const CoverInstance& instance);

// Candidates that are the sole coverer of at least one target.
std::vector<NodeId> mandatory_relays(const CoverInstance& instance);

// Mandatory relays, then repeatedly the candidate covering the most still
// uncovered targets (smallest id on ties).
RelaySet greedy_mpr(const CoverInstance& instance);

// Greedy that forks on every tie: when K candidates share the maximum gain
// the current set continues with the smallest id and K-1 sibling sets are
// spawned, one per other tying candidate. Every set is run to full coverage;
// the smallest (then lexicographically smallest) wins. Sibling sets that
// coincide with an existing set are merged. Once spawning would push the
// number of sets past branch_cap, no further sets are spawned anywhere and
// cap_hit is reported.
RelaySet ompr_select(const CoverInstance& instance, int branch_cap = kDefaultBranchCap);

// Exhaustive minimum cover, lexicographically smallest among minima.
// Throws std::invalid_argument beyond kBruteForceMaxCandidates candidates.
RelaySet brute_force_min_cover(const CoverInstance& instance);

RelaySet select_relays(const CoverInstance& instance, RelayHeuristic heuristic,
                       int branch_cap = kDefaultBranchCap);

RelayAssignment assign_relays(const NeighborTables& tables,
                              RelayHeuristic heuristic = RelayHeuristic::kOmpr,
                              int branch_cap = kDefaultBranchCap);

// True when the union of covers over `relays` equals the instance targets.
bool covers_all(const CoverInstance& instance, const std::vector<NodeId>& relays);

// Per-node rows "node_id n1 n2 mpr sets cap_hit oracle_min"; oracle_min is
// "-" unless with_oracle and |N1| <= kBruteForceMaxCandidates.
void write_relay_diagnostics(std::ostream& out, const NeighborTables& tables,
                             const RelayAssignment& assignment, bool with_oracle);

}  // namespace ompr
