#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "ompr/config.hpp"
#include "ompr/random.hpp"

namespace ompr {

using NodeId = int;

struct NodePosition {
  NodeId id = 0;
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const NodePosition&, const NodePosition&) = default;
};

// Per-node sorted lists of node ids. Used both for directed out-links and for
// neighbor sets.
using AdjacencyList = std::vector<std::vector<NodeId>>;

// Node positions plus the directed link graph sampled for one mobility loop.
// (i -> j) means j hears i's transmissions.
struct NetworkSnapshot {
  std::vector<NodePosition> positions;
  AdjacencyList out_links;
  double p_c_used = 1.0;
  int loop_index = 0;

  [[nodiscard]] int node_count() const { return static_cast<int>(positions.size()); }
  [[nodiscard]] bool has_link(NodeId from, NodeId to) const;
  [[nodiscard]] std::size_t link_count() const;
};

// N1(x) and N2(x) for every node, derived from a snapshot's directed links.
struct NeighborTables {
  AdjacencyList one_hop;
  AdjacencyList two_hop;

  [[nodiscard]] int node_count() const { return static_cast<int>(one_hop.size()); }
};

// n positions drawn uniformly over the area; node i draws from key.with(i).
std::vector<NodePosition> place_nodes(const SimConfig& config, StreamKey key);

// Moves every node step_length(config) metres along a uniform random heading,
// reflecting at the area boundary. Node i draws from key.with(i).
std::vector<NodePosition> step_mobility(std::span<const NodePosition> positions,
                                        const SimConfig& config, StreamKey key);

// Folds a coordinate back into [0, extent] by mirror reflection.
double reflect_into(double coord, double extent);

NodePosition advance(const NodePosition& from, double heading_rad, double distance,
                     double area_width, double area_height);

// For each node, the sorted ids of all other nodes within distance <= radius.
AdjacencyList in_range(std::span<const NodePosition> positions, double radius);

// Keeps each in-range ordered pair (i, j) iff xi <= p_c, with xi drawn from
// key.with(i) in increasing j order. p_c == 1 keeps every pair and draws
// nothing, so the result is the symmetric unit-disk graph.
NetworkSnapshot sample_links(std::span<const NodePosition> positions,
                             const AdjacencyList& range, double p_c, StreamKey key,
                             int loop_index = 0);

NetworkSnapshot sample_links(std::span<const NodePosition> positions, double radius,
                             double p_c, StreamKey key, int loop_index = 0);

NeighborTables build_neighbor_tables(const NetworkSnapshot& snapshot);

// Debug dump: "node_id x y" rows, then "i j" edge rows.
void write_snapshot(std::ostream& out, const NetworkSnapshot& snapshot);

}  // namespace ompr
