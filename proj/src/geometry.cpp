#include "ompr/geometry.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <ostream>
#include <string>

namespace ompr {

bool NetworkSnapshot::has_link(NodeId from, NodeId to) const {
  const auto& out = out_links.at(static_cast<std::size_t>(from));
  return std::binary_search(out.begin(), out.end(), to);
}

std::size_t NetworkSnapshot::link_count() const {
  std::size_t total = 0;
  for (const auto& out : out_links) total += out.size();
  return total;
}

std::vector<NodePosition> place_nodes(const SimConfig& config, StreamKey key) {
  std::vector<NodePosition> positions;
  positions.reserve(static_cast<std::size_t>(config.node_count));
  for (NodeId id = 0; id < config.node_count; ++id) {
    RandomStream rng = key.with(static_cast<std::uint64_t>(id)).stream();
    const double x = rng.uniform01() * config.area_width;
    const double y = rng.uniform01() * config.area_height;
    positions.push_back({id, x, y});
  }
  return positions;
}

double reflect_into(double coord, double extent) {
  while (coord < 0.0 || coord > extent) {
    if (coord < 0.0) coord = -coord;
    if (coord > extent) coord = 2.0 * extent - coord;
  }
  return coord;
}

NodePosition advance(const NodePosition& from, double heading_rad, double distance,
                     double area_width, double area_height) {
  NodePosition to = from;
  to.x = reflect_into(from.x + distance * std::cos(heading_rad), area_width);
  to.y = reflect_into(from.y + distance * std::sin(heading_rad), area_height);
  return to;
}

std::vector<NodePosition> step_mobility(std::span<const NodePosition> positions,
                                        const SimConfig& config, StreamKey key) {
  const double step = step_length(config);
  std::vector<NodePosition> moved(positions.begin(), positions.end());
  if (step == 0.0) return moved;
  for (auto& p : moved) {
    RandomStream rng = key.with(static_cast<std::uint64_t>(p.id)).stream();
    const double heading = 2.0 * std::numbers::pi * rng.uniform01();
    p = advance(p, heading, step, config.area_width, config.area_height);
  }
  return moved;
}

AdjacencyList in_range(std::span<const NodePosition> positions, double radius) {
  const std::size_t n = positions.size();
  const double r2 = radius * radius;
  AdjacencyList range(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dx = positions[i].x - positions[j].x;
      const double dy = positions[i].y - positions[j].y;
      if (dx * dx + dy * dy <= r2) {
        range[i].push_back(static_cast<NodeId>(j));
        range[j].push_back(static_cast<NodeId>(i));
      }
    }
  }
  // Pairs are appended in increasing order of the outer index, so each list
  // is already sorted.
  return range;
}

NetworkSnapshot sample_links(std::span<const NodePosition> positions,
                             const AdjacencyList& range, double p_c, StreamKey key,
                             int loop_index) {
  NetworkSnapshot snap;
  snap.positions.assign(positions.begin(), positions.end());
  snap.p_c_used = p_c;
  snap.loop_index = loop_index;
  if (p_c >= 1.0) {
    snap.out_links = range;
    return snap;
  }
  snap.out_links.resize(range.size());
  for (std::size_t i = 0; i < range.size(); ++i) {
    if (range[i].empty()) continue;
    RandomStream rng = key.with(static_cast<std::uint64_t>(i)).stream();
    for (NodeId j : range[i]) {
      if (rng.uniform01() <= p_c) snap.out_links[i].push_back(j);
    }
  }
  return snap;
}

NetworkSnapshot sample_links(std::span<const NodePosition> positions, double radius,
                             double p_c, StreamKey key, int loop_index) {
  return sample_links(positions, in_range(positions, radius), p_c, key, loop_index);
}

NeighborTables build_neighbor_tables(const NetworkSnapshot& snapshot) {
  const std::size_t n = snapshot.out_links.size();
  NeighborTables tables;
  tables.one_hop = snapshot.out_links;
  tables.two_hop.resize(n);
  std::vector<char> mark(n, 0);
  for (std::size_t x = 0; x < n; ++x) {
    mark[x] = 1;
    for (NodeId y : tables.one_hop[x]) mark[static_cast<std::size_t>(y)] = 1;
    auto& two = tables.two_hop[x];
    for (NodeId y : tables.one_hop[x]) {
      for (NodeId z : snapshot.out_links[static_cast<std::size_t>(y)]) {
        if (!mark[static_cast<std::size_t>(z)]) {
          mark[static_cast<std::size_t>(z)] = 1;
          two.push_back(z);
        }
      }
    }
    mark[x] = 0;
    for (NodeId y : tables.one_hop[x]) mark[static_cast<std::size_t>(y)] = 0;
    for (NodeId z : two) mark[static_cast<std::size_t>(z)] = 0;
    std::sort(two.begin(), two.end());
  }
  return tables;
}

void write_snapshot(std::ostream& out, const NetworkSnapshot& snapshot) {
  // Shortest form that reads back to the same double.
  const auto exact = [](double v) {
    char buf[32];
    return std::string(buf, std::to_chars(buf, buf + sizeof buf, v).ptr);
  };
  out << "# loop " << snapshot.loop_index << " p_c " << exact(snapshot.p_c_used) << '\n';
  out << "# node_id x y\n";
  for (const auto& p : snapshot.positions) {
    out << p.id << ' ' << exact(p.x) << ' ' << exact(p.y) << '\n';
  }
  out << "# from to\n";
  for (std::size_t i = 0; i < snapshot.out_links.size(); ++i) {
    for (NodeId j : snapshot.out_links[i]) out << i << ' ' << j << '\n';
  }
}

}  // namespace ompr
