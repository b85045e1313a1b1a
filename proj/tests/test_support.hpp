#pragma once

// Test-only oracles and fixtures. Nothing here calls into the flooding or
// relay-selection code it is used to check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "ompr/geometry.hpp"
#include "ompr/mpr.hpp"
#include "ompr/random.hpp"

namespace ompr::testing {

// Nodes reachable from `source` over directed links, source excluded.
inline std::vector<NodeId> reachable_from(const NetworkSnapshot& snap, NodeId source) {
  std::vector<char> seen(snap.out_links.size(), 0);
  std::vector<NodeId> stack{source};
  seen[static_cast<std::size_t>(source)] = 1;
  while (!stack.empty()) {
    const NodeId u = stack.back();
    stack.pop_back();
    for (NodeId v : snap.out_links[static_cast<std::size_t>(u)]) {
      if (!seen[static_cast<std::size_t>(v)]) {
        seen[static_cast<std::size_t>(v)] = 1;
        stack.push_back(v);
      }
    }
  }
  std::vector<NodeId> out;
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (seen[i] && static_cast<NodeId>(i) != source) out.push_back(static_cast<NodeId>(i));
  }
  return out;
}

// Snapshot with explicit directed links; positions are placeholders.
inline NetworkSnapshot manual_snapshot(int n, const std::vector<std::pair<NodeId, NodeId>>& links) {
  NetworkSnapshot snap;
  for (int i = 0; i < n; ++i) snap.positions.push_back({i, 0.0, 0.0});
  snap.out_links.resize(static_cast<std::size_t>(n));
  for (auto [a, b] : links) snap.out_links[static_cast<std::size_t>(a)].push_back(b);
  for (auto& l : snap.out_links) std::sort(l.begin(), l.end());
  return snap;
}

inline NetworkSnapshot bidirectional(int n, const std::vector<std::pair<NodeId, NodeId>>& edges) {
  std::vector<std::pair<NodeId, NodeId>> links;
  for (auto [a, b] : edges) {
    links.emplace_back(a, b);
    links.emplace_back(b, a);
  }
  return manual_snapshot(n, links);
}

// Chebyshev distance on a row-major side x side lattice.
inline int chebyshev(int side, NodeId a, NodeId b) {
  return std::max(std::abs(a / side - b / side), std::abs(a % side - b % side));
}

// Cover instance for the lattice centre built from geometry alone: one-hop
// ring at Chebyshev distance 1, two-hop ring at distance 2, and a one-hop
// node covers a two-hop node iff they are Chebyshev neighbours.
inline CoverInstance lattice_center_instance(int side) {
  const NodeId center = (side / 2) * side + side / 2;
  CoverInstance inst;
  inst.center = center;
  for (NodeId v = 0; v < side * side; ++v) {
    if (chebyshev(side, center, v) == 1) inst.candidates.push_back(v);
    if (chebyshev(side, center, v) == 2) inst.targets.push_back(v);
  }
  for (NodeId y : inst.candidates) {
    std::vector<NodeId> cov;
    for (NodeId z : inst.targets) {
      if (chebyshev(side, y, z) == 1) cov.push_back(z);
    }
    inst.covers.push_back(cov);
  }
  return inst;
}

// Random valid instance: candidate ids 1000+, target ids 2000+, every target
// covered at least once.
inline CoverInstance random_instance(RandomStream& rng, int max_candidates, int max_targets) {
  const auto below = [&](int n) { return static_cast<int>(rng.uniform01() * n); };
  CoverInstance inst;
  inst.center = 0;
  const int c = 1 + below(max_candidates);
  const int t = below(max_targets + 1);
  const double density = 0.1 + 0.5 * rng.uniform01();
  for (int k = 0; k < c; ++k) inst.candidates.push_back(1000 + 3 * k);
  for (int k = 0; k < t; ++k) inst.targets.push_back(2000 + 2 * k);
  inst.covers.assign(static_cast<std::size_t>(c), {});
  for (int j = 0; j < t; ++j) {
    bool hit = false;
    for (int k = 0; k < c; ++k) {
      if (rng.uniform01() < density) {
        inst.covers[static_cast<std::size_t>(k)].push_back(inst.targets[static_cast<std::size_t>(j)]);
        hit = true;
      }
    }
    if (!hit) {
      inst.covers[static_cast<std::size_t>(below(c))].push_back(
          inst.targets[static_cast<std::size_t>(j)]);
    }
  }
  for (auto& cov : inst.covers) std::sort(cov.begin(), cov.end());
  return inst;
}

inline bool is_subset(const std::vector<NodeId>& small, const std::vector<NodeId>& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

}  // namespace ompr::testing
