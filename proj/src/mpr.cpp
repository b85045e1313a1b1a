#include "ompr/mpr.hpp"

#include <algorithm>
#include <iterator>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>

#include <boost/dynamic_bitset.hpp>

namespace ompr {
namespace {

using Bitset = boost::dynamic_bitset<std::uint64_t>;

// Instance re-indexed to candidate/target positions with bitset coverage.
struct DenseInstance {
  std::size_t candidate_count = 0;
  std::size_t target_count = 0;
  std::vector<Bitset> covers;
};

struct Branch {
  Bitset chosen;     // over candidates
  Bitset uncovered;  // over targets
};

DenseInstance densify(const CoverInstance& instance) {
  DenseInstance dense;
  dense.candidate_count = instance.candidates.size();
  dense.target_count = instance.targets.size();
  dense.covers.reserve(dense.candidate_count);
  for (const auto& list : instance.covers) {
    Bitset bits(dense.target_count);
    for (NodeId z : list) {
      const auto it = std::lower_bound(instance.targets.begin(), instance.targets.end(), z);
      bits.set(static_cast<std::size_t>(std::distance(instance.targets.begin(), it)));
    }
    dense.covers.push_back(std::move(bits));
  }
  return dense;
}

Bitset mandatory_mask(const DenseInstance& dense) {
  Bitset seen_once(dense.target_count);
  Bitset seen_twice(dense.target_count);
  for (const auto& c : dense.covers) {
    seen_twice |= (seen_once & c);
    seen_once |= c;
  }
  const Bitset sole = seen_once - seen_twice;
  Bitset mask(dense.candidate_count);
  for (std::size_t k = 0; k < dense.candidate_count; ++k) {
    if (dense.covers[k].intersects(sole)) mask.set(k);
  }
  return mask;
}

Branch root_branch(const DenseInstance& dense) {
  Branch root{mandatory_mask(dense), Bitset(dense.target_count)};
  root.uncovered.set();
  for (std::size_t k = root.chosen.find_first(); k != Bitset::npos;
       k = root.chosen.find_next(k)) {
    root.uncovered -= dense.covers[k];
  }
  return root;
}

void add_candidate(const DenseInstance& dense, Branch& branch, std::size_t k) {
  branch.chosen.set(k);
  branch.uncovered -= dense.covers[k];
}

// Candidates (ascending) that cover the maximum number of uncovered targets.
// Requires a non-empty uncovered set that some unchosen candidate can reduce.
std::vector<std::size_t> best_candidates(const DenseInstance& dense, const Branch& branch) {
  std::vector<std::size_t> ties;
  std::size_t best = 0;
  for (std::size_t k = 0; k < dense.candidate_count; ++k) {
    if (branch.chosen.test(k)) continue;
    const std::size_t gain = (dense.covers[k] & branch.uncovered).count();
    if (gain == 0 || gain < best) continue;
    if (gain > best) {
      best = gain;
      ties.clear();
    }
    ties.push_back(k);
  }
  if (ties.empty()) throw std::logic_error("relay selection: uncovered target has no coverer");
  return ties;
}

std::vector<NodeId> to_ids(const CoverInstance& instance, const Bitset& chosen) {
  std::vector<NodeId> ids;
  ids.reserve(chosen.count());
  for (std::size_t k = chosen.find_first(); k != Bitset::npos; k = chosen.find_next(k)) {
    ids.push_back(instance.candidates[k]);
  }
  return ids;
}

// Size first, then lexicographic order of the ascending id lists.
bool better(const std::vector<NodeId>& a, const std::vector<NodeId>& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

}  // namespace

bool RelayAssignment::selected(NodeId selector, NodeId relay) const {
  const auto& relays = relay_sets.at(static_cast<std::size_t>(selector)).relays;
  return std::binary_search(relays.begin(), relays.end(), relay);
}

CoverInstance make_cover_instance(const NeighborTables& tables, NodeId center) {
  CoverInstance instance;
  instance.center = center;
  instance.candidates = tables.one_hop.at(static_cast<std::size_t>(center));
  instance.targets = tables.two_hop.at(static_cast<std::size_t>(center));
  instance.covers.reserve(instance.candidates.size());
  for (NodeId y : instance.candidates) {
    const auto& heard = tables.one_hop[static_cast<std::size_t>(y)];
    std::vector<NodeId> covered;
    std::set_intersection(heard.begin(), heard.end(), instance.targets.begin(),
                          instance.targets.end(), std::back_inserter(covered));
    instance.covers.push_back(std::move(covered));
  }
  return instance;
}

void check_instance(const CoverInstance& instance) {
  const auto fail = [&](const std::string& what) {
    throw std::invalid_argument("cover instance for node " +
                                std::to_string(instance.center) + ": " + what);
  };
  const auto strictly_ascending = [](const std::vector<NodeId>& v) {
    return std::adjacent_find(v.begin(), v.end(), std::greater_equal<>()) == v.end();
  };
  if (instance.covers.size() != instance.candidates.size()) {
    fail("covers and candidates differ in length");
  }
  if (!strictly_ascending(instance.candidates)) fail("candidates not ascending");
  if (!strictly_ascending(instance.targets)) fail("targets not ascending");
  std::vector<char> hit(instance.targets.size(), 0);
  for (const auto& list : instance.covers) {
    if (!strictly_ascending(list)) fail("covers list not ascending");
    for (NodeId z : list) {
      const auto it = std::lower_bound(instance.targets.begin(), instance.targets.end(), z);
      if (it == instance.targets.end() || *it != z) {
        fail("covers names non-target " + std::to_string(z));
      }
      hit[static_cast<std::size_t>(std::distance(instance.targets.begin(), it))] = 1;
    }
  }
  for (std::size_t t = 0; t < hit.size(); ++t) {
    if (!hit[t]) fail("target " + std::to_string(instance.targets[t]) + " is not covered");
  }
}

std::vector<NodeId> mandatory_relays(const CoverInstance& instance) {
  check_instance(instance);
  const DenseInstance dense = densify(instance);
  return to_ids(instance, mandatory_mask(dense));
}

RelaySet greedy_mpr(const CoverInstance& instance) {
  check_instance(instance);
  const DenseInstance dense = densify(instance);
  Branch branch = root_branch(dense);
  while (branch.uncovered.any()) {
    add_candidate(dense, branch, best_candidates(dense, branch).front());
  }
  return RelaySet{instance.center, to_ids(instance, branch.chosen), 1, false};
}

RelaySet ompr_select(const CoverInstance& instance, int branch_cap) {
  if (branch_cap < 1) throw std::invalid_argument("branch_cap must be >= 1");
  check_instance(instance);
  const DenseInstance dense = densify(instance);

  std::vector<Branch> live{root_branch(dense)};
  std::vector<Bitset> complete;
  int sets = 1;
  bool cap_hit = false;

  // Every live set gains exactly one relay per round, so sets that coincide
  // always do so within the same round.
  while (!live.empty()) {
    std::vector<Branch> next;
    std::set<Bitset> seen;
    const auto keep = [&](Branch&& b) {
      if (!seen.insert(b.chosen).second) return false;
      next.push_back(std::move(b));
      return true;
    };
    for (Branch& branch : live) {
      if (branch.uncovered.none()) {
        complete.push_back(std::move(branch.chosen));
        continue;
      }
      const std::vector<std::size_t> ties = best_candidates(dense, branch);
      const Branch parent = ties.size() > 1 ? branch : Branch{};
      add_candidate(dense, branch, ties.front());
      keep(std::move(branch));
      for (std::size_t i = 1; i < ties.size() && !cap_hit; ++i) {
        Branch sibling = parent;
        add_candidate(dense, sibling, ties[i]);
        if (seen.contains(sibling.chosen)) continue;
        if (sets + 1 > branch_cap) {
          cap_hit = true;
          break;
        }
        ++sets;
        keep(std::move(sibling));
      }
    }
    live = std::move(next);
  }

  std::vector<NodeId> best;
  bool have_best = false;
  for (const Bitset& chosen : complete) {
    std::vector<NodeId> ids = to_ids(instance, chosen);
    if (!have_best || better(ids, best)) {
      best = std::move(ids);
      have_best = true;
    }
  }
  return RelaySet{instance.center, std::move(best), sets, cap_hit};
}

RelaySet brute_force_min_cover(const CoverInstance& instance) {
  if (instance.candidates.size() > static_cast<std::size_t>(kBruteForceMaxCandidates)) {
    throw std::invalid_argument("brute_force_min_cover: " +
                                std::to_string(instance.candidates.size()) +
                                " candidates exceeds the limit of " +
                                std::to_string(kBruteForceMaxCandidates));
  }
  check_instance(instance);
  const DenseInstance dense = densify(instance);
  const std::size_t n = dense.candidate_count;
  Bitset all(dense.target_count);
  all.set();

  // Combinations of each size in lexicographic order; the first cover found
  // is therefore the lexicographically smallest minimum.
  for (std::size_t size = 0; size <= n; ++size) {
    std::vector<std::size_t> pick(size);
    for (std::size_t i = 0; i < size; ++i) pick[i] = i;
    while (true) {
      Bitset covered(dense.target_count);
      for (std::size_t k : pick) covered |= dense.covers[k];
      if (covered == all) {
        std::vector<NodeId> ids;
        for (std::size_t k : pick) ids.push_back(instance.candidates[k]);
        return RelaySet{instance.center, std::move(ids), 1, false};
      }
      std::size_t i = size;
      while (i > 0 && pick[i - 1] == n - size + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < size; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  throw std::logic_error("brute_force_min_cover: no cover exists");
}

RelaySet select_relays(const CoverInstance& instance, RelayHeuristic heuristic,
                       int branch_cap) {
  return heuristic == RelayHeuristic::kGreedy ? greedy_mpr(instance)
                                              : ompr_select(instance, branch_cap);
}

RelayAssignment assign_relays(const NeighborTables& tables, RelayHeuristic heuristic,
                              int branch_cap) {
  const int n = tables.node_count();
  RelayAssignment assignment;
  assignment.relay_sets.reserve(static_cast<std::size_t>(n));
  assignment.selectors.resize(static_cast<std::size_t>(n));
  for (NodeId x = 0; x < n; ++x) {
    assignment.relay_sets.push_back(
        select_relays(make_cover_instance(tables, x), heuristic, branch_cap));
    // x ascends, so every selectors list stays sorted.
    for (NodeId y : assignment.relay_sets.back().relays) {
      assignment.selectors[static_cast<std::size_t>(y)].push_back(x);
    }
  }
  return assignment;
}

bool covers_all(const CoverInstance& instance, const std::vector<NodeId>& relays) {
  std::vector<char> hit(instance.targets.size(), 0);
  for (NodeId y : relays) {
    const auto it = std::lower_bound(instance.candidates.begin(), instance.candidates.end(), y);
    if (it == instance.candidates.end() || *it != y) return false;
    const auto& list = instance.covers[static_cast<std::size_t>(it - instance.candidates.begin())];
    for (NodeId z : list) {
      const auto t = std::lower_bound(instance.targets.begin(), instance.targets.end(), z);
      hit[static_cast<std::size_t>(t - instance.targets.begin())] = 1;
    }
  }
  return std::all_of(hit.begin(), hit.end(), [](char h) { return h != 0; });
}

void write_relay_diagnostics(std::ostream& out, const NeighborTables& tables,
                             const RelayAssignment& assignment, bool with_oracle) {
  out << "# node_id n1 n2 mpr sets cap_hit oracle_min\n";
  for (NodeId x = 0; x < assignment.node_count(); ++x) {
    const auto i = static_cast<std::size_t>(x);
    const RelaySet& rs = assignment.relay_sets[i];
    out << x << ' ' << tables.one_hop[i].size() << ' ' << tables.two_hop[i].size() << ' '
        << rs.relays.size() << ' ' << rs.sets_explored << ' ' << (rs.cap_hit ? 1 : 0) << ' ';
    if (with_oracle &&
        tables.one_hop[i].size() <= static_cast<std::size_t>(kBruteForceMaxCandidates)) {
      out << brute_force_min_cover(make_cover_instance(tables, x)).relays.size();
    } else {
      out << '-';
    }
    out << '\n';
  }
}

}  // namespace ompr
