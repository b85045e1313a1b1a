#include "ompr/harness.hpp"

#include <atomic>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "ompr/mpr.hpp"

namespace ompr {
namespace {

void trace_flood(std::ostream* out, int loop, NodeId source, const FloodTrace& events) {
  if (out == nullptr) return;
  for (const auto& e : events) {
    *out << loop << ' ' << source << ' ' << e.hop << ' ' << e.transmitter << ' '
         << e.receiver << '\n';
  }
}

double sample_stddev(double sum, double sum_sq, int n) {
  if (n < 2) return 0.0;
  const double mean = sum / n;
  const double var = (sum_sq - n * mean * mean) / (n - 1);
  return var > 0.0 ? std::sqrt(var) : 0.0;
}

}  // namespace

const char* to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kPure:
      return "pure";
    case Algorithm::kProbabilistic:
      return "prob";
    case Algorithm::kGreedyMpr:
      return "greedy-mpr";
    case Algorithm::kOmpr:
      return "ompr";
  }
  return "?";
}

Algorithm parse_algorithm(const std::string& tag) {
  for (Algorithm a : {Algorithm::kPure, Algorithm::kProbabilistic, Algorithm::kGreedyMpr,
                      Algorithm::kOmpr}) {
    if (tag == to_string(a)) return a;
  }
  throw ValidationError("algorithms: unknown tag '" + tag +
                        "' (expected pure, prob, greedy-mpr, ompr)");
}

bool uses_relays(Algorithm algorithm) {
  return algorithm == Algorithm::kGreedyMpr || algorithm == Algorithm::kOmpr;
}

void MetricsAccumulator::add(double rch, double ret) {
  sum_rch_ += rch;
  sum_ret_ += ret;
  sum_sq_rch_ += rch * rch;
  sum_sq_ret_ += ret * ret;
  ++trials_;
}

double MetricsAccumulator::rch_mean() const { return trials_ ? sum_rch_ / trials_ : 0.0; }
double MetricsAccumulator::ret_mean() const { return trials_ ? sum_ret_ / trials_ : 0.0; }
double MetricsAccumulator::rch_stddev() const {
  return sample_stddev(sum_rch_, sum_sq_rch_, trials_);
}
double MetricsAccumulator::ret_stddev() const {
  return sample_stddev(sum_ret_, sum_sq_ret_, trials_);
}

LoopMetrics run_loop(const SimConfig& config, std::span<const NodePosition> positions,
                     Algorithm algorithm, int loop_index, std::ostream* trace) {
  const int n = static_cast<int>(positions.size());
  if (n < 2) throw ValidationError("node_count: metric runs need at least 2 nodes");
  const StreamKey root(config.master_seed);
  const auto loop = static_cast<std::uint64_t>(loop_index);
  const double p_c = config.reception_prob;

  const AdjacencyList range = in_range(positions, config.radius);
  const NetworkSnapshot discovery =
      sample_links(positions, range, p_c, root.with(Purpose::kDiscoveryLinks).with(loop),
                   loop_index);

  LoopMetrics metrics;
  RelayAssignment assignment;
  if (uses_relays(algorithm)) {
    const RelayHeuristic heuristic =
        algorithm == Algorithm::kOmpr ? RelayHeuristic::kOmpr : RelayHeuristic::kGreedy;
    assignment = assign_relays(build_neighbor_tables(discovery), heuristic, config.branch_cap);
    for (const RelaySet& rs : assignment.relay_sets) {
      metrics.relay_sets_total += rs.sets_explored;
      metrics.cap_hits += rs.cap_hit ? 1 : 0;
    }
  }

  double rx_sum = 0.0;
  double tx_sum = 0.0;
  FloodTrace events;
  FloodTrace* events_ptr = trace != nullptr ? &events : nullptr;
  for (NodeId source = 0; source < n; ++source) {
    const auto src = static_cast<std::uint64_t>(source);
    NetworkSnapshot per_flood;
    const NetworkSnapshot* graph = &discovery;
    if (config.flood_noise == FloodNoise::kPerFlood && p_c < 1.0) {
      per_flood = sample_links(positions, range, p_c,
                               root.with(Purpose::kFloodLinks).with({loop, src}), loop_index);
      graph = &per_flood;
    }
    events.clear();
    FloodOutcome outcome;
    switch (algorithm) {
      case Algorithm::kPure:
        outcome = flood_pure(*graph, source, events_ptr);
        break;
      case Algorithm::kProbabilistic:
        outcome = flood_probabilistic(*graph, source, config.retrans_prob,
                                      root.with(Purpose::kRetransmit).with({loop, src}).stream(),
                                      events_ptr);
        break;
      case Algorithm::kGreedyMpr:
      case Algorithm::kOmpr:
        outcome = flood_mpr(*graph, assignment, source, config.mpr_forwarding, events_ptr);
        break;
    }
    trace_flood(trace, loop_index, source, events);
    rx_sum += static_cast<double>(outcome.received.size()) / (n - 1);
    tx_sum += static_cast<double>(outcome.transmitted.size()) / (n - 1);
  }
  metrics.rx_fraction = rx_sum / n;
  metrics.tx_fraction = tx_sum / n;
  return metrics;
}

ExperimentResult run_experiment(const SimConfig& config, Algorithm algorithm,
                                std::ostream* trace) {
  validate(config);
  if (config.node_count < 2) {
    throw ValidationError("node_count: metric runs need at least 2 nodes");
  }
  const StreamKey root(config.master_seed);
  ExperimentResult result;
  result.loops = loop_count(config);
  result.sources_per_loop = config.node_count;

  std::vector<NodePosition> positions = place_nodes(config, root.with(Purpose::kPlacement));
  double sets_total = 0.0;
  for (int loop = 0; loop < result.loops; ++loop) {
    const LoopMetrics m = run_loop(config, positions, algorithm, loop, trace);
    result.metrics.add(m.rx_fraction, m.tx_fraction);
    sets_total += m.relay_sets_total;
    result.cap_hits += m.cap_hits;
    positions = step_mobility(
        positions, config,
        root.with(Purpose::kMobility).with(static_cast<std::uint64_t>(loop)));
  }
  if (uses_relays(algorithm)) {
    result.avg_relay_sets = sets_total / (static_cast<double>(result.loops) * config.node_count);
  }
  return result;
}

const SweepRow* SweepResult::find(Algorithm algorithm, double p_c) const {
  for (const auto& row : rows) {
    if (row.algorithm == algorithm && std::abs(row.p_c - p_c) < 1e-9) return &row;
  }
  return nullptr;
}

SweepResult run_sweep(const SimConfig& config, std::span<const double> p_c_grid,
                      std::span<const Algorithm> algorithms, const SweepOptions& options) {
  if (p_c_grid.empty()) throw ValidationError("p_c grid: must not be empty");
  if (algorithms.empty()) throw ValidationError("algorithms: must not be empty");
  for (double p_c : p_c_grid) {
    SimConfig cell = config;
    cell.reception_prob = p_c;
    validate(cell);
  }

  struct Cell {
    Algorithm algorithm;
    double p_c;
  };
  std::vector<Cell> cells;
  for (Algorithm a : algorithms) {
    for (double p_c : p_c_grid) cells.push_back({a, p_c});
  }

  SweepResult result;
  result.rows.resize(cells.size());
  if (options.trace) result.traces.resize(cells.size());

  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      SimConfig cell_config = config;
      cell_config.reception_prob = cells[i].p_c;
      std::ostringstream trace;
      const ExperimentResult r =
          run_experiment(cell_config, cells[i].algorithm, options.trace ? &trace : nullptr);
      result.rows[i] = SweepRow{cells[i].algorithm,     cells[i].p_c,
                                r.metrics.rch_mean(),   r.metrics.rch_stddev(),
                                r.metrics.ret_mean(),   r.metrics.ret_stddev(),
                                r.loops,                r.sources_per_loop,
                                r.avg_relay_sets,       r.cap_hits};
      if (options.trace) result.traces[i] = trace.str();
    }
  };

  unsigned threads = options.threads == 0 ? std::thread::hardware_concurrency() : options.threads;
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(cells.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  return result;
}

std::vector<double> make_grid(double min, double max, double step) {
  if (!(min >= 0.0 && max <= 1.0 && min <= max)) {
    throw ValidationError("p_c grid: need 0 <= min <= max <= 1");
  }
  if (!(step > 0.0)) throw ValidationError("p_c grid: step must be > 0");
  const auto count = static_cast<int>(std::floor((max - min) / step + 1e-9)) + 1;
  std::vector<double> grid;
  for (int i = 0; i < count; ++i) {
    // Round to 1e-12 so 0.5 + 3 * 0.1 prints and compares as 0.8.
    grid.push_back(std::round((min + i * step) * 1e12) / 1e12);
  }
  return grid;
}

std::vector<NodePosition> lattice_positions(int side) {
  std::vector<NodePosition> positions;
  for (int r = 0; r < side; ++r) {
    for (int c = 0; c < side; ++c) {
      positions.push_back({r * side + c, static_cast<double>(c), static_cast<double>(r)});
    }
  }
  return positions;
}

GridFixtureResult run_grid_fixture() {
  constexpr int kSide = 7;
  const auto positions = lattice_positions(kSide);
  const NetworkSnapshot snap = sample_links(positions, 1.5, 1.0, StreamKey(0));
  const NodeId center = (kSide / 2) * kSide + kSide / 2;
  const RelayAssignment relays = assign_relays(build_neighbor_tables(snap));

  GridFixtureResult r;
  r.pure = flood_pure(snap, center);
  r.mpr = flood_mpr(snap, relays, center, MprForwarding::kFirstCopy);
  r.rings = kSide / 2;
  r.pure_retransmissions = r.pure.retransmissions_before_hop(r.rings);
  r.mpr_retransmissions = r.mpr.retransmissions_before_hop(r.rings);
  return r;
}

}  // namespace ompr
