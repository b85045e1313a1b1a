#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "ompr/config.hpp"
#include "ompr/flood.hpp"
#include "ompr/geometry.hpp"

namespace ompr {

enum class Algorithm { kPure, kProbabilistic, kGreedyMpr, kOmpr };

// CLI tags: pure, prob, greedy-mpr, ompr.
const char* to_string(Algorithm algorithm);
Algorithm parse_algorithm(const std::string& tag);
bool uses_relays(Algorithm algorithm);

// Running sums of per-loop RCH/RET.
class MetricsAccumulator {
 public:
  void add(double rch, double ret);

  [[nodiscard]] int trials() const { return trials_; }
  [[nodiscard]] double rch_mean() const;
  [[nodiscard]] double ret_mean() const;
  // Sample standard deviation across trials; 0 with fewer than two.
  [[nodiscard]] double rch_stddev() const;
  [[nodiscard]] double ret_stddev() const;

 private:
  double sum_rch_ = 0.0;
  double sum_ret_ = 0.0;
  double sum_sq_rch_ = 0.0;
  double sum_sq_ret_ = 0.0;
  int trials_ = 0;
};

struct LoopMetrics {
  double rx_fraction = 0.0;  // mean over sources of Rx / (n - 1)
  double tx_fraction = 0.0;  // mean over sources of Tx / (n - 1)
  double relay_sets_total = 0.0;  // sum of sets_explored over nodes (relay algorithms)
  int cap_hits = 0;
};

// One neighbor-discovery round plus a flood from every node. Streams are
// derived from config.master_seed and loop_index only, never from p_c or the
// algorithm, so different cells see common random numbers. Trace lines are
// "loop source hop transmitter receiver".
LoopMetrics run_loop(const SimConfig& config, std::span<const NodePosition> positions,
                     Algorithm algorithm, int loop_index, std::ostream* trace = nullptr);

struct ExperimentResult {
  MetricsAccumulator metrics;
  int loops = 0;
  int sources_per_loop = 0;
  double avg_relay_sets = 0.0;  // mean sets_explored per node selection
  int cap_hits = 0;
};

// loop_count(config) loops with mobility between them. Throws
// ValidationError for an invalid config or fewer than two nodes.
ExperimentResult run_experiment(const SimConfig& config, Algorithm algorithm,
                                std::ostream* trace = nullptr);

struct SweepRow {
  Algorithm algorithm = Algorithm::kPure;
  double p_c = 1.0;
  double rch_mean = 0.0;
  double rch_spread = 0.0;
  double ret_mean = 0.0;
  double ret_spread = 0.0;
  int loops = 0;
  int sources_per_loop = 0;
  double avg_relay_sets = 0.0;
  int cap_hits = 0;
};

struct SweepResult {
  std::vector<SweepRow> rows;       // algorithm-major, then p_c ascending as given
  std::vector<std::string> traces;  // per row when tracing, else empty

  [[nodiscard]] const SweepRow* find(Algorithm algorithm, double p_c) const;
};

struct SweepOptions {
  unsigned threads = 1;  // 0 selects std::thread::hardware_concurrency()
  bool trace = false;
};

SweepResult run_sweep(const SimConfig& config, std::span<const double> p_c_grid,
                      std::span<const Algorithm> algorithms, const SweepOptions& options = {});

// min, min+step, ..., max (inclusive, tolerant to rounding). Throws
// ValidationError on an empty or out-of-range grid.
std::vector<double> make_grid(double min, double max, double step);

// side x side lattice with unit spacing, row-major ids.
std::vector<NodePosition> lattice_positions(int side);

struct GridFixtureResult {
  FloodOutcome pure;
  FloodOutcome mpr;
  int rings = 0;                 // hop distance of the outer ring
  int pure_retransmissions = 0;  // forwarders needed to reach the outer ring
  int mpr_retransmissions = 0;
};

// 7x7 lattice, R = 1.5, p_c = 1, source in the centre, OMPR relays.
GridFixtureResult run_grid_fixture();

}  // namespace ompr
