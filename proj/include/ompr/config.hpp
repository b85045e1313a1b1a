#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ompr {

// Thrown when a configuration value is outside its allowed range. The message
// names the offending key and the violated bound.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Where link noise applies.
//
//  kDiscovery: links are sampled once per mobility loop; relay selection and
//              every flood of that loop see the same graph.
//  kPerFlood:  relay selection uses the discovery graph, but each flood
//              additionally samples its own delivery graph over the in-range
//              pairs, so a relay chosen from stale neighbor knowledge can miss
//              the packet.
enum class FloodNoise { kDiscovery, kPerFlood };

const char* to_string(FloodNoise noise);
FloodNoise parse_flood_noise(const std::string& text);

// Which received copy lets a relay forward under MPR flooding.
//
//  kFirstCopy:   forward iff the neighbor the first copy came from selected
//                this node as a relay; later copies are discarded.
//  kAnySelector: forward iff any neighbor that delivered a copy in the same
//                hop selected this node.
enum class MprForwarding { kFirstCopy, kAnySelector };

const char* to_string(MprForwarding rule);
MprForwarding parse_mpr_forwarding(const std::string& text);

struct SimConfig {
  int node_count = 100;
  double area_width = 1000.0;   // m
  double area_height = 1000.0;  // m
  double radius = 200.0;        // m
  double speed = 5.0;           // m/s
  double reception_prob = 1.0;  // p_c
  double retrans_prob = 0.8;    // p_r, probabilistic flooding only
  double sim_time = 300.0;      // s
  std::uint64_t master_seed = 1;
  int branch_cap = 10000;
  // 0 means floor(sim_time / pause_time).
  int loops_override = 0;
  FloodNoise flood_noise = FloodNoise::kPerFlood;
  MprForwarding mpr_forwarding = MprForwarding::kFirstCopy;

  friend bool operator==(const SimConfig&, const SimConfig&) = default;
};

// Throws ValidationError on the first violated invariant.
void validate(const SimConfig& config);

// 0.75 * R / u. Throws ValidationError unless R > 0 and u > 0.
double pause_time(double radius, double speed);

// Number of mobility loops: loops_override when set, else floor(T_sim / tau).
// Throws ValidationError when the result would be zero.
int loop_count(const SimConfig& config);

// Distance a node covers between two neighbor-discovery rounds, u * tau.
// Zero when u == 0 so tests can freeze mobility.
double step_length(const SimConfig& config);

}  // namespace ompr
