#include "ompr/config.hpp"

#include <cmath>

namespace ompr {
namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw ValidationError(message);
}

}  // namespace

const char* to_string(FloodNoise noise) {
  switch (noise) {
    case FloodNoise::kDiscovery:
      return "discovery";
    case FloodNoise::kPerFlood:
      return "per-flood";
  }
  return "?";
}

FloodNoise parse_flood_noise(const std::string& text) {
  if (text == "discovery") return FloodNoise::kDiscovery;
  if (text == "per-flood") return FloodNoise::kPerFlood;
  throw ValidationError("flood_noise: expected 'discovery' or 'per-flood', got '" +
                        text + "'");
}

const char* to_string(MprForwarding rule) {
  switch (rule) {
    case MprForwarding::kFirstCopy:
      return "first-copy";
    case MprForwarding::kAnySelector:
      return "any";
  }
  return "?";
}

MprForwarding parse_mpr_forwarding(const std::string& text) {
  if (text == "first-copy") return MprForwarding::kFirstCopy;
  if (text == "any") return MprForwarding::kAnySelector;
  throw ValidationError("mpr_forwarding: expected 'first-copy' or 'any', got '" + text + "'");
}

double pause_time(double radius, double speed) {
  require(radius > 0.0, "radius: must be > 0");
  require(speed > 0.0, "speed: must be > 0 (a zero-speed run must set loops)");
  return 0.75 * radius / speed;
}

void validate(const SimConfig& c) {
  require(c.node_count >= 1, "node_count: must be >= 1");
  require(c.area_width > 0.0, "area_width: must be > 0");
  require(c.area_height > 0.0, "area_height: must be > 0");
  require(c.radius > 0.0, "radius: must be > 0");
  require(c.speed > 0.0, "speed: must be > 0");
  require(c.sim_time > 0.0, "sim_time: must be > 0");
  require(c.reception_prob >= 0.0 && c.reception_prob <= 1.0,
          "p_c: must be within [0, 1]");
  require(c.retrans_prob >= 0.0 && c.retrans_prob <= 1.0,
          "retrans_prob: must be within [0, 1]");
  require(c.branch_cap >= 1, "branch_cap: must be >= 1");
  require(c.loops_override >= 0, "loops: must be >= 0");
  loop_count(c);
}

int loop_count(const SimConfig& c) {
  if (c.loops_override > 0) return c.loops_override;
  const double loops = std::floor(c.sim_time / pause_time(c.radius, c.speed));
  require(loops >= 1.0, "sim_time: must be >= one pause time (0.75 * radius / speed)");
  return static_cast<int>(loops);
}

double step_length(const SimConfig& c) {
  if (c.speed == 0.0) return 0.0;
  return c.speed * pause_time(c.radius, c.speed);
}

}  // namespace ompr
