#include "ompr/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

namespace ompr {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& text, int line) {
  T value{};
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    throw ParseError(line, key + ": '" + text + "' is not a valid number");
  }
  return value;
}

// Shortest representation that parses back to the same double.
std::string format_exact(double value) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, r.ptr);
}

std::string join_algorithms(const std::vector<Algorithm>& algorithms) {
  std::string s;
  for (std::size_t i = 0; i < algorithms.size(); ++i) {
    if (i) s += ',';
    s += to_string(algorithms[i]);
  }
  return s;
}

}  // namespace

ParseError::ParseError(int line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

std::vector<double> RunSpec::p_c_values() const { return make_grid(grid.min, grid.max, grid.step); }

std::vector<Algorithm> parse_algorithm_list(const std::string& text) {
  std::vector<Algorithm> algorithms;
  std::stringstream ss(text);
  std::string tag;
  while (std::getline(ss, tag, ',')) {
    tag = trim(tag);
    if (tag.empty()) continue;
    const Algorithm a = parse_algorithm(tag);
    if (std::find(algorithms.begin(), algorithms.end(), a) == algorithms.end()) {
      algorithms.push_back(a);
    }
  }
  if (algorithms.empty()) throw ValidationError("algorithms: must name at least one algorithm");
  return algorithms;
}

GridSpec parse_grid(const std::string& text) {
  const auto a = text.find(':');
  const auto b = a == std::string::npos ? a : text.find(':', a + 1);
  if (b == std::string::npos || text.find(':', b + 1) != std::string::npos) {
    throw ValidationError("p_c grid: expected MIN:MAX:STEP, got '" + text + "'");
  }
  GridSpec grid;
  try {
    grid.min = parse_number<double>("p_c_min", text.substr(0, a), 0);
    grid.max = parse_number<double>("p_c_max", text.substr(a + 1, b - a - 1), 0);
    grid.step = parse_number<double>("p_c_step", text.substr(b + 1), 0);
  } catch (const ParseError&) {
    throw ValidationError("p_c grid: expected MIN:MAX:STEP, got '" + text + "'");
  }
  make_grid(grid.min, grid.max, grid.step);
  return grid;
}

RunSpec parse_config(const std::string& text) {
  RunSpec spec;
  SimConfig& c = spec.config;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string content = trim(raw.substr(0, raw.find('#')));
    if (content.empty()) continue;
    const auto eq = content.find('=');
    if (eq == std::string::npos) throw ParseError(line, "expected key=value, got '" + content + "'");
    const std::string key = trim(content.substr(0, eq));
    const std::string value = trim(content.substr(eq + 1));
    if (key.empty()) throw ParseError(line, "missing key before '='");
    if (value.empty()) throw ParseError(line, key + ": missing value");

    if (key == "node_count") {
      c.node_count = parse_number<int>(key, value, line);
    } else if (key == "area_width") {
      c.area_width = parse_number<double>(key, value, line);
    } else if (key == "area_height") {
      c.area_height = parse_number<double>(key, value, line);
    } else if (key == "radius") {
      c.radius = parse_number<double>(key, value, line);
    } else if (key == "speed") {
      c.speed = parse_number<double>(key, value, line);
    } else if (key == "retrans_prob") {
      c.retrans_prob = parse_number<double>(key, value, line);
    } else if (key == "sim_time") {
      c.sim_time = parse_number<double>(key, value, line);
    } else if (key == "seed") {
      c.master_seed = parse_number<std::uint64_t>(key, value, line);
    } else if (key == "branch_cap") {
      c.branch_cap = parse_number<int>(key, value, line);
    } else if (key == "loops") {
      c.loops_override = parse_number<int>(key, value, line);
    } else if (key == "flood_noise") {
      c.flood_noise = parse_flood_noise(value);
    } else if (key == "mpr_forwarding") {
      c.mpr_forwarding = parse_mpr_forwarding(value);
    } else if (key == "p_c_min") {
      spec.grid.min = parse_number<double>(key, value, line);
    } else if (key == "p_c_max") {
      spec.grid.max = parse_number<double>(key, value, line);
    } else if (key == "p_c_step") {
      spec.grid.step = parse_number<double>(key, value, line);
    } else if (key == "algorithms") {
      spec.algorithms = parse_algorithm_list(value);
    } else {
      throw ParseError(line, "unknown key '" + key + "'");
    }
  }

  if (!(spec.grid.min >= 0.0 && spec.grid.min <= 1.0)) {
    throw ValidationError("p_c_min: must be within [0, 1]");
  }
  if (!(spec.grid.max >= 0.0 && spec.grid.max <= 1.0)) {
    throw ValidationError("p_c_max: must be within [0, 1]");
  }
  if (spec.grid.max < spec.grid.min) throw ValidationError("p_c_max: must be >= p_c_min");
  if (!(spec.grid.step > 0.0)) throw ValidationError("p_c_step: must be > 0");
  validate(c);
  return spec;
}

double RunManifest::pause_time_s() const {
  return pause_time(run.config.radius, run.config.speed);
}

std::string RunManifest::to_text() const {
  const SimConfig& c = run.config;
  std::ostringstream out;
  out << "# ompr-sim run manifest\n"
      << "# version=" << version << '\n'
      << "# pause_time_s=" << format_exact(pause_time_s()) << '\n'
      << "# loops_resolved=" << loop_count(c) << '\n'
      << "node_count=" << c.node_count << '\n'
      << "area_width=" << format_exact(c.area_width) << '\n'
      << "area_height=" << format_exact(c.area_height) << '\n'
      << "radius=" << format_exact(c.radius) << '\n'
      << "speed=" << format_exact(c.speed) << '\n'
      << "retrans_prob=" << format_exact(c.retrans_prob) << '\n'
      << "sim_time=" << format_exact(c.sim_time) << '\n'
      << "seed=" << c.master_seed << '\n'
      << "branch_cap=" << c.branch_cap << '\n'
      << "loops=" << c.loops_override << '\n'
      << "flood_noise=" << to_string(c.flood_noise) << '\n'
      << "mpr_forwarding=" << to_string(c.mpr_forwarding) << '\n'
      << "p_c_min=" << format_exact(run.grid.min) << '\n'
      << "p_c_max=" << format_exact(run.grid.max) << '\n'
      << "p_c_step=" << format_exact(run.grid.step) << '\n'
      << "algorithms=" << join_algorithms(run.algorithms) << '\n';
  return out.str();
}

std::string format_fixed(double value, int digits) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed, digits);
  return std::string(buf, r.ptr);
}

std::string format_csv(const SweepResult& result) {
  std::string s =
      "algorithm,p_c,rch_mean,rch_stddev,ret_mean,ret_stddev,loops,sources,avg_mpr_sets,"
      "cap_hits\n";
  for (const auto& r : result.rows) {
    s += to_string(r.algorithm);
    s += ',' + format_fixed(r.p_c) + ',' + format_fixed(r.rch_mean) + ',' +
         format_fixed(r.rch_spread) + ',' + format_fixed(r.ret_mean) + ',' +
         format_fixed(r.ret_spread) + ',' + std::to_string(r.loops) + ',' +
         std::to_string(r.sources_per_loop) + ',' + format_fixed(r.avg_relay_sets) + ',' +
         std::to_string(r.cap_hits) + '\n';
  }
  return s;
}

std::string format_plot(const SweepResult& result, bool rch) {
  std::vector<Algorithm> algorithms;
  std::vector<double> grid;
  for (const auto& r : result.rows) {
    if (std::find(algorithms.begin(), algorithms.end(), r.algorithm) == algorithms.end()) {
      algorithms.push_back(r.algorithm);
    }
    if (std::none_of(grid.begin(), grid.end(), [&](double p) { return p == r.p_c; })) {
      grid.push_back(r.p_c);
    }
  }
  std::string s = rch ? "# RCH vs p_c\n# p_c" : "# RET vs p_c\n# p_c";
  for (Algorithm a : algorithms) s += std::string(" ") + to_string(a);
  s += '\n';
  for (double p : grid) {
    s += format_fixed(p);
    for (Algorithm a : algorithms) {
      const SweepRow* row = result.find(a, p);
      s += ' ';
      s += row == nullptr ? std::string("nan") : format_fixed(rch ? row->rch_mean : row->ret_mean);
    }
    s += '\n';
  }
  return s;
}

std::string format_table(const SweepResult& result) {
  std::string s;
  char line[160];
  std::snprintf(line, sizeof line, "%-11s %5s %8s %8s %8s %8s %6s %9s %5s\n", "algorithm",
                "p_c", "RCH", "RCH_sd", "RET", "RET_sd", "loops", "avg_sets", "caps");
  s += line;
  for (const auto& r : result.rows) {
    std::snprintf(line, sizeof line, "%-11s %5.2f %8.4f %8.4f %8.4f %8.4f %6d %9.2f %5d\n",
                  to_string(r.algorithm), r.p_c, r.rch_mean, r.rch_spread, r.ret_mean,
                  r.ret_spread, r.loops, r.avg_relay_sets, r.cap_hits);
    s += line;
  }
  return s;
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

void emit_results(const SweepResult& result, const RunManifest& manifest,
                  const std::filesystem::path& dir) {
  if (result.rows.empty()) throw std::invalid_argument("emit_results: empty sweep");
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create '" + dir.string() + "': " + ec.message());
  write_file(dir / "results.csv", format_csv(result));
  write_file(dir / "rch.dat", format_plot(result, true));
  write_file(dir / "ret.dat", format_plot(result, false));
  write_file(dir / "manifest.cfg", manifest.to_text());
  if (!result.traces.empty()) {
    std::string all = "# algorithm p_c loop source hop transmitter receiver\n";
    for (std::size_t i = 0; i < result.rows.size(); ++i) {
      const std::string prefix = std::string(to_string(result.rows[i].algorithm)) + ' ' +
                                 format_fixed(result.rows[i].p_c, 2) + ' ';
      std::istringstream lines(result.traces[i]);
      for (std::string l; std::getline(lines, l);) all += prefix + l + '\n';
    }
    write_file(dir / "trace.txt", all);
  }
}

}  // namespace ompr
