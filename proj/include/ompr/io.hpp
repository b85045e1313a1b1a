#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "ompr/config.hpp"
#include "ompr/harness.hpp"

namespace ompr {

inline constexpr const char* kVersion = "1.0.0";

// Malformed config text. line() is 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& message);
  [[nodiscard]] int line() const { return line_; }

 private:
  int line_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GridSpec {
  double min = 0.5;
  double max = 1.0;
  double step = 0.1;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

struct RunSpec {
  SimConfig config;
  GridSpec grid;
  std::vector<Algorithm> algorithms{Algorithm::kPure, Algorithm::kProbabilistic,
                                    Algorithm::kGreedyMpr, Algorithm::kOmpr};

  [[nodiscard]] std::vector<double> p_c_values() const;

  friend bool operator==(const RunSpec&, const RunSpec&) = default;
};

// key=value per line, '#' starts a comment, blank lines ignored. Unknown
// keys and malformed lines throw ParseError; out-of-range values throw
// ValidationError. Missing keys keep their defaults.
RunSpec parse_config(const std::string& text);

// Comma-separated algorithm tags.
std::vector<Algorithm> parse_algorithm_list(const std::string& text);
// "MIN:MAX:STEP".
GridSpec parse_grid(const std::string& text);

// Resolved run description written next to every result set. Its text form
// is valid config input that reproduces the run.
struct RunManifest {
  RunSpec run;
  std::string version = kVersion;

  [[nodiscard]] double pause_time_s() const;
  [[nodiscard]] std::string to_text() const;
};

// Locale-independent fixed-point rendering with `digits` decimals.
std::string format_fixed(double value, int digits = 6);

std::string format_csv(const SweepResult& result);
// Whitespace-separated columns: p_c, then one column per algorithm.
std::string format_plot(const SweepResult& result, bool rch);
// Human-readable table for stdout.
std::string format_table(const SweepResult& result);

// Writes results.csv, rch.dat, ret.dat and manifest.cfg (plus trace.txt when
// the sweep carries traces) into `dir`, creating it if needed. Throws IoError.
void emit_results(const SweepResult& result, const RunManifest& manifest,
                  const std::filesystem::path& dir);

void write_file(const std::filesystem::path& path, const std::string& contents);

// Command-line driver. Returns 0 on success, 1 on usage/validation errors,
// 2 on I/O errors.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ompr
