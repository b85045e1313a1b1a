#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ompr/io.hpp"

namespace ompr {
namespace {

namespace fs = std::filesystem;

// Fresh directory under the system temp dir, removed on scope exit.
struct ScratchDir {
  fs::path path;
  explicit ScratchDir(const std::string& name)
      : path(fs::temp_directory_path() / ("ompr_io_test_" + name)) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~ScratchDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int count_lines(const std::string& s) {
  return static_cast<int>(std::count(s.begin(), s.end(), '\n'));
}

int run_cli(std::vector<std::string> args, std::string* out = nullptr, std::string* err = nullptr) {
  args.insert(args.begin(), "ompr_sim");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream o;
  std::ostringstream e;
  const int code = cli_main(static_cast<int>(argv.size()), argv.data(), o, e);
  if (out) *out = o.str();
  if (err) *err = e.str();
  return code;
}

SweepResult small_sweep(unsigned threads = 1) {
  SimConfig c;
  c.loops_override = 2;
  const auto grid = make_grid(0.5, 1.0, 0.1);
  const std::vector<Algorithm> algs{Algorithm::kPure, Algorithm::kProbabilistic,
                                    Algorithm::kOmpr};
  return run_sweep(c, grid, algs, SweepOptions{threads, false});
}

TEST_CASE("parse_config defaults and overrides") {
  const RunSpec empty = parse_config("");
  CHECK(empty == RunSpec{});
  CHECK(empty.config.node_count == 100);
  CHECK(empty.p_c_values().size() == 6);

  const RunSpec spec = parse_config(
      "# comment line\n"
      "\n"
      "node_count = 50   # trailing comment\n"
      "radius=100\n"
      "speed=2.5\n"
      "seed=18446744073709551615\n"
      "flood_noise=discovery\n"
      "mpr_forwarding=any\n"
      "algorithms=ompr, pure\n"
      "p_c_min=0.2\n"
      "p_c_max=0.4\n"
      "p_c_step=0.1\n");
  CHECK(spec.config.node_count == 50);
  CHECK(spec.config.radius == 100.0);
  CHECK(spec.config.master_seed == 18446744073709551615ull);
  CHECK(spec.config.flood_noise == FloodNoise::kDiscovery);
  CHECK(spec.config.mpr_forwarding == MprForwarding::kAnySelector);
  CHECK(spec.algorithms == std::vector<Algorithm>{Algorithm::kOmpr, Algorithm::kPure});
  CHECK(spec.p_c_values().size() == 3);
  CHECK(RunManifest{spec}.pause_time_s() == doctest::Approx(30.0));
}

TEST_CASE("shipped config parses") {
  const RunSpec spec = parse_config(slurp(fs::path(OMPR_SOURCE_DIR) / "configs" / "default.cfg"));
  CHECK(spec.config.loops_override == 30);
  CHECK(spec.algorithms.size() == 4);
  CHECK(spec.p_c_values().size() == 6);
}

TEST_CASE("parse_config rejects bad input") {
  CHECK_THROWS_AS(parse_config("p_c_min=1.2\n"), ValidationError);
  CHECK_THROWS_AS(parse_config("radius=-1\n"), ValidationError);
  CHECK_THROWS_AS(parse_config("retrans_prob=2\n"), ValidationError);
  CHECK_THROWS_AS(parse_config("p_c_min=0.9\np_c_max=0.5\n"), ValidationError);
  CHECK_THROWS_AS(parse_config("algorithms=flood\n"), ValidationError);
  CHECK_THROWS_AS(parse_config("flood_noise=sometimes\n"), ValidationError);

  try {
    parse_config("node_count=10\n\n# fine\nradius 200\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
  }
  try {
    parse_config("node_count=10\nfrobnicate=3\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(std::string(e.what()).find("frobnicate") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_config("node_count=ten\n"), ParseError);
  CHECK_THROWS_AS(parse_config("node_count=10.5\n"), ParseError);
  CHECK_THROWS_AS(parse_config("radius=\n"), ParseError);
}

TEST_CASE("parse_grid and parse_algorithm_list") {
  CHECK(parse_grid("0.5:1:0.1") == GridSpec{0.5, 1.0, 0.1});
  CHECK_THROWS_AS(parse_grid("0.5:1"), ValidationError);
  CHECK_THROWS_AS(parse_grid("a:1:0.1"), ValidationError);
  CHECK_THROWS_AS(parse_grid("0.5:1:0.1:3"), ValidationError);
  CHECK(parse_algorithm_list("pure,pure,prob") ==
        std::vector<Algorithm>{Algorithm::kPure, Algorithm::kProbabilistic});
  CHECK_THROWS_AS(parse_algorithm_list(" , "), ValidationError);
}

TEST_CASE("manifest round-trips through parse_config") {
  RunSpec spec;
  spec.config.node_count = 37;
  spec.config.radius = 123.456789012345;
  spec.config.speed = 0.1;
  spec.config.master_seed = 987654321;
  spec.config.loops_override = 4;
  spec.config.branch_cap = 17;
  spec.config.flood_noise = FloodNoise::kDiscovery;
  spec.grid = GridSpec{0.3, 0.9, 0.3};
  spec.algorithms = {Algorithm::kGreedyMpr};
  const RunManifest manifest{spec};
  const std::string text = manifest.to_text();
  CHECK(parse_config(text) == spec);
  CHECK(text.find("# version=1.0.0\n") != std::string::npos);
  CHECK(text.find("# loops_resolved=4\n") != std::string::npos);

  const RunManifest defaults{RunSpec{}};
  CHECK(parse_config(defaults.to_text()) == RunSpec{});
  CHECK(defaults.to_text().find("# pause_time_s=30\n") != std::string::npos);
}

TEST_CASE("format_fixed is locale independent") {
  CHECK(format_fixed(0.5) == "0.500000");
  CHECK(format_fixed(1.0 / 3.0, 4) == "0.3333");
  CHECK(format_fixed(0.0) == "0.000000");
}

TEST_CASE("CSV and plot files") {
  const SweepResult sweep = small_sweep();
  const std::string csv = format_csv(sweep);
  CHECK(count_lines(csv) == 19);
  CHECK(csv.rfind("algorithm,p_c,rch_mean,rch_stddev,ret_mean,ret_stddev,loops,sources,"
                  "avg_mpr_sets,cap_hits\n", 0) == 0);
  std::istringstream rows(csv);
  std::string line;
  std::getline(rows, line);
  while (std::getline(rows, line)) CHECK(std::count(line.begin(), line.end(), ',') == 9);

  const std::string plot = format_plot(sweep, true);
  CHECK(plot.rfind("# RCH vs p_c\n# p_c pure prob ompr\n", 0) == 0);
  CHECK(count_lines(plot) == 2 + 6);
  CHECK(format_plot(sweep, false).rfind("# RET vs p_c\n", 0) == 0);

  SimConfig c;
  c.loops_override = 1;
  const std::vector<double> one{1.0};
  const std::vector<Algorithm> pure{Algorithm::kPure};
  const auto single = run_sweep(c, one, pure);
  CHECK(count_lines(format_plot(single, true)) == 3);
  CHECK(count_lines(format_table(single)) == 2);
}

TEST_CASE("emit_results") {
  ScratchDir a("emit_a");
  ScratchDir b("emit_b");
  const RunManifest manifest{RunSpec{}};
  emit_results(small_sweep(1), manifest, a.path / "nested");
  emit_results(small_sweep(3), manifest, b.path / "nested");
  for (const char* name : {"results.csv", "rch.dat", "ret.dat", "manifest.cfg"}) {
    const std::string left = slurp(a.path / "nested" / name);
    CHECK(!left.empty());
    CHECK(left == slurp(b.path / "nested" / name));
  }
  CHECK_FALSE(fs::exists(a.path / "nested" / "trace.txt"));

  // A regular file where a directory is expected.
  write_file(a.path / "blocker", "x");
  CHECK_THROWS_AS(emit_results(small_sweep(), manifest, a.path / "blocker" / "out"), IoError);
  CHECK_THROWS_AS(write_file(a.path / "missing" / "f.txt", "x"), IoError);
}

TEST_CASE("command line") {
  ScratchDir dir("cli");
  std::string out;
  std::string err;

  SUBCASE("grid fixture") {
    CHECK(run_cli({"--grid-fixture"}, &out) == 0);
    CHECK(out.find("pure flooding: reach 48/48") != std::string::npos);
    CHECK(out.find("ompr flooding: reach 48/48") != std::string::npos);
  }

  SUBCASE("help") {
    CHECK(run_cli({"--help"}, &out) == 0);
    CHECK(out.find("--config") != std::string::npos);
  }

  SUBCASE("unknown flag prints usage") {
    CHECK(run_cli({"--bogus"}, &out, &err) == 1);
    CHECK(err.find("--pc") != std::string::npos);
  }

  SUBCASE("single cell run writes results") {
    const fs::path target = dir.path / "run";
    CHECK(run_cli({"--algorithms", "pure", "--pc", "1.0:1.0:0.1", "--out", target.string()},
                  &out, &err) == 0);
    CHECK(count_lines(slurp(target / "results.csv")) == 2);
    const RunSpec echoed = parse_config(slurp(target / "manifest.cfg"));
    CHECK(echoed.algorithms == std::vector<Algorithm>{Algorithm::kPure});
    CHECK(echoed.grid == GridSpec{1.0, 1.0, 0.1});
  }

  SUBCASE("seed flag, trace and dump") {
    const fs::path target = dir.path / "dumped";
    write_file(dir.path / "small.cfg", "node_count=12\nloops=1\nalgorithms=ompr\np_c_min=0.9\n");
    CHECK(run_cli({"--config", (dir.path / "small.cfg").string(), "--seed", "5", "--trace",
                   "--dump", "--out", target.string()},
                  &out, &err) == 0);
    CHECK(parse_config(slurp(target / "manifest.cfg")).config.master_seed == 5);
    CHECK(slurp(target / "trace.txt").rfind("# algorithm p_c loop source hop transmitter receiver\n",
                                            0) == 0);
    CHECK(slurp(target / "snapshot_pc0.90.txt").rfind("# loop 0 p_c 0.9\n# node_id x y\n", 0) == 0);
    CHECK(fs::exists(target / "relays_pc1.00.txt"));
  }

  SUBCASE("bad config value") {
    write_file(dir.path / "bad.cfg", "radius=abc\n");
    CHECK(run_cli({"--config", (dir.path / "bad.cfg").string()}, &out, &err) == 1);
    CHECK(err.find("line 1") != std::string::npos);
    write_file(dir.path / "range.cfg", "p_c_min=1.2\n");
    CHECK(run_cli({"--config", (dir.path / "range.cfg").string()}, &out, &err) == 1);
    CHECK(run_cli({"--pc", "0.9:0.1:0.1"}, &out, &err) == 1);
  }

  SUBCASE("I/O failures") {
    CHECK(run_cli({"--config", (dir.path / "absent.cfg").string()}, &out, &err) == 2);
    write_file(dir.path / "blocker", "x");
    CHECK(run_cli({"--algorithms", "pure", "--pc", "1:1:0.1", "--out",
                   (dir.path / "blocker" / "out").string()},
                  &out, &err) == 2);
  }
}

}  // namespace
}  // namespace ompr
