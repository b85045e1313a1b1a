#include <fstream>
#include <ostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ompr/flood.hpp"
#include "ompr/io.hpp"
#include "ompr/mpr.hpp"

namespace ompr {
namespace {

constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void print_grid_fixture(std::ostream& out) {
  const GridFixtureResult r = run_grid_fixture();
  const auto others = static_cast<int>(r.pure.hops.size()) - 1;
  out << "7x7 grid, R=1.5, p_c=1, source at centre\n";
  out << "pure flooding: reach " << r.pure.received.size() << '/' << others
      << ", retransmissions through ring " << r.rings << ": " << r.pure_retransmissions
      << ", RCH " << format_fixed(static_cast<double>(r.pure.received.size()) / others, 4)
      << ", RET " << format_fixed(static_cast<double>(r.pure.transmitted.size()) / others, 4)
      << '\n';
  out << "ompr flooding: reach " << r.mpr.received.size() << '/' << others
      << ", retransmissions through ring " << r.rings << ": " << r.mpr_retransmissions
      << ", RCH " << format_fixed(static_cast<double>(r.mpr.received.size()) / others, 4)
      << ", RET " << format_fixed(static_cast<double>(r.mpr.transmitted.size()) / others, 4)
      << '\n';
}

// Loop-0 snapshot and relay diagnostics for every p_c in the grid.
void dump_first_loop(const RunSpec& spec, const std::filesystem::path& dir) {
  const StreamKey root(spec.config.master_seed);
  const auto positions = place_nodes(spec.config, root.with(Purpose::kPlacement));
  for (double p_c : spec.p_c_values()) {
    const NetworkSnapshot snap = sample_links(
        positions, spec.config.radius, p_c, root.with(Purpose::kDiscoveryLinks).with(0), 0);
    const NeighborTables tables = build_neighbor_tables(snap);
    const RelayAssignment relays =
        assign_relays(tables, RelayHeuristic::kOmpr, spec.config.branch_cap);
    const std::string tag = format_fixed(p_c, 2);
    std::ostringstream s;
    write_snapshot(s, snap);
    write_file(dir / ("snapshot_pc" + tag + ".txt"), s.str());
    std::ostringstream d;
    write_relay_diagnostics(d, tables, relays, true);
    write_file(dir / ("relays_pc" + tag + ".txt"), d.str());
  }
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"ompr-sim: RREQ flooding and relay selection in noisy MANETs"};
  std::string config_path;
  std::uint64_t seed = 0;
  std::string out_dir = "results";
  std::string algorithms;
  std::string pc;
  unsigned threads = 0;
  bool trace = false;
  bool grid_fixture = false;
  bool dump = false;
  app.add_option("--config", config_path, "Config file (key=value per line)");
  auto* seed_opt = app.add_option("--seed", seed, "Master seed (overrides config)");
  app.add_option("--out", out_dir, "Output directory")->capture_default_str();
  app.add_option("--algorithms", algorithms, "Comma list of pure,prob,greedy-mpr,ompr");
  app.add_option("--pc", pc, "p_c grid as MIN:MAX:STEP");
  app.add_option("--threads", threads, "Worker threads, 0 = all cores")->capture_default_str();
  app.add_flag("--trace", trace, "Write per-flood event traces to trace.txt");
  app.add_flag("--grid-fixture", grid_fixture, "Run the 7x7 lattice fixture and exit");
  app.add_flag("--dump", dump, "Write loop-0 snapshots and relay diagnostics");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << app.help();
    return kExitValidation;
  }

  try {
    if (grid_fixture) {
      print_grid_fixture(out);
      return 0;
    }
    RunSpec spec = config_path.empty() ? RunSpec{} : parse_config(read_file(config_path));
    if (*seed_opt) spec.config.master_seed = seed;
    if (!algorithms.empty()) spec.algorithms = parse_algorithm_list(algorithms);
    if (!pc.empty()) spec.grid = parse_grid(pc);
    validate(spec.config);

    const std::vector<double> grid = spec.p_c_values();
    const SweepResult result =
        run_sweep(spec.config, grid, spec.algorithms, SweepOptions{threads, trace});
    out << format_table(result);
    const std::filesystem::path dir(out_dir);
    emit_results(result, RunManifest{spec}, dir);
    if (dump) dump_first_loop(spec, dir);
    out << "wrote " << (dir / "results.csv").string() << '\n';
    return 0;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const ParseError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const ValidationError& e) {
    err << "invalid value: " << e.what() << '\n';
    return kExitValidation;
  }
}

}  // namespace ompr
