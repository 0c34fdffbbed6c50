#include "hybridsail/cli.h"

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "hybridsail/config.h"
#include "hybridsail/experiment.h"
#include "hybridsail/io.h"
#include "hybridsail/numfmt.h"

namespace hybridsail {

namespace fs = std::filesystem;

namespace {

// Console summaries only; the files keep round-trip precision.
std::string Fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

RunConfig ConfigFrom(const std::string& path) {
  return path.empty() ? RunConfig{} : LoadConfig(path);
}

int Simulate(const std::string& config_path, std::optional<double> theta,
             std::optional<int> loops, std::optional<std::uint64_t> seed,
             std::optional<std::string> out_dir, std::ostream& out) {
  RunConfig cfg = ConfigFrom(config_path);
  if (theta) cfg.mission.theta_setting = *theta;
  if (loops) cfg.mission.loops_target = *loops;
  if (seed) cfg.seed = *seed;
  if (out_dir) cfg.output_dir = *out_dir;
  Validate(cfg);

  const CruiseResult run =
      RunCruise(cfg, cfg.mission.theta_setting, cfg.mission.loops_target, cfg.seed);
  const fs::path dir(cfg.output_dir);
  fs::create_directories(dir);
  WriteFile(dir / "trajectory.csv", [&](std::ostream& o) { WriteTrajectoryCsv(o, run); });
  WriteFile(dir / "energy.csv", [&](std::ostream& o) { WriteEnergyCsv(o, run.ledger); });
  WriteFile(dir / "events.csv", [&](std::ostream& o) { WriteEventsCsv(o, run); });
  WriteFile(dir / "summary.txt",
            [&](std::ostream& o) { WriteCruiseSummary(o, run, cfg); });

  out << "theta " << FormatDouble(run.theta) << " deg: " << run.loops.size()
      << " loops in " << Fixed(run.duration, 2) << " s, "
      << Fixed(run.total_energy(), 2) << " J, " << run.tack_count
      << " tacks\n";
  if (run.timed_out) {
    out << "timed out after " << FormatDouble(cfg.timeout) << " s\n";
    return kExitTimeout;
  }
  return kExitOk;
}

int Sweep(const std::string& config_path, std::vector<double> thetas,
          std::optional<int> loops, std::vector<std::uint64_t> seeds,
          std::optional<std::string> out_dir, std::optional<int> threads,
          std::ostream& out) {
  RunConfig cfg = ConfigFrom(config_path);
  if (!thetas.empty()) cfg.thetas = std::move(thetas);
  if (!seeds.empty()) cfg.seeds = std::move(seeds);
  if (loops) cfg.mission.loops_target = *loops;
  if (out_dir) cfg.output_dir = *out_dir;
  if (threads) cfg.threads = *threads;
  Validate(cfg);
  if (cfg.mission.loops_target < 1) throw ConfigError("sweep needs --loops >= 1");

  SweepSpec spec;
  spec.config = cfg;
  spec.thetas = cfg.thetas;
  spec.loops = cfg.mission.loops_target;
  spec.seeds = cfg.seeds;
  spec.threads = cfg.threads;
  const SweepReport report = RunSweep(spec);

  const fs::path dir(cfg.output_dir);
  fs::create_directories(dir);
  WriteFile(dir / "sweep.csv", [&](std::ostream& o) { WriteSweepCsv(o, report); });
  WriteFile(dir / "report.txt",
            [&](std::ostream& o) { WriteSweepReport(o, report, spec); });

  int timeouts = 0;
  for (const ThetaResult& r : report.rows) {
    out << "theta " << FormatDouble(r.theta) << ": " << Fixed(r.total_energy, 2)
        << " J";
    if (r.timed_out_runs > 0) out << " (" << r.timed_out_runs << " timed out)";
    out << '\n';
    timeouts += r.timed_out_runs;
  }
  out << "best theta: " << FormatDouble(report.best_theta) << " deg\n";
  return timeouts > 0 ? kExitTimeout : kExitOk;
}

int Fit(const std::string& energy_path, std::optional<double> predict_at,
        std::ostream& out) {
  const EnergySeries series = LoadEnergyCsv(energy_path);
  const LineFit fit = FitLine(series.t, series.cumulative);
  out << "slope_w = " << FormatDouble(fit.slope) << '\n'
      << "intercept_j = " << FormatDouble(fit.intercept) << '\n'
      << "r2 = " << FormatDouble(fit.r2) << '\n';
  if (predict_at) {
    if (*predict_at < 0.0) throw ConfigError("--predict-at must be >= 0");
    out << "predicted_j = " << FormatDouble(PredictEnergy(fit, *predict_at))
        << '\n';
  }
  return kExitOk;
}

int ForceMap(const std::string& config_path, const std::string& side,
             const std::string& out_path, std::ostream& out) {
  const RunConfig cfg = ConfigFrom(config_path);
  const SailMaps maps = BuildSailMaps(cfg);
  const SailForceMap& map = side == "left" ? maps.left : maps.right;
  fs::path path(out_path);
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  SaveMapCsv(map, path);
  out << "wrote " << TackSideName(map.side()) << "-tack map (" << map.rows()
      << " x " << map.cols() << ") to " << path.string() << '\n';
  return kExitOk;
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Hybrid wind/electric sailboat cruise simulator"};
  app.require_subcommand(1);

  std::string config_path;

  auto* simulate = app.add_subcommand("simulate", "Run one closed-loop cruise");
  std::optional<double> sim_theta;
  std::optional<int> sim_loops;
  std::optional<std::uint64_t> sim_seed;
  std::optional<std::string> sim_out;
  simulate->add_option("--config", config_path, "Run config file")->check(CLI::ExistingFile);
  simulate->add_option("--theta", sim_theta, "Close-hauled heading angle (deg)");
  simulate->add_option("--loops", sim_loops, "Loops to sail");
  simulate->add_option("--seed", sim_seed, "Noise seed");
  simulate->add_option("--out", sim_out, "Output directory");

  auto* sweep = app.add_subcommand("sweep", "Sweep the heading angle");
  std::vector<double> sweep_thetas;
  std::vector<std::uint64_t> sweep_seeds;
  std::optional<int> sweep_loops;
  std::optional<std::string> sweep_out;
  std::optional<int> sweep_threads;
  sweep->add_option("--config", config_path, "Run config file")->check(CLI::ExistingFile);
  sweep->add_option("--thetas", sweep_thetas, "Comma-separated heading angles (deg)")
      ->delimiter(',');
  sweep->add_option("--loops", sweep_loops, "Loops per cruise");
  sweep->add_option("--seeds", sweep_seeds, "Comma-separated replicate seeds")
      ->delimiter(',');
  sweep->add_option("--out", sweep_out, "Output directory");
  sweep->add_option("--threads", sweep_threads, "Worker threads (0 = all cores)");

  auto* fit = app.add_subcommand("fit", "Fit the energy-time line of an energy CSV");
  std::string energy_path;
  std::optional<double> predict_at;
  fit->add_option("--energy", energy_path, "energy.csv from a simulate run")
      ->required()
      ->check(CLI::ExistingFile);
  fit->add_option("--predict-at", predict_at, "Predict cumulative energy at this time (s)");

  auto* forcemap = app.add_subcommand("forcemap", "Write a forward-force map as CSV");
  std::string side = "right";
  std::string map_out = "forcemap.csv";
  forcemap->add_option("--config", config_path, "Run config file")->check(CLI::ExistingFile);
  forcemap->add_option("--side", side, "Tack side")->check(CLI::IsMember({"right", "left"}));
  forcemap->add_option("--out", map_out, "Output CSV path");

  auto* dump = app.add_subcommand("dump-config", "Print the effective configuration");
  dump->add_option("--config", config_path, "Run config file")->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*simulate) {
      return Simulate(config_path, sim_theta, sim_loops, sim_seed, sim_out, out);
    }
    if (*sweep) {
      return Sweep(config_path, std::move(sweep_thetas), sweep_loops,
                   std::move(sweep_seeds), sweep_out, sweep_threads, out);
    }
    if (*fit) return Fit(energy_path, predict_at, out);
    if (*forcemap) return ForceMap(config_path, side, map_out, out);
    if (*dump) {
      out << DumpConfig(ConfigFrom(config_path));
      return kExitOk;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace hybridsail
