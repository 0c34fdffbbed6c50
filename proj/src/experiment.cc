#include "hybridsail/experiment.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "hybridsail/angles.h"
#include "hybridsail/helm.h"
#include "hybridsail/vessel.h"

namespace hybridsail {

double CruiseResult::mean_tacks_per_loop() const {
  if (loops.empty()) return static_cast<double>(tack_count);
  double sum = 0.0;
  for (const LoopSummary& l : loops) sum += l.tacks;
  return sum / static_cast<double>(loops.size());
}

SailMaps BuildSailMaps(const RunConfig& cfg) {
  if (!cfg.sail.map_right.empty()) {
    return {LoadMapCsv(cfg.sail.map_right, TackSide::kRight),
            LoadMapCsv(cfg.sail.map_left, TackSide::kLeft),
            cfg.wind.mean_speed};
  }
  return {BuildAnalyticMap(TackSide::kRight, cfg.wind.mean_speed,
                           cfg.sail.theta_step, cfg.sail.phi_step,
                           cfg.sail.sail_coeff),
          BuildAnalyticMap(TackSide::kLeft, cfg.wind.mean_speed,
                           cfg.sail.theta_step, cfg.sail.phi_step,
                           cfg.sail.sail_coeff),
          cfg.wind.mean_speed};
}

CruiseResult RunCruise(const RunConfig& cfg, double theta, int loops,
                       std::uint64_t seed) {
  return RunCruise(cfg, BuildSailMaps(cfg), theta, loops, seed);
}

CruiseResult RunCruise(const RunConfig& cfg, const SailMaps& maps, double theta,
                       int loops, std::uint64_t seed) {
  if (!(theta > 0.0 && theta < 90.0)) {
    throw std::invalid_argument("theta must be in (0, 90)");
  }
  if (loops < 0) throw std::invalid_argument("loops must be >= 0");

  MissionConfig mission = cfg.mission;
  mission.theta_setting = theta;
  mission.loops_target = loops;
  WindField wind = cfg.wind;
  wind.seed = seed;

  CruiseResult result;
  result.theta = theta;
  result.seed = seed;

  VesselSim sim(cfg.vessel, wind, cfg.arena, maps);
  PidController pid(cfg.pid, cfg.bases, cfg.clip_limit);
  MissionState ms = MissionInit(mission);
  BoatState boat{mission.start_point.x, mission.start_point.y, theta,
                 cfg.initial_speed};

  double loop_start = 0.0;
  int loop_tacks = 0;
  for (std::int64_t step = 0;; ++step) {
    const double t = static_cast<double>(step) * cfg.dt;

    const MissionStep update = MissionUpdate(ms, boat, mission);
    const bool loop_closed = update.event == MissionEvent::kLoopComplete ||
                             (update.event == MissionEvent::kDone &&
                              update.state.loop_count > ms.loop_count);
    ms = update.state;
    if (update.event != MissionEvent::kNone) {
      pid.Reset();
      result.events.push_back(
          {t, update.event, ms.loop_count, ms.tack_count, ms.setting_angle});
      if (update.event == MissionEvent::kTack) ++loop_tacks;
    }

    const MotorCommand motors =
        ms.phase == Phase::kDone ? MotorCommand::kOff : TackAssist(ms, boat, mission);
    const int motors_on = MotorsOn(motors);
    result.ledger.Append(t, InstantPower(cfg.power, motors_on), motors_on,
                         ms.loop_count);
    if (motors_on > 0 && ms.assist_for_tack) {
      result.ledger.OpenTackWindow(t);
    } else {
      result.ledger.CloseTackWindow(t);
    }

    if (loop_closed) {
      result.ledger.MarkLoop(t);
      result.loops.push_back({static_cast<int>(result.loops.size()), loop_start,
                              t, 0.0, loop_tacks});
      loop_start = t;
      loop_tacks = 0;
    }
    if (ms.phase == Phase::kDone) {
      result.duration = t;
      break;
    }
    if (t >= cfg.timeout) {
      result.timed_out = true;
      result.duration = t;
      break;
    }

    const double error = HeadingError(ms.setting_angle, boat.heading_deg);
    const BaseMode base = SelectBase(CurrentManeuver(ms, error));
    const double u = pid.Step(error, cfg.dt);
    ActuatorCommand cmd;
    cmd.rudder_deg = pid.RudderFromU(u, base);
    cmd.sail_phi_deg = maps.Best(RelativeHeading(wind, boat.heading_deg)).phi_deg;
    cmd.motors = motors;

    result.trajectory.push_back({t, boat, cmd.rudder_deg, cmd.sail_phi_deg,
                                 motors == MotorCommand::kLeftOn,
                                 motors == MotorCommand::kRightOn, ms.phase,
                                 ms.setting_angle});
    boat = sim.Step(boat, cmd, t, cfg.dt);
    if (sim.hit_wall()) ++result.wall_hits;
  }
  result.ledger.Finish();

  result.tack_count = ms.tack_count;
  if (!result.loops.empty()) {
    const std::vector<double> energies = PerLoopEnergy(result.ledger);
    for (std::size_t i = 0; i < result.loops.size(); ++i) {
      result.loops[i].energy = energies[i];
    }
  }
  if (!result.ledger.tack_windows().empty()) {
    result.tacking_energy = TackingEnergy(result.ledger, cfg.power.base_power);
  }
  if (result.ledger.samples().size() >= 2) {
    result.fit = FitEnergyLine(result.ledger);
  }
  return result;
}

HeadingStepResult RunHeadingStep(const RunConfig& cfg, double initial_error_deg,
                                 double speed, double duration) {
  if (!(speed >= 0.0) || !(duration > 0.0)) {
    throw std::invalid_argument("heading step needs speed >= 0, duration > 0");
  }
  VesselParams vessel = cfg.vessel;
  vessel.drag_coeff = 0.0;
  vessel.motor_thrust = 0.0;
  vessel.leeway_coeff = 0.0;
  WindField wind = cfg.wind;
  wind.gust_amplitude = 0.0;
  wind.heading_noise_sigma = 0.0;
  const Arena arena{1e6, 1e6};
  const SailMaps maps{
      BuildAnalyticMap(TackSide::kRight, wind.mean_speed, 1.0, 1.0, 0.0),
      BuildAnalyticMap(TackSide::kLeft, wind.mean_speed, 1.0, 1.0, 0.0),
      wind.mean_speed};
  VesselSim sim(vessel, wind, arena, maps);
  PidController pid(cfg.pid, cfg.bases, cfg.clip_limit);

  const double setting = 0.0;
  BoatState boat{0.5 * arena.width, 0.5 * arena.height,
                 NormalizeDeg180(setting - initial_error_deg), speed};
  HeadingStepResult out;
  const double sign = initial_error_deg >= 0.0 ? 1.0 : -1.0;
  const int steps = static_cast<int>(std::ceil(duration / cfg.dt));
  for (int k = 0; k <= steps; ++k) {
    const double t = k * cfg.dt;
    const double err = HeadingError(setting, boat.heading_deg);
    out.t.push_back(t);
    out.error.push_back(err);
    if (out.time_within_10 < 0.0 && std::abs(err) <= 10.0) out.time_within_10 = t;
    out.overshoot = std::max(out.overshoot, -sign * err);
    if (k == steps) break;
    ActuatorCommand cmd;
    cmd.rudder_deg = pid.RudderFromU(pid.Step(err, cfg.dt), BaseMode::kMiddle);
    boat = sim.Step(boat, cmd, t, cfg.dt);
    boat.speed = speed;
  }
  out.final_error = out.error.back();
  return out;
}

BoxStats ComputeBoxStats(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("box stats of an empty list");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());

  BoxStats s;
  for (double v : sorted) s.mean += v;
  s.mean /= n;
  if (sorted.size() > 1) {
    for (double v : sorted) s.variance += (v - s.mean) * (v - s.mean);
    s.variance /= n - 1.0;
  }
  auto quantile = [&](double p) {
    const double pos = p * (n - 1.0);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + (sorted[hi] - sorted[lo]) * frac;
  };
  s.min = sorted.front();
  s.max = sorted.back();
  s.q1 = quantile(0.25);
  s.median = quantile(0.5);
  s.q3 = quantile(0.75);
  return s;
}

double SavingsPercent(double best, double other) {
  if (!(best > 0.0)) throw std::invalid_argument("best energy must be > 0");
  return 100.0 * (other - best) / best;
}

const ThetaResult& SweepReport::Row(double theta) const {
  for (const ThetaResult& r : rows) {
    if (r.theta == theta) return r;
  }
  throw std::out_of_range("no sweep row for the requested theta");
}

SweepReport SummarizeSweep(std::vector<ThetaResult> rows) {
  if (rows.empty()) throw std::invalid_argument("sweep has no rows");
  std::sort(rows.begin(), rows.end(),
            [](const ThetaResult& a, const ThetaResult& b) { return a.theta < b.theta; });
  SweepReport report;
  std::size_t best = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].total_energy < rows[best].total_energy) best = i;
  }
  report.best_theta = rows[best].theta;
  const double best_energy = rows[best].total_energy;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rows[i].savings_percent =
        i == best ? 0.0 : SavingsPercent(best_energy, rows[i].total_energy);
    if (i != best) report.savings.push_back({rows[i].theta, rows[i].savings_percent});
  }
  report.rows = std::move(rows);
  return report;
}

namespace {

ThetaResult Aggregate(double theta, std::span<const CruiseResult> runs) {
  ThetaResult row;
  row.theta = theta;
  row.runs = static_cast<int>(runs.size());
  const double n = static_cast<double>(runs.size());
  int with_windows = 0;
  for (const CruiseResult& r : runs) {
    row.total_energy += r.total_energy() / n;
    row.duration += r.duration / n;
    row.tacks_per_loop += r.mean_tacks_per_loop() / n;
    row.fit.slope += r.fit.slope / n;
    row.fit.intercept += r.fit.intercept / n;
    row.fit.r2 += r.fit.r2 / n;
    if (r.timed_out) ++row.timed_out_runs;
    for (const LoopSummary& l : r.loops) row.per_loop.push_back(l.energy);
    if (!r.ledger.tack_windows().empty()) {
      row.tacking_energy += r.tacking_energy;
      ++with_windows;
    }
  }
  if (with_windows > 0) row.tacking_energy /= with_windows;
  if (!row.per_loop.empty()) row.loop_stats = ComputeBoxStats(row.per_loop);
  return row;
}

}  // namespace

SweepReport RunSweep(const SweepSpec& spec) {
  if (spec.thetas.empty()) throw std::invalid_argument("sweep needs thetas");
  if (spec.seeds.empty()) throw std::invalid_argument("sweep needs seeds");
  if (spec.loops < 1) throw std::invalid_argument("sweep needs loops >= 1");
  for (double t : spec.thetas) {
    if (!(t > 0.0 && t < 90.0)) throw std::invalid_argument("theta must be in (0, 90)");
  }

  const SailMaps maps = BuildSailMaps(spec.config);
  const std::size_t n_seeds = spec.seeds.size();
  const std::size_t n_jobs = spec.thetas.size() * n_seeds;
  std::vector<CruiseResult> results(n_jobs);

  std::atomic<std::size_t> next{0};
  std::mutex error_mu;
  std::exception_ptr error;
  auto worker = [&] {
    for (std::size_t job = next++; job < n_jobs; job = next++) {
      try {
        CruiseResult r = RunCruise(spec.config, maps, spec.thetas[job / n_seeds],
                                 spec.loops, spec.seeds[job % n_seeds]);
      // Keep the summaries only; trajectories of a full sweep are large.
        r.trajectory.clear();
        r.trajectory.shrink_to_fit();
        results[job] = std::move(r);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
      }
    }
  };

  unsigned threads = spec.threads > 0 ? static_cast<unsigned>(spec.threads)
                                      : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n_jobs));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);

  std::vector<ThetaResult> rows;
  for (std::size_t i = 0; i < spec.thetas.size(); ++i) {
    rows.push_back(Aggregate(
        spec.thetas[i],
        std::span<const CruiseResult>(results).subspan(i * n_seeds, n_seeds)));
  }
  return SummarizeSweep(std::move(rows));
}

}  // namespace hybridsail
