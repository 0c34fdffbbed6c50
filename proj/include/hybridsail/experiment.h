// Closed-loop cruises and the heading-angle sweep built on top of them.

#ifndef HYBRIDSAIL_EXPERIMENT_H_
#define HYBRIDSAIL_EXPERIMENT_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hybridsail/config.h"
#include "hybridsail/energy.h"
#include "hybridsail/mission.h"
#include "hybridsail/sail_aero.h"

namespace hybridsail {

struct TrajectoryRow {
  double t = 0.0;
  BoatState boat;
  double rudder_deg = 0.0;
  double sail_phi_deg = 0.0;
  bool motor_left = false;
  bool motor_right = false;
  Phase phase = Phase::kTackRight;
  double setting_deg = 0.0;
};

struct EventRow {
  double t = 0.0;
  MissionEvent event = MissionEvent::kNone;
  int loop = 0;
  int tack_count = 0;
  double setting_deg = 0.0;
};

struct LoopSummary {
  int index = 0;
  double t_start = 0.0;
  double t_end = 0.0;
  double energy = 0.0;  // J
  int tacks = 0;
};

struct CruiseResult {
  double theta = 0.0;
  std::uint64_t seed = 0;
  std::vector<TrajectoryRow> trajectory;
  std::vector<EventRow> events;
  EnergyLedger ledger;
  std::vector<LoopSummary> loops;
  bool timed_out = false;
  double duration = 0.0;        // s
  int tack_count = 0;
  int wall_hits = 0;
  double tacking_energy = 0.0;  // J per tack window, 0 without windows
  LineFit fit;

  double total_energy() const { return ledger.total(); }
  double mean_tacks_per_loop() const;
};

// Maps from the config: CSV files when given, otherwise the flat-plate model
// at the mean wind speed.
SailMaps BuildSailMaps(const RunConfig& cfg);

// Full closed loop: mission -> helm -> sail -> vessel -> power, from the start
// point until `loops` loops complete or the config timeout expires (then
// `timed_out` is set and everything recorded so far is kept).
CruiseResult RunCruise(const RunConfig& cfg, double theta, int loops,
                       std::uint64_t seed);
CruiseResult RunCruise(const RunConfig& cfg, const SailMaps& maps, double theta,
                       int loops, std::uint64_t seed);

struct HeadingStepResult {
  std::vector<double> t;      // s
  std::vector<double> error;  // setting - heading, deg
  double time_within_10 = -1.0;  // first time |error| <= 10, -1 if never
  double overshoot = 0.0;        // deg past the setting, >= 0
  double final_error = 0.0;      // deg at the end of the run
};

// Closed-loop heading response of the PID from `initial_error_deg` with the
// hull held at `speed`: no wind forces, gusts, noise, drag or leeway, middle
// rudder base, open water. Uses the gains, bases, clip limit, turn gain and
// dt of `cfg`.
HeadingStepResult RunHeadingStep(const RunConfig& cfg, double initial_error_deg,
                                 double speed, double duration);

struct BoxStats {
  double mean = 0.0;
  double variance = 0.0;  // unbiased (n - 1); 0 for a single value
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
};

// Quartiles by linear interpolation between order statistics. Throws
// std::invalid_argument on an empty list.
BoxStats ComputeBoxStats(std::span<const double> values);

// 100 * (other - best) / best. Throws std::invalid_argument if best <= 0.
double SavingsPercent(double best, double other);

struct SweepSpec {
  RunConfig config;
  std::vector<double> thetas;
  int loops = 5;
  std::vector<std::uint64_t> seeds;
  int threads = 0;  // 0 = hardware concurrency, 1 = serial
};

// Aggregate of all seeds at one theta.
struct ThetaResult {
  double theta = 0.0;
  double total_energy = 0.0;        // seed mean, J
  std::vector<double> per_loop;     // every loop of every seed, J
  BoxStats loop_stats;
  double tacking_energy = 0.0;      // seed mean, J
  double tacks_per_loop = 0.0;      // seed mean
  double duration = 0.0;            // seed mean, s
  LineFit fit;                      // seed mean of slope/intercept/r2
  int runs = 0;
  int timed_out_runs = 0;
  double savings_percent = 0.0;     // vs the best theta
};

struct Savings {
  double theta = 0.0;
  double percent = 0.0;
};

struct SweepReport {
  std::vector<ThetaResult> rows;  // ascending theta
  double best_theta = 0.0;
  std::vector<Savings> savings;   // every theta except the best

  const ThetaResult& Row(double theta) const;
};

SweepReport RunSweep(const SweepSpec& spec);

// Orders rows by theta, picks the minimum-energy theta (ties to the smaller
// theta) and fills in the savings. Throws std::invalid_argument when empty.
SweepReport SummarizeSweep(std::vector<ThetaResult> rows);

}  // namespace hybridsail

#endif  // HYBRIDSAIL_EXPERIMENT_H_
