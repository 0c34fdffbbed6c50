#include "hybridsail/io.h"

#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "hybridsail/numfmt.h"

namespace hybridsail {

namespace {

std::string F(double v) { return FormatDouble(v); }

std::vector<std::string_view> Split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    out.push_back(line.substr(start, pos == std::string_view::npos
                                         ? std::string_view::npos
                                         : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

void WriteTrajectoryCsv(std::ostream& out, const CruiseResult& run) {
  out << "t,x,y,heading_deg,speed,rudder_deg,sail_phi_deg,motor_left,"
         "motor_right,phase\n";
  for (const TrajectoryRow& r : run.trajectory) {
    out << F(r.t) << ',' << F(r.boat.x) << ',' << F(r.boat.y) << ','
        << F(r.boat.heading_deg) << ',' << F(r.boat.speed) << ','
        << F(r.rudder_deg) << ',' << F(r.sail_phi_deg) << ','
        << (r.motor_left ? 1 : 0) << ',' << (r.motor_right ? 1 : 0) << ','
        << PhaseName(r.phase) << '\n';
  }
}

void WriteEnergyCsv(std::ostream& out, const EnergyLedger& ledger) {
  out << "t,power_w,cumulative_j,motors_on,loop_index\n";
  for (const EnergySample& s : ledger.samples()) {
    out << F(s.t) << ',' << F(s.power) << ',' << F(s.cumulative) << ','
        << s.motors_on << ',' << s.loop_index << '\n';
  }
}

void WriteEventsCsv(std::ostream& out, const CruiseResult& run) {
  out << "t,event,loop,tack_count,setting_deg\n";
  for (const EventRow& e : run.events) {
    out << F(e.t) << ',' << EventName(e.event) << ',' << e.loop << ','
        << e.tack_count << ',' << F(e.setting_deg) << '\n';
  }
}

void WriteCruiseSummary(std::ostream& out, const CruiseResult& run,
                        const RunConfig& cfg) {
  out << "[cruise]\n"
      << "theta_deg = " << F(run.theta) << '\n'
      << "seed = " << run.seed << '\n'
      << "loops_completed = " << run.loops.size() << '\n'
      << "timed_out = " << (run.timed_out ? "true" : "false") << '\n'
      << "duration_s = " << F(run.duration) << '\n'
      << "tack_count = " << run.tack_count << '\n'
      << "wall_hits = " << run.wall_hits << '\n'
      << "\n[energy]\n"
      << "total_j = " << F(run.total_energy()) << '\n'
      << "tacking_energy_j = " << F(run.tacking_energy) << '\n'
      << "tack_windows = " << run.ledger.tack_windows().size() << '\n'
      << "mean_current_a = "
      << F(run.duration > 0.0
               ? InstantCurrent(cfg.power, run.total_energy() / run.duration)
               : 0.0)
      << '\n'
      << "\n[fit]\n"
      << "slope_w = " << F(run.fit.slope) << '\n'
      << "intercept_j = " << F(run.fit.intercept) << '\n'
      << "r2 = " << F(run.fit.r2) << '\n';
  for (const LoopSummary& l : run.loops) {
    out << "\n[loop." << l.index << "]\n"
        << "t_start = " << F(l.t_start) << '\n'
        << "t_end = " << F(l.t_end) << '\n'
        << "energy_j = " << F(l.energy) << '\n'
        << "tacks = " << l.tacks << '\n';
  }
}

void WriteSweepCsv(std::ostream& out, const SweepReport& report) {
  out << "theta_deg,total_j,per_loop_mean_j,per_loop_var,tack_energy_j,"
         "tack_count,duration_s,fit_slope_w,fit_intercept_j\n";
  for (const ThetaResult& r : report.rows) {
    out << F(r.theta) << ',' << F(r.total_energy) << ','
        << F(r.loop_stats.mean) << ',' << F(r.loop_stats.variance) << ','
        << F(r.tacking_energy) << ',' << F(r.tacks_per_loop) << ','
        << F(r.duration) << ',' << F(r.fit.slope) << ','
        << F(r.fit.intercept) << '\n';
  }
}

void WriteSweepReport(std::ostream& out, const SweepReport& report,
                      const SweepSpec& spec) {
  out << "[sweep]\n"
      << "loops = " << spec.loops << '\n'
      << "seeds = " << spec.seeds.size() << '\n'
      << "best_theta_deg = " << F(report.best_theta) << '\n';
  if (!report.savings.empty()) {
    double lo = report.savings.front().percent;
    double hi = lo;
    for (const Savings& s : report.savings) {
      lo = std::min(lo, s.percent);
      hi = std::max(hi, s.percent);
    }
    out << "savings_min_percent = " << F(lo) << '\n'
        << "savings_max_percent = " << F(hi) << '\n';
  }
  for (const ThetaResult& r : report.rows) {
    out << "\n[theta." << F(r.theta) << "]\n"
        << "total_j = " << F(r.total_energy) << '\n'
        << "savings_percent = " << F(r.savings_percent) << '\n'
        << "per_loop_mean_j = " << F(r.loop_stats.mean) << '\n'
        << "per_loop_var = " << F(r.loop_stats.variance) << '\n'
        << "per_loop_min_j = " << F(r.loop_stats.min) << '\n'
        << "per_loop_q1_j = " << F(r.loop_stats.q1) << '\n'
        << "per_loop_median_j = " << F(r.loop_stats.median) << '\n'
        << "per_loop_q3_j = " << F(r.loop_stats.q3) << '\n'
        << "per_loop_max_j = " << F(r.loop_stats.max) << '\n'
        << "tacking_energy_j = " << F(r.tacking_energy) << '\n'
        << "tacks_per_loop = " << F(r.tacks_per_loop) << '\n'
        << "duration_s = " << F(r.duration) << '\n'
        << "fit_slope_w = " << F(r.fit.slope) << '\n'
        << "fit_intercept_j = " << F(r.fit.intercept) << '\n'
        << "fit_r2 = " << F(r.fit.r2) << '\n'
        << "runs = " << r.runs << '\n'
        << "timed_out_runs = " << r.timed_out_runs << '\n';
  }
}

EnergySeries ReadEnergyCsv(std::istream& in) {
  auto fail = [](std::size_t line_no, const std::string& what) {
    throw std::runtime_error("energy CSV line " + std::to_string(line_no) +
                             ": " + what);
  };
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) fail(1, "missing header");
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = Split(line);
  std::size_t t_col = header.size();
  std::size_t e_col = header.size();
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (Trim(header[i]) == "t") t_col = i;
    if (Trim(header[i]) == "cumulative_j") e_col = i;
  }
  if (t_col == header.size() || e_col == header.size()) {
    fail(line_no, "header needs 't' and 'cumulative_j' columns");
  }
  EnergySeries series;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (Trim(line).empty()) continue;
    const auto cells = Split(line);
    if (cells.size() != header.size()) fail(line_no, "wrong number of fields");
    auto t = ParseDouble(cells[t_col]);
    auto e = ParseDouble(cells[e_col]);
    if (!t || !e) fail(line_no, "non-numeric t or cumulative_j");
    series.t.push_back(*t);
    series.cumulative.push_back(*e);
  }
  return series;
}

EnergySeries LoadEnergyCsv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open energy CSV " + path.string());
  return ReadEnergyCsv(in);
}

}  // namespace hybridsail
