#include "hybridsail/energy.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "hybridsail/numfmt.h"

namespace hybridsail {

void Validate(const PowerModel& pm) {
  if (!(pm.base_power > 0.0) || !std::isfinite(pm.base_power)) {
    throw std::invalid_argument("power.base_power must be > 0");
  }
  if (!(pm.motor_power >= 0.0) || !std::isfinite(pm.motor_power)) {
    throw std::invalid_argument("power.motor_power must be >= 0");
  }
  if (!(pm.battery_voltage >= 7.8 && pm.battery_voltage <= 8.4)) {
    throw std::invalid_argument("power.battery_voltage must be in [7.8, 8.4]");
  }
}

double InstantPower(const PowerModel& pm, int motors_on) {
  if (motors_on < 0 || motors_on > 2) {
    throw std::invalid_argument("motors_on must be 0, 1 or 2, got " +
                                std::to_string(motors_on));
  }
  return pm.base_power + motors_on * pm.motor_power;
}

double InstantCurrent(const PowerModel& pm, double power) {
  return power / pm.battery_voltage;
}

void EnergyLedger::Append(double t, double power, int motors_on,
                          int loop_index) {
  if (!std::isfinite(t) || !std::isfinite(power) || power < 0.0) {
    throw std::invalid_argument("energy sample must be finite with power >= 0");
  }
  EnergySample s{t, power, 0.0, motors_on, loop_index};
  if (!samples_.empty()) {
    const EnergySample& prev = samples_.back();
    if (!(t > prev.t)) {
      throw std::invalid_argument("energy samples must be strictly increasing in t");
    }
    s.cumulative = prev.cumulative + 0.5 * (prev.power + power) * (t - prev.t);
  }
  samples_.push_back(s);
}

void EnergyLedger::MarkLoop(double t) { loop_marks_.push_back(t); }

void EnergyLedger::OpenTackWindow(double t) {
  if (open_window_) return;
  tack_windows_.push_back({t, t});
  open_window_ = true;
}

void EnergyLedger::CloseTackWindow(double t) {
  if (!open_window_) return;
  tack_windows_.back().t_off = t;
  open_window_ = false;
}

void EnergyLedger::Finish() {
  if (open_window_ && !samples_.empty()) CloseTackWindow(samples_.back().t);
}

double EnergyLedger::t_begin() const {
  return samples_.empty() ? 0.0 : samples_.front().t;
}

double EnergyLedger::t_end() const {
  return samples_.empty() ? 0.0 : samples_.back().t;
}

double EnergyLedger::total() const {
  return samples_.empty() ? 0.0 : samples_.back().cumulative;
}

double EnergyLedger::CumulativeAt(double t) const {
  if (samples_.empty() || t < samples_.front().t || t > samples_.back().t) {
    throw std::out_of_range("time " + FormatDouble(t) +
                            " outside the sampled range");
  }
  // First sample with time > t.
  auto it = std::upper_bound(
      samples_.begin(), samples_.end(), t,
      [](double value, const EnergySample& s) { return value < s.t; });
  const EnergySample& lo = *(it - 1);
  if (t == lo.t || it == samples_.end()) return lo.cumulative;
  const EnergySample& hi = *it;
  const double dt = t - lo.t;
  const double p_t = lo.power + (hi.power - lo.power) * dt / (hi.t - lo.t);
  return lo.cumulative + 0.5 * (lo.power + p_t) * dt;
}

double EnergyLedger::Integrate(double t0, double t1) const {
  if (t0 > t1) throw std::out_of_range("integration bounds reversed");
  if (t0 == t1) {
    CumulativeAt(t0);  // range check only
    return 0.0;
  }
  return CumulativeAt(t1) - CumulativeAt(t0);
}

double EnergyLedger::IntegrateAbove(double t0, double t1,
                                    double base_power) const {
  return Integrate(t0, t1) - base_power * (t1 - t0);
}

std::vector<double> PerLoopEnergy(const EnergyLedger& ledger) {
  if (ledger.loop_marks().empty()) {
    throw std::invalid_argument("ledger has no loop marks");
  }
  std::vector<double> out;
  double start = ledger.t_begin();
  for (double mark : ledger.loop_marks()) {
    out.push_back(ledger.Integrate(start, mark));
    start = mark;
  }
  return out;
}

double TackingEnergy(const EnergyLedger& ledger, double base_power) {
  const auto& windows = ledger.tack_windows();
  if (windows.empty()) throw std::invalid_argument("ledger has no tack windows");
  double sum = 0.0;
  for (const TackWindow& w : windows) {
    sum += ledger.IntegrateAbove(w.t_on, w.t_off, base_power);
  }
  return sum / static_cast<double>(windows.size());
}

LineFit FitLine(std::span<const double> t, std::span<const double> e) {
  if (t.size() != e.size()) throw std::invalid_argument("fit inputs differ in length");
  if (t.size() < 2) throw std::invalid_argument("fit needs at least two points");
  const double n = static_cast<double>(t.size());
  double mean_t = 0.0;
  double mean_e = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    mean_t += t[i];
    mean_e += e[i];
  }
  mean_t /= n;
  mean_e /= n;
  double stt = 0.0;
  double ste = 0.0;
  double see = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double dt = t[i] - mean_t;
    const double de = e[i] - mean_e;
    stt += dt * dt;
    ste += dt * de;
    see += de * de;
  }
  if (stt == 0.0) throw std::invalid_argument("fit is degenerate: all t equal");
  LineFit fit;
  fit.slope = ste / stt;
  fit.intercept = mean_e - fit.slope * mean_t;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double r = e[i] - (fit.slope * t[i] + fit.intercept);
    ss_res += r * r;
  }
  fit.r2 = see == 0.0 ? 1.0 : 1.0 - ss_res / see;
  return fit;
}

LineFit FitEnergyLine(const EnergyLedger& ledger) {
  std::vector<double> t;
  std::vector<double> e;
  t.reserve(ledger.samples().size());
  e.reserve(ledger.samples().size());
  for (const EnergySample& s : ledger.samples()) {
    t.push_back(s.t);
    e.push_back(s.cumulative);
  }
  return FitLine(t, e);
}

double PredictEnergy(const LineFit& fit, double t) {
  return fit.slope * t + fit.intercept;
}

}  // namespace hybridsail
