// Electrical power model, energy bookkeeping and the energy-time line.

#ifndef HYBRIDSAIL_ENERGY_H_
#define HYBRIDSAIL_ENERGY_H_

#include <span>
#include <vector>

namespace hybridsail {

struct PowerModel {
  double base_power = 2.5;       // W, electronics with the motors off
  double motor_power = 8.0;      // W per running motor
  double battery_voltage = 8.1;  // V
};

void Validate(const PowerModel& pm);

// base_power + motors_on * motor_power. Throws std::invalid_argument unless
// motors_on is 0, 1 or 2.
double InstantPower(const PowerModel& pm, int motors_on);

// Current drawn at `power` watts.
double InstantCurrent(const PowerModel& pm, double power);

struct EnergySample {
  double t = 0.0;           // s
  double power = 0.0;       // W
  double cumulative = 0.0;  // J, trapezoidal running integral
  int motors_on = 0;
  int loop_index = 0;
};

struct TackWindow {
  double t_on = 0.0;
  double t_off = 0.0;
};

// Append-only record of sampled power. Cumulative energy is the trapezoidal
// integral of the samples.
class EnergyLedger {
 public:
  // Samples must arrive in strictly increasing time with power >= 0.
  void Append(double t, double power, int motors_on = 0, int loop_index = 0);
  void MarkLoop(double t);
  void OpenTackWindow(double t);
  void CloseTackWindow(double t);
  // Closes a dangling window at the last sample time.
  void Finish();

  const std::vector<EnergySample>& samples() const { return samples_; }
  const std::vector<double>& loop_marks() const { return loop_marks_; }
  const std::vector<TackWindow>& tack_windows() const { return tack_windows_; }
  bool window_open() const { return open_window_; }

  double t_begin() const;
  double t_end() const;
  double total() const;

  // Trapezoidal integral of power over [t0, t1]. The power between samples is
  // linear, so partial intervals are integrated exactly on that interpolant.
  // Throws std::out_of_range outside the sampled span or when t0 > t1.
  double Integrate(double t0, double t1) const;

  // Energy drawn on top of `base_power` over [t0, t1].
  double IntegrateAbove(double t0, double t1, double base_power) const;

 private:
  double CumulativeAt(double t) const;

  std::vector<EnergySample> samples_;
  std::vector<double> loop_marks_;
  std::vector<TackWindow> tack_windows_;
  bool open_window_ = false;
};

// Energy between consecutive loop marks; the first loop starts at the first
// sample. Throws std::invalid_argument without loop marks.
std::vector<double> PerLoopEnergy(const EnergyLedger& ledger);

// Mean motor energy (power above base) over the recorded tack windows.
// Throws std::invalid_argument without tack windows.
double TackingEnergy(const EnergyLedger& ledger, double base_power);

struct LineFit {
  double slope = 0.0;      // W
  double intercept = 0.0;  // J
  double r2 = 0.0;
};

// Ordinary least squares. Throws std::invalid_argument with fewer than two
// points, mismatched lengths or all-equal t.
LineFit FitLine(std::span<const double> t, std::span<const double> e);

// Least-squares line through (t, cumulative) of every sample.
LineFit FitEnergyLine(const EnergyLedger& ledger);

double PredictEnergy(const LineFit& fit, double t);

}  // namespace hybridsail

#endif  // HYBRIDSAIL_ENERGY_H_
