// PID rudder control.
//
//   u      = kp * e + ki * integral(e) + kd * de/dt
//   rudder = base - pid_proportion * u,  clipped to +/- clip_limit
//
// e is the heading error (setting - heading) in degrees. The integral is a
// rectangular sum clamped to +/- integral_limit, the derivative a backward
// difference that is zero on the first step after construction or Reset().

#ifndef HYBRIDSAIL_HELM_H_
#define HYBRIDSAIL_HELM_H_

#include <optional>

namespace hybridsail {

struct PidGains {
  double kp = 0.2;
  double ki = 0.1;
  double kd = 0.01;
  double pid_proportion = 1.0;
  double integral_limit = 10.0;  // deg*s
};

// Rudder angles (deg) the controller works around.
struct RudderBases {
  double left_base = -30.0;
  double middle_base = 0.0;
  double right_base = 30.0;
};

enum class BaseMode { kLeft, kMiddle, kRight };
enum class Maneuver { kRightTack, kLeftTack, kNone };

// Left base while tacking right, right base while tacking left, middle
// otherwise.
BaseMode SelectBase(Maneuver maneuver);

// Shortest signed difference setting - heading, in (-180, 180].
double HeadingError(double setting_deg, double heading_deg);

class PidController {
 public:
  static constexpr double kDefaultClipLimit = 40.0;

  // Throws std::invalid_argument on non-finite gains, a negative integral
  // limit, a base outside [-clip, clip] or a non-positive clip limit.
  explicit PidController(PidGains gains = {}, RudderBases bases = {},
                         double clip_limit = kDefaultClipLimit);

  // Advances the controller by dt seconds and returns u. Throws
  // std::invalid_argument when dt <= 0.
  double Step(double error_deg, double dt);

  // Rudder angle for control output u around the chosen base.
  double RudderFromU(double u, BaseMode mode) const;

  void Reset();

  const PidGains& gains() const { return gains_; }
  const RudderBases& bases() const { return bases_; }
  double clip_limit() const { return clip_limit_; }
  double integral() const { return integral_; }
  std::optional<double> prev_error() const { return prev_error_; }
  double Base(BaseMode mode) const;

 private:
  PidGains gains_;
  RudderBases bases_;
  double clip_limit_;
  double integral_ = 0.0;
  std::optional<double> prev_error_;
};

}  // namespace hybridsail

#endif  // HYBRIDSAIL_HELM_H_
