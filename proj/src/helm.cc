#include "hybridsail/helm.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hybridsail/angles.h"

namespace hybridsail {

BaseMode SelectBase(Maneuver maneuver) {
  switch (maneuver) {
    case Maneuver::kRightTack:
      return BaseMode::kLeft;
    case Maneuver::kLeftTack:
      return BaseMode::kRight;
    case Maneuver::kNone:
      break;
  }
  return BaseMode::kMiddle;
}

double HeadingError(double setting_deg, double heading_deg) {
  return NormalizeDeg180(setting_deg - heading_deg);
}

PidController::PidController(PidGains gains, RudderBases bases,
                             double clip_limit)
    : gains_(gains), bases_(bases), clip_limit_(clip_limit) {
  for (double g : {gains_.kp, gains_.ki, gains_.kd, gains_.pid_proportion,
                   gains_.integral_limit}) {
    if (!std::isfinite(g)) throw std::invalid_argument("PID gains must be finite");
  }
  if (gains_.integral_limit < 0.0) {
    throw std::invalid_argument("integral_limit must be >= 0");
  }
  if (!(clip_limit_ > 0.0) || !std::isfinite(clip_limit_)) {
    throw std::invalid_argument("clip_limit must be > 0");
  }
  for (double b : {bases_.left_base, bases_.middle_base, bases_.right_base}) {
    if (!std::isfinite(b) || std::abs(b) > clip_limit_) {
      throw std::invalid_argument("rudder base outside the clip range");
    }
  }
}

double PidController::Step(double error_deg, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("PID dt must be > 0");
  integral_ = std::clamp(integral_ + error_deg * dt, -gains_.integral_limit,
                         gains_.integral_limit);
  const double derivative =
      prev_error_ ? (error_deg - *prev_error_) / dt : 0.0;
  prev_error_ = error_deg;
  return gains_.kp * error_deg + gains_.ki * integral_ + gains_.kd * derivative;
}

double PidController::Base(BaseMode mode) const {
  switch (mode) {
    case BaseMode::kLeft:
      return bases_.left_base;
    case BaseMode::kRight:
      return bases_.right_base;
    case BaseMode::kMiddle:
      break;
  }
  return bases_.middle_base;
}

double PidController::RudderFromU(double u, BaseMode mode) const {
  const double raw = Base(mode) - gains_.pid_proportion * u;
  return std::clamp(raw, -clip_limit_, clip_limit_);
}

void PidController::Reset() {
  integral_ = 0.0;
  prev_error_.reset();
}

}  // namespace hybridsail
