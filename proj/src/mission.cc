#include "hybridsail/mission.h"

#include <cmath>
#include <stdexcept>

#include "hybridsail/angles.h"

namespace hybridsail {

namespace {

void Require(bool ok, const char* message) {
  if (!ok) throw std::invalid_argument(message);
}

// Applies a new setting angle and arms the assist when the turn is large.
void ChangeSetting(MissionState& ms, double setting, const BoatState& boat,
                   const MissionConfig& cfg, bool for_tack) {
  ms.setting_angle = NormalizeDeg180(setting);
  ms.tack_assist_active = false;
  ms.assist_side = AssistSide::kNone;
  ms.assist_for_tack = false;
  ms.tack_turning = false;
  if (!for_tack && !cfg.assist_on_returns) return;
  const double err = HeadingError(ms.setting_angle, boat.heading_deg);
  if (std::abs(err) > cfg.boundary_angle) {
    ms.tack_assist_active = true;
    ms.assist_side = err > 0.0 ? AssistSide::kLeftMotor : AssistSide::kRightMotor;
    ms.assist_for_tack = for_tack;
    ms.tack_turning = for_tack;
  }
}

}  // namespace

void Validate(const MissionConfig& cfg) {
  Require(cfg.left_bar_x < cfg.middle_bar_x && cfg.middle_bar_x < cfg.right_bar_x,
          "mission: bars must satisfy left_bar_x < middle_bar_x < right_bar_x");
  Require(cfg.lower_bar_y < cfg.upper_bar_y,
          "mission.upper_bar_y: must exceed lower_bar_y");
  Require(cfg.start_radius > 0.0, "mission.start_radius: must be > 0");
  Require(cfg.theta_setting > 0.0 && cfg.theta_setting < 90.0,
          "mission.theta_setting: must be in (0, 90)");
  Require(cfg.boundary_angle > 0.0 && cfg.boundary_angle < 180.0,
          "mission.boundary_angle: must be in (0, 180)");
  Require(cfg.settle_angle >= 0.0 && cfg.settle_angle <= cfg.boundary_angle,
          "mission.settle_angle: must be in [0, boundary_angle]");
  Require(cfg.loops_target >= 0, "mission.loops_target: must be >= 0");
}

const char* PhaseName(Phase phase) {
  switch (phase) {
    case Phase::kTackRight:
      return "tack_right";
    case Phase::kTackLeft:
      return "tack_left";
    case Phase::kReturnToLeft:
      return "return_to_left";
    case Phase::kReturnToStart:
      return "return_to_start";
    case Phase::kDone:
      break;
  }
  return "done";
}

const char* EventName(MissionEvent event) {
  switch (event) {
    case MissionEvent::kNone:
      return "none";
    case MissionEvent::kTack:
      return "tack";
    case MissionEvent::kUpperBar:
      return "upper_bar";
    case MissionEvent::kLeftBar:
      return "left_bar";
    case MissionEvent::kLoopComplete:
      return "loop_complete";
    case MissionEvent::kDone:
      break;
  }
  return "done";
}

MissionState MissionInit(const MissionConfig& cfg) {
  MissionState ms;
  ms.phase = Phase::kTackRight;
  ms.setting_angle = cfg.theta_setting;
  return ms;
}

MissionStep MissionUpdate(const MissionState& current, const BoatState& boat,
                          const MissionConfig& cfg) {
  MissionState ms = current;
  MissionEvent event = MissionEvent::kNone;
  const bool tacking =
      ms.phase == Phase::kTackRight || ms.phase == Phase::kTackLeft;

  if (ms.phase == Phase::kDone) {
    // terminal
  } else if (ms.loop_count >= cfg.loops_target) {
    ms.phase = Phase::kDone;
    ms.tack_assist_active = false;
    ms.assist_side = AssistSide::kNone;
    ms.tack_turning = false;
    event = MissionEvent::kDone;
  } else if (tacking && Crossed(boat, Bar::kUpperY, cfg.upper_bar_y,
                                Direction::kIncreasing)) {
    ms.phase = Phase::kReturnToLeft;
    ChangeSetting(ms, BearingTo({boat.x, boat.y}, cfg.LeftBarMidpoint()), boat,
                  cfg, false);
    event = MissionEvent::kUpperBar;
  } else if (ms.phase == Phase::kTackRight &&
             Crossed(boat, Bar::kRightX, cfg.right_bar_x,
                     Direction::kIncreasing)) {
    ms.phase = Phase::kTackLeft;
    ++ms.tack_count;
    ChangeSetting(ms, -cfg.theta_setting, boat, cfg, true);
    event = MissionEvent::kTack;
  } else if (ms.phase == Phase::kTackLeft &&
             Crossed(boat, Bar::kMiddleX, cfg.middle_bar_x,
                     Direction::kDecreasing)) {
    ms.phase = Phase::kTackRight;
    ++ms.tack_count;
    ChangeSetting(ms, cfg.theta_setting, boat, cfg, true);
    event = MissionEvent::kTack;
  } else if (ms.phase == Phase::kReturnToLeft &&
             Crossed(boat, Bar::kLeftX, cfg.left_bar_x,
                     Direction::kDecreasing)) {
    ms.phase = Phase::kReturnToStart;
    const Point here{boat.x, boat.y};
    const bool at_start = here.x == cfg.start_point.x && here.y == cfg.start_point.y;
    ChangeSetting(ms,
                  at_start ? ms.setting_angle : BearingTo(here, cfg.start_point),
                  boat, cfg, false);
    event = MissionEvent::kLeftBar;
  } else if (ms.phase == Phase::kReturnToStart &&
             std::hypot(boat.x - cfg.start_point.x, boat.y - cfg.start_point.y) <=
                 cfg.start_radius) {
    ++ms.loop_count;
    if (ms.loop_count >= cfg.loops_target) {
      ms.phase = Phase::kDone;
      ms.tack_assist_active = false;
      ms.assist_side = AssistSide::kNone;
      ms.assist_for_tack = false;
      ms.tack_turning = false;
      event = MissionEvent::kDone;
    } else {
      ms.phase = Phase::kTackRight;
      ChangeSetting(ms, cfg.theta_setting, boat, cfg, false);
      event = MissionEvent::kLoopComplete;
    }
  } else if (ms.phase == Phase::kReturnToLeft ||
             ms.phase == Phase::kReturnToStart) {
    // Return legs home on their target from the current position.
    const Point target = ms.phase == Phase::kReturnToLeft
                             ? cfg.LeftBarMidpoint()
                             : cfg.start_point;
    const Point here{boat.x, boat.y};
    if (here.x != target.x || here.y != target.y) {
      const double bearing = BearingTo(here, target);
      if (ms.tack_assist_active) {
        ms.setting_angle = bearing;
      } else {
        ChangeSetting(ms, bearing, boat, cfg, false);
      }
    }
  }
  return {ms, ms.setting_angle, event};
}

MotorCommand TackAssist(MissionState& ms, const BoatState& boat,
                        const MissionConfig& cfg) {
  const double err = HeadingError(ms.setting_angle, boat.heading_deg);
  if (ms.tack_turning && std::abs(err) <= cfg.settle_angle) {
    ms.tack_turning = false;
  }
  if (!ms.tack_assist_active) return MotorCommand::kOff;
  if (std::abs(err) <= cfg.boundary_angle) {
    ms.tack_assist_active = false;
    ms.assist_side = AssistSide::kNone;
    ms.assist_for_tack = false;
    return MotorCommand::kOff;
  }
  // The motor opposite to the turn direction drives the bow around.
  if (err > 0.0) {
    ms.assist_side = AssistSide::kLeftMotor;
    return MotorCommand::kLeftOn;
  }
  ms.assist_side = AssistSide::kRightMotor;
  return MotorCommand::kRightOn;
}

Maneuver CurrentManeuver(const MissionState& ms, double heading_error_deg) {
  if (!ms.tack_turning) return Maneuver::kNone;
  return heading_error_deg > 0.0 ? Maneuver::kRightTack : Maneuver::kLeftTack;
}

double BearingTo(Point from, Point to) {
  const double dx = to.x - from.x;
  const double dy = to.y - from.y;
  if (dx == 0.0 && dy == 0.0) {
    throw std::invalid_argument("bearing between coincident points");
  }
  return NormalizeDeg180(RadToDeg(std::atan2(dx, dy)));
}

bool IsLegalTransition(Phase from, Phase to) {
  if (from == to) return true;
  switch (from) {
    case Phase::kTackRight:
      return to == Phase::kTackLeft || to == Phase::kReturnToLeft ||
             to == Phase::kDone;
    case Phase::kTackLeft:
      return to == Phase::kTackRight || to == Phase::kReturnToLeft ||
             to == Phase::kDone;
    case Phase::kReturnToLeft:
      return to == Phase::kReturnToStart || to == Phase::kDone;
    case Phase::kReturnToStart:
      return to == Phase::kTackRight || to == Phase::kDone;
    case Phase::kDone:
      break;
  }
  return false;
}

bool SatisfiesInvariants(const MissionState& ms, const MissionConfig& cfg) {
  if (ms.tack_assist_active && ms.assist_side == AssistSide::kNone) return false;
  if (ms.loop_count < 0 || ms.loop_count > cfg.loops_target) return false;
  if (ms.tack_count < 0) return false;
  const bool tacking =
      ms.phase == Phase::kTackRight || ms.phase == Phase::kTackLeft;
  if (tacking) {
    if (std::abs(std::abs(ms.setting_angle) - cfg.theta_setting) > 1e-9) {
      return false;
    }
    if (ms.phase == Phase::kTackRight && ms.setting_angle < 0.0) return false;
    if (ms.phase == Phase::kTackLeft && ms.setting_angle > 0.0) return false;
  }
  return true;
}

}  // namespace hybridsail
