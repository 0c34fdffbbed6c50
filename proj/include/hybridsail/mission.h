// Cruise state machine for the upwind loop.
//
// The boat beats upwind between the middle and right bars, alternating the
// setting angle between +theta and -theta. Reaching the upper bar sends it
// toward the midpoint of the left bar; reaching the left bar sends it back
// to the start point, where the next loop begins. A setting change that
// leaves more than `boundary_angle` of heading error arms one motor to help
// the turn; the motor stops once the error falls to the boundary angle.

#ifndef HYBRIDSAIL_MISSION_H_
#define HYBRIDSAIL_MISSION_H_

#include "hybridsail/helm.h"
#include "hybridsail/vessel.h"

namespace hybridsail {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

struct MissionConfig {
  double left_bar_x = 1.0;
  double middle_bar_x = 4.0;
  double right_bar_x = 7.0;
  double lower_bar_y = 1.0;
  double upper_bar_y = 10.5;
  Point start_point{5.5, 1.5};
  double start_radius = 0.5;
  double theta_setting = 40.0;   // deg
  double boundary_angle = 30.0;  // deg
  // A bar tack keeps its rudder base until |error| falls to this angle.
  double settle_angle = 5.0;  // deg
  int loops_target = 5;
  bool assist_on_returns = true;

  Point LeftBarMidpoint() const {
    return {left_bar_x, 0.5 * (lower_bar_y + upper_bar_y)};
  }
};

// Throws std::invalid_argument naming the offending field.
void Validate(const MissionConfig& cfg);

enum class Phase { kTackRight, kTackLeft, kReturnToLeft, kReturnToStart, kDone };
enum class AssistSide { kNone, kLeftMotor, kRightMotor };

const char* PhaseName(Phase phase);

struct MissionState {
  Phase phase = Phase::kTackRight;
  double setting_angle = 0.0;  // deg
  bool tack_assist_active = false;
  AssistSide assist_side = AssistSide::kNone;
  bool assist_for_tack = false;  // armed by a bar-triggered tack
  bool tack_turning = false;     // bar tack still swinging onto its setting
  int tack_count = 0;
  int loop_count = 0;
};

enum class MissionEvent {
  kNone,
  kTack,
  kUpperBar,
  kLeftBar,
  kLoopComplete,
  kDone,
};

const char* EventName(MissionEvent event);

struct MissionStep {
  MissionState state;
  double setting_deg = 0.0;
  MissionEvent event = MissionEvent::kNone;
};

MissionState MissionInit(const MissionConfig& cfg);

// One evaluation of the transition rules, in priority order: upper bar,
// right bar, middle bar, left bar, start circle.
MissionStep MissionUpdate(const MissionState& ms, const BoatState& boat,
                          const MissionConfig& cfg);

// Motor command for the current step. Disarms the assist (and keeps it off
// until the next setting change) once |error| <= boundary_angle.
MotorCommand TackAssist(MissionState& ms, const BoatState& boat,
                        const MissionConfig& cfg);

// Maneuver the rudder bases should follow: a bar tack from the trigger until
// |error| first falls to settle_angle, nothing otherwise.
Maneuver CurrentManeuver(const MissionState& ms, double heading_error_deg);

// Heading (0 = +y, clockwise positive) of the vector from -> to. Throws
// std::invalid_argument for coincident points.
double BearingTo(Point from, Point to);

// Whether the phase machine may move from `from` to `to` in one update.
bool IsLegalTransition(Phase from, Phase to);

// All MissionState invariants for this config.
bool SatisfiesInvariants(const MissionState& ms, const MissionConfig& cfg);

}  // namespace hybridsail

#endif  // HYBRIDSAIL_MISSION_H_
