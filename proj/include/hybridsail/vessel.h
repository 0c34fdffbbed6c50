// Planar 3-DOF boat model (surge, yaw, kinematic leeway) in a walled arena
// with a gusty, fixed-direction wind.

#ifndef HYBRIDSAIL_VESSEL_H_
#define HYBRIDSAIL_VESSEL_H_

#include <cstdint>
#include <random>

#include "hybridsail/sail_aero.h"

namespace hybridsail {

struct BoatState {
  double x = 0.0;            // m
  double y = 0.0;            // m
  double heading_deg = 0.0;  // 0 = +y, clockwise positive, (-180, 180]
  double speed = 0.0;        // surge, m/s, >= 0

  friend bool operator==(const BoatState&, const BoatState&) = default;
};

struct WindField {
  double from_direction_deg = 0.0;  // wind blows from this heading
  double mean_speed = 1.3;          // m/s
  double gust_amplitude = 0.1;      // m/s
  double gust_period = 4.0;         // s, correlation time of the gusts
  double heading_noise_sigma = 3.0; // deg per sqrt(s)
  std::uint64_t seed = 1;
};

// Throws std::invalid_argument when the wind invariants are broken.
void Validate(const WindField& wind);

// mean_speed + gust_amplitude * s(t) with s a seeded smooth noise in [-1, 1].
// Pure function of (wind, t).
double WindSample(const WindField& wind, double t);

struct Arena {
  double width = 8.0;    // x extent, m
  double height = 12.0;  // y extent, m
};

struct VesselParams {
  double mass = 0.601;            // kg
  double drag_coeff = 0.07;       // N s^2 / m^2
  double turn_rate_gain = 3.0;    // deg/s per (deg rudder * m/s)
  double motor_thrust = 0.05;     // N per motor
  double motor_yaw_rate = 120.0;  // deg/s while one side is driven
  double leeway_coeff = 0.18;     // downwind drift per unit wind speed
  double no_go_half_angle = 37.0; // deg
};

void Validate(const VesselParams& params);
void Validate(const Arena& arena);

enum class MotorCommand { kOff, kLeftOn, kRightOn };

int MotorsOn(MotorCommand cmd);

struct ActuatorCommand {
  double rudder_deg = 0.0;
  double sail_phi_deg = 0.0;
  MotorCommand motors = MotorCommand::kOff;
};

// Heading relative to the upwind direction, (-180, 180].
double RelativeHeading(const WindField& wind, double heading_deg);

// Explicit-Euler integration of the boat. One instance owns its noise
// generator, so trajectories are reproducible for a given wind seed.
//
// Yaw sign: a positive rudder angle turns the bow counter-clockwise, so the
// controller's negative rudder for a positive heading error turns the boat
// toward the setting. A running left motor yaws the bow clockwise.
class VesselSim {
 public:
  static constexpr double kMaxDt = 0.5;

  VesselSim(VesselParams params, WindField wind, Arena arena, SailMaps maps);

  // Throws std::invalid_argument unless 0 < dt <= kMaxDt. `t` is the
  // simulation time at the start of the step (used for the gust sample).
  BoatState Step(const BoatState& state, const ActuatorCommand& cmd, double t,
                 double dt);

  // Sail force the model applies at this heading and sail setting (0 in the
  // no-go cone), before gust scaling.
  double SailForce(double heading_deg, double phi_deg, double wind_speed) const;
  bool InNoGoZone(double heading_deg) const;

  // True when the last Step() ran into a wall.
  bool hit_wall() const { return hit_wall_; }

  const VesselParams& params() const { return params_; }
  const WindField& wind() const { return wind_; }
  const Arena& arena() const { return arena_; }
  const SailMaps& maps() const { return maps_; }

 private:
  VesselParams params_;
  WindField wind_;
  Arena arena_;
  SailMaps maps_;
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  bool hit_wall_ = false;
};

enum class Bar { kLeftX, kMiddleX, kRightX, kUpperY, kLowerY };
enum class Direction { kIncreasing, kDecreasing };

// Whether the boat is at or beyond `value` along the bar's axis (x for the
// vertical bars, y for the horizontal ones). Inclusive.
bool Crossed(const BoatState& state, Bar bar, double value,
             Direction direction);

}  // namespace hybridsail

#endif  // HYBRIDSAIL_VESSEL_H_
