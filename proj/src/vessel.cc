#include "hybridsail/vessel.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "hybridsail/angles.h"

namespace hybridsail {

namespace {

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Uniform value in [-1, 1] attached to gust knot k.
double KnotValue(std::uint64_t seed, std::int64_t k) {
  const std::uint64_t h =
      SplitMix64(SplitMix64(seed) ^ static_cast<std::uint64_t>(k));
  const double unit = static_cast<double>(h >> 11) * 0x1.0p-53;  // [0, 1)
  return 2.0 * unit - 1.0;
}

}  // namespace

void Validate(const WindField& wind) {
  if (!std::isfinite(wind.from_direction_deg)) {
    throw std::invalid_argument("wind.from_direction_deg must be finite");
  }
  if (!(wind.mean_speed > 0.0) || !std::isfinite(wind.mean_speed)) {
    throw std::invalid_argument("wind.mean_speed must be > 0");
  }
  if (!(wind.gust_amplitude >= 0.0) || !std::isfinite(wind.gust_amplitude)) {
    throw std::invalid_argument("wind.gust_amplitude must be >= 0");
  }
  if (!(wind.mean_speed - wind.gust_amplitude > 0.0)) {
    throw std::invalid_argument(
        "wind.gust_amplitude must stay below wind.mean_speed");
  }
  if (!(wind.gust_period > 0.0) || !std::isfinite(wind.gust_period)) {
    throw std::invalid_argument("wind.gust_period must be > 0");
  }
  if (!(wind.heading_noise_sigma >= 0.0) ||
      !std::isfinite(wind.heading_noise_sigma)) {
    throw std::invalid_argument("wind.heading_noise_sigma must be >= 0");
  }
}

void Validate(const VesselParams& p) {
  if (!(p.mass > 0.0) || !std::isfinite(p.mass)) {
    throw std::invalid_argument("vessel.mass must be > 0");
  }
  const std::pair<const char*, double> coeffs[] = {
      {"vessel.drag_coeff", p.drag_coeff},
      {"vessel.turn_rate_gain", p.turn_rate_gain},
      {"vessel.motor_thrust", p.motor_thrust},
      {"vessel.motor_yaw_rate", p.motor_yaw_rate},
      {"vessel.leeway_coeff", p.leeway_coeff}};
  for (const auto& [name, value] : coeffs) {
    if (!(value >= 0.0) || !std::isfinite(value)) {
      throw std::invalid_argument(std::string(name) + " must be >= 0");
    }
  }
  if (!(p.no_go_half_angle > 0.0 && p.no_go_half_angle < 90.0)) {
    throw std::invalid_argument("vessel.no_go_half_angle must be in (0, 90)");
  }
}

void Validate(const Arena& arena) {
  if (!(arena.width > 0.0) || !std::isfinite(arena.width)) {
    throw std::invalid_argument("arena.width must be > 0");
  }
  if (!(arena.height > 0.0) || !std::isfinite(arena.height)) {
    throw std::invalid_argument("arena.height must be > 0");
  }
}

double WindSample(const WindField& wind, double t) {
  if (wind.gust_amplitude == 0.0) return wind.mean_speed;
  // Cosine-interpolated value noise: knots every gust_period, each in
  // [-1, 1], so the blend stays in [-1, 1] as well.
  const double pos = t / wind.gust_period;
  const double base = std::floor(pos);
  const auto k = static_cast<std::int64_t>(base);
  const double frac = pos - base;
  const double w = 0.5 - 0.5 * std::cos(kPi * frac);
  const double s = (1.0 - w) * KnotValue(wind.seed, k) +
                   w * KnotValue(wind.seed, k + 1);
  return wind.mean_speed + wind.gust_amplitude * std::clamp(s, -1.0, 1.0);
}

int MotorsOn(MotorCommand cmd) { return cmd == MotorCommand::kOff ? 0 : 1; }

double RelativeHeading(const WindField& wind, double heading_deg) {
  return NormalizeDeg180(heading_deg - wind.from_direction_deg);
}

VesselSim::VesselSim(VesselParams params, WindField wind, Arena arena,
                     SailMaps maps)
    : params_(params),
      wind_(wind),
      arena_(arena),
      maps_(std::move(maps)),
      rng_(SplitMix64(wind.seed ^ 0x5a11b0a7ULL)) {
  Validate(params_);
  Validate(wind_);
  Validate(arena_);
  if (!(maps_.reference_wind > 0.0)) {
    throw std::invalid_argument("sail map reference wind must be > 0");
  }
}

bool VesselSim::InNoGoZone(double heading_deg) const {
  return std::abs(RelativeHeading(wind_, heading_deg)) <
         params_.no_go_half_angle;
}

double VesselSim::SailForce(double heading_deg, double phi_deg,
                            double wind_speed) const {
  if (InNoGoZone(heading_deg)) return 0.0;
  const double scale = wind_speed / maps_.reference_wind;
  return maps_.Force(RelativeHeading(wind_, heading_deg), phi_deg) * scale *
         scale;
}

BoatState VesselSim::Step(const BoatState& s, const ActuatorCommand& cmd,
                          double t, double dt) {
  if (!(dt > 0.0 && dt <= kMaxDt)) {
    throw std::invalid_argument("vessel dt must be in (0, 0.5]");
  }
  const double wind_speed = WindSample(wind_, t);
  const int motors = MotorsOn(cmd.motors);

  const double force = SailForce(s.heading_deg, cmd.sail_phi_deg, wind_speed) +
                       params_.motor_thrust * motors;
  const double accel =
      (force - params_.drag_coeff * s.speed * s.speed) / params_.mass;

  double yaw_rate = -params_.turn_rate_gain * cmd.rudder_deg * s.speed;
  if (cmd.motors == MotorCommand::kLeftOn) yaw_rate += params_.motor_yaw_rate;
  if (cmd.motors == MotorCommand::kRightOn) yaw_rate -= params_.motor_yaw_rate;
  double heading = s.heading_deg + yaw_rate * dt;
  if (wind_.heading_noise_sigma > 0.0) {
    heading += wind_.heading_noise_sigma * std::sqrt(dt) * normal_(rng_);
  }

  const double h_rad = DegToRad(s.heading_deg);
  const double downwind = wind_.from_direction_deg + 180.0;
  const double drift = params_.leeway_coeff * wind_speed;

  BoatState next;
  next.x = s.x + (s.speed * std::sin(h_rad) + drift * SinDeg(downwind)) * dt;
  next.y = s.y + (s.speed * std::cos(h_rad) + drift * CosDeg(downwind)) * dt;
  next.heading_deg = NormalizeDeg180(heading);
  next.speed = std::max(0.0, s.speed + accel * dt);

  hit_wall_ = false;
  if (next.x < 0.0 || next.x > arena_.width || next.y < 0.0 ||
      next.y > arena_.height) {
    // Surge into a wall stops the hull; drift alone only slides along it.
    const double sx = std::sin(h_rad);
    const double sy = std::cos(h_rad);
    const bool driving_in = (next.x < 0.0 && sx < 0.0) ||
                            (next.x > arena_.width && sx > 0.0) ||
                            (next.y < 0.0 && sy < 0.0) ||
                            (next.y > arena_.height && sy > 0.0);
    next.x = std::clamp(next.x, 0.0, arena_.width);
    next.y = std::clamp(next.y, 0.0, arena_.height);
    if (driving_in) next.speed = 0.0;
    hit_wall_ = true;
  }
  return next;
}

bool Crossed(const BoatState& state, Bar bar, double value,
             Direction direction) {
  const double coord =
      (bar == Bar::kUpperY || bar == Bar::kLowerY) ? state.y : state.x;
  return direction == Direction::kIncreasing ? coord >= value : coord <= value;
}

}  // namespace hybridsail
