// Angle helpers shared by every module.
//
// Headings use the compass-like convention of the simulator: 0 deg points
// along +y (straight upwind for the default wind field) and angles grow
// clockwise toward +x.

#ifndef HYBRIDSAIL_ANGLES_H_
#define HYBRIDSAIL_ANGLES_H_

#include <cmath>
#include <numbers>

namespace hybridsail {

inline constexpr double kPi = std::numbers::pi;

constexpr double DegToRad(double deg) { return deg * kPi / 180.0; }
constexpr double RadToDeg(double rad) { return rad * 180.0 / kPi; }

// Maps any finite angle into (-180, 180].
inline double NormalizeDeg180(double deg) {
  double r = std::fmod(deg, 360.0);
  if (r > 180.0) r -= 360.0;
  if (r <= -180.0) r += 360.0;
  return r;
}

// Maps any finite angle into [0, 360).
inline double WrapDeg360(double deg) {
  double r = std::fmod(deg, 360.0);
  if (r < 0.0) r += 360.0;
  if (r >= 360.0) r -= 360.0;
  return r;
}

// Maps any finite angle into (-pi, pi].
inline double NormalizeRadPi(double rad) {
  double r = std::remainder(rad, 2.0 * kPi);  // [-pi, pi]
  if (r <= -kPi) r += 2.0 * kPi;
  return r;
}

// Sine/cosine of degrees, exact at multiples of 90 deg.
inline double SinDeg(double deg) {
  const double r = WrapDeg360(deg);
  if (r == 0.0 || r == 180.0) return 0.0;
  if (r == 90.0) return 1.0;
  if (r == 270.0) return -1.0;
  return std::sin(DegToRad(r));
}

inline double CosDeg(double deg) { return SinDeg(deg + 90.0); }

}  // namespace hybridsail

#endif  // HYBRIDSAIL_ANGLES_H_
