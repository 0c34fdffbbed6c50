// Sail force decomposition and forward-force maps.
//
// A force sensor on the sail reports (fx, fy) in a frame that rotates with
// the sail. The sail angular coordinate phi is the world-frame direction of
// the sensor's y axis, measured counter-clockwise from world +x; the sensor's
// x axis sits 90 deg further counter-clockwise. With the heading theta in the
// compass convention (0 = +y, clockwise positive) the angle between the
// resultant force and the bow is
//
//   tau = 5*pi/2 - theta - phi - atan2(fx, fy)
//
// and the useful (forward) part of the force is |F| * cos(tau).

#ifndef HYBRIDSAIL_SAIL_AERO_H_
#define HYBRIDSAIL_SAIL_AERO_H_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <vector>

namespace hybridsail {

struct SensorForce {
  double fx = 0.0;  // N, sail frame
  double fy = 0.0;  // N, sail frame

  double Magnitude() const;
};

enum class TackSide { kRight, kLeft };

const char* TackSideName(TackSide side);

// Angle between the sail force and the heading, normalized into (-pi, pi].
// The atan2(fx, fy) argument order is intentional.
double ComputeTau(double theta_rad, double phi_rad, const SensorForce& f);

// |f| * cos(tau). Negative values mean the sail pushes the boat backwards.
double ForwardForce(double theta_rad, double phi_rad, const SensorForce& f);

// Tabulated forward force over (heading angle theta, sail coordinate phi),
// both in degrees. Rows follow theta_grid, columns follow phi_grid. Both grids
// are strictly ascending with a uniform step; phi values lie in [0, 360).
class SailForceMap {
 public:
  // Throws std::invalid_argument when the grids or the value matrix break
  // the invariants above.
  SailForceMap(TackSide side, std::vector<double> theta_grid,
               std::vector<double> phi_grid, std::vector<double> values);

  TackSide side() const { return side_; }
  const std::vector<double>& theta_grid() const { return theta_grid_; }
  const std::vector<double>& phi_grid() const { return phi_grid_; }
  const std::vector<double>& values() const { return values_; }
  std::size_t rows() const { return theta_grid_.size(); }
  std::size_t cols() const { return phi_grid_.size(); }

  double at(std::size_t row, std::size_t col) const {
    return values_[row * phi_grid_.size() + col];
  }

  double theta_min() const { return theta_grid_.front(); }
  double theta_max() const { return theta_grid_.back(); }
  bool Covers(double theta_deg) const;

  // Row blend of column `col` at theta (linear between neighbouring rows).
  // Throws std::out_of_range outside the theta grid.
  double InterpolatedColumn(double theta_deg, std::size_t col) const;

  // Force at (theta, phi): linear in theta, nearest grid column in phi
  // (with wrap-around at 360).
  double Lookup(double theta_deg, double phi_deg) const;

  std::size_t NearestColumn(double phi_deg) const;

  friend bool operator==(const SailForceMap&, const SailForceMap&) = default;

 private:
  struct RowBlend {
    std::size_t row;
    double weight;  // weight of row + 1
  };
  RowBlend BlendFor(double theta_deg) const;

  TackSide side_;
  std::vector<double> theta_grid_;
  std::vector<double> phi_grid_;
  std::vector<double> values_;
};

// Flat-plate sail: the wind (blowing from theta = 0) pushes on the sail with a
// normal force sail_coeff * wind_speed^2 * sin^2(alpha), alpha being the
// angle between the wind and the sail chord (chord along the sensor y axis).
// The right-tack map spans theta in [0, 180]; the left-tack map spans
// [180, 360] and is the exact mirror of the right one:
// left(360 - theta, 360 - phi) == right(theta, phi).
SailForceMap BuildAnalyticMap(TackSide side, double wind_speed,
                              double theta_step, double phi_step,
                              double sail_coeff);

// The sensor reading the flat-plate model produces for sail coordinate phi.
SensorForce FlatPlateForce(double phi_deg, double wind_speed,
                           double sail_coeff);

struct SailSetting {
  double phi_deg = 0.0;
  double force = 0.0;  // N
};

// Column maximizing the interpolated forward force at theta. Ties go to the
// smaller phi. Throws std::out_of_range when theta is outside the map.
SailSetting OptimalSailAngle(const SailForceMap& map, double theta_deg);

// Right/left map pair plus the wind speed they were generated at. Queries
// take the boat heading relative to the upwind direction in (-180, 180];
// positive headings (wind over the port side, sailing to the right) use the
// right-tack map, negative ones the left-tack map.
struct SailMaps {
  SailForceMap right;
  SailForceMap left;
  double reference_wind = 1.3;  // m/s

  SailSetting Best(double relative_heading_deg) const;
  double Force(double relative_heading_deg, double phi_deg) const;
};

// CSV layout: header `theta_deg,<phi...>`, then one `theta,<F...>` row per
// theta. Errors are reported as std::runtime_error naming the line number.
SailForceMap ReadMapCsv(std::istream& in, TackSide side);
void WriteMapCsv(std::ostream& out, const SailForceMap& map);
SailForceMap LoadMapCsv(const std::filesystem::path& path, TackSide side);
void SaveMapCsv(const SailForceMap& map, const std::filesystem::path& path);

}  // namespace hybridsail

#endif  // HYBRIDSAIL_SAIL_AERO_H_
