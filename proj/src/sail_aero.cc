#include "hybridsail/sail_aero.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include "hybridsail/angles.h"
#include "hybridsail/numfmt.h"

namespace hybridsail {

namespace {

bool NearlyEqual(double a, double b, double scale) {
  return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(scale));
}

// Empty string when the grid is fine, otherwise a description of the defect.
std::string CheckGrid(const std::vector<double>& grid) {
  if (grid.empty()) return "grid is empty";
  for (double g : grid) {
    if (!std::isfinite(g)) return "grid value is not finite";
  }
  if (grid.size() < 2) return {};
  const double step = grid[1] - grid[0];
  if (!(step > 0.0)) return "grid is not strictly ascending";
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double d = grid[i] - grid[i - 1];
    if (!(d > 0.0)) return "grid is not strictly ascending";
    if (!NearlyEqual(d, step, step)) return "grid step is not uniform";
  }
  return {};
}

std::size_t StepCount(double range, double step, const char* what) {
  const double n = range / step;
  const double rounded = std::round(n);
  if (rounded < 1.0 || std::abs(n - rounded) > 1e-9 * rounded) {
    throw std::invalid_argument(std::string(what) +
                                " must divide its range evenly");
  }
  return static_cast<std::size_t>(rounded);
}

std::vector<std::string_view> SplitCommas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

[[noreturn]] void CsvError(std::size_t line_no, const std::string& what) {
  throw std::runtime_error("force map CSV line " + std::to_string(line_no) +
                           ": " + what);
}

}  // namespace

double SensorForce::Magnitude() const { return std::hypot(fx, fy); }

const char* TackSideName(TackSide side) {
  return side == TackSide::kRight ? "right" : "left";
}

double ComputeTau(double theta_rad, double phi_rad, const SensorForce& f) {
  return NormalizeRadPi(5.0 * kPi / 2.0 - theta_rad - phi_rad -
                        std::atan2(f.fx, f.fy));
}

double ForwardForce(double theta_rad, double phi_rad, const SensorForce& f) {
  return f.Magnitude() * std::cos(ComputeTau(theta_rad, phi_rad, f));
}

SailForceMap::SailForceMap(TackSide side, std::vector<double> theta_grid,
                           std::vector<double> phi_grid,
                           std::vector<double> values)
    : side_(side),
      theta_grid_(std::move(theta_grid)),
      phi_grid_(std::move(phi_grid)),
      values_(std::move(values)) {
  if (auto err = CheckGrid(theta_grid_); !err.empty()) {
    throw std::invalid_argument("theta " + err);
  }
  if (auto err = CheckGrid(phi_grid_); !err.empty()) {
    throw std::invalid_argument("phi " + err);
  }
  if (phi_grid_.front() < 0.0 || phi_grid_.back() >= 360.0) {
    throw std::invalid_argument("phi grid must lie in [0, 360)");
  }
  if (values_.size() != theta_grid_.size() * phi_grid_.size()) {
    throw std::invalid_argument("value matrix does not match the grids");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite force value");
  }
}

bool SailForceMap::Covers(double theta_deg) const {
  const double tol = 1e-9 * std::max(1.0, std::abs(theta_max()));
  return theta_deg >= theta_min() - tol && theta_deg <= theta_max() + tol;
}

SailForceMap::RowBlend SailForceMap::BlendFor(double theta_deg) const {
  if (!Covers(theta_deg)) {
    throw std::out_of_range("theta " + FormatDouble(theta_deg) +
                            " outside force map range [" +
                            FormatDouble(theta_min()) + ", " +
                            FormatDouble(theta_max()) + "]");
  }
  if (rows() == 1) return {0, 0.0};
  const double step = theta_grid_[1] - theta_grid_[0];
  const double pos = (theta_deg - theta_min()) / step;
  if (pos <= 0.0) return {0, 0.0};
  std::size_t row = static_cast<std::size_t>(std::floor(pos));
  if (row >= rows() - 1) return {rows() - 2, 1.0};
  return {row, pos - static_cast<double>(row)};
}

double SailForceMap::InterpolatedColumn(double theta_deg,
                                        std::size_t col) const {
  const RowBlend b = BlendFor(theta_deg);
  const double lo = at(b.row, col);
  if (b.weight == 0.0) return lo;
  const double hi = at(b.row + 1, col);
  if (b.weight == 1.0) return hi;
  return (1.0 - b.weight) * lo + b.weight * hi;
}

std::size_t SailForceMap::NearestColumn(double phi_deg) const {
  if (cols() == 1) return 0;
  const double step = phi_grid_[1] - phi_grid_[0];
  const bool full_circle =
      NearlyEqual(step * static_cast<double>(cols()), 360.0, 360.0);
  const double pos = (WrapDeg360(phi_deg) - phi_grid_.front()) / step;
  if (full_circle) {
    const auto n = static_cast<long long>(cols());
    long long idx = std::llround(pos) % n;
    if (idx < 0) idx += n;
    return static_cast<std::size_t>(idx);
  }
  const long long idx = std::llround(pos);
  if (idx <= 0) return 0;
  return std::min(static_cast<std::size_t>(idx), cols() - 1);
}

double SailForceMap::Lookup(double theta_deg, double phi_deg) const {
  return InterpolatedColumn(theta_deg, NearestColumn(phi_deg));
}

SensorForce FlatPlateForce(double phi_deg, double wind_speed,
                           double sail_coeff) {
  // The wind travels toward world math angle -90 deg; the chord lies along
  // phi and the plate normal (sensor x) along phi + 90.
  const double sin_alpha = SinDeg(phi_deg + 90.0);
  const double normal = sail_coeff * wind_speed * wind_speed * sin_alpha *
                        sin_alpha;
  // Force points to the leeward side of the plate.
  const double normal_dot_wind = CosDeg(phi_deg + 180.0);
  return {normal_dot_wind >= 0.0 ? normal : -normal, 0.0};
}

SailForceMap BuildAnalyticMap(TackSide side, double wind_speed,
                              double theta_step, double phi_step,
                              double sail_coeff) {
  if (!(wind_speed > 0.0)) throw std::invalid_argument("wind_speed must be > 0");
  if (!(theta_step > 0.0)) throw std::invalid_argument("theta_step must be > 0");
  if (!(phi_step > 0.0)) throw std::invalid_argument("phi_step must be > 0");
  if (!std::isfinite(sail_coeff)) {
    throw std::invalid_argument("sail_coeff must be finite");
  }
  const std::size_t n_theta = StepCount(180.0, theta_step, "theta_step") + 1;
  const std::size_t n_phi = StepCount(360.0, phi_step, "phi_step");

  std::vector<double> phi(n_phi);
  for (std::size_t j = 0; j < n_phi; ++j) phi[j] = static_cast<double>(j) * phi_step;

  std::vector<double> right_theta(n_theta);
  for (std::size_t i = 0; i < n_theta; ++i) {
    right_theta[i] = static_cast<double>(i) * theta_step;
  }

  std::vector<SensorForce> readings(n_phi);
  for (std::size_t j = 0; j < n_phi; ++j) {
    readings[j] = FlatPlateForce(phi[j], wind_speed, sail_coeff);
  }

  std::vector<double> right(n_theta * n_phi);
  for (std::size_t i = 0; i < n_theta; ++i) {
    const double theta_rad = DegToRad(right_theta[i]);
    for (std::size_t j = 0; j < n_phi; ++j) {
      right[i * n_phi + j] = ForwardForce(theta_rad, DegToRad(phi[j]), readings[j]);
    }
  }
  if (side == TackSide::kRight) {
    return SailForceMap(side, std::move(right_theta), std::move(phi),
                        std::move(right));
  }

  // Left tack: row i is theta = 180 + i*step, mirrored from right row
  // (n - 1 - i); column j mirrors column (n_phi - j) mod n_phi.
  std::vector<double> left_theta(n_theta);
  for (std::size_t i = 0; i < n_theta; ++i) {
    left_theta[i] = 180.0 + static_cast<double>(i) * theta_step;
  }
  std::vector<double> left(n_theta * n_phi);
  for (std::size_t i = 0; i < n_theta; ++i) {
    const std::size_t src_row = n_theta - 1 - i;
    for (std::size_t j = 0; j < n_phi; ++j) {
      const std::size_t src_col = (n_phi - j) % n_phi;
      left[i * n_phi + j] = right[src_row * n_phi + src_col];
    }
  }
  return SailForceMap(side, std::move(left_theta), std::move(phi),
                      std::move(left));
}

SailSetting OptimalSailAngle(const SailForceMap& map, double theta_deg) {
  SailSetting best{map.phi_grid()[0], map.InterpolatedColumn(theta_deg, 0)};
  for (std::size_t j = 1; j < map.cols(); ++j) {
    const double f = map.InterpolatedColumn(theta_deg, j);
    if (f > best.force) best = {map.phi_grid()[j], f};
  }
  return best;
}

SailSetting SailMaps::Best(double relative_heading_deg) const {
  const double rel = NormalizeDeg180(relative_heading_deg);
  if (rel >= 0.0) return OptimalSailAngle(right, rel);
  return OptimalSailAngle(left, 360.0 + rel);
}

double SailMaps::Force(double relative_heading_deg, double phi_deg) const {
  const double rel = NormalizeDeg180(relative_heading_deg);
  if (rel >= 0.0) return right.Lookup(rel, phi_deg);
  return left.Lookup(360.0 + rel, phi_deg);
}

SailForceMap ReadMapCsv(std::istream& in, TackSide side) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<double> phi;
  std::vector<double> theta;
  std::vector<double> values;

  auto next_line = [&]() -> bool {
    if (!std::getline(in, line)) return false;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  };

  if (!next_line()) CsvError(1, "missing header");
  {
    auto cells = SplitCommas(line);
    if (Trim(cells[0]) != "theta_deg") {
      CsvError(line_no, "header must start with 'theta_deg'");
    }
    if (cells.size() < 2) CsvError(line_no, "header has no phi columns");
    for (std::size_t c = 1; c < cells.size(); ++c) {
      auto v = ParseDouble(cells[c]);
      if (!v) CsvError(line_no, "bad phi value '" + std::string(cells[c]) + "'");
      phi.push_back(*v);
    }
    if (auto err = CheckGrid(phi); !err.empty()) CsvError(line_no, "phi " + err);
    if (phi.front() < 0.0 || phi.back() >= 360.0) {
      CsvError(line_no, "phi values must lie in [0, 360)");
    }
  }

  while (next_line()) {
    if (Trim(line).empty()) continue;
    auto cells = SplitCommas(line);
    if (cells.size() != phi.size() + 1) {
      CsvError(line_no, "expected " + std::to_string(phi.size() + 1) +
                            " fields, found " + std::to_string(cells.size()));
    }
    auto t = ParseDouble(cells[0]);
    if (!t) CsvError(line_no, "bad theta value '" + std::string(cells[0]) + "'");
    theta.push_back(*t);
    if (auto err = CheckGrid(theta); !err.empty()) CsvError(line_no, "theta " + err);
    for (std::size_t c = 1; c < cells.size(); ++c) {
      auto v = ParseDouble(cells[c]);
      if (!v || !std::isfinite(*v)) {
        CsvError(line_no, "bad force value '" + std::string(cells[c]) + "'");
      }
      values.push_back(*v);
    }
  }
  if (theta.empty()) CsvError(line_no + 1, "no data rows");
  return SailForceMap(side, std::move(theta), std::move(phi), std::move(values));
}

void WriteMapCsv(std::ostream& out, const SailForceMap& map) {
  out << "theta_deg";
  for (double p : map.phi_grid()) out << ',' << FormatDouble(p);
  out << '\n';
  for (std::size_t i = 0; i < map.rows(); ++i) {
    out << FormatDouble(map.theta_grid()[i]);
    for (std::size_t j = 0; j < map.cols(); ++j) {
      out << ',' << FormatDouble(map.at(i, j));
    }
    out << '\n';
  }
}

SailForceMap LoadMapCsv(const std::filesystem::path& path, TackSide side) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open force map " + path.string());
  return ReadMapCsv(in, side);
}

void SaveMapCsv(const SailForceMap& map, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write force map " + path.string());
  WriteMapCsv(out, map);
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace hybridsail
