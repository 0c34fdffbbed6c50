// Run configuration: every tunable of the simulator in one value type, plus
// the plain-text format it is read from and written to.
//
// Format: `[section]` headers followed by `key = value` lines. `#` starts a
// comment. Lists are comma separated. Keys not present keep their defaults;
// unknown sections or keys are errors. See docs/config.md for the annotated
// reference.

#ifndef HYBRIDSAIL_CONFIG_H_
#define HYBRIDSAIL_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hybridsail/energy.h"
#include "hybridsail/helm.h"
#include "hybridsail/mission.h"
#include "hybridsail/vessel.h"

namespace hybridsail {

struct SailConfig {
  double sail_coeff = 0.6;  // N s^2 / m^2
  double theta_step = 1.0;  // deg
  double phi_step = 1.0;    // deg
  // Optional CSV maps replacing the analytic model (both or neither).
  std::string map_right;
  std::string map_left;
};

struct RunConfig {
  Arena arena;
  WindField wind;
  VesselParams vessel;
  SailConfig sail;
  PidGains pid;
  RudderBases bases;
  double clip_limit = PidController::kDefaultClipLimit;
  MissionConfig mission;
  PowerModel power;

  double dt = 0.05;             // s
  double timeout = 1200.0;      // simulated s per cruise
  double initial_speed = 0.5;   // m/s at release
  std::uint64_t seed = 1;
  std::string output_dir = "out";

  std::vector<double> thetas{35.0, 40.0, 45.0, 50.0, 55.0};
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
  int threads = 0;  // 0 = hardware concurrency
};

// Parse failures carry the line number; invariant failures carry the field
// path (e.g. "mission.theta_setting").
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Throws ConfigError naming the first violated invariant.
void Validate(const RunConfig& cfg);

RunConfig ParseConfig(std::string_view text);
RunConfig LoadConfig(const std::filesystem::path& path);

// Canonical text form: every key, fixed order, shortest round-trip numbers.
// ParseConfig(DumpConfig(c)) reproduces c exactly.
std::string DumpConfig(const RunConfig& cfg);

}  // namespace hybridsail

#endif  // HYBRIDSAIL_CONFIG_H_
