#include "hybridsail/config.h"

#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <utility>

#include "hybridsail/numfmt.h"

namespace hybridsail {

namespace {

// Setter returns an error message, empty on success.
struct Binding {
  const char* section;
  const char* key;
  std::function<std::string(std::string_view)> set;
  std::function<std::string()> get;
};

Binding Num(const char* section, const char* key, double& field) {
  return {section, key,
          [&field](std::string_view v) -> std::string {
            auto d = ParseDouble(v);
            if (!d) return "expected a number, got '" + std::string(v) + "'";
            field = *d;
            return {};
          },
          [&field] { return FormatDouble(field); }};
}

Binding Int(const char* section, const char* key, int& field) {
  return {section, key,
          [&field](std::string_view v) -> std::string {
            auto i = ParseInt(v);
            if (!i || *i < -2147483648LL || *i > 2147483647LL) {
              return "expected an integer, got '" + std::string(v) + "'";
            }
            field = static_cast<int>(*i);
            return {};
          },
          [&field] { return std::to_string(field); }};
}

Binding U64(const char* section, const char* key, std::uint64_t& field) {
  return {section, key,
          [&field](std::string_view v) -> std::string {
            auto u = ParseUint(v);
            if (!u) return "expected an unsigned integer, got '" + std::string(v) + "'";
            field = *u;
            return {};
          },
          [&field] { return std::to_string(field); }};
}

Binding Bool(const char* section, const char* key, bool& field) {
  return {section, key,
          [&field](std::string_view v) -> std::string {
            v = Trim(v);
            if (v == "true") {
              field = true;
            } else if (v == "false") {
              field = false;
            } else {
              return "expected true or false, got '" + std::string(v) + "'";
            }
            return {};
          },
          [&field] { return std::string(field ? "true" : "false"); }};
}

Binding Str(const char* section, const char* key, std::string& field) {
  return {section, key,
          [&field](std::string_view v) -> std::string {
            field = std::string(Trim(v));
            return {};
          },
          [&field] { return field; }};
}

template <typename T, typename ParseFn, typename FormatFn>
Binding List(const char* section, const char* key, std::vector<T>& field,
             ParseFn parse, FormatFn format) {
  return {section, key,
          [&field, parse](std::string_view v) -> std::string {
            std::vector<T> out;
            v = Trim(v);
            if (!v.empty()) {
              std::size_t start = 0;
              while (true) {
                const auto pos = v.find(',', start);
                const auto item = v.substr(start, pos == std::string_view::npos
                                                      ? std::string_view::npos
                                                      : pos - start);
                auto parsed = parse(item);
                if (!parsed) return "bad list item '" + std::string(Trim(item)) + "'";
                out.push_back(*parsed);
                if (pos == std::string_view::npos) break;
                start = pos + 1;
              }
            }
            field = std::move(out);
            return {};
          },
          [&field, format] {
            std::string s;
            for (std::size_t i = 0; i < field.size(); ++i) {
              if (i) s += ", ";
              s += format(field[i]);
            }
            return s;
          }};
}

std::vector<Binding> Bindings(RunConfig& c) {
  auto parse_d = [](std::string_view s) { return ParseDouble(s); };
  auto parse_u = [](std::string_view s) { return ParseUint(s); };
  auto fmt_u = [](std::uint64_t u) { return std::to_string(u); };
  return {
      Num("arena", "width", c.arena.width),
      Num("arena", "height", c.arena.height),

      Num("wind", "from_direction_deg", c.wind.from_direction_deg),
      Num("wind", "mean_speed", c.wind.mean_speed),
      Num("wind", "gust_amplitude", c.wind.gust_amplitude),
      Num("wind", "gust_period", c.wind.gust_period),
      Num("wind", "heading_noise_sigma", c.wind.heading_noise_sigma),

      Num("vessel", "mass", c.vessel.mass),
      Num("vessel", "drag_coeff", c.vessel.drag_coeff),
      Num("vessel", "turn_rate_gain", c.vessel.turn_rate_gain),
      Num("vessel", "motor_thrust", c.vessel.motor_thrust),
      Num("vessel", "motor_yaw_rate", c.vessel.motor_yaw_rate),
      Num("vessel", "leeway_coeff", c.vessel.leeway_coeff),
      Num("vessel", "no_go_half_angle", c.vessel.no_go_half_angle),

      Num("sail", "sail_coeff", c.sail.sail_coeff),
      Num("sail", "theta_step", c.sail.theta_step),
      Num("sail", "phi_step", c.sail.phi_step),
      Str("sail", "map_right", c.sail.map_right),
      Str("sail", "map_left", c.sail.map_left),

      Num("pid", "kp", c.pid.kp),
      Num("pid", "ki", c.pid.ki),
      Num("pid", "kd", c.pid.kd),
      Num("pid", "pid_proportion", c.pid.pid_proportion),
      Num("pid", "integral_limit", c.pid.integral_limit),
      Num("pid", "clip_limit", c.clip_limit),
      Num("pid", "left_base", c.bases.left_base),
      Num("pid", "middle_base", c.bases.middle_base),
      Num("pid", "right_base", c.bases.right_base),

      Num("mission", "left_bar_x", c.mission.left_bar_x),
      Num("mission", "middle_bar_x", c.mission.middle_bar_x),
      Num("mission", "right_bar_x", c.mission.right_bar_x),
      Num("mission", "lower_bar_y", c.mission.lower_bar_y),
      Num("mission", "upper_bar_y", c.mission.upper_bar_y),
      Num("mission", "start_x", c.mission.start_point.x),
      Num("mission", "start_y", c.mission.start_point.y),
      Num("mission", "start_radius", c.mission.start_radius),
      Num("mission", "theta_setting", c.mission.theta_setting),
      Num("mission", "boundary_angle", c.mission.boundary_angle),
      Num("mission", "settle_angle", c.mission.settle_angle),
      Int("mission", "loops_target", c.mission.loops_target),
      Bool("mission", "assist_on_returns", c.mission.assist_on_returns),

      Num("power", "base_power", c.power.base_power),
      Num("power", "motor_power", c.power.motor_power),
      Num("power", "battery_voltage", c.power.battery_voltage),

      Num("run", "dt", c.dt),
      Num("run", "timeout", c.timeout),
      Num("run", "initial_speed", c.initial_speed),
      U64("run", "seed", c.seed),
      Str("run", "output_dir", c.output_dir),

      List<double>("sweep", "thetas", c.thetas, parse_d,
                   [](double d) { return FormatDouble(d); }),
      List<std::uint64_t>("sweep", "seeds", c.seeds, parse_u, fmt_u),
      Int("sweep", "threads", c.threads),
  };
}

[[noreturn]] void LineError(std::size_t line_no, const std::string& what) {
  throw ConfigError("config line " + std::to_string(line_no) + ": " + what);
}

}  // namespace

void Validate(const RunConfig& c) {
  auto wrap = [](auto&& fn) {
    try {
      fn();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  };
  wrap([&] { Validate(c.arena); });
  wrap([&] { Validate(c.wind); });
  wrap([&] { Validate(c.vessel); });
  wrap([&] { Validate(c.mission); });
  wrap([&] { Validate(c.power); });
  wrap([&] { PidController(c.pid, c.bases, c.clip_limit); });

  auto require = [](bool ok, const std::string& msg) {
    if (!ok) throw ConfigError(msg);
  };
  require(c.sail.theta_step > 0.0, "sail.theta_step: must be > 0");
  require(c.sail.phi_step > 0.0, "sail.phi_step: must be > 0");
  require(c.sail.map_right.empty() == c.sail.map_left.empty(),
          "sail.map_right: map_right and map_left must be given together");
  require(c.dt > 0.0 && c.dt <= VesselSim::kMaxDt, "run.dt: must be in (0, 0.5]");
  require(c.timeout > 0.0, "run.timeout: must be > 0");
  require(c.initial_speed >= 0.0, "run.initial_speed: must be >= 0");
  const MissionConfig& m = c.mission;
  require(m.left_bar_x > 0.0 && m.right_bar_x < c.arena.width,
          "mission.left_bar_x: bars must lie inside the arena");
  require(m.lower_bar_y > 0.0 && m.upper_bar_y < c.arena.height,
          "mission.upper_bar_y: bars must lie inside the arena");
  require(m.start_point.x >= 0.0 && m.start_point.x <= c.arena.width &&
              m.start_point.y >= 0.0 && m.start_point.y <= c.arena.height,
          "mission.start_x: start point must lie inside the arena");
  require(!c.thetas.empty(), "sweep.thetas: must not be empty");
  for (double t : c.thetas) {
    require(t > 0.0 && t < 90.0, "sweep.thetas: each theta must be in (0, 90)");
  }
  require(!c.seeds.empty(), "sweep.seeds: must not be empty");
  require(c.threads >= 0, "sweep.threads: must be >= 0");
}

RunConfig ParseConfig(std::string_view text) {
  RunConfig cfg;
  auto bindings = Bindings(cfg);
  std::set<std::string> sections;
  for (const auto& b : bindings) sections.insert(b.section);

  std::set<std::pair<std::string, std::string>> seen;
  std::string section;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto eol = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = Trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') LineError(line_no, "unterminated section header");
      section = std::string(Trim(line.substr(1, line.size() - 2)));
      if (!sections.count(section)) LineError(line_no, "unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) LineError(line_no, "expected 'key = value'");
    const std::string key(Trim(line.substr(0, eq)));
    const std::string_view value = Trim(line.substr(eq + 1));
    if (section.empty()) LineError(line_no, "key '" + key + "' outside a section");

    Binding* target = nullptr;
    for (auto& b : bindings) {
      if (section == b.section && key == b.key) target = &b;
    }
    if (!target) LineError(line_no, "unknown key '" + section + "." + key + "'");
    if (!seen.insert({section, key}).second) {
      LineError(line_no, "duplicate key '" + section + "." + key + "'");
    }
    if (auto err = target->set(value); !err.empty()) {
      LineError(line_no, section + "." + key + ": " + err);
    }
  }
  Validate(cfg);
  return cfg;
}

RunConfig LoadConfig(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return ParseConfig(buf.str());
}

std::string DumpConfig(const RunConfig& cfg) {
  RunConfig copy = cfg;
  std::string out;
  std::string section;
  for (const auto& b : Bindings(copy)) {
    if (section != b.section) {
      if (!section.empty()) out += '\n';
      section = b.section;
      out += "[" + section + "]\n";
    }
    std::string value = b.get();
    out += std::string(b.key) + " =" + (value.empty() ? "" : " " + value) + "\n";
  }
  return out;
}

}  // namespace hybridsail
