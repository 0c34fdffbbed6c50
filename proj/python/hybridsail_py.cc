#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <string>
#include <vector>

#include "hybridsail/config.h"
#include "hybridsail/energy.h"
#include "hybridsail/experiment.h"
#include "hybridsail/helm.h"
#include "hybridsail/io.h"
#include "hybridsail/sail_aero.h"

namespace py = pybind11;
using namespace hybridsail;

namespace {

py::dict LoopDict(const LoopSummary& l) {
  py::dict d;
  d["index"] = l.index;
  d["t_start"] = l.t_start;
  d["t_end"] = l.t_end;
  d["energy"] = l.energy;
  d["tacks"] = l.tacks;
  return d;
}

py::dict CruiseDict(const CruiseResult& r) {
  py::dict d;
  d["theta"] = r.theta;
  d["seed"] = r.seed;
  d["total_energy"] = r.total_energy();
  d["duration"] = r.duration;
  d["timed_out"] = r.timed_out;
  d["tack_count"] = r.tack_count;
  d["wall_hits"] = r.wall_hits;
  d["tacking_energy"] = r.tacking_energy;
  d["fit"] = py::make_tuple(r.fit.slope, r.fit.intercept, r.fit.r2);
  py::list loops;
  for (const LoopSummary& l : r.loops) loops.append(LoopDict(l));
  d["loops"] = loops;

  std::vector<double> t, x, y, heading, speed, power, cumulative;
  for (const TrajectoryRow& row : r.trajectory) {
    t.push_back(row.t);
    x.push_back(row.boat.x);
    y.push_back(row.boat.y);
    heading.push_back(row.boat.heading_deg);
    speed.push_back(row.boat.speed);
  }
  d["t"] = t;
  d["x"] = x;
  d["y"] = y;
  d["heading"] = heading;
  d["speed"] = speed;
  std::vector<double> et;
  for (const EnergySample& s : r.ledger.samples()) {
    et.push_back(s.t);
    power.push_back(s.power);
    cumulative.push_back(s.cumulative);
  }
  d["energy_t"] = et;
  d["power"] = power;
  d["cumulative"] = cumulative;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Hybrid wind/electric sailboat simulator";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  py::class_<RunConfig>(m, "Config")
      .def(py::init<>())
      .def_static("parse", &ParseConfig, py::arg("text"))
      .def_static("load", [](const std::string& p) { return LoadConfig(p); },
                  py::arg("path"))
      .def("dump", &DumpConfig)
      .def("validate", [](const RunConfig& c) { Validate(c); })
      .def_readwrite("dt", &RunConfig::dt)
      .def_readwrite("timeout", &RunConfig::timeout)
      .def_readwrite("seed", &RunConfig::seed)
      .def_readwrite("thetas", &RunConfig::thetas)
      .def_readwrite("seeds", &RunConfig::seeds)
      .def_readwrite("threads", &RunConfig::threads)
      .def("__repr__", [](const RunConfig& c) {
        return "<Config dt=" + std::to_string(c.dt) + " seed=" + std::to_string(c.seed) + ">";
      });

  m.def("forward_force",
        [](double theta_rad, double phi_rad, double fx, double fy) {
          return ForwardForce(theta_rad, phi_rad, {fx, fy});
        },
        py::arg("theta_rad"), py::arg("phi_rad"), py::arg("fx"), py::arg("fy"));
  m.def("compute_tau",
        [](double theta_rad, double phi_rad, double fx, double fy) {
          return ComputeTau(theta_rad, phi_rad, {fx, fy});
        },
        py::arg("theta_rad"), py::arg("phi_rad"), py::arg("fx"), py::arg("fy"));
  m.def("heading_error", &HeadingError, py::arg("setting_deg"), py::arg("heading_deg"));
  m.def("savings_percent", &SavingsPercent, py::arg("best"), py::arg("other"));

  py::class_<PidController>(m, "Pid")
      .def(py::init([](double kp, double ki, double kd, double integral_limit) {
             PidGains g;
             g.kp = kp;
             g.ki = ki;
             g.kd = kd;
             g.integral_limit = integral_limit;
             return PidController(g);
           }),
           py::arg("kp") = 0.2, py::arg("ki") = 0.1, py::arg("kd") = 0.01,
           py::arg("integral_limit") = 10.0)
      .def("step", &PidController::Step, py::arg("error_deg"), py::arg("dt"))
      .def("rudder",
           [](const PidController& p, double u, const std::string& base) {
             BaseMode mode = BaseMode::kMiddle;
             if (base == "left") mode = BaseMode::kLeft;
             else if (base == "right") mode = BaseMode::kRight;
             else if (base != "middle") throw py::value_error("base must be left, middle or right");
             return p.RudderFromU(u, mode);
           },
           py::arg("u"), py::arg("base") = "middle")
      .def("reset", &PidController::Reset)
      .def_property_readonly("integral", &PidController::integral);

  m.def("fit_line",
        [](const std::vector<double>& t, const std::vector<double>& e) {
          const LineFit f = FitLine(t, e);
          return py::make_tuple(f.slope, f.intercept, f.r2);
        },
        py::arg("t"), py::arg("energy"));

  m.def("box_stats",
        [](const std::vector<double>& v) {
          const BoxStats s = ComputeBoxStats(v);
          py::dict d;
          d["mean"] = s.mean;
          d["variance"] = s.variance;
          d["min"] = s.min;
          d["q1"] = s.q1;
          d["median"] = s.median;
          d["q3"] = s.q3;
          d["max"] = s.max;
          return d;
        },
        py::arg("values"));

  m.def("run_cruise",
        [](const RunConfig& cfg, double theta, int loops, std::uint64_t seed) {
          CruiseResult r;
          {
            py::gil_scoped_release release;
            r = RunCruise(cfg, theta, loops, seed);
          }
          return CruiseDict(r);
        },
        py::arg("config"), py::arg("theta"), py::arg("loops") = 5, py::arg("seed") = 1);

  m.def("run_heading_step",
        [](const RunConfig& cfg, double initial_error, double speed, double duration) {
          const HeadingStepResult r = RunHeadingStep(cfg, initial_error, speed, duration);
          py::dict d;
          d["t"] = r.t;
          d["error"] = r.error;
          d["time_within_10"] = r.time_within_10;
          d["overshoot"] = r.overshoot;
          d["final_error"] = r.final_error;
          return d;
        },
        py::arg("config"), py::arg("initial_error") = 90.0, py::arg("speed") = 0.7,
        py::arg("duration") = 60.0);

  m.def("run_sweep",
        [](const RunConfig& cfg, std::vector<double> thetas, int loops,
           std::vector<std::uint64_t> seeds, int threads) {
          SweepSpec spec;
          spec.config = cfg;
          spec.thetas = thetas.empty() ? cfg.thetas : std::move(thetas);
          spec.seeds = seeds.empty() ? cfg.seeds : std::move(seeds);
          spec.loops = loops;
          spec.threads = threads;
          SweepReport rep;
          {
            py::gil_scoped_release release;
            rep = RunSweep(spec);
          }
          py::list rows;
          for (const ThetaResult& r : rep.rows) {
            py::dict d;
            d["theta"] = r.theta;
            d["total_energy"] = r.total_energy;
            d["per_loop"] = r.per_loop;
            d["tacking_energy"] = r.tacking_energy;
            d["tacks_per_loop"] = r.tacks_per_loop;
            d["duration"] = r.duration;
            d["runs"] = r.runs;
            d["timed_out_runs"] = r.timed_out_runs;
            d["savings_percent"] = r.savings_percent;
            rows.append(d);
          }
          py::dict out;
          out["rows"] = rows;
          out["best_theta"] = rep.best_theta;
          return out;
        },
        py::arg("config"), py::arg("thetas") = std::vector<double>{}, py::arg("loops") = 5,
        py::arg("seeds") = std::vector<std::uint64_t>{}, py::arg("threads") = 0);

  m.def("trajectory_csv",
        [](const RunConfig& cfg, double theta, int loops, std::uint64_t seed) {
          std::ostringstream out;
          WriteTrajectoryCsv(out, RunCruise(cfg, theta, loops, seed));
          return out.str();
        },
        py::arg("config"), py::arg("theta"), py::arg("loops") = 1, py::arg("seed") = 1);
}
