#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "vbgk/app.hpp"
#include "vbgk/config.hpp"
#include "vbgk/diagnostics.hpp"
#include "vbgk/errors.hpp"
#include "vbgk/model.hpp"
#include "vbgk/ns_reference.hpp"

namespace py = pybind11;
using namespace vbgk;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

ScalarField to_field(const Array& a) {
  if (a.ndim() != 2 || a.shape(0) != a.shape(1))
    throw DimensionMismatch("expected a square 2-d array");
  const Grid g(static_cast<int>(a.shape(0)));
  return ScalarField(g, std::vector<double>(a.data(), a.data() + a.size()));
}

Array to_array(const ScalarField& f) {
  const auto n = static_cast<py::ssize_t>(f.grid.n());
  Array out({n, n});
  std::copy(f.values.begin(), f.values.end(), out.mutable_data());
  return out;
}

RunConfig config_from_text(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

py::dict record_columns(const std::vector<DiagnosticsRecord>& records) {
  std::vector<double> t, e0, es, dk, dh, dm, dxi, eta, rmin, rmax, bound;
  for (const auto& r : records) {
    t.push_back(r.t);
    e0.push_back(r.e0);
    es.push_back(r.es);
    dk.push_back(r.dev_k);
    dh.push_back(r.dev_h);
    dm.push_back(r.dev_m);
    dxi.push_back(r.dev_xi);
    eta.push_back(r.eta_surrogate);
    rmin.push_back(r.rho_min);
    rmax.push_back(r.rho_max);
    bound.push_back(r.bound_functional);
  }
  py::dict d;
  d["t"] = t;
  d["e0"] = e0;
  d["es"] = es;
  d["dev_k"] = dk;
  d["dev_h"] = dh;
  d["dev_m"] = dm;
  d["dev_xi"] = dxi;
  d["eta_surrogate"] = eta;
  d["rho_min"] = rmin;
  d["rho_max"] = rmax;
  d["bound_functional"] = bound;
  return d;
}

py::dict fit_dict(const ConvergenceStudyResult& f) {
  py::dict d;
  d["slope"] = f.slope;
  d["intercept"] = f.intercept;
  d["residual"] = f.residual;
  return d;
}

template <typename Cmd>
py::tuple captured(Cmd&& cmd) {
  std::ostringstream out, err;
  const int code = cmd(out, err);
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_vbgk, m) {
  m.doc() = "Five-velocity vector-BGK relaxation of 2-d incompressible Navier-Stokes";

  auto base = py::register_exception<Error>(m, "VbgkError", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<SimulationAborted>(m, "SimulationAborted", base.ptr());
  py::register_exception<ConstraintViolation>(m, "ConstraintViolation", base.ptr());
  py::register_exception<NonPositiveInput>(m, "NonPositiveInput", base.ptr());
  py::register_exception<NotDivergenceFree>(m, "NotDivergenceFree", base.ptr());

  py::class_<ModelParams>(m, "ModelParams")
      .def(py::init(&ModelParams::make), py::arg("epsilon"), py::arg("tau"), py::arg("lam"),
           py::arg("nu"), py::arg("rho_bar") = 1.0)
      .def_property_readonly("epsilon", &ModelParams::epsilon)
      .def_property_readonly("tau", &ModelParams::tau)
      .def_property_readonly("lam", &ModelParams::lambda)
      .def_property_readonly("nu", &ModelParams::nu)
      .def_property_readonly("a", &ModelParams::a)
      .def_property_readonly("rho_bar", &ModelParams::rho_bar);

  m.def("pressure", &pressure, py::arg("rho"), py::arg("params"));
  m.def("flux", &flux_A, py::arg("j"), py::arg("w"), py::arg("params"));
  m.def("maxwellians", &maxwellians, py::arg("w"), py::arg("params"));
  m.def(
      "check_subcharacteristic",
      [](const ModelParams& p, double rho_min, double rho_max, double u_max, int samples) {
        const StateBox box{rho_min, rho_max, -u_max, u_max, -u_max, u_max};
        const auto r = check_subcharacteristic(p, box, samples);
        py::dict d;
        d["min_real_part"] = r.min_real_part;
        d["pass"] = r.pass;
        d["worst_state"] = r.worst_state;
        d["worst_maxwellian"] = r.worst_maxwellian;
        return d;
      },
      py::arg("params"), py::arg("rho_min"), py::arg("rho_max"), py::arg("u_max"),
      py::arg("samples_per_axis") = 11);

  m.def("sobolev_norm", [](const Array& f, double s) { return sobolev_norm(to_field(f), s); },
        py::arg("f"), py::arg("s"));
  m.def(
      "taylor_green",
      [](double t, double nu, int n) {
        const auto tg = taylor_green(t, nu, Grid(n));
        return py::make_tuple(to_array(tg.state.u1), to_array(tg.state.u2),
                              to_array(tg.pressure.p));
      },
      py::arg("t"), py::arg("nu"), py::arg("n"),
      "Velocity components and pressure on an n x n grid, indexed [ix, iy].");
  m.def(
      "ns_advance",
      [](const Array& u1, const Array& u2, double nu, double dt, int steps) {
        NsState s{to_field(u1), to_field(u2), 0.0, nu};
        for (int k = 0; k < steps; ++k) s = ns_step(s, dt);
        return py::make_tuple(to_array(s.u1), to_array(s.u2));
      },
      py::arg("u1"), py::arg("u2"), py::arg("nu"), py::arg("dt"), py::arg("steps"));

  m.def(
      "fit_rate",
      [](const std::vector<double>& eps, const std::vector<double>& err) {
        return fit_dict(fit_rate(eps, err));
      },
      py::arg("epsilons"), py::arg("errors"));

  m.def(
      "simulate",
      [](const std::string& config_text, std::optional<double> epsilon, const std::string& out_dir) {
        const RunConfig cfg = config_from_text(config_text);
        const app::PreparedRun prepared = app::prepare(cfg, epsilon.value_or(cfg.epsilon));
        app::SimulationOutcome o;
        {
          py::gil_scoped_release release;
          o = app::simulate(prepared, out_dir);
        }
        py::dict d;
        d["completed"] = o.completed;
        d["failure"] = o.failure;
        d["last_good_time"] = o.last_good_time;
        d["bound_M"] = prepared.bound_M;
        d["records"] = record_columns(o.records);
        return d;
      },
      py::arg("config_text"), py::arg("epsilon") = py::none(), py::arg("out_dir") = "",
      "Runs one simulation from config text. Writes files only when out_dir is given.");

  m.def(
      "sweep",
      [](const std::string& config_text, const std::vector<double>& epsilons,
         const std::string& out_dir, int threads, bool synthetic) {
        const RunConfig cfg = config_from_text(config_text);
        app::SweepResult r;
        {
          py::gil_scoped_release release;
          r = app::run_sweep(cfg, epsilons, out_dir, threads, synthetic);
        }
        py::list members;
        for (const auto& mem : r.members) {
          py::dict d;
          d["epsilon"] = mem.epsilon;
          d["completed"] = mem.completed;
          d["failure"] = mem.failure;
          d["sup_e0"] = mem.sup_e0;
          d["sup_es"] = mem.sup_es;
          d["sup_dev_k"] = mem.sup_dev_k;
          d["sup_dev_h"] = mem.sup_dev_h;
          d["sup_dev_m"] = mem.sup_dev_m;
          d["sup_dev_xi"] = mem.sup_dev_xi;
          d["pairing"] = mem.pairing;
          d["reference_pairing"] = mem.reference_pairing;
          members.append(d);
        }
        py::dict rates;
        for (const auto& line : r.rates) rates[py::str(line.quantity)] = fit_dict(line.fit);
        py::dict d;
        d["completed"] = r.completed;
        d["members"] = members;
        d["rates"] = rates;
        return d;
      },
      py::arg("config_text"), py::arg("epsilons"), py::arg("out_dir") = "",
      py::arg("threads") = 1, py::arg("synthetic") = false);

  // Command-line entry points: return (exit_code, stdout, stderr).
  m.def(
      "cmd_validate",
      [](const std::string& path) {
        return captured([&](auto& o, auto& e) { return app::cmd_validate(path, o, e); });
      },
      py::arg("config_path"));
  m.def(
      "cmd_run",
      [](const std::string& path, std::optional<std::string> out) {
        return captured([&](auto& o, auto& e) { return app::cmd_run(path, out, o, e); });
      },
      py::arg("config_path"), py::arg("out_dir") = py::none());
  m.def(
      "cmd_reference",
      [](const std::string& path, std::optional<std::string> out) {
        return captured([&](auto& o, auto& e) { return app::cmd_reference(path, out, o, e); });
      },
      py::arg("config_path"), py::arg("out_dir") = py::none());
  m.def(
      "cmd_sweep",
      [](const std::string& path, std::optional<std::vector<double>> eps,
         std::optional<std::string> out, int threads, bool synthetic) {
        return captured([&](auto& o, auto& e) {
          return app::cmd_sweep(path, eps, out, threads, synthetic, o, e);
        });
      },
      py::arg("config_path"), py::arg("epsilons") = py::none(), py::arg("out_dir") = py::none(),
      py::arg("threads") = 1, py::arg("synthetic") = false);
}
