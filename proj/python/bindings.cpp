#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "kershaw/closures.hpp"
#include "kershaw/commands.hpp"
#include "kershaw/config.hpp"
#include "kershaw/errors.hpp"
#include "kershaw/minimum_entropy.hpp"
#include "kershaw/realizability.hpp"
#include "kershaw/scenario.hpp"

namespace py = pybind11;
using namespace kershaw;

namespace {

MomentVector to_moments(const std::vector<double>& u) { return MomentVector(u); }

std::vector<double> to_list(const MomentVector& u) { return {u.values().begin(), u.values().end()}; }

ClosureKind make_kind(const std::string& family, std::size_t order) { return {parse_family(family), order}; }

py::array_t<double> cells_array(const std::vector<MomentVector>& cells) {
  const std::size_t width = cells.empty() ? 0 : cells.front().size();
  py::array_t<double> a({cells.size(), width});
  auto m = a.mutable_unchecked<2>();
  for (std::size_t i = 0; i < cells.size(); ++i)
    for (std::size_t j = 0; j < width; ++j) m(i, j) = cells[i][j];
  return a;
}

py::dict run(const std::string& scenario, const std::string& family, std::size_t order, std::size_t n_cells,
             double cfl, double final_time) {
  const Scenario s = parse_scenario(scenario) == ScenarioName::SourceBeam ? Scenario::source_beam()
                                                                            : Scenario::plane_source();
  RunOptions opts;
  opts.cfl = cfl;
  opts.final_time = final_time;
  RunResult r;
  {
    py::gil_scoped_release release;
    r = run_scenario(s, make_kind(family, order), n_cells, opts);
  }
  py::list diagnostics;
  for (const auto& d : r.diagnostics) {
    diagnostics.append(py::dict(py::arg("t") = d.time, py::arg("mass") = d.mass,
                                py::arg("min_slack") = d.min_slack, py::arg("rescued_cells") = d.rescued_cells));
  }
  py::list times;
  for (const auto& snap : r.snapshots) times.append(snap.time);
  return py::dict(py::arg("z") = r.grid.centers(), py::arg("moments") = cells_array(r.final_state.cells),
                  py::arg("time") = r.final_state.time, py::arg("dt") = r.dt, py::arg("steps") = r.steps,
                  py::arg("snapshot_times") = times, py::arg("diagnostics") = diagnostics);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Kershaw, P_N and M_N moment closures for slab-geometry transport";

  auto base = py::register_exception<Error>(m, "KershawError", PyExc_RuntimeError);
  py::register_exception<NotRealizable>(m, "NotRealizable", base.ptr());
  py::register_exception<NonPositiveDensity>(m, "NonPositiveDensity", base.ptr());
  py::register_exception<NoConvergence>(m, "NoConvergence", base.ptr());
  py::register_exception<DegenerateState>(m, "DegenerateState", base.ptr());
  py::register_exception<RealizabilityLost>(m, "RealizabilityLost", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<ValidationError>(m, "ValidationError", base.ptr());

  m.def("is_realizable", [](const std::vector<double>& u, double tol) { return is_realizable(to_moments(u), tol); },
        py::arg("u"), py::arg("tol") = 1e-12);
  m.def("realizability_slack", [](const std::vector<double>& u) { return realizability_slack(to_moments(u)); });
  m.def("moment_bounds", [](const std::vector<double>& u) {
    const auto b = moment_bounds(to_moments(u));
    return py::make_tuple(b.lower, b.upper);
  });
  m.def("reconstruct_atomic", [](const std::vector<double>& u) {
    const auto a = reconstruct_atomic(to_moments(u));
    return py::make_tuple(a.atoms, a.densities);
  });
  m.def("interpolation_constant", &interpolation_constant, py::arg("order"));
  m.def("kershaw_close", [](const std::vector<double>& phi) { return kershaw_close(NormalizedMoments(phi)); },
        py::arg("phi"), "Closing phi_{N+1} for normalized moments phi_1..phi_N.");
  m.def("flux", [](const std::string& family, const std::vector<double>& u) {
    return to_list(flux(make_kind(family, u.size() - 1), to_moments(u)));
  });
  m.def("eigenvalues", [](const std::string& family, const std::vector<double>& u) {
    return jacobian(make_kind(family, u.size() - 1), to_moments(u)).eigenvalues;
  });
  m.def("mn_multipliers", [](const std::vector<double>& u, double tol, std::size_t max_iter) {
    return mn_solve_dual(to_moments(u), tol, max_iter).alpha;
  }, py::arg("u"), py::arg("tol") = 1e-10, py::arg("max_iter") = 50);
  m.def("isotropic_moments", [](std::size_t order, double density) { return to_list(isotropic_moments(order, density)); });
  m.def("beam_moments", [](std::size_t order) { return to_list(beam_moments(order, Basis::Monomial)); });

  m.def("run_scenario", &run, py::arg("scenario"), py::arg("family"), py::arg("order"), py::arg("n_cells"),
        py::arg("cfl") = 0.5, py::arg("final_time") = 0.0,
        "Run a benchmark; returns cell centers, final moments and diagnostics.");

  m.def("run_config", [](const std::string& text, const std::string& command, const std::filesystem::path& out,
                         std::size_t jobs) {
    const RunConfig c = parse_config(text);
    py::gil_scoped_release release;
    if (command == "run") return run_command(c, out);
    if (command == "sweep") return sweep_command(c, out, jobs);
    if (command == "surface") return surface_command(c, out);
    throw ValidationError("unknown command " + command, "command");
  }, py::arg("text"), py::arg("command"), py::arg("out"), py::arg("jobs") = 1,
        "Parse a key = value config and run one CLI command; returns written paths.");
}
