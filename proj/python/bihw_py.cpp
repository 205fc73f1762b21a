#include <sstream>

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bihw/cli.hpp"
#include "bihw/error.hpp"
#include "bihw/norms.hpp"
#include "bihw/solver.hpp"
#include "bihw/studies.hpp"
#include "bihw/system.hpp"

namespace py = pybind11;
using namespace bihw;

namespace {

// A system together with the manufactured case it was built for, so that
// errors can be measured without passing the case around again.
struct PySystem {
    SpaceTimeSystem sys;
    ManufacturedCase c;
};

PySystem make(const std::string& case_name, int p, int n_el_s, int n_el_t, Stabilization mode,
              int reg_s, int reg_t, std::optional<double> delta)
{
    ManufacturedCase c = manufactured_case(case_name);
    DiscretizationConfig cfg;
    cfg.d = c.d;
    cfg.T = c.T;
    cfg.p_s = cfg.p_t = p;
    cfg.n_el_s = n_el_s;
    cfg.n_el_t = n_el_t;
    cfg.mode = mode;
    cfg.reg_s = reg_s;
    cfg.reg_t = reg_t;
    cfg.delta = delta;
    cfg.forcing = c.forcing;
    return {build_system(cfg), std::move(c)};
}

py::dict errors_dict(const SpaceTimeErrors& e)
{
    py::dict d;
    d["l2l2"] = e.l2l2;
    d["h1mix"] = e.h1mix;
    d["x"] = e.x;
    d["abs_l2l2"] = e.abs_l2l2;
    d["abs_h1mix"] = e.abs_h1mix;
    d["abs_x"] = e.abs_x;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Space-time spline discretization of the clamped biharmonic wave equation";

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<ParameterError>(m, "ParameterError", base.ptr());
    py::register_exception<DomainError>(m, "DomainError", base.ptr());
    py::register_exception<SizeError>(m, "SizeError", base.ptr());
    py::register_exception<UnsupportedDegreeError>(m, "UnsupportedDegreeError", base.ptr());
    py::register_exception<NumericalError>(m, "NumericalError", base.ptr());
    py::register_exception<FactorizationError>(m, "FactorizationError", base.ptr());
    py::register_exception<SolverError>(m, "SolverError", base.ptr());

    py::enum_<Stabilization>(m, "Stabilization")
        .value("none", Stabilization::none)
        .value("iga", Stabilization::iga_penalty)
        .value("fem", Stabilization::fem_projection);

    m.def("rho", [](int p) { auto r = rho_lookup(p); return py::make_tuple(r.num, r.den); },
          py::arg("p"), "Stability threshold as (numerator, denominator).");
    m.def("delta", [](int p) { auto r = delta_lookup(p); return py::make_tuple(r.num, r.den); },
          py::arg("p"), "Smallest unconditionally stabilizing penalty as (numerator, denominator).");

    m.def("knots", [](int n_el, int p, int reg, double a, double b) {
              const auto kv = make_knot_vector(n_el, p, reg, {a, b});
              return std::vector<double>(kv.knots().begin(), kv.knots().end());
          },
          py::arg("n_elements"), py::arg("degree"), py::arg("regularity"), py::arg("a") = 0.0,
          py::arg("b") = 1.0);
    m.def("eval_basis", [](int degree, std::vector<double> knots, double x, int nder) {
              const KnotVector kv(degree, std::move(knots));
              const auto t = eval_basis(kv, x, nder);
              return py::make_tuple(t.first_active_index, t.values);
          },
          py::arg("degree"), py::arg("knots"), py::arg("x"), py::arg("max_derivative") = 0,
          "(first active index, values[derivative, local basis])");

    py::class_<PySystem>(m, "System")
        .def(py::init(&make), py::arg("case") = "line1d", py::arg("p") = 2,
             py::arg("n_el_s") = 8, py::arg("n_el_t") = 8, py::arg("mode") = Stabilization::iga_penalty,
             py::arg("reg_s") = -1, py::arg("reg_t") = -1, py::arg("delta") = py::none())
        .def_property_readonly("n_s", [](const PySystem& s) { return s.sys.n_s(); })
        .def_property_readonly("n_t", [](const PySystem& s) { return s.sys.n_t(); })
        .def_property_readonly("n_dof", [](const PySystem& s) { return s.sys.n_dof(); })
        .def_property_readonly("h_s", [](const PySystem& s) { return s.sys.meta.h_s; })
        .def_property_readonly("h_t", [](const PySystem& s) { return s.sys.meta.h_t; })
        .def_property_readonly("delta", [](const PySystem& s) { return s.sys.meta.delta; })
        .def_property_readonly("rhs", [](const PySystem& s) { return s.sys.rhs; })
        .def("apply", [](const PySystem& s, const Eigen::VectorXd& x) { return apply_operator(s.sys, x); })
        .def("dense", [](const PySystem& s) { return assemble_dense(s.sys); })
        .def("solve", [](const PySystem& s) {
            const auto r = solve_system(s.sys);
            py::dict d;
            d["solution"] = r.solution;
            d["relative_residual"] = r.relative_residual;
            d["imag_discard_norm"] = r.imag_discard_norm;
            d["lu_factorizations"] = r.lu_factorizations;
            d["refinement_sweeps"] = r.refinement_sweeps;
            d["dense_fallback"] = r.dense_fallback;
            d["wall_time"] = r.wall_time;
            return d;
        })
        .def("solve_dense", [](const PySystem& s) { return solve_dense_oracle(s.sys); })
        .def("errors", [](const PySystem& s, const Eigen::VectorXd& x) {
            return errors_dict(error_norms_spacetime(x, s.sys, s.c));
        })
        .def("cfl", [](const PySystem& s) {
            const auto r = cfl_check(s.sys.spatial, s.sys.meta.p_t, s.sys.meta.h_t,
                                     s.sys.meta.reg_t < s.sys.meta.p_t - 1);
            py::dict d;
            d["lambda_max"] = r.lambda_max;
            d["h_t_max"] = r.h_t_max;
            d["satisfied"] = r.satisfied;
            d["advisory"] = r.advisory;
            return d;
        });

    m.def("main", [](const std::vector<std::string>& args) {
              std::ostringstream out, err;
              int code;
              {
                  py::gil_scoped_release release;
                  code = cli::run(args, out, err);
              }
              return py::make_tuple(code, out.str(), err.str());
          },
          py::arg("args"), "Run the command-line driver; returns (exit code, stdout, stderr).");
}
