#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "schroedsym/action.hpp"
#include "schroedsym/errors.hpp"
#include "schroedsym/group.hpp"
#include "schroedsym/multiplier.hpp"
#include "schroedsym/operator_algebra.hpp"
#include "schroedsym/residual.hpp"
#include "schroedsym/solutions.hpp"
#include "schroedsym/suite.hpp"

namespace py = pybind11;
using namespace schroedsym;

namespace {

Point to_point(cplx t, const std::vector<cplx>& x) { return Point(t, x); }

py::dict report_dict(const ResidualReport& r) {
  py::dict d;
  d["max_abs"] = r.max_abs;
  d["max_rel"] = r.max_rel;
  d["points"] = r.points;
  d["skipped"] = r.skipped;
  d["failures"] = r.failures;
  d["first_failure"] = r.first_failure;
  d["convergence_order"] = r.convergence_order ? py::cast(*r.convergence_order) : py::none();
  return d;
}

RunConfig config_from(const py::dict& settings) {
  RunConfig cfg;
  for (const auto& [key, value] : settings) {
    apply_setting(cfg, py::str(key).cast<std::string>(), py::str(value).cast<std::string>());
  }
  cfg.validate();
  return cfg;
}

GridSpec grid_from(const py::object& grid) {
  if (grid.is_none()) return GridSpec{};
  RunConfig cfg;
  for (const auto& [key, value] : grid.cast<py::dict>()) {
    apply_setting(cfg, py::str(key).cast<std::string>(), py::str(value).cast<std::string>());
  }
  GridSpec g = cfg.grid.applied_to(GridSpec{});
  g.validate();
  return g;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Symmetry groups of Schroedinger-type equations with time-dependent potentials";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<DeterminantError>(m, "DeterminantError", base.ptr());
  py::register_exception<SingularTime>(m, "SingularTime", base.ptr());
  py::register_exception<BranchError>(m, "BranchError", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<ZeroParameter>(m, "ZeroParameter", base.ptr());
  py::register_exception<NoRootError>(m, "NoRootError", base.ptr());
  py::register_exception<OrderError>(m, "OrderError", base.ptr());
  py::register_exception<FamilyMismatch>(m, "FamilyMismatch", base.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<QuadratureError>(m, "QuadratureError", base.ptr());

  py::enum_<Family>(m, "Family")
      .value("FREE", Family::Free)
      .value("INVERSE_QUADRATIC", Family::InverseQuadratic)
      .value("LINEAR", Family::Linear)
      .value("QUADRATIC", Family::Quadratic)
      .value("NDIM_LINEAR", Family::NdimLinear)
      .value("NLS2D", Family::NLS2d);

  py::class_<FamilySpec>(m, "FamilySpec")
      .def_readonly("family", &FamilySpec::family)
      .def_readonly("k", &FamilySpec::k)
      .def_readonly("alpha", &FamilySpec::alpha)
      .def_readonly("beta", &FamilySpec::beta)
      .def_readonly("omega", &FamilySpec::omega)
      .def_readonly("n", &FamilySpec::n)
      .def_static("free", &FamilySpec::free, py::arg("k"), py::arg("n") = 1)
      .def_static("inverse_quadratic", &FamilySpec::inverse_quadratic, py::arg("k"), py::arg("alpha"),
                  py::arg("n") = 1)
      .def_static("linear", &FamilySpec::linear, py::arg("k"), py::arg("alpha"), py::arg("beta"))
      .def_static("quadratic", &FamilySpec::quadratic, py::arg("k"), py::arg("alpha"), py::arg("omega"))
      .def_static("ndim_linear", &FamilySpec::ndim_linear, py::arg("k"), py::arg("alpha"), py::arg("beta"),
                  py::arg("ajk"))
      .def_static("nls2d", &FamilySpec::nls2d, py::arg("k"), py::arg("coupling"));

  py::class_<GroupElement>(m, "GroupElement")
      .def(py::init<>())
      .def_property_readonly("c", &GroupElement::c)
      .def_property_readonly("d", &GroupElement::d)
      .def_property_readonly("a", &GroupElement::a)
      .def_property_readonly("b", &GroupElement::b)
      .def_property_readonly("mu", &GroupElement::mu)
      .def_property_readonly("nu", &GroupElement::nu)
      .def("distance", &GroupElement::distance)
      .def("__matmul__", [](const GroupElement& l1, const GroupElement& l2) { return compose(l1, l2); })
      .def("inverse", [](const GroupElement& l) { return inverse(l); })
      .def("__repr__", [](const GroupElement& l) {
        return "GroupElement(c=" + py::repr(py::cast(l.c())).cast<std::string>() +
               ", d=" + py::repr(py::cast(l.d())).cast<std::string>() +
               ", a=" + py::repr(py::cast(l.a())).cast<std::string>() +
               ", b=" + py::repr(py::cast(l.b())).cast<std::string>() +
               ", mu=" + py::repr(py::cast(l.mu())).cast<std::string>() +
               ", nu=" + py::repr(py::cast(l.nu())).cast<std::string>() + ")";
      });

  m.def(
      "make_element",
      [](cplx c, cplx d, cplx a, cplx b, cplx mu, cplx nu) { return make_element(Mat2{c, d, a, b}, mu, nu); },
      py::arg("c"), py::arg("d"), py::arg("a"), py::arg("b"), py::arg("mu") = 0.0, py::arg("nu") = 0.0,
      "Element with matrix [[c, d], [a, b]] (c b - a d = 1) and translation (mu, nu).");
  m.def("parse_element", &parse_element);
  m.def("identity_element", &identity_element);
  m.def("time_translation", &time_translation);
  m.def("dilatation", &dilatation);
  m.def("compose", &compose);
  m.def("inverse", &inverse);
  m.def(
      "cocycle_linear", [](const GroupElement& l1, const GroupElement& l2, cplx k) {
        return cocycle_linear(l1, l2, k).value;
      });
  m.def(
      "cocycle_quadratic",
      [](const GroupElement& l1, const GroupElement& l2, cplx omega, bool printed) {
        return cocycle_quadratic(l1, l2, omega,
                                 printed ? QuadraticCocycleVariant::Printed : QuadraticCocycleVariant::Corrected)
            .value;
      },
      py::arg("l1"), py::arg("l2"), py::arg("omega"), py::arg("printed") = false);

  m.def(
      "act", [](const GroupElement& l, cplx t, const std::vector<cplx>& x, const FamilySpec& spec) {
        const Point z = act(l, to_point(t, x), spec);
        return py::make_tuple(z.t, z.x);
      },
      py::arg("l"), py::arg("t"), py::arg("x"), py::arg("spec"), "Image l Z of the point Z = (t, x).");
  m.def(
      "multiplier",
      [](const GroupElement& l, cplx t, const std::vector<cplx>& x, const FamilySpec& spec) {
        return multiplier(l, to_point(t, x), spec);
      },
      py::arg("l"), py::arg("t"), py::arg("x"), py::arg("spec"));
  m.def(
      "cocycle_defect",
      [](const GroupElement& l1, const GroupElement& l2, cplx t, const std::vector<cplx>& x,
         const FamilySpec& spec) { return cocycle_defect(l1, l2, to_point(t, x), spec); },
      py::arg("l1"), py::arg("l2"), py::arg("t"), py::arg("x"), py::arg("spec"));

  py::class_<SmoothFn>(m, "SmoothFn")
      .def_property_readonly("name", &SmoothFn::name)
      .def_property_readonly("dim", &SmoothFn::dim)
      .def(
          "__call__", [](const SmoothFn& f, cplx t, const std::vector<cplx>& x) { return f.value(to_point(t, x)); },
          py::arg("t"), py::arg("x"))
      .def(
          "partial",
          [](const SmoothFn& f, cplx t, const std::vector<cplx>& x, int dt, int j, int dx) {
            return f.partial(to_point(t, x), dt, j, dx);
          },
          py::arg("t"), py::arg("x"), py::arg("dt"), py::arg("j") = 0, py::arg("dx") = 0);

  m.def("gaussian_free", &gaussian_free, py::arg("k"), py::arg("t0"), py::arg("n") = 1);
  m.def("power_static", &power_static, py::arg("s"), py::arg("alpha"));
  m.def("theta1", &theta1, py::arg("trunc") = 20);
  m.def("theta_k", &theta_k);
  m.def("f_pair", &f_pair);
  m.def(
      "phi_pair",
      [](const FamilySpec& spec, bool printed) {
        return phi_pair(spec, printed ? PhiCoefficients::Printed : PhiCoefficients::Derived);
      },
      py::arg("spec"), py::arg("printed") = false);
  m.def("g_functions", &g_functions, py::arg("spec"), py::arg("gamma"));
  m.def("plane_wave_nls", &plane_wave_nls, py::arg("amplitude"), py::arg("p"), py::arg("spec"));
  m.def("pair_product_solution", &pair_product_solution, py::arg("spec"), py::arg("s"));
  m.def(
      "airy_eigenvalues",
      [](double beta, double e_min, double e_max) {
        return eigenvalue_scan(AirySpec::with_energy(beta, e_min), e_min, e_max);
      },
      py::arg("beta"), py::arg("e_min"), py::arg("e_max"),
      "Energies E in [e_min, e_max] with a bound state of -u'' + beta x u = E u, u(0) = 0.");

  m.def(
      "residual",
      [](const SmoothFn& f, const FamilySpec& spec, cplx t, const std::vector<cplx>& x) {
        return residual_at(f, spec, to_point(t, x));
      },
      py::arg("fn"), py::arg("spec"), py::arg("t"), py::arg("x"));
  m.def(
      "grid_residual",
      [](const SmoothFn& f, const FamilySpec& spec, const py::object& grid) {
        return report_dict(grid_residual(f, spec, grid_from(grid)));
      },
      py::arg("fn"), py::arg("spec"), py::arg("grid") = py::none(),
      "grid: optional dict with t_min, t_max, x_min, x_max, nt, nx, h_fd, t_imag.");
  m.def("transformed_solution", &transformed_solution, py::arg("fn"), py::arg("l"), py::arg("spec"));
  m.def(
      "verify_transformed_solution",
      [](const SmoothFn& f, const GroupElement& l, const FamilySpec& spec, const py::object& grid) {
        return report_dict(verify_transformed_solution(f, l, spec, grid_from(grid)));
      },
      py::arg("fn"), py::arg("l"), py::arg("spec"), py::arg("grid") = py::none());
  m.def(
      "verify_intertwining",
      [](const SmoothFn& f, const GroupElement& l, const FamilySpec& spec, const py::object& grid) {
        return report_dict(verify_intertwining(f, l, spec, grid_from(grid)));
      },
      py::arg("fn"), py::arg("l"), py::arg("spec"), py::arg("grid") = py::none());
  m.def(
      "verify_solution_map",
      [](const SmoothFn& psi0, const std::string& kind, const FamilySpec& from, const FamilySpec& to,
         const py::object& grid) {
        return report_dict(verify_solution_map(psi0, solution_map_from_string(kind), {}, from, to, grid_from(grid)));
      },
      py::arg("psi0"), py::arg("kind"), py::arg("spec_from"), py::arg("spec_to"), py::arg("grid") = py::none(),
      "kind: f1, f2, phi1, phi2 or K0 (K0 with sigma = 1, tau = lam = 0).");

  py::class_<DiffOp>(m, "DiffOp")
      .def("__add__", [](const DiffOp& a, const DiffOp& b) { return a + b; })
      .def("__sub__", [](const DiffOp& a, const DiffOp& b) { return a - b; })
      .def("__mul__", [](const DiffOp& a, const DiffOp& b) { return a * b; })
      .def("__rmul__", [](const DiffOp& a, cplx c) { return c * a; })
      .def("order", &DiffOp::order)
      .def("max_abs_diff", &DiffOp::max_abs_diff)
      .def("__str__", &DiffOp::to_string);
  m.def("commutator", &op_commutator);

  py::class_<GeneratorSet>(m, "GeneratorSet")
      .def_readonly("L3", &GeneratorSet::L3)
      .def_readonly("Lplus", &GeneratorSet::Lplus)
      .def_readonly("Lminus", &GeneratorSet::Lminus)
      .def_readonly("T1", &GeneratorSet::T1)
      .def_readonly("T2", &GeneratorSet::T2)
      .def_readonly("unit", &GeneratorSet::unit)
      .def_readonly("K", &GeneratorSet::K)
      .def_readonly("D", &GeneratorSet::D)
      .def_readonly("t_bracket", &GeneratorSet::t_bracket);
  m.def("generators_linear", &generators_linear, py::arg("k"), py::arg("alpha"), py::arg("beta"));
  m.def("generators_quadratic", &generators_quadratic, py::arg("k"), py::arg("alpha"), py::arg("omega"));
  m.def("casimir_I2", &casimir_I2);
  m.def("casimir_I3", &casimir_I3);
  m.def(
      "apply", [](const DiffOp& op, const SmoothFn& f, cplx t, const std::vector<cplx>& x) {
        return apply(op, f, to_point(t, x));
      },
      py::arg("op"), py::arg("fn"), py::arg("t"), py::arg("x"));

  m.def(
      "run_suite",
      [](const std::string& target, const py::dict& settings) {
        const SuiteReport report = run_suite(target, config_from(settings));
        py::list out;
        for (const auto& c : report.checks) {
          py::dict d;
          d["name"] = c.name;
          d["anchor"] = c.anchor;
          d["pass"] = c.pass;
          d["value"] = c.value;
          d["tol"] = c.tol;
          d["seconds"] = c.seconds;
          d["detail"] = c.detail;
          out.append(d);
        }
        return out;
      },
      py::arg("target"), py::arg("settings") = py::dict(),
      "settings: the CLI keys (family, k, alpha, seed, trials, tol, nt, ...) as a dict.");
  m.def("suite_targets", &suite_targets);
}
