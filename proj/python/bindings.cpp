#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "conelw/cli.hpp"
#include "conelw/cone.hpp"
#include "conelw/green.hpp"
#include "conelw/hypotheses.hpp"
#include "conelw/integral_operator.hpp"
#include "conelw/problem.hpp"
#include "conelw/quadrature.hpp"
#include "conelw/report.hpp"
#include "conelw/shooting.hpp"

namespace py = pybind11;
using namespace conelw;

namespace {

py::object to_py(const json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

Expr as_expr(const py::object& o) {
  if (py::isinstance<Expr>(o)) return o.cast<Expr>();
  return Expr::parse(o.cast<std::string>());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Green's kernel, hypothesis checks and shooting solver for first-order problems "
            "with nonlinear nonlocal boundary conditions";

  auto& base_error = py::register_exception<Error>(m, "ConelwError");
  py::register_exception<EvalError>(m, "EvalError", base_error.ptr());
  py::register_exception<InstanceError>(m, "InstanceError", base_error.ptr());
  py::register_exception<InadmissibleLambda>(m, "InadmissibleLambda", base_error.ptr());
  py::register_exception<IvpBlowup>(m, "IvpBlowup", base_error.ptr());
  static PyObject* parse_error_type =
      py::register_exception<ParseError>(m, "ParseError", base_error.ptr()).ptr();
  // Translators run newest first; this one attaches the byte offset.
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ParseError& e) {
      py::handle type(parse_error_type);
      py::object exc = type(e.what());
      exc.attr("offset") = e.offset();
      py::set_error(type, exc);
    }
  });

  py::class_<Expr>(m, "Expr")
      .def(py::init(&Expr::parse), py::arg("source"))
      .def("__call__", &Expr::eval, py::arg("t"), py::arg("y") = 0.0)
      .def("__str__", &Expr::to_string)
      .def("__repr__", [](const Expr& e) { return "Expr(" + e.source() + ")"; })
      .def("__eq__", [](const Expr& a, const Expr& b) { return a == b; })
      .def_property_readonly("uses_t", &Expr::uses_t)
      .def_property_readonly("uses_y", &Expr::uses_y)
      .def_property_readonly("source", &Expr::source);
  m.def("parse", &Expr::parse, py::arg("source"));

  m.def(
      "integrate",
      [](const std::function<double(double)>& f, double a, double b, int n) {
        return quadrature::integrate(f, a, b, n);
      },
      py::arg("f"), py::arg("a"), py::arg("b"), py::arg("n_panels") = quadrature::kDefaultPanels);

  py::class_<GreensKernel>(m, "GreensKernel")
      .def(py::init([](const py::object& p, double lam, int grid) {
             return GreensKernel(as_expr(p), lam, grid);
           }),
           py::arg("p"), py::arg("lam"), py::arg("grid_size") = quadrature::kDefaultPanels)
      .def("__call__", &GreensKernel::operator(), py::arg("t"), py::arg("s"))
      .def("boundary_weight", &GreensKernel::boundary_weight, py::arg("t"))
      .def("verify", [](const GreensKernel& k, int samples) { return to_py(to_json(verify_kernel(k, samples))); },
           py::arg("samples") = 99)
      .def_property_readonly("lam", &GreensKernel::lambda)
      .def_property_readonly("exp_p1", &GreensKernel::exp_p1)
      .def_property_readonly("denom", &GreensKernel::denom);

  py::class_<SolutionCurve>(m, "SolutionCurve")
      .def(py::init(&SolutionCurve::from_values), py::arg("values"))
      .def_readonly("t", &SolutionCurve::grid)
      .def_readonly("y", &SolutionCurve::values)
      .def_readonly("sup_norm", &SolutionCurve::sup_norm)
      .def_readonly("min_value", &SolutionCurve::min_value)
      .def_readonly("y0", &SolutionCurve::y0)
      .def_readonly("y1", &SolutionCurve::y1)
      .def("at", &SolutionCurve::at, py::arg("t"))
      .def("__len__", [](const SolutionCurve& c) { return c.values.size(); });

  py::class_<LoadedInstance>(m, "Instance")
      .def_property_readonly("lam", [](const LoadedInstance& l) { return l.instance.lambda; })
      .def_property_readonly("m", [](const LoadedInstance& l) { return l.instance.f.size(); })
      .def_property_readonly("n", [](const LoadedInstance& l) { return l.instance.boundary_terms.size(); })
      .def_property_readonly("thresholds", [](const LoadedInstance& l) {
        const auto& t = l.thresholds;
        return py::dict(py::arg("A") = t.A, py::arg("B") = t.B, py::arg("C") = t.C,
                        py::arg("B_dagger") = t.B_dagger);
      })
      .def_property_readonly("settings", [](const LoadedInstance& l) { return to_py(to_json(l.settings)); })
      .def_property_readonly("hash", [](const LoadedInstance& l) { return hex64(l.hash); })
      .def("kernel", [](const LoadedInstance& l) {
        return build_kernel(l.instance.p, l.instance.lambda, l.settings.quad_panels);
      });

  m.def("load_instance", [](const std::string& path) { return load_instance(path); }, py::arg("path"));
  m.def("parse_instance", &parse_instance_text, py::arg("text"));

  m.def("validate", [](const LoadedInstance& l) {
    return to_py(to_json(validate(l.instance, l.thresholds, l.settings.grid)));
  });
  m.def("derive_constants", [](const LoadedInstance& l) {
    const GreensKernel k = build_kernel(l.instance.p, l.instance.lambda, l.settings.quad_panels);
    return to_py(to_json(derive_constants(l.instance, l.thresholds, k, l.settings.grid,
                                          l.settings.quad_panels)));
  });
  m.def("check_hypotheses", [](const LoadedInstance& l) {
    const GreensKernel k = build_kernel(l.instance.p, l.instance.lambda, l.settings.quad_panels);
    const DerivedConstants c = derive_constants(l.instance, l.thresholds, k, l.settings.grid,
                                                l.settings.quad_panels);
    return to_py(to_json(check_hypotheses(l.instance, l.thresholds, c, l.settings.grid,
                                          l.settings.strict_eps)));
  });

  m.def(
      "integrate_ivp",
      [](const LoadedInstance& l, double c, std::optional<int> steps) {
        return integrate_ivp(l.instance, c, steps.value_or(l.settings.ode_steps));
      },
      py::arg("instance"), py::arg("c"), py::arg("steps") = py::none());
  m.def(
      "shooting_residual",
      [](const LoadedInstance& l, double c, std::optional<int> steps) {
        return shooting_residual(l.instance, c, steps.value_or(l.settings.ode_steps));
      },
      py::arg("instance"), py::arg("c"), py::arg("steps") = py::none());
  m.def("solve_all", [](const LoadedInstance& l) {
    return solve_all(l.instance, l.thresholds, l.settings).solutions;
  });
  m.def("apply_K", [](const LoadedInstance& l, const SolutionCurve& y) {
    return apply_K(build_kernel(l.instance.p, l.instance.lambda, l.settings.quad_panels), l.instance, y);
  });
  m.def(
      "picard",
      [](const LoadedInstance& l, const SolutionCurve& y, int max_iter, double tol) {
        const auto k = build_kernel(l.instance.p, l.instance.lambda, l.settings.quad_panels);
        PicardResult r = picard(k, l.instance, y, {max_iter, tol, 10.0 * l.thresholds.C});
        return py::make_tuple(r.curve, r.converged, r.iterations);
      },
      py::arg("instance"), py::arg("y_init"), py::arg("max_iter") = 100, py::arg("tol") = 1e-12);
  m.def("residuals", [](const LoadedInstance& l, const SolutionCurve& y) {
    return to_py(to_json(residuals(l.instance, y)));
  });

  m.def("theta", &theta, py::arg("y"));
  m.def("classify", [](const std::vector<SolutionCurve>& sols, const LoadedInstance& l) {
    return to_py(to_json(classify(sols, l.thresholds)));
  });

  auto cli_options = [](const std::string& path, const py::dict& kw) {
    cli::Options o;
    o.instance_path = path;
    for (const auto& [key, value] : kw) {
      const std::string k = key.cast<std::string>();
      if (k == "grid") o.grid = value.cast<int>();
      else if (k == "quad_panels") o.quad_panels = value.cast<int>();
      else if (k == "ode_steps") o.ode_steps = value.cast<int>();
      else if (k == "scan_points") o.scan_points = value.cast<int>();
      else if (k == "root_tol") o.root_tol = value.cast<double>();
      else if (k == "residual_tol") o.residual_tol = value.cast<double>();
      else if (k == "strict_eps") o.strict_eps = value.cast<double>();
      else if (k == "csv_dir") o.csv_dir = value.cast<std::string>();
      else throw py::key_error("unknown option '" + k + "'");
    }
    return o;
  };
  m.def("verify", [cli_options](const std::string& path, const py::kwargs& kw) {
    auto r = cli::cmd_verify(cli_options(path, kw));
    return py::make_tuple(r.exit_code, to_py(r.report));
  });
  m.def("solve", [cli_options](const std::string& path, const py::kwargs& kw) {
    auto r = cli::cmd_solve(cli_options(path, kw));
    return py::make_tuple(r.exit_code, to_py(r.report));
  });
}
