#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "ggc/commands.hpp"
#include "ggc/gammaconv.hpp"
#include "ggc/monotone.hpp"
#include "ggc/remark3.hpp"
#include "ggc/serialization.hpp"
#include "ggc/specfun.hpp"
#include "ggc/stochastics.hpp"

namespace py = pybind11;
using namespace ggc;

namespace {

// Reports cross the boundary as JSON text; the Python side parses them.
std::string report_json(const CMReport& r) { return dump(nlohmann::json(r)); }

QuadratureConfig config(double rel_tol) {
  QuadratureConfig cfg;
  cfg.rel_tol = rel_tol;
  cfg.validate();
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_ggc, m) {
  m.doc() = "native core of the ggc package";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<UnsupportedShift>(m, "UnsupportedShift", PyExc_ValueError);
  py::register_exception<QuadratureError>(m, "QuadratureError", PyExc_ArithmeticError);

  py::class_<GammaComponent>(m, "GammaComponent")
      .def(py::init([](double shape, double rate) {
             GammaComponent c{shape, rate};
             c.validate();
             return c;
           }),
           py::arg("shape"), py::arg("rate"))
      .def_readonly("shape", &GammaComponent::shape)
      .def_readonly("rate", &GammaComponent::rate)
      .def("__repr__", [](const GammaComponent& c) {
        std::ostringstream s;
        s << "GammaComponent(shape=" << c.shape << ", rate=" << c.rate << ")";
        return s.str();
      });

  py::class_<GammaConvolution>(m, "GammaConvolution")
      .def(py::init([](const std::vector<std::pair<double, double>>& parts, double shift) {
             GammaConvolution gc;
             for (const auto& [shape, rate] : parts) gc.components.push_back({shape, rate});
             gc.shift = shift;
             gc.validate();
             return gc;
           }),
           py::arg("components"), py::arg("shift") = 0.0)
      .def_static("from_json", [](const std::string& text) { return parse_gamma_convolution(text); })
      .def_static("load", &load_gamma_convolution)
      .def("to_json", [](const GammaConvolution& gc) { return dump(nlohmann::json(gc)); })
      .def_readonly("components", &GammaConvolution::components)
      .def_readonly("shift", &GammaConvolution::shift)
      .def("total_shape", &GammaConvolution::total_shape)
      .def("mean", &GammaConvolution::mean)
      .def("__len__", &GammaConvolution::size);

  m.def("log_gamma", &log_gamma);
  m.def("bessel_i", &bessel_i, py::arg("order"), py::arg("x"));

  m.def(
      "density",
      [](const GammaConvolution& gc, const std::vector<double>& xs, double rel_tol) {
        double x_max = 0.0;
        for (double x : xs) x_max = std::max(x_max, x);
        const SumDensity f(gc, config(rel_tol), DensityMethod::Auto, x_max);
        std::vector<double> out;
        out.reserve(xs.size());
        for (double x : xs) out.push_back(f(x));
        return out;
      },
      py::arg("model"), py::arg("x"), py::arg("rel_tol") = 1e-10);

  m.def(
      "laplace",
      [](const GammaConvolution& gc, const std::vector<double>& ss, std::optional<double> q) {
        std::vector<double> out;
        if (!q) {
          for (double s : ss) out.push_back(laplace_exact(gc, s));
          return out;
        }
        const PowerLaplace lp(gc, PowerLaw(*q));
        for (double s : ss) out.push_back(lp(s));
        return out;
      },
      py::arg("model"), py::arg("s"), py::arg("q") = py::none());

  m.def("power_moment", [](const GammaConvolution& gc, double p) { return power_moment(gc, p); },
        py::arg("model"), py::arg("p"));

  m.def(
      "cm_check",
      [](const std::function<double(double)>& f, double lo, double hi, int max_order, double tol) {
        return report_json(cm_check(f, {lo, hi}, max_order, tol));
      },
      py::arg("f"), py::arg("lo"), py::arg("hi"), py::arg("max_order") = 8, py::arg("tol") = 1e-6);

  m.def(
      "hcm_check",
      [](const GammaConvolution& gc, std::optional<double> q, int max_order, double tol) {
        HCMConfig cfg;
        cfg.max_order = max_order;
        cfg.rel_tol = tol;
        if (!q) return report_json(hcm_check([&](double s) { return laplace_exact(gc, s); }, cfg));
        const QuadratureConfig qcfg;
        const PowerLaplace lp(gc, PowerLaw(*q), qcfg);
        cfg.value_noise = qcfg.rel_tol;
        return report_json(hcm_check([&](double s) { return lp(s); }, cfg));
      },
      py::arg("model"), py::arg("q") = py::none(), py::arg("max_order") = 8, py::arg("tol") = 1e-6);

  m.def(
      "sample",
      [](const GammaConvolution& gc, std::size_t n, std::uint64_t seed, std::optional<double> q) {
        return q ? sample_power_product({gc}, {*q}, Combine::Sum, n, Seed{seed}).values
                 : sample_ggc(gc, n, Seed{seed}).values;
      },
      py::arg("model"), py::arg("n"), py::arg("seed") = 1, py::arg("q") = py::none());

  m.def("remark3_bessel_product", &remark3_bessel_product, py::arg("beta"), py::arg("y"));
  m.def(
      "remark3_lhs", [](double beta, double y) { return remark3_setting(beta)(y, {}); },
      py::arg("beta"), py::arg("y"));

  m.def("parse_grid", &cli::parse_grid);
}
