// Python bindings. Reports cross the boundary as JSON text; the package
// __init__ turns them into dicts.

#include "brauerkit/pipelines.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace brauerkit;

namespace {

Rational to_rational(const py::handle& x) { return parse_rational(py::str(x).cast<std::string>()); }

std::vector<Rational> to_rationals(const py::sequence& xs) {
  std::vector<Rational> out;
  for (const auto& x : xs) out.push_back(to_rational(x));
  return out;
}

Place to_place(const std::string& v) {
  if (v == "inf") return Place::real();
  return Place::finite(parse_integer(v));
}

}  // namespace

PYBIND11_MODULE(_brauerkit, m) {
  m.doc() = "exact certificates for local-global obstructions";
  m.attr("__version__") = toolkit_version();

  py::register_exception<PipelineRefused>(m, "PipelineRefused", PyExc_ValueError);
  py::register_exception<GroupCapExceeded>(m, "GroupCapExceeded", PyExc_RuntimeError);

  m.def("pipeline_names", &pipeline_names);

  m.def(
      "run_pipeline_json",
      [](const std::string& name, const std::string& inputs, std::uint64_t prime_bound, long height_bound,
         std::size_t coh_cap) {
        PipelineConfig config;
        config.prime_bound = prime_bound;
        config.height_bound = height_bound;
        config.coh_cap = coh_cap;
        Report r;
        {
          py::gil_scoped_release release;
          r = run_pipeline(name, Json::parse(inputs), config);
        }
        return r.to_json().dump();
      },
      py::arg("name"), py::arg("inputs") = "{}", py::arg("prime_bound") = 10000, py::arg("height_bound") = 10000,
      py::arg("coh_cap") = kDefaultGroupCap);

  m.def(
      "recheck_json",
      [](const std::string& report) {
        std::vector<RecheckRow> rows;
        {
          py::gil_scoped_release release;
          rows = recheck_report(Json::parse(report));
        }
        py::list out;
        for (const auto& r : rows) {
          py::dict d;
          d["check_id"] = r.check_id;
          d["ok"] = r.ok;
          d["method"] = r.method;
          d["detail"] = r.detail;
          out.append(d);
        }
        return out;
      },
      py::arg("report"));

  m.def(
      "hilbert_symbol",
      [](const py::object& a, const py::object& b, const std::string& place) {
        return hilbert_symbol(to_rational(a), to_rational(b), to_place(place));
      },
      py::arg("a"), py::arg("b"), py::arg("place"));

  m.def(
      "anisotropic_places",
      [](const py::sequence& coeffs) {
        std::vector<std::string> out;
        for (const auto& v : anisotropic_places(DiagonalForm(to_rationals(coeffs)))) out.push_back(v.to_string());
        return out;
      },
      py::arg("coefficients"));

  m.def(
      "is_isotropic_local",
      [](const py::sequence& coeffs, const std::string& place) {
        return is_isotropic_local(DiagonalForm(to_rationals(coeffs)), to_place(place));
      },
      py::arg("coefficients"), py::arg("place"));

  m.def(
      "h1_invariant_factors",
      [](const std::string& group, std::int64_t n, std::size_t cap) {
        auto G = group == "sl2" ? sl2(n, cap) : group == "gl2" ? gl2(n, cap) : sl2_plus(n, cap);
        std::vector<long> out;
        for (const auto& f : h1(G).invariant_factors) out.push_back(f.get_si());
        return out;
      },
      py::arg("group"), py::arg("n"), py::arg("cap") = kDefaultGroupCap);

  m.def(
      "count_points",
      [](const std::string& curve, std::uint64_t p) {
        auto pc = count_points_mod_p(WeierstrassCurve::parse(curve), p);
        return py::make_tuple(pc.order, pc.a_p);
      },
      py::arg("curve"), py::arg("p"));

  m.def(
      "mod2_image_full", [](const std::string& curve) { return mod2_image_full(WeierstrassCurve::parse(curve)); },
      py::arg("curve"));
}
