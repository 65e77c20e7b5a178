#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>
#include <string>
#include <vector>

#include "sigquad/harness.hpp"
#include "sigquad/io.hpp"
#include "sigquad/qmc.hpp"
#include "sigquad/spline_element.hpp"

namespace py = pybind11;
using namespace sigquad;

namespace {

py::array_t<double> matrix(const std::vector<double>& flat, int rows, int cols) {
  py::array_t<double> out(
      py::array::ShapeContainer{static_cast<py::ssize_t>(rows), static_cast<py::ssize_t>(cols)});
  std::copy(flat.begin(), flat.end(), out.mutable_data());
  return out;
}

py::array_t<double> vector(const std::vector<double>& values) {
  py::array_t<double> out(py::array::ShapeContainer{static_cast<py::ssize_t>(values.size())});
  std::copy(values.begin(), values.end(), out.mutable_data());
  return out;
}

BoxDomain box_from_lists(const std::vector<double>& lo, const std::vector<double>& hi) {
  return BoxDomain(lo, hi);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "moment-based compression of measures into signed quadrature rules";

  py::class_<BoxDomain>(m, "BoxDomain")
      .def(py::init(&box_from_lists), py::arg("lo"), py::arg("hi"))
      .def_property_readonly("dim", &BoxDomain::dim)
      .def_property_readonly("lo",
                             [](const BoxDomain& b) {
                               std::vector<double> v;
                               for (int k = 0; k < b.dim(); ++k) v.push_back(b.lo(k));
                               return v;
                             })
      .def_property_readonly("hi",
                             [](const BoxDomain& b) {
                               std::vector<double> v;
                               for (int k = 0; k < b.dim(); ++k) v.push_back(b.hi(k));
                               return v;
                             })
      .def("volume", &BoxDomain::volume)
      .def("chebyshev_mass", &BoxDomain::chebyshev_mass)
      .def("__repr__", [](const BoxDomain& b) {
        std::string s = "BoxDomain(lo=[";
        for (int k = 0; k < b.dim(); ++k) s += (k ? "," : "") + std::to_string(b.lo(k));
        s += "], hi=[";
        for (int k = 0; k < b.dim(); ++k) s += (k ? "," : "") + std::to_string(b.hi(k));
        return s + "])";
      });

  py::class_<ChebBasis>(m, "ChebBasis")
      .def(py::init<const BoxDomain&, int>(), py::arg("box"), py::arg("degree"))
      .def_property_readonly("box", &ChebBasis::box)
      .def_property_readonly("degree", &ChebBasis::degree)
      .def_property_readonly("dim", &ChebBasis::dim)
      .def("__len__", &ChebBasis::size)
      .def_property_readonly("size", &ChebBasis::size)
      .def("mass", &ChebBasis::mass)
      .def("order",
           [](const ChebBasis& b) {
             std::vector<std::vector<int>> out;
             for (const auto& mi : b.order())
               out.push_back(std::vector<int>(mi.e.begin(), mi.e.begin() + b.dim()));
             return out;
           })
      .def("eval",
           [](const ChebBasis& b, std::vector<double> point) {
             return vector(b.eval(point));
           },
           py::arg("point"))
      .def("christoffel",
           [](const ChebBasis& b, std::vector<double> point) { return b.christoffel(point); },
           py::arg("point"));

  py::class_<QuadRule>(m, "QuadRule")
      .def_property_readonly("box", [](const QuadRule& r) { return r.box; })
      .def_property_readonly("ade", [](const QuadRule& r) { return r.ade; })
      .def_property_readonly("nodes",
                             [](const QuadRule& r) { return matrix(r.nodes, r.size(), r.dim()); })
      .def_property_readonly("weights", [](const QuadRule& r) { return vector(r.weights); })
      .def("__len__", &QuadRule::size)
      .def("weight_sum", &QuadRule::weight_sum);

  py::class_<MomentVector>(m, "MomentVector")
      .def(py::init([](const ChebBasis& basis, std::vector<double> values) {
             return MomentVector{basis, std::move(values)};
           }),
           py::arg("basis"), py::arg("values"))
      .def_property_readonly("basis", [](const MomentVector& m_) { return m_.basis; })
      .def_property_readonly("values", [](const MomentVector& m_) { return vector(m_.values); })
      .def("norm2", &MomentVector::norm2);

  py::class_<SignedRule>(m, "SignedRule")
      .def_property_readonly("basis", [](const SignedRule& r) { return r.basis; })
      .def_property_readonly("ade", [](const SignedRule& r) { return r.ade; })
      .def_property_readonly("nodes",
                             [](const SignedRule& r) { return matrix(r.nodes, r.size(), r.dim()); })
      .def_property_readonly("weights", [](const SignedRule& r) { return vector(r.weights); })
      .def_property_readonly("moment_residual",
                             [](const SignedRule& r) { return r.moment_residual; })
      .def_property_readonly("stability", [](const SignedRule& r) { return r.stability; })
      .def_property_readonly("onenorm", [](const SignedRule& r) { return r.onenorm; })
      .def("__len__", &SignedRule::size)
      .def("weight_sum", &SignedRule::weight_sum);

  m.def("gauss_chebyshev_box", &gauss_chebyshev_box, py::arg("box"), py::arg("degree"));
  m.def("gauss_legendre", &gauss_legendre, py::arg("points"));
  m.def("verify_rule_exactness", &verify_rule_exactness, py::arg("rule"), py::arg("basis"));

  m.def(
      "compress",
      [](const MomentVector& moments, const QuadRule& rule, bool compensated) {
        return compress(moments, rule, CompressOptions{compensated});
      },
      py::arg("moments"), py::arg("rule"), py::arg("compensated") = false);
  m.def("cauchy_schwarz_bound", &cauchy_schwarz_bound, py::arg("moments"));
  m.def("christoffel_bound", &christoffel_bound, py::arg("mu_mass"), py::arg("basis"),
        py::arg("grid_resolution"));
  m.def("density_bound", &density_bound, py::arg("omega2_over_sigma_l1"), py::arg("lambda_mass"));
  m.def("stability_parameter", &stability_parameter, py::arg("rule"));

  // spline elements
  py::class_<SplineElement>(m, "SplineElement")
      .def_property_readonly("num_sides",
                             [](const SplineElement& e) { return e.sides.size(); })
      .def("vertices",
           [](const SplineElement& e) {
             std::vector<std::vector<double>> out;
             for (auto& v : e.vertices()) out.push_back({v[0], v[1]});
             return out;
           })
      .def("signed_area", [](const SplineElement& e) { return signed_area(e); })
      .def("bounding_box", [](const SplineElement& e) { return bounding_box(e); });

  m.def("load_element", [](const std::string& path) { return load_element(path); },
        py::arg("path"));
  m.def("element_from_json",
        [](const std::string& text) { return parse_element(nlohmann::json::parse(text)); },
        py::arg("text"));
  m.def("greens_moments", &greens_moments, py::arg("element"), py::arg("basis"));
  m.def("compress_element", &compress_element, py::arg("element"), py::arg("degree"));

  // CSG domains and QMC
  py::class_<IndicatorDomain>(m, "IndicatorDomain")
      .def("contains",
           [](const IndicatorDomain& d, std::array<double, 3> p) { return d.contains(p); },
           py::arg("point"))
      .def("suggested_box", &IndicatorDomain::suggested_box);

  m.def("ball", &IndicatorDomain::ball, py::arg("center"), py::arg("radius"));
  m.def("load_csg", [](const std::string& path) { return load_csg(path); }, py::arg("path"));
  m.def("csg_from_json",
        [](const std::string& text) { return parse_csg(nlohmann::json::parse(text)); },
        py::arg("text"));

  py::class_<PointCloud>(m, "PointCloud")
      .def_property_readonly("box", [](const PointCloud& c) { return c.box; })
      .def_property_readonly("points",
                             [](const PointCloud& c) {
                               return matrix(c.points, static_cast<int>(c.size()), 3);
                             })
      .def_property_readonly("per_point_weight",
                             [](const PointCloud& c) { return c.per_point_weight; })
      .def_property_readonly("total_generated",
                             [](const PointCloud& c) { return c.total_generated; })
      .def("__len__", [](const PointCloud& c) { return c.size(); })
      .def("weight_sum", &PointCloud::weight_sum);

  m.def("halton",
        [](const BoxDomain& box, long long count) {
          return matrix(halton(box, count), static_cast<int>(count), box.dim());
        },
        py::arg("box"), py::arg("count"));
  m.def("qmc_measure", &qmc_measure, py::arg("domain"), py::arg("box"), py::arg("count"),
        py::arg("ray_seed") = kDefaultRaySeed);
  m.def("qmc_moments", &qmc_moments, py::arg("cloud"), py::arg("basis"));
  m.def("compress_qmc", &compress_qmc, py::arg("domain"), py::arg("box"), py::arg("count"),
        py::arg("degree"), py::arg("ray_seed") = kDefaultRaySeed);

  // rule files
  m.def(
      "save_rule",
      [](const SignedRule& rule, const std::string& path, const std::string& kind,
         const std::string& source, long long points, std::uint64_t seed) {
        RuleProvenance prov{kind, source, source.empty() ? 0 : hash_file(source), points, seed};
        save_rule(RuleFile{kRuleSchemaVersion, rule, std::move(prov)}, path);
      },
      py::arg("rule"), py::arg("path"), py::arg("kind") = "", py::arg("source") = "",
      py::arg("points") = 0, py::arg("seed") = 0);
  m.def("load_rule", [](const std::string& path) { return load_rule(path).rule; },
        py::arg("path"));
}
