#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "shiftsim/dsl.hpp"
#include "shiftsim/json_io.hpp"
#include "shiftsim/shift.hpp"
#include "shiftsim/suites.hpp"

namespace py = pybind11;
using namespace shiftsim;

namespace {

py::object value_to_py(const dsl::Value& v) {
  if (const EPPerm* g = std::get_if<EPPerm>(&v)) return py::cast(*g);
  if (const Germ* germ = std::get_if<Germ>(&v)) return py::cast(*germ);
  if (const GroupClass* cls = std::get_if<GroupClass>(&v)) return py::cast(*cls);
  if (const Triple* t = std::get_if<Triple>(&v)) return py::cast(*t);
  return py::cast(std::get<HoughtonElement>(v));
}

Triple make_triple(Int n, const GroupClass& cls,
                   const std::vector<std::pair<Int, Int>>& minus,
                   const std::vector<std::pair<std::pair<Int, Int>, std::pair<Int, Int>>>& sigma,
                   const std::vector<EPPerm>& components,
                   const std::vector<std::pair<Int, Int>>& plus) {
  auto to_points = [&](const std::vector<std::pair<Int, Int>>& raw) {
    std::vector<Point> points;
    for (const auto& [ray, index] : raw) points.push_back(Point{ray, index});
    return points;
  };
  std::vector<std::pair<Point, Point>> pairs;
  for (const auto& [from, to] : sigma)
    pairs.emplace_back(Point{from.first, from.second}, Point{to.first, to.second});
  FiniteSet plus_set(n, to_points(plus));
  FiniteSet minus_set(n, to_points(minus));
  return Triple(n, minus_set, SigmaMap(plus_set, minus_set, pairs), components, plus_set, cls);
}

}  // namespace

PYBIND11_MODULE(_shiftsim, m) {
  m.doc() = "exact arithmetic for eventually periodic permutations, shifting maps, and "
            "Houghton-style representative triples";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "DslParseError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ResourceError>(m, "ResourceError", PyExc_RuntimeError);

  py::class_<EPPerm>(m, "EPPerm")
      .def(py::init<>())
      .def_static("identity", &EPPerm::identity)
      .def_static("from_cycles", &EPPerm::from_cycles, py::arg("cycles"))
      .def_static("from_periodic", &EPPerm::from_periodic, py::arg("period"), py::arg("threshold"),
                  py::arg("table"))
      .def_property_readonly("period", &EPPerm::period)
      .def_property_readonly("threshold", &EPPerm::threshold)
      .def_property_readonly("table", &EPPerm::table)
      .def("apply", &EPPerm::apply, py::arg("i"))
      .def("__call__", &EPPerm::apply, py::arg("i"))
      .def("is_identity", &EPPerm::is_identity)
      .def("has_finite_support", &EPPerm::has_finite_support)
      .def("inverse", [](const EPPerm& g) { return inverse(g); })
      .def("__mul__", [](const EPPerm& g, const EPPerm& h) { return compose(g, h); })
      .def(py::self == py::self)
      .def(py::self != py::self)
      .def(py::self < py::self)
      .def("__hash__",
           [](const EPPerm& g) {
             std::size_t h = std::hash<Int>()(g.period()) * 31 + std::hash<Int>()(g.threshold());
             for (Int v : g.table()) h = h * 1000003 + std::hash<Int>()(v);
             return h;
           })
      .def("to_json", [](const EPPerm& g) { return to_json_string(g); })
      .def_static("from_json", &epperm_from_json_string, py::arg("text"))
      .def("__repr__", [](const EPPerm& g) { return "EPPerm(" + g.to_string() + ")"; });

  m.def("compose", &compose, py::arg("g"), py::arg("h"));
  m.def("inverse", [](const EPPerm& g) { return inverse(g); }, py::arg("g"));
  m.def("conjugate", &conjugate, py::arg("x"), py::arg("y"));
  m.def("slide", &slide);
  m.def("flip", &flip);
  m.def("make_slide", &make_slide, py::arg("a"), py::arg("b"), py::arg("p"));
  m.def("make_rotator", &make_rotator, py::arg("n"));
  m.def("make_residue_permutation", &make_residue_permutation, py::arg("image"));

  py::class_<Germ>(m, "Germ")
      .def(py::init<EPPerm>(), py::arg("representative"))
      .def_property_readonly("representative", &Germ::representative)
      .def("__eq__", [](const Germ& a, const Germ& b) { return germ_equals(a, b); });
  m.def("germ_equals",
        [](const EPPerm& a, const EPPerm& b) { return germ_equals(Germ(a), Germ(b)); },
        py::arg("a"), py::arg("b"));
  m.def("germ_shift", [](const EPPerm& a) { return germ_shift(Germ(a)).representative(); },
        py::arg("representative"));

  m.def("psi", &psi, py::arg("g"), py::arg("j"));
  m.def("insert_arrow", &insert_arrow, py::arg("g"), py::arg("j"), py::arg("m"));

  py::class_<GroupClass>(m, "GroupClass")
      .def_static("trivial", &GroupClass::trivial)
      .def_static("sym", &GroupClass::sym, py::arg("m"))
      .def_static("symfin", &GroupClass::symfin)
      .def_static("periodic", &GroupClass::periodic, py::arg("p"))
      .def_static("houghton", &GroupClass::houghton, py::arg("n"))
      .def_static("universe", &GroupClass::universe)
      .def_static("parse", &GroupClass::parse, py::arg("text"))
      .def("contains", &GroupClass::contains, py::arg("g"))
      .def_property_readonly("infinite", &GroupClass::is_infinite)
      .def_property_readonly("strongly_closed", &GroupClass::strongly_closed)
      .def("__eq__", [](const GroupClass& a, const GroupClass& b) { return a == b; })
      .def("__repr__", [](const GroupClass& c) { return "GroupClass(" + c.name() + ")"; })
      .def("name", &GroupClass::name);

  m.def("section_into_stabilizer", &section_into_stabilizer, py::arg("cls"), py::arg("g"),
        py::arg("j"));
  m.def(
      "closure_falsifier",
      [](const std::vector<EPPerm>& elements, Int j_bound, Int depth) {
        FalsifierReport report = closure_falsifier(elements, j_bound, depth);
        py::dict d;
        d["violation_found"] = report.violation_found;
        d["frontier_size"] = report.frontier_size;
        d["truncated"] = report.truncated;
        d["summary"] = report.to_string();
        if (report.witness) d["witness"] = *report.witness;
        return d;
      },
      py::arg("elements"), py::arg("j_bound"), py::arg("depth"));

  py::class_<Triple>(m, "Triple")
      .def(py::init(&make_triple), py::arg("n"), py::arg("cls"), py::arg("minus"),
           py::arg("sigma"), py::arg("gs"), py::arg("plus"))
      .def_static("identity", &Triple::identity, py::arg("n"), py::arg("cls"))
      .def_property_readonly("n", &Triple::ray_count)
      .def_property_readonly("gs", &Triple::components)
      .def("chi", [](const Triple& t) { return chi(t); })
      .def("to_json", [](const Triple& t) { return to_json_string(t); })
      .def_static("from_json", &triple_from_json_string, py::arg("text"))
      .def("__mul__", [](const Triple& a, const Triple& b) { return multiply(a, b); })
      .def("inverse", [](const Triple& t) { return invert_triple(t); })
      .def("__repr__", [](const Triple& t) { return dsl::print(dsl::Value(t)); });

  py::class_<HoughtonElement>(m, "HoughtonElement")
      .def(py::init<Int, EPPerm>(), py::arg("n"), py::arg("flat"))
      .def_static("identity", &HoughtonElement::identity, py::arg("n"))
      .def_property_readonly("n", &HoughtonElement::ray_count)
      .def_property_readonly("flat", &HoughtonElement::flat)
      .def("__mul__",
           [](const HoughtonElement& a, const HoughtonElement& b) { return multiply(a, b); })
      .def("inverse", [](const HoughtonElement& e) { return inverse(e); })
      .def(py::self == py::self)
      .def(py::self != py::self)
      .def("to_json", [](const HoughtonElement& e) { return to_json_string(e); })
      .def_static("from_json", &element_from_json_string, py::arg("text"))
      .def("__repr__", [](const HoughtonElement& e) {
        return "HoughtonElement(n=" + std::to_string(e.ray_count()) + ", " +
               e.flat().to_string() + ")";
      });

  m.def("eval_triple", &eval_triple, py::arg("t"));
  m.def("expand", &expand, py::arg("t"), py::arg("k"));
  m.def("general_expand", &general_expand, py::arg("t"), py::arg("k"), py::arg("j"));
  m.def("minimal_triple", &minimal_triple, py::arg("e"), py::arg("cls"));
  m.def("multiply_triples", [](const Triple& a, const Triple& b) { return multiply(a, b); },
        py::arg("a"), py::arg("b"));
  m.def("invert_triple", &invert_triple, py::arg("t"));
  m.def("chi", &chi, py::arg("t"));
  m.def("embed_components", &embed_components, py::arg("gs"), py::arg("cls"),
        py::arg("n") = static_cast<Int>(-1));
  m.def("factorize", &factorize, py::arg("t"));
  m.def("reduce_h1", &reduce_h1, py::arg("t"), py::arg("cls"));
  m.def("psi1", &psi1, py::arg("e"));
  m.def("composite_iso", &composite_iso, py::arg("outer"), py::arg("inner_n"),
        py::arg("inner_class"));
  m.def("normalize_finite_components", &normalize_finite_components, py::arg("t"));
  m.def(
      "ball_enumerate",
      [](const std::vector<HoughtonElement>& generators, Int radius) {
        BallResult ball = ball_enumerate(generators, radius);
        return py::make_tuple(ball.elements, ball.truncated);
      },
      py::arg("generators"), py::arg("radius"));

  m.def("evaluate", [](const std::string& text) { return value_to_py(dsl::evaluate(text)); },
        py::arg("text"), "evaluate a DSL expression");
  m.def("run_suite",
        [](const std::string& name, std::uint64_t seed, Int samples) {
          SuiteResult result = run_suite(name, seed, samples);
          return py::make_tuple(result.ok(), result.passed, result.total, result.failure);
        },
        py::arg("name"), py::arg("seed") = 7, py::arg("samples") = 100);
}
