#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "algid/analysis.hpp"
#include "algid/digest.hpp"
#include "algid/element_gen.hpp"
#include "algid/errors.hpp"
#include "algid/group.hpp"
#include "algid/plan.hpp"
#include "algid/store.hpp"
#include "algid/workflow.hpp"

namespace py = pybind11;
using namespace algid;

namespace {

py::int_ to_py(const Rank& r) { return py::int_(py::reinterpret_steal<py::object>(PyLong_FromString(r.str().c_str(), nullptr, 10))); }

Rank from_py(const py::int_& v) { return Rank(py::str(v).cast<std::string>()); }

const GroupParams& version_of(const std::string& name) { return GroupParams::official(name); }

std::string bytes_of(const py::bytes& b) { return std::string(b); }

}  // namespace

PYBIND11_MODULE(_algid, m) {
  m.doc() = "Algebraic identifiers over UT(4, p)";

  py::register_exception<Error>(m, "AlgidError", PyExc_ValueError);

  py::class_<GroupParams>(m, "Version")
      .def_property_readonly("name", &GroupParams::name)
      .def_property_readonly("prime", &GroupParams::prime)
      .def_property_readonly("digest_length", &GroupParams::digest_length)
      .def("__repr__", [](const GroupParams& g) { return "<Version " + g.name() + ">"; });

  m.def("version", &version_of, py::return_value_policy::reference, py::arg("name"));
  m.def("test_group", &GroupParams::test, py::return_value_policy::reference, py::arg("p"),
        "Small prime group without digests, for experiments");

  py::class_<UtElement>(m, "Element")
      .def_static(
          "from_rank", [](const py::int_& r, const GroupParams& g) { return element_from_rank(from_py(r), g); },
          py::arg("rank"), py::arg("version"))
      .def_static("identity", &UtElement::identity, py::arg("version"))
      .def_property_readonly("rank", [](const UtElement& a) { return to_py(rank_of(a)); })
      .def_property_readonly("version", &UtElement::params, py::return_value_policy::reference)
      .def_property_readonly("cells",
                             [](const UtElement& a) {
                               return py::make_tuple(a.e12(), a.e13(), a.e14(), a.e23(), a.e24(), a.e34());
                             })
      .def_property_readonly("digest", [](const UtElement& a) { return encode(a).text(); })
      .def_property_readonly("kind", [](const UtElement& a) { return std::string(to_string(classify(a))); })
      .def("inverse", &inverse)
      .def("commutes", &commutes, py::arg("other"))
      .def("lift", &lift)
      .def("unlift", &unlift)
      .def("__mul__", [](const UtElement& a, const UtElement& b) { return a * b; })
      .def("__pow__", [](const UtElement& a, const py::int_& n) {
        const Rank e = from_py(n);
        return e < 0 ? power(inverse(a), Rank(-e)) : power(a, e);
      })
      .def("__eq__", [](const UtElement& a, const UtElement& b) { return a == b; })
      .def("__hash__", [](const UtElement& a) { return py::hash(py::str(rank_of(a).str())); })
      .def("__repr__", [](const UtElement& a) { return "<Element " + render_element(a) + ">"; });

  m.def(
      "decode", [](const std::string& text, const std::string& v) { return decode(text, version_of(v)); },
      py::arg("digest"), py::arg("version") = "ut40.4");
  m.def(
      "value_element", [](const py::bytes& b, const std::string& v) { return gen_value_element(bytes_of(b), version_of(v)); },
      py::arg("content"), py::arg("version") = "ut40.4");
  m.def(
      "function_element",
      [](const py::bytes& b, const std::string& v) { return gen_function_element(bytes_of(b), version_of(v)); },
      py::arg("description"), py::arg("version") = "ut40.4");
  m.def(
      "import_legacy",
      [](const std::string& text, int base, const std::string& mode, const std::string& v) {
        if (mode != "ordered" && mode != "commuting") throw Error(Errc::InvalidArgument, "mode must be ordered or commuting");
        return import_legacy(text, base, mode == "ordered" ? ImportMode::Ordered : ImportMode::Commuting, version_of(v));
      },
      py::arg("text"), py::arg("base") = 16, py::arg("mode") = "ordered", py::arg("version") = "ut40.4");
  m.def(
      "rho", [](const std::string& v) { return reserved_rho(version_of(v)); }, py::arg("version") = "ut40.4");
  m.def(
      "theta", [](int i, const std::string& v) { return reserved_theta(i, version_of(v)); }, py::arg("i"),
      py::arg("version") = "ut40.4");
  m.def(
      "removal_index", [](std::uint64_t i, const std::string& v) { return removal_by_index(i, version_of(v)); },
      py::arg("index"), py::arg("version") = "ut40.4");
  m.def(
      "removal_name", [](const std::string& n, const std::string& v) { return removal_by_name(n, version_of(v)); },
      py::arg("name"), py::arg("version") = "ut40.4");
  m.def(
      "key_element", [](const std::string& k, const std::string& v) { return key_element(k, version_of(v)); },
      py::arg("key"), py::arg("version") = "ut40.4");
  m.def("map_entry", &map_entry, py::arg("key"), py::arg("value"));
  m.def("compose", [](const std::vector<UtElement>& fs) { return compose(fs); }, py::arg("functions"));
  m.def(
      "adaptor", [](const UtElement& f, const std::vector<UtElement>& applied) { return adaptor(f, applied); },
      py::arg("function"), py::arg("applied"));
  m.def(
      "factor_outputs", &factor_outputs, py::arg("target"), py::arg("k"));

  m.def(
      "commuting_probability", [](const std::string& v) { return commuting_probability_ut(version_of(v).p()); },
      py::arg("version") = "ut40.4");
  m.def("expected_expressions", &expected_expressions, py::arg("commuting_probability"), py::arg("length"));
  m.def("birthday_bound", &birthday_bound, py::arg("bits"));
  m.def(
      "census",
      [](std::uint64_t p) {
        const Census c = empirical_census(p, {.quotient_by_center = true, .threads = 0});
        py::dict out;
        out["elements"] = c.elements;
        out["order_histogram"] = c.order_histogram;
        out["commuting_pairs"] = c.commuting_pairs;
        out["abelian_subgroup_size"] = c.abelian_subgroup_size;
        return out;
      },
      py::arg("p"));

  py::class_<Store>(m, "Store")
      .def(py::init([](const std::string& root, const std::string& v) { return Store(root, version_of(v)); }),
           py::arg("root"), py::arg("version") = "ut40.4")
      .def("put", [](Store& s, const std::string& d, const py::bytes& b) { s.put(d, bytes_of(b)); })
      .def("get", [](const Store& s, const std::string& d) { return py::bytes(s.get(d)); })
      .def("has", &Store::has)
      .def("alias", &Store::alias_put, py::arg("source"), py::arg("target"))
      .def("resolve", &Store::resolve);

  m.def(
      "plan",
      [](const std::string& json_text, const Store* store, const std::string& format) {
        const PlanReport r = evaluate_plan(parse_plan(json_text), store);
        return format == "text" ? plan_report_text(r) : plan_report_json(r);
      },
      py::arg("plan_json"), py::arg("store") = nullptr, py::arg("format") = "json");
}
