// Python bindings. Results that have a JSON form are returned as plain
// Python objects through json.loads.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "wdp/cli.hpp"
#include "wdp/io.hpp"

namespace py = pybind11;
using namespace wdp;

namespace {

py::object to_py(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

SurfacePtr lookup(const std::string& label) { return Registry::builtin().get(label); }

Grade grade_of(const std::string& mode) { return parse_grade(mode); }

CheckPath path_of(const std::string& p) {
  if (p == "auto") return CheckPath::Auto;
  if (p == "fast") return CheckPath::Fast;
  if (p == "general") return CheckPath::General;
  throw std::invalid_argument("unknown path '" + p + "'");
}

}  // namespace

PYBIND11_MODULE(_wdp, m) {
  m.doc() = "Exceptional toric systems on weak del Pezzo surfaces";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<ToricError>(m, "ToricError", PyExc_ValueError);

  py::class_<ToricSystem>(m, "ToricSystem")
      .def(py::init([](const std::string& surface, const std::vector<std::string>& classes) {
             return make_system(lookup(surface), classes);
           }),
           py::arg("surface"), py::arg("classes"))
      .def_property_readonly("surface", [](const ToricSystem& a) { return a.surface()->name(); })
      .def_property_readonly("entries",
                             [](const ToricSystem& a) {
                               std::vector<std::string> out;
                               for (const auto& e : a.entries()) out.push_back(e.pretty());
                               return out;
                             })
      .def("squares", [](const ToricSystem& a) { return squares(a); })
      .def("shift", [](const ToricSystem& a, int k) { return shift(a, k); }, py::arg("k") = 1)
      .def("perm", [](const ToricSystem& a, int k) { return perm(a, k); }, py::arg("k"))
      .def("segment", [](const ToricSystem& a, int k, int l) { return segment_sum(a, k, l).pretty(); })
      .def("candidate_positions",
           [](const ToricSystem& a) {
             std::vector<std::string> out;
             for (const auto& c : candidate_positions(a)) out.push_back(c.pretty());
             return out;
           })
      .def("check",
           [](const ToricSystem& a, const std::string& mode, const std::string& path) {
             return to_py(to_json(check_grade(a, grade_of(mode), path_of(path))));
           },
           py::arg("mode") = "cyclic", py::arg("path") = "auto")
      .def("is_standard_augmentation", [](const ToricSystem& a) { return is_standard_augmentation(a); })
      .def("weak_augmentation", [](const ToricSystem& a) { return to_py(to_json(weak_augmentation(a))); })
      .def("to_json", [](const ToricSystem& a) { return to_py(to_json(a)); })
      .def("__eq__", [](const ToricSystem& a, const ToricSystem& b) { return a == b; })
      .def("__len__", &ToricSystem::size)
      .def("__repr__", &ToricSystem::to_string);

  m.def("surfaces", [] {
    std::vector<std::string> out;
    for (const auto& s : Registry::builtin().all()) out.push_back(s->name());
    return out;
  });
  m.def("surface", [](const std::string& label) { return to_py(to_json(*lookup(label))); }, py::arg("label"));
  m.def("is_effective",
        [](const std::string& surface, const std::string& cls) {
          const auto s = lookup(surface);
          return is_effective(*s, parse_class(s->lattice(), cls));
        },
        py::arg("surface"), py::arg("cls"));
  m.def("reduce",
        [](const std::string& surface, const std::string& cls) {
          const auto s = lookup(surface);
          return to_py(to_json(zariski_reduce(*s, parse_class(s->lattice(), cls))));
        },
        py::arg("surface"), py::arg("cls"));
  m.def("is_admissible", [](const Sequence& a) { return is_admissible(a); }, py::arg("sequence"));
  m.def("is_first_kind", [](const Sequence& a) { return is_first_kind(a); }, py::arg("sequence"));
  m.def("first_kind", [] { return enumerate_first_kind(); });
  m.def("enumerate",
        [](const std::string& surface, const Sequence& sq) {
          EnumResult r;
          {
            py::gil_scoped_release release;
            r = enumerate_toric_systems(lookup(surface), sq);
          }
          return r.systems;
        },
        py::arg("surface"), py::arg("squares"));
  m.def("run",
        [](const std::vector<std::string>& args) {
          std::vector<std::string> full{"wdp"};
          full.insert(full.end(), args.begin(), args.end());
          std::vector<const char*> argv;
          for (const auto& a : full) argv.push_back(a.c_str());
          std::ostringstream out, err;
          const int code = wdp::run(static_cast<int>(argv.size()), argv.data(), out, err);
          return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Runs the command-line front end; returns (exit code, stdout, stderr).");
}
