#include "cubictsp/analysis.hpp"
#include "cubictsp/generate.hpp"
#include "cubictsp/io.hpp"
#include "cubictsp/oracle.hpp"
#include "cubictsp/reductions.hpp"
#include "cubictsp/search.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

namespace py = pybind11;
using namespace cubictsp;

namespace {

py::object fraction(const Rational& value) {
  static py::object cls = py::module_::import("fractions").attr("Fraction");
  return cls(py::str(to_string(value)));
}

Rational rational(const py::handle& value) { return parse_rational(std::string(py::str(value))); }

Strategy strategy(const std::string& name) {
  if (name == "full") return Strategy::full;
  if (name == "simple") return Strategy::simple;
  throw py::value_error("strategy must be 'full' or 'simple'");
}

WeightMode weights(const std::string& name) {
  if (name == "unit") return WeightMode::unit;
  if (name == "random") return WeightMode::random;
  throw py::value_error("weights must be 'unit' or 'random'");
}

py::dict tour_dict(const TourResult& tour) {
  py::dict d;
  d["status"] = tour.optimal() ? "optimal" : "infeasible";
  d["cost"] = tour.optimal() ? fraction(tour.cost) : py::none();
  d["edges"] = tour.edges;
  return d;
}

Instance from_edges(int n, const py::iterable& edges) {
  Instance inst(n);
  for (const py::handle& item : edges) {
    const auto t = py::reinterpret_borrow<py::tuple>(item);
    if (t.size() < 3 || t.size() > 4) throw py::value_error("edges are (u, v, weight[, forced])");
    const bool forced = t.size() == 4 && t[3].cast<bool>();
    inst.add_edge(t[0].cast<VertexId>(), t[1].cast<VertexId>(), rational(t[2]), forced);
  }
  return inst;
}

py::list edge_list(const Instance& inst) {
  py::list out;
  for (EdgeId e : inst.edges()) {
    const Edge& ed = inst.edge(e);
    out.append(py::make_tuple(e, ed.u, ed.v, fraction(ed.weight), ed.forced));
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_cubictsp, m) {
  m.doc() = "Exact forced TSP on graphs of maximum degree 3";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<InvalidState>(m, "InvalidState", PyExc_RuntimeError);

  py::class_<Instance>(m, "Instance")
      .def(py::init(&from_edges), py::arg("n"), py::arg("edges"))
      .def_property_readonly("num_vertices", &Instance::num_vertices)
      .def_property_readonly("num_edges", &Instance::num_edges)
      .def("edges", &edge_list)
      .def("force_edge", &Instance::force_edge)
      .def("delete_edge", &Instance::delete_edge)
      .def("copy", [](const Instance& inst) { return inst; })
      .def("serialize", &serialize, py::arg("comment") = "")
      .def("validate", &validate_input)
      .def("__repr__", [](const Instance& inst) {
        return "<Instance n=" + std::to_string(inst.num_vertices()) + " m=" + std::to_string(inst.num_edges()) + ">";
      });

  m.def("parse", py::overload_cast<const std::string&>(&parse_instance), py::arg("text"));
  m.def("read", [](const std::string& path) { return read_instance(path); }, py::arg("path"));

  m.def("random_cubic",
        [](int n, std::uint64_t seed, const std::string& w) { return random_cubic(n, seed, weights(w)); },
        py::arg("n"), py::arg("seed") = 1, py::arg("weights") = "random");
  m.def("named_graph", [](const std::string& name, const std::string& w) { return named_graph(name, weights(w)); },
        py::arg("name"), py::arg("weights") = "unit");
  m.def("cycle_graph", [](int n, const std::string& w) { return cycle_graph(n, weights(w)); }, py::arg("n"),
        py::arg("weights") = "unit");
  m.def("inject_forced",
        [](const Instance& inst, int count, std::uint64_t seed) {
          Instance out = inst;
          inject_forced(out, count, seed);
          return out;
        },
        py::arg("instance"), py::arg("count"), py::arg("seed") = 1);

  m.def("solve",
        [](const Instance& inst, const std::string& s, bool bruteforce) {
          SolveOptions options;
          options.strategy = strategy(s);
          options.fourcycle_bruteforce = bruteforce;
          SolveResult r;
          {
            py::gil_scoped_release release;
            r = solve(inst, options);
          }
          py::dict d = tour_dict(r.tour);
          d["nodes"] = r.stats.nodes;
          d["leaves"] = r.stats.leaves;
          d["branchings"] = r.stats.branchings;
          d["max_depth"] = r.stats.max_depth;
          return d;
        },
        py::arg("instance"), py::arg("strategy") = "full", py::arg("fourcycle_bruteforce") = false);
  m.def("held_karp", [](const Instance& inst) { return tour_dict(held_karp(inst)); }, py::arg("instance"));
  m.def("exhaustive", [](const Instance& inst) { return tour_dict(exhaustive_forced(inst)); }, py::arg("instance"));
  m.def("is_tour", [](const Instance& inst, const std::vector<EdgeId>& edges) { return is_tour(inst, edges); },
        py::arg("instance"), py::arg("edges"));

  m.def("reduce",
        [](const Instance& inst) {
          const FixpointResult r = reduce_to_fixpoint(inst);
          py::dict d;
          d["instance"] = r.instance;
          d["infeasible"] = r.feasibility.infeasible();
          d["reason"] = std::string(to_string(r.feasibility.reason));
          d["solved"] = r.solved_tour.has_value();
          d["log_size"] = r.log.size();
          return d;
        },
        py::arg("instance"));

  m.def("measure", [](const Instance& inst) { return fraction(measure({}, inst)); }, py::arg("instance"));
  m.def("leaf_bound", [](const py::handle& mu0) { return leaf_bound(rational(mu0)).get_str(); }, py::arg("mu0"));
  m.def("verify_config", [] { return verify_config({}); });
  m.def("audit",
        [](const Instance& inst, const std::string& s) {
          Auditor auditor;
          SolveOptions options;
          options.strategy = strategy(s);
          options.observer = &auditor;
          solve(inst, options);
          return py::module_::import("json").attr("loads")(to_json(auditor.report()));
        },
        py::arg("instance"), py::arg("strategy") = "full");
}
