// Python bindings for the main operations: parameter/design construction,
// spectra, canonical forms, extension enumeration, heuristics, catalog and
// Hadamard utilities.
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "oatk/catalog.hpp"
#include "oatk/design_io.hpp"
#include "oatk/enumerate.hpp"
#include "oatk/extend.hpp"
#include "oatk/hadamard.hpp"
#include "oatk/heuristics.hpp"
#include "oatk/iso.hpp"
#include "oatk/spectra.hpp"

namespace py = pybind11;
using namespace oatk;

namespace {

Design design_from_lists(int levels, int strength,
                         const std::vector<std::vector<int>>& rows) {
  if (rows.empty()) throw InvalidParams("design needs rows");
  int n = static_cast<int>(rows.size());
  int k = static_cast<int>(rows[0].size());
  std::vector<std::uint8_t> cells;
  cells.reserve(static_cast<std::size_t>(n) * k);
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != k) throw InvalidParams("ragged rows");
    for (int v : row) {
      if (v < 0 || v >= levels) throw InvalidParams("level out of range");
      cells.push_back(static_cast<std::uint8_t>(v));
    }
  }
  return make_design(make_params(n, k, levels, strength), std::move(cells));
}

std::vector<std::vector<int>> design_rows(const Design& d) {
  std::vector<std::vector<int>> rows(d.params.runs, std::vector<int>(d.params.factors));
  for (int r = 0; r < d.params.runs; ++r)
    for (int c = 0; c < d.params.factors; ++c) rows[r][c] = d.at(r, c);
  return rows;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "orthogonal array enumeration and generalized word length patterns";

  py::register_exception<Error>(m, "OatkError");

  py::class_<DesignParams>(m, "DesignParams")
      .def_readonly("runs", &DesignParams::runs)
      .def_readonly("factors", &DesignParams::factors)
      .def_readonly("levels", &DesignParams::levels)
      .def_readonly("strength", &DesignParams::strength)
      .def_readonly("index", &DesignParams::index)
      .def("__repr__", [](const DesignParams& p) {
        return "OA(" + std::to_string(p.runs) + "," + std::to_string(p.factors) + "," +
               std::to_string(p.levels) + "," + std::to_string(p.strength) + ")";
      });

  py::class_<Design>(m, "Design")
      .def_property_readonly("params", [](const Design& d) { return d.params; })
      .def_property_readonly("rows", &design_rows)
      .def("__eq__", [](const Design& a, const Design& b) { return a == b; });

  py::class_<Gwp>(m, "Gwp")
      .def_property_readonly("params", [](const Gwp& g) { return g.params; })
      .def_property_readonly("scaled", [](const Gwp& g) { return g.scaled; })
      .def_property_readonly("values", [](const Gwp& g) {
        std::vector<double> out;
        double n2 = static_cast<double>(g.params.runs) * g.params.runs;
        for (auto v : g.scaled) out.push_back(static_cast<double>(v) / n2);
        return out;
      });

  py::class_<DistanceDistribution>(m, "DistanceDistribution")
      .def_property_readonly("params", [](const DistanceDistribution& b) { return b.params; })
      .def_property_readonly("scaled", [](const DistanceDistribution& b) { return b.scaled; });

  py::class_<CatalogEntry>(m, "CatalogEntry")
      .def_property_readonly("params", [](const CatalogEntry& e) { return e.params; })
      .def_property_readonly("distance", [](const CatalogEntry& e) { return e.dist; })
      .def_property_readonly("gwp", [](const CatalogEntry& e) { return e.gwp; });

  m.def("make_params", &make_params, py::arg("runs"), py::arg("factors"), py::arg("levels"),
        py::arg("strength"));
  m.def("make_design", &design_from_lists, py::arg("levels"), py::arg("strength"),
        py::arg("rows"));
  m.def("seed_design", &seed_design, py::arg("params"));
  m.def("verify_strength", &verify_strength, py::arg("design"), py::arg("strength"));
  m.def("distance_distribution", &distance_distribution);
  m.def("gwp_from_distance", &gwp_from_distance);
  m.def("distance_from_gwp", &distance_from_gwp);
  m.def("gwp", [](const Design& d) { return gwp_from_distance(distance_distribution(d)); },
        "word length pattern of a design");
  m.def("canonical_key", [](const Design& d) { return py::bytes(canonical_key(d).bytes); });
  m.def("canonical_form", &canonical_form);
  m.def("random_isomorph", &random_isomorph, py::arg("design"), py::arg("seed"));
  m.def("reduce_to_classes", &reduce_to_classes, py::arg("designs"), py::arg("workers") = 1);
  m.def(
      "extend",
      [](const Design& parent, bool directed) {
        return enumerate_solutions(
            build_problem(parent, directed ? ExtendMode::Directed : ExtendMode::Plain));
      },
      py::arg("parent"), py::arg("directed") = false,
      "all one-factor extensions of a parent design");
  m.def("load_catalog", &load_catalog, py::arg("path"));
  m.def("validate_entry", &validate_entry, py::arg("entry"));
  m.def(
      "backward_search",
      [](const Design& parent, int k, std::uint64_t seed, int restarts) {
        SearchConfig cfg;
        cfg.seed = seed;
        cfg.restarts = restarts;
        return backward_search(parent, k, cfg);
      },
      py::arg("parent"), py::arg("k"), py::arg("seed") = 1, py::arg("restarts") = 100);
  m.def(
      "load_hadamard",
      [](const std::string& path, bool zeros_ones) { return derive_oas(load_hadamard(path, zeros_ones)); },
      py::arg("path"), py::arg("zeros_ones") = false,
      "saturated designs derived from a Hadamard matrix file");
  m.def("load_design", &load_design, py::arg("path"));
  m.def("save_design", &save_design, py::arg("path"), py::arg("design"));

#ifdef OATK_VERSION
  m.attr("__version__") = OATK_VERSION;
#else
  m.attr("__version__") = "dev";
#endif
}
