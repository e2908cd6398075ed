#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "branedt/dimer.hpp"
#include "branedt/series.hpp"
#include "branedt/verify.hpp"
#include "branedt/workspace.hpp"

namespace py = pybind11;
using namespace branedt;

namespace {

std::optional<int> opt_param(int param) {
  if (param < 0) return std::nullopt;
  return param;
}

TilingSpec tiling_from(const std::string& builtin, int param, const std::string& text) {
  if (!builtin.empty()) return builtin_tiling(builtin, opt_param(param));
  return parse_tiling(text);
}

py::dict counts_to_dict(const SeriesByDim& s) {
  py::dict d;
  for (const auto& [alpha, c] : s.coeff) {
    py::tuple key(alpha.size());
    for (size_t i = 0; i < alpha.size(); ++i) key[i] = alpha[i];
    d[key] = c;
  }
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "exact noncommutative Donaldson-Thomas invariants of brane tilings";

  m.def("builtin_names", &builtin_names);

  m.def(
      "validate",
      [](const std::string& builtin, int param, const std::string& text) {
        TilingSpec t = tiling_from(builtin, param, text);
        ValidationReport rep = validate_tiling(t);
        std::vector<std::string> issues;
        for (const auto& i : rep.issues) issues.push_back(i.invariant + " (" + i.witness + ")");
        return py::make_tuple(rep.ok, issues);
      },
      py::arg("builtin") = "", py::arg("param") = -1, py::arg("text") = "");

  m.def(
      "consistency",
      [](const std::string& builtin, int param, const std::string& text) {
        Workspace ws(tiling_from(builtin, param, text));
        ConsistencyReport rep = consistency_report(ws);
        py::dict d;
        d["valid"] = rep.valid;
        d["non_degenerate"] = rep.non_degenerate;
        d["lattice_free"] = rep.lattice_free;
        d["r_charge_feasible"] = rep.r_charge_feasible;
        d["certified"] = rep.certified;
        d["violations"] = rep.violations;
        return d;
      },
      py::arg("builtin") = "", py::arg("param") = -1, py::arg("text") = "");

  m.def(
      "perfect_matchings",
      [](const std::string& builtin, int param, const std::string& text) {
        TilingSpec t = tiling_from(builtin, param, text);
        std::vector<std::string> out;
        for (const auto& mch : perfect_matchings(t)) out.push_back(matching_to_string(t, mch));
        return out;
      },
      py::arg("builtin") = "", py::arg("param") = -1, py::arg("text") = "");

  m.def(
      "partition_function",
      [](const std::string& builtin, int vertex, int max_size, bool dt, int param,
         const std::string& text) {
        TilingSpec t = tiling_from(builtin, param, text);
        SeriesByDim s = dt ? dt_partition_function(t, vertex, max_size)
                           : partition_function(t, vertex, max_size);
        return counts_to_dict(s);
      },
      py::arg("builtin") = "", py::arg("vertex") = 0, py::arg("max_size") = 8,
      py::arg("dt") = false, py::arg("param") = -1, py::arg("text") = "");

  m.def(
      "log_z_specialized",
      [](const std::string& builtin, int vertex, int max_size, int param,
         const std::string& text) {
        TilingSpec t = tiling_from(builtin, param, text);
        SeriesByDim z = partition_function(t, vertex, max_size);
        TruncatedSeries lg = specialize(plethystic_log(series_from_counts(z, max_size)));
        std::vector<std::string> out;
        for (const Rat& c : series_coeffs(lg)) out.push_back(rat_to_string(c));
        return out;
      },
      py::arg("builtin") = "", py::arg("vertex") = 0, py::arg("max_size") = 8,
      py::arg("param") = -1, py::arg("text") = "");

  m.def(
      "z_via_matchings",
      [](const std::string& builtin, int vertex, int max_size, int param,
         const std::string& text) {
        TilingSpec t = tiling_from(builtin, param, text);
        return counts_to_dict(z_via_matchings(t, vertex, max_size).series);
      },
      py::arg("builtin") = "", py::arg("vertex") = 0, py::arg("max_size") = 6,
      py::arg("param") = -1, py::arg("text") = "");
}
