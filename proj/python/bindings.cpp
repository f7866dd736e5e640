#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "prdg/driver.hpp"
#include "prdg/error.hpp"

namespace py = pybind11;
using namespace prdg;

namespace {

RunConfig make_config(const std::string& example, const std::string& mesh, int k, double nu,
                      std::optional<std::size_t> patch_size, std::optional<double> sigma, std::uint64_t seed,
                      std::optional<std::size_t> lloyd, const std::string& solver) {
  RunConfig c;
  c.example = parse_example(example);
  c.family = parse_mesh_family(mesh);
  c.k = k;
  c.params.nu = nu;
  c.patch_size = patch_size;
  c.sigma = sigma;
  c.seed = seed;
  c.lloyd = lloyd;
  if (solver == "lu") c.solver = SolverKind::lu;
  else if (solver == "gmres") c.solver = SolverKind::gmres;
  else throw InvalidInput("unknown solver '" + solver + "'");
  return c;
}

py::dict record_dict(const RunRecord& r) {
  py::dict d;
  d["example"] = r.example;
  d["mesh"] = r.mesh;
  d["k"] = r.k;
  d["nu"] = r.nu;
  d["ncells"] = r.ncells;
  d["dofs"] = r.dofs;
  d["h"] = r.h;
  d["l2"] = r.l2;
  d["dg"] = r.dg;
  d["supg"] = r.supg;
  return d;
}

Eigen::MatrixX2d barycenters(const PolyMesh& m) {
  Eigen::MatrixX2d out(m.num_elements(), 2);
  for (Index e = 0; e < m.num_elements(); ++e) out.row(static_cast<Eigen::Index>(e)) = m.barycenter(e).transpose();
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Patch-reconstruction DG solver for convection-diffusion-reaction problems";

  // translators are tried newest first, so the base class goes first
  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);
  py::register_exception<GeometryError>(m, "GeometryError", PyExc_ValueError);
  py::register_exception<UnisolvenceError>(m, "UnisolvenceError", PyExc_ArithmeticError);
  py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);

  py::class_<PolyMesh>(m, "Mesh")
      .def_property_readonly("num_elements", &PolyMesh::num_elements)
      .def_property_readonly("num_vertices", &PolyMesh::num_vertices)
      .def_property_readonly("num_edges", &PolyMesh::num_edges)
      .def_property_readonly("h", &PolyMesh::h)
      .def_property_readonly("total_area", &PolyMesh::total_area)
      .def_property_readonly("barycenters", &barycenters)
      .def("area", &PolyMesh::area, py::arg("element"))
      .def("diameter", &PolyMesh::diameter, py::arg("element"))
      .def("write", [](const PolyMesh& mesh, const std::string& path) { write_mesh(mesh, path); }, py::arg("path"));

  m.def(
      "make_mesh",
      [](const std::string& family, std::size_t size, std::uint64_t seed, std::optional<std::size_t> lloyd) {
        const MeshFamily f = parse_mesh_family(family);
        return make_mesh(f, size, seed, lloyd ? *lloyd : default_lloyd_iterations(f));
      },
      py::arg("family"), py::arg("size"), py::arg("seed") = 1, py::arg("lloyd") = py::none(),
      "Triangulation with size subdivisions per side ('tri') or a Voronoi mesh with size cells.");
  m.def("read_mesh", [](const std::string& path) { return read_mesh(path); }, py::arg("path"));

  py::class_<Solution>(m, "Solution")
      .def_property_readonly("dofs", [](const Solution& s) { return s.result.dofs; })
      .def_property_readonly("residual", [](const Solution& s) { return s.result.relative_residual; })
      .def_property_readonly("num_elements", [](const Solution& s) { return s.mesh->num_elements(); })
      .def("__call__", &Solution::value, py::arg("x"), "Value of the reconstructed solution at a point.");

  m.def(
      "solve",
      [](const std::string& example, const std::string& mesh, std::size_t size, int k, double nu,
         std::optional<std::size_t> patch_size, std::optional<double> sigma, std::uint64_t seed,
         std::optional<std::size_t> lloyd, const std::string& solver) {
        auto c = make_config(example, mesh, k, nu, patch_size, sigma, seed, lloyd, solver);
        Solution s = solve_problem(c, make_mesh(c.family, size, c.seed, c.resolved_lloyd()));
        py::dict rec = record_dict(measure(c, s));
        return py::make_tuple(std::move(s), rec);
      },
      py::arg("example"), py::arg("mesh"), py::arg("size"), py::arg("k") = 1, py::arg("nu") = 1.0,
      py::arg("patch_size") = py::none(), py::arg("sigma") = py::none(), py::arg("seed") = 1,
      py::arg("lloyd") = py::none(), py::arg("solver") = "lu",
      "Solve one example; returns (solution, error record).");

  m.def(
      "run_convergence",
      [](const std::string& example, const std::string& mesh, const std::vector<std::size_t>& sizes, int k, double nu,
         std::optional<std::size_t> patch_size, std::optional<double> sigma, std::uint64_t seed,
         std::optional<std::size_t> lloyd, const std::string& solver) {
        auto c = make_config(example, mesh, k, nu, patch_size, sigma, seed, lloyd, solver);
        py::list out;
        for (const auto& r : run_convergence(c, sizes)) out.append(record_dict(r));
        return out;
      },
      py::arg("example"), py::arg("mesh"), py::arg("sizes"), py::arg("k") = 1, py::arg("nu") = 1.0,
      py::arg("patch_size") = py::none(), py::arg("sigma") = py::none(), py::arg("seed") = 1,
      py::arg("lloyd") = py::none(), py::arg("solver") = "lu");

  m.def("observed_rate", &observed_rate, py::arg("e1"), py::arg("e2"), py::arg("h1"), py::arg("h2"));
  m.def("rates", &rates, py::arg("errors"), py::arg("sizes"));
  m.def("fitted_rate", &fitted_rate, py::arg("errors"), py::arg("sizes"));
  m.def(
      "default_patch_size",
      [](const std::string& family, int k) { return default_patch_size(parse_mesh_family(family), k); },
      py::arg("family"), py::arg("k"));
}
