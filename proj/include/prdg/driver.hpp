#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "prdg/analysis.hpp"
#include "prdg/assembly.hpp"
#include "prdg/cases.hpp"
#include "prdg/forms.hpp"
#include "prdg/mesh.hpp"
#include "prdg/patch.hpp"
#include "prdg/reconstruct.hpp"

namespace prdg {

struct RunConfig {
  ExampleId example = ExampleId::ex1a;
  MeshFamily family = MeshFamily::triangulation;
  int k = 1;
  ExampleParams params;
  /// defaults to the reference size for the family and k
  std::optional<std::size_t> patch_size;
  /// defaults to 3k(k+1)
  std::optional<double> sigma;
  /// volume and edge quadrature order, defaults to 2k + 2
  std::optional<int> quad_order;
  std::uint64_t seed = 1;
  /// Lloyd iterations for generated polygonal meshes; family default when unset
  std::optional<std::size_t> lloyd;
  SolverKind solver = SolverKind::lu;

  std::size_t resolved_patch_size() const;
  double resolved_sigma() const;
  int resolved_quad_order() const;
  std::size_t resolved_lloyd() const;
};

/// Lloyd iterations used when none are requested: 100 for poly, 2 for voronoi, 0 otherwise.
std::size_t default_lloyd_iterations(MeshFamily family);

/// Triangulations take the subdivision count n; the other families take a cell count.
PolyMesh make_mesh(MeshFamily family, std::size_t size, std::uint64_t seed, std::size_t lloyd);

/// Everything produced by one assemble-and-solve run.
struct Solution {
  std::unique_ptr<PolyMesh> mesh;
  ExampleCase problem;
  std::unique_ptr<ReconstructionSpace> space;
  std::unique_ptr<DiscreteForms> forms;
  SparseSystem system;
  SolveResult result;

  std::vector<double> dofs() const;
  PiecewiseFunction uh() const;
  double value(const Point& x) const;
};

Solution solve_problem(const RunConfig& config, PolyMesh mesh);

/// Error norms of a solved run; zero errors when the example has no exact solution.
RunRecord measure(const RunConfig& config, const Solution& solution);

std::vector<RunRecord> run_convergence(const RunConfig& config, const std::vector<std::size_t>& sizes);

/// Header comments recording the full configuration.
std::vector<std::string> config_comments(const RunConfig& config);

/// CSV x,y,u of u_h on an m x m grid of cell centres of (0,1)^2.
std::string sample_solution(const Solution& solution, std::size_t m);

}  // namespace prdg
