#include "prdg/driver.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "prdg/error.hpp"

namespace prdg {

std::size_t default_lloyd_iterations(MeshFamily family) {
  switch (family) {
    case MeshFamily::polygonal: return 100;
    case MeshFamily::voronoi: return 2;
    case MeshFamily::triangulation: return 0;
  }
  return 0;
}

std::size_t RunConfig::resolved_patch_size() const {
  if (patch_size) return *patch_size;
  auto M = default_patch_size(family, k);
  if (!M) throw InvalidInput("no default patch size for k = " + std::to_string(k) + "; pass one explicitly");
  return *M;
}

double RunConfig::resolved_sigma() const { return sigma ? *sigma : default_penalty(k); }

int RunConfig::resolved_quad_order() const { return quad_order ? *quad_order : 2 * k + 2; }

std::size_t RunConfig::resolved_lloyd() const { return lloyd ? *lloyd : default_lloyd_iterations(family); }

PolyMesh make_mesh(MeshFamily family, std::size_t size, std::uint64_t seed, std::size_t lloyd) {
  if (size == 0) throw InvalidInput("mesh size must be positive");
  if (family == MeshFamily::triangulation) return triangulate_unit_square(size);
  return voronoi_mesh(VoronoiOptions{size, lloyd, seed});
}

std::vector<double> Solution::dofs() const {
  return {result.dofs.data(), result.dofs.data() + result.dofs.size()};
}

PiecewiseFunction Solution::uh() const { return reconstructed_function(*space, dofs()); }

double Solution::value(const Point& x) const {
  const auto d = dofs();
  return space->evaluate(d, x);
}

Solution solve_problem(const RunConfig& config, PolyMesh mesh) {
  if (config.k < 1) throw InvalidInput("k must be at least 1");
  const std::size_t M = config.resolved_patch_size();
  if (M < num_monomials(config.k))
    throw InvalidInput("patch size " + std::to_string(M) + " is below dim P_k = " +
                       std::to_string(num_monomials(config.k)));
  const int q = config.resolved_quad_order();
  if (q < 0) throw InvalidInput("quadrature order must be non-negative");

  Solution s;
  s.mesh = std::make_unique<PolyMesh>(std::move(mesh));
  s.problem = make_example(config.example, config.params);
  s.space = std::make_unique<ReconstructionSpace>(*s.mesh, build_all_patches(*s.mesh, M), config.k);
  s.forms = std::make_unique<DiscreteForms>(*s.mesh, s.problem.spec, FormSettings{config.resolved_sigma(), q, q});
  s.system = assemble(*s.space, *s.forms);
  s.result = solve(s.system, SolveOptions{config.solver});
  return s;
}

RunRecord measure(const RunConfig& config, const Solution& solution) {
  RunRecord r;
  r.example = std::string(to_string(config.example));
  r.mesh = std::string(to_string(config.family));
  r.k = config.k;
  r.nu = config.params.nu;
  r.ncells = solution.mesh->num_elements();
  r.dofs = solution.space->num_dofs();
  r.h = solution.mesh->h();
  const ProblemSpec& spec = solution.forms->spec();
  if (!spec.has_exact()) return r;
  const PiecewiseFunction uh = solution.uh();
  r.l2 = l2_error(spec.u, uh, *solution.forms);
  const EnergyParts parts = energy_error(spec.u, spec.grad_u, uh, *solution.forms, *solution.space);
  r.dg = std::sqrt(parts.energy());
  r.supg = std::sqrt(parts.supg());
  return r;
}

std::vector<RunRecord> run_convergence(const RunConfig& config, const std::vector<std::size_t>& sizes) {
  std::vector<RunRecord> out;
  for (std::size_t size : sizes) {
    Solution s = solve_problem(config, make_mesh(config.family, size, config.seed, config.resolved_lloyd()));
    out.push_back(measure(config, s));
  }
  return out;
}

std::vector<std::string> config_comments(const RunConfig& config) {
  std::ostringstream line;
  line << std::setprecision(17);
  line << "example=" << to_string(config.example) << " mesh=" << to_string(config.family) << " k=" << config.k
       << " M=" << config.resolved_patch_size() << " sigma=" << config.resolved_sigma() << " nu=" << config.params.nu
       << " quad_order=" << config.resolved_quad_order() << " seed=" << config.seed
       << " lloyd=" << config.resolved_lloyd() << " solver=" << (config.solver == SolverKind::lu ? "lu" : "gmres");
  if (config.example == ExampleId::ex2) line << " l1=" << config.params.l1 << " l2=" << config.params.l2;
  return {line.str()};
}

std::string sample_solution(const Solution& solution, std::size_t m) {
  if (m == 0) throw InvalidInput("sample grid must be positive");
  const auto d = solution.dofs();
  std::ostringstream out;
  out << "x,y,u\n" << std::setprecision(12);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < m; ++i) {
      const Point x((i + 0.5) / m, (j + 0.5) / m);
      out << x.x() << ',' << x.y() << ',' << solution.space->evaluate(d, x) << '\n';
    }
  return out.str();
}

}  // namespace prdg
