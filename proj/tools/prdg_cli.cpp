// Command-line driver: convergence tables, solution samples and debug dumps.
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "prdg/driver.hpp"
#include "prdg/error.hpp"

namespace {

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw prdg::InvalidInput("cannot write " + path);
  out << text;
}

std::string samples_path(const std::string& out) {
  if (out.empty() || out == "-") return "-";
  std::filesystem::path p(out);
  return (p.parent_path() / (p.stem().string() + "_samples.csv")).string();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Patch-reconstruction DG solver for steady convection-diffusion-reaction problems"};

  std::string example = "ex1a", mesh = "tri", solver = "lu";
  std::string out, dump_matrix, dump_basis, mesh_file, write_mesh_path;
  int k = 1;
  double nu = 1.0, l1 = 0.5, l2 = 0.05;
  std::vector<std::size_t> cells, ns;
  std::optional<std::size_t> patch_size, lloyd, sample_grid;
  std::optional<double> sigma;
  std::optional<int> quad_order;
  std::uint64_t seed = 1;
  bool deterministic = false;

  app.add_option("--example", example, "ex1a, ex1b, ex2, ex3, ex4 or zero")
      ->check(CLI::IsMember({"ex1a", "ex1b", "ex2", "ex3", "ex4", "zero"}))
      ->capture_default_str();
  app.add_option("--mesh", mesh, "mesh family")->check(CLI::IsMember({"tri", "poly", "voronoi"}))->capture_default_str();
  app.add_option("--k", k, "reconstruction order")->check(CLI::Range(1, 8))->capture_default_str();
  app.add_option("--nu", nu, "diffusivity")->check(CLI::PositiveNumber)->capture_default_str();
  auto* cells_opt = app.add_option("--cells", cells, "cell counts for poly/voronoi meshes")->delimiter(',');
  auto* n_opt = app.add_option("--n", ns, "subdivisions per side for tri meshes")->delimiter(',');
  cells_opt->excludes(n_opt);
  app.add_option("--patch-size", patch_size, "patch size M (default from the reference table)");
  app.add_option("--sigma", sigma, "penalty parameter (default 3k(k+1))");
  app.add_option("--l1", l1, "ex2 layer location")->capture_default_str();
  app.add_option("--l2", l2, "ex2 layer width")->capture_default_str();
  app.add_option("--seed", seed, "seed for generated meshes")->capture_default_str();
  app.add_option("--lloyd", lloyd, "Lloyd iterations for generated meshes");
  app.add_option("--quad-order", quad_order, "quadrature order (default 2k+2)");
  app.add_flag("--deterministic", deterministic, "accepted for compatibility; runs are always deterministic");
  app.add_option("--solver", solver, "linear solver")->check(CLI::IsMember({"lu", "gmres"}))->capture_default_str();
  app.add_option("--out", out, "CSV output path (stdout when omitted)");
  app.add_option("--dump-matrix", dump_matrix, "MatrixMarket dump of the finest system matrix");
  app.add_option("--dump-basis", dump_basis, "CSV dump of the finest local shape-function coefficients");
  app.add_option("--sample-grid", sample_grid, "sample u_h on an m x m grid of the finest mesh")
      ->check(CLI::PositiveNumber);
  app.add_option("--mesh-file", mesh_file, "read the mesh from a file instead of generating one")
      ->check(CLI::ExistingFile)
      ->excludes(cells_opt)
      ->excludes(n_opt);
  app.add_option("--write-mesh", write_mesh_path, "write the finest mesh to a file");

  CLI11_PARSE(app, argc, argv);

  try {
    prdg::RunConfig config;
    config.example = prdg::parse_example(example);
    config.family = prdg::parse_mesh_family(mesh);
    config.k = k;
    config.params = {nu, l1, l2};
    config.patch_size = patch_size;
    config.sigma = sigma;
    config.quad_order = quad_order;
    config.seed = seed;
    config.lloyd = lloyd;
    config.solver = solver == "gmres" ? prdg::SolverKind::gmres : prdg::SolverKind::lu;

    std::vector<std::size_t> sizes = config.family == prdg::MeshFamily::triangulation ? ns : cells;
    if (sizes.empty() && (config.family == prdg::MeshFamily::triangulation ? !cells.empty() : !ns.empty()))
      throw prdg::InvalidInput(config.family == prdg::MeshFamily::triangulation ? "tri meshes take --n"
                                                                                 : "poly/voronoi meshes take --cells");
    if (sizes.empty() && mesh_file.empty()) sizes = {config.family == prdg::MeshFamily::triangulation ? 8u : 160u};

    std::vector<prdg::PolyMesh> meshes;
    if (!mesh_file.empty()) {
      meshes.push_back(prdg::read_mesh(mesh_file));
    } else {
      for (std::size_t s : sizes) meshes.push_back(prdg::make_mesh(config.family, s, config.seed, config.resolved_lloyd()));
    }

    std::vector<prdg::RunRecord> records;
    for (std::size_t i = 0; i < meshes.size(); ++i) {
      const bool finest = i + 1 == meshes.size();
      prdg::Solution s = prdg::solve_problem(config, std::move(meshes[i]));
      records.push_back(prdg::measure(config, s));
      if (const auto bad = prdg::convection_dominance_violations(*s.forms); bad > 0 && s.problem.spec.has_exact())
        std::cerr << "warning: " << bad << " of " << s.mesh->num_elements()
                  << " elements violate nu < h_K |b|_K / 2; SUPG column reported anyway\n";
      if (const auto mixed = s.forms->mixed_sign_edges(); mixed > 0)
        std::cerr << "warning: b.n changes sign on " << mixed << " boundary edges\n";
      if (!finest) continue;
      if (!dump_matrix.empty()) prdg::write_matrix_market(s.system.matrix, dump_matrix);
      if (!dump_basis.empty()) {
        std::ofstream b(dump_basis);
        if (!b) throw prdg::InvalidInput("cannot write " + dump_basis);
        s.space->dump_csv(b);
      }
      if (!write_mesh_path.empty()) prdg::write_mesh(*s.mesh, write_mesh_path);
      if (sample_grid) write_text(samples_path(out), prdg::sample_solution(s, *sample_grid));
    }
    write_text(out, prdg::format_csv(records, prdg::config_comments(config)));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return EXIT_FAILURE;
  }
  return EXIT_SUCCESS;
}
