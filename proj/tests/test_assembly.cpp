#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>

#include <Eigen/IterativeLinearSolvers>

#include "helpers.hpp"
#include "prdg/assembly.hpp"
#include "prdg/cases.hpp"
#include "prdg/error.hpp"

using namespace prdg;

namespace {

ProblemSpec linear_problem() {
  // u = x + y with b = (1, 1), c = 1, nu = 1: f = b . grad u + c u
  ProblemSpec s;
  s.nu = 1.0;
  s.b = [](const Point&) { return Eigen::Vector2d(1, 1); };
  s.c = [](const Point&) { return 1.0; };
  s.div_b = [](const Point&) { return 0.0; };
  s.f = [](const Point& x) { return 2.0 + x.x() + x.y(); };
  s.g = [](const Point& x) { return x.x() + x.y(); };
  return s;
}

SparseSystem from_dense(const Eigen::MatrixXd& A, const Eigen::VectorXd& b) {
  SparseSystem sys;
  sys.matrix = A.sparseView();
  sys.rhs = b;
  return sys;
}

}  // namespace

TEST_SUITE("assembly") {

TEST_CASE("zero data gives the zero solution") {
  auto ex = make_example(ExampleId::zero, ExampleParams{1.0});
  auto mesh = voronoi_mesh(VoronoiOptions{40, 10, 1});
  ReconstructionSpace space(mesh, build_all_patches(mesh, 9), 2);
  DiscreteForms forms(mesh, ex.spec, FormSettings{18.0, 6, 6});
  auto sys = assemble(space, forms);
  CHECK(sys.rhs.norm() == 0.0);
  auto res = solve(sys);
  CHECK(res.dofs.norm() == 0.0);
  CHECK(res.relative_residual == 0.0);
}

TEST_CASE("sparsity pattern equals the brute-force overlap") {
  for (auto [family, k] : {std::pair{0, 1}, std::pair{1, 2}, std::pair{2, 3}}) {
    PolyMesh mesh = family == 0 ? triangulate_unit_square(6) : voronoi_mesh(VoronoiOptions{120, family == 1 ? 100u : 2u, 3});
    const auto fam = family == 0 ? MeshFamily::triangulation : family == 1 ? MeshFamily::polygonal : MeshFamily::voronoi;
    ReconstructionSpace space(mesh, build_all_patches(mesh, *default_patch_size(fam, k)), k);
    const std::size_t n = mesh.num_elements();
    std::vector<std::set<Index>> oracle(n);
    auto members = [&](Index e) { return space.local(e).patch.members; };
    for (Index e = 0; e < n; ++e)
      for (Index i : members(e))
        for (Index j : members(e)) oracle[i].insert(j);
    for (Index a = 0; a < n; ++a)
      for (Index b : mesh.neighbors(a)) {
        auto u = members(a);
        auto v = members(b);
        u.insert(u.end(), v.begin(), v.end());
        for (Index i : u)
          for (Index j : u) oracle[i].insert(j);
      }
    auto pattern = sparsity_pattern(space);
    for (Index i = 0; i < n; ++i) CHECK(std::vector<Index>(oracle[i].begin(), oracle[i].end()) == pattern[i]);

    auto ex = make_example(ExampleId::ex1a, ExampleParams{1.0});
    DiscreteForms forms(mesh, ex.spec, FormSettings{default_penalty(k), 2 * k + 2, 2 * k + 2});
    auto sys = assemble(space, forms);
    CHECK(sys.matrix.rows() == static_cast<Eigen::Index>(n));
    CHECK(sys.matrix.cols() == static_cast<Eigen::Index>(n));
    std::size_t nnz = 0;
    for (const auto& r : pattern) nnz += r.size();
    CHECK(static_cast<std::size_t>(sys.matrix.nonZeros()) == nnz);
  }
}

TEST_CASE("assembled entries are A_h(phi_j, phi_i)") {
  auto ex = make_example(ExampleId::ex1b, ExampleParams{0.2});
  auto mesh = voronoi_mesh(VoronoiOptions{25, 30, 7});
  ReconstructionSpace space(mesh, build_all_patches(mesh, 9), 2);
  DiscreteForms forms(mesh, ex.spec, FormSettings{18.0, 6, 6});
  auto sys = assemble(space, forms);
  auto diff = assemble(space, forms, FormPart::diffusion);
  Eigen::MatrixXd A(sys.matrix), D(diff.matrix);
  const std::size_t n = mesh.num_elements();
  auto phi = [&](Index i) {
    std::vector<double> e(n, 0.0);
    e[i] = 1;
    return reconstructed_function(space, e);
  };
  for (Index i = 0; i < n; ++i) {
    const auto wi = phi(i);
    CHECK(sys.rhs[i] == doctest::Approx(forms.linear(wi)).epsilon(1e-11).scale(1.0));
    for (Index j = 0; j < n; ++j) {
      const auto vj = phi(j);
      CHECK(A(i, j) == doctest::Approx(forms.bilinear(vj, wi)).epsilon(1e-11).scale(1.0));
      CHECK(D(i, j) == doctest::Approx(forms.diffusion(vj, wi)).epsilon(1e-11).scale(1.0));
    }
  }
  CHECK((D - D.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * D.cwiseAbs().maxCoeff());
}

TEST_CASE("dense Phi table gives the same matrix") {
  auto ex = make_example(ExampleId::ex1a, ExampleParams{1.0});
  auto mesh = triangulate_unit_square(3);
  ReconstructionSpace space(mesh, build_all_patches(mesh, 4), 1);
  DiscreteForms forms(mesh, ex.spec, FormSettings{6.0, 4, 4});
  Eigen::MatrixXd A(assemble(space, forms).matrix);
  const auto table = space.dense_phi();
  const std::size_t n = mesh.num_elements();
  auto as_function = [&](Index i) {
    std::vector<Eigen::VectorXd> coeffs(n);
    for (Index e = 0; e < n; ++e)
      coeffs[e] = table[i][e].size() ? table[i][e] : Eigen::VectorXd::Zero(space.local(e).basis.size());
    return polynomial_function(space, coeffs);
  };
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      CHECK(A(i, j) == doctest::Approx(forms.bilinear(as_function(j), as_function(i))).epsilon(1e-12).scale(1.0));
}

TEST_CASE("linear solutions are reproduced") {
  auto s = linear_problem();
  for (int family = 0; family < 2; ++family) {
    PolyMesh mesh = family == 0 ? triangulate_unit_square(5) : voronoi_mesh(VoronoiOptions{70, 20, 9});
    ReconstructionSpace space(mesh, build_all_patches(mesh, family == 0 ? 4 : 5), 1);
    DiscreteForms forms(mesh, s, FormSettings{6.0, 4, 4});
    auto res = solve(assemble(space, forms));
    for (Index e = 0; e < mesh.num_elements(); ++e)
      CHECK(std::abs(res.dofs[e] - s.g(mesh.barycenter(e))) <= 1e-8);
  }
}

TEST_CASE("diffusion system agrees with conjugate gradients") {
  ProblemSpec s = linear_problem();
  s.f = [](const Point& x) { return std::sin(3 * x.x()) + x.y(); };
  auto mesh = voronoi_mesh(VoronoiOptions{90, 40, 4});
  ReconstructionSpace space(mesh, build_all_patches(mesh, 9), 2);
  DiscreteForms forms(mesh, s, FormSettings{18.0, 6, 6});
  auto sys = assemble(space, forms, FormPart::diffusion);
  Eigen::SparseMatrix<double> A = sys.matrix;
  Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper> cg;
  cg.setTolerance(1e-14);
  cg.setMaxIterations(10000);
  cg.compute(A);
  Eigen::VectorXd ref = cg.solve(sys.rhs);
  REQUIRE(cg.info() == Eigen::Success);
  auto res = solve(sys);
  CHECK((res.dofs - ref).norm() <= 1e-9 * ref.norm());
  auto it = solve(sys, SolveOptions{SolverKind::gmres});
  CHECK((it.dofs - ref).norm() <= 1e-8 * ref.norm());
}

TEST_CASE("solver on small dense systems") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n01;
  Eigen::MatrixXd A(50, 50);
  for (int i = 0; i < 50; ++i)
    for (int j = 0; j < 50; ++j) A(i, j) = n01(rng);
  A.diagonal().array() += 20;
  Eigen::VectorXd b(50);
  for (int i = 0; i < 50; ++i) b[i] = n01(rng);
  Eigen::VectorXd ref = A.fullPivLu().solve(b);
  auto res = solve(from_dense(A, b));
  CHECK((res.dofs - ref).norm() <= 1e-12 * ref.norm());
  CHECK(res.relative_residual <= 1e-14);

  auto one = solve(from_dense(Eigen::MatrixXd::Constant(1, 1, 4.0), Eigen::VectorXd::Constant(1, 2.0)));
  CHECK(one.dofs[0] == doctest::Approx(0.5));

  Eigen::MatrixXd singular = Eigen::MatrixXd::Zero(3, 3);
  singular(0, 0) = 1;
  singular(1, 1) = 1;
  CHECK_THROWS_AS(solve(from_dense(singular, Eigen::VectorXd::Ones(3))), SolverError);
}

TEST_CASE("matrix market dump") {
  Eigen::MatrixXd A(2, 2);
  A << 1, 0, -2.5, 3;
  SparseMatrix S = A.sparseView();
  auto path = std::filesystem::temp_directory_path() / "prdg_test_matrix.mtx";
  write_matrix_market(S, path);
  std::ifstream in(path);
  std::string header, size;
  std::getline(in, header);
  std::getline(in, size);
  CHECK(header == "%%MatrixMarket matrix coordinate real general");
  CHECK(size == "2 2 3");
  int r, c;
  double v, sum = 0;
  while (in >> r >> c >> v) sum += v * r * c;
  CHECK(sum == doctest::Approx(1 - 5 + 12));
  std::filesystem::remove(path);
}

TEST_CASE("consistency error decreases under refinement") {
  auto ex = make_example(ExampleId::ex1a, ExampleParams{1.0});
  std::vector<double> worst;
  for (std::size_t n : {4u, 8u, 16u}) {
    auto mesh = triangulate_unit_square(n);
    ReconstructionSpace space(mesh, build_all_patches(mesh, 7), 2);
    DiscreteForms forms(mesh, ex.spec, FormSettings{18.0, 6, 6});
    auto sys = assemble(space, forms);
    // barycenter samples of u versus the discrete solution
    auto u = sample_barycenters(mesh, ex.spec.u);
    auto res = solve(sys);
    Eigen::Map<const Eigen::VectorXd> uv(u.data(), static_cast<Eigen::Index>(u.size()));
    worst.push_back((res.dofs - uv).cwiseAbs().maxCoeff());
  }
  CHECK(worst[1] < worst[0]);
  CHECK(worst[2] < worst[1]);
}

}  // TEST_SUITE
