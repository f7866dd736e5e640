#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "helpers.hpp"
#include "prdg/analysis.hpp"
#include "prdg/cases.hpp"

using namespace prdg;

namespace {

const ScalarField kZero = [](const Point&) { return 0.0; };
const VectorField kZeroGrad = [](const Point&) { return Eigen::Vector2d(0, 0); };

ProblemSpec constant_problem(double nu, Eigen::Vector2d b, double c) {
  ProblemSpec s;
  s.nu = nu;
  s.b = [b](const Point&) { return b; };
  s.c = [c](const Point&) { return c; };
  s.div_b = [](const Point&) { return 0.0; };
  s.f = kZero;
  s.g = kZero;
  return s;
}

}  // namespace

TEST_SUITE("analysis") {

TEST_CASE("L2 error of the zero field") {
  auto ex = make_example(ExampleId::ex1a, ExampleParams{1.0});
  auto mesh = triangulate_unit_square(8);
  DiscreteForms forms(mesh, ex.spec, FormSettings{6.0, 8, 8});
  ReconstructionSpace space(mesh, build_all_patches(mesh, 4), 1);
  std::vector<double> zeros(mesh.num_elements(), 0.0);
  CHECK(l2_error(ex.spec.u, reconstructed_function(space, zeros), forms) == doctest::Approx(0.5).epsilon(1e-10));
  auto exact = smooth_function(ex.spec.u, ex.spec.grad_u);
  CHECK(l2_error(ex.spec.u, exact, forms) == 0.0);
  CHECK(dg_energy_error(ex.spec.u, ex.spec.grad_u, exact, forms, space) == 0.0);
  CHECK(supg_error(ex.spec.u, ex.spec.grad_u, exact, forms, space) == 0.0);
}

TEST_CASE("polynomial solutions are measured as exact") {
  std::mt19937_64 rng(2);
  auto p = testing::random_polynomial(2, rng);
  auto mesh = voronoi_mesh(VoronoiOptions{50, 20, 2});
  ReconstructionSpace space(mesh, build_all_patches(mesh, 9), 2);
  DiscreteForms forms(mesh, constant_problem(1.0, {1, 0.5}, 1), FormSettings{18.0, 6, 6});
  auto ph = polynomial_function(space, apply_Pk([&](const Point& x) { return p(x); }, space));
  ScalarField u = [&](const Point& x) { return p(x); };
  CHECK(l2_error(u, ph, forms) <= 1e-10);
}

TEST_CASE("DG norm of a piecewise constant on two squares") {
  // v = 0 on the left square, 1 on the right; nu = 1, b = 0, c = 1 so rbar + b0 = 1
  auto mesh = testing::two_squares();
  DiscreteForms forms(mesh, constant_problem(1.0, {0, 0}, 1.0), FormSettings{1.0, 2, 2});
  ReconstructionSpace space(mesh, build_all_patches(mesh, 1), 0);
  PiecewiseFunction v{[](Index e, const Point&) { return e == 1 ? 1.0 : 0.0; },
                      [](Index, const Point&) { return Eigen::Vector2d(0, 0); }};
  auto parts = energy_error(kZero, kZeroGrad, v, forms, space);
  CHECK(parts.gradient == 0.0);
  CHECK(parts.upwind == 0.0);
  CHECK(parts.streamline == 0.0);
  CHECK(parts.reaction == doctest::Approx(0.5));
  // interior edge: 1/1 * 1; boundary edges of the right square: 1/0.5 * 0.5 twice and 1/1 * 1
  CHECK(parts.penalty == doctest::Approx(4.0));
  CHECK(parts.energy() == doctest::Approx(4.5));
  CHECK(dg_energy_error(kZero, kZeroGrad, v, forms, space) == doctest::Approx(std::sqrt(4.5)));
}

TEST_CASE("continuous error has no jump contributions") {
  auto mesh = voronoi_mesh(VoronoiOptions{30, 5, 5});
  DiscreteForms forms(mesh, constant_problem(0.1, {1, 2}, 1.0), FormSettings{6.0, 4, 4});
  ReconstructionSpace space(mesh, build_all_patches(mesh, 5), 1);
  // vanishes on the boundary, so boundary jumps are zero too
  auto v = smooth_function([](const Point& x) { return std::sin(std::numbers::pi * x.x()) * x.y() * (1 - x.y()); },
                           [](const Point& x) {
                             const double pi = std::numbers::pi;
                             return Eigen::Vector2d(pi * std::cos(pi * x.x()) * x.y() * (1 - x.y()),
                                                    std::sin(pi * x.x()) * (1 - 2 * x.y()));
                           });
  auto parts = energy_error(kZero, kZeroGrad, v, forms, space);
  CHECK(parts.penalty <= 1e-28);
  CHECK(parts.upwind <= 1e-28);
  CHECK(parts.gradient > 0);
}

TEST_CASE("streamline part for v = x and b = (1, 0)") {
  auto mesh = voronoi_mesh(VoronoiOptions{40, 10, 3});
  DiscreteForms forms(mesh, constant_problem(1e-6, {1, 0}, 1.0), FormSettings{6.0, 4, 4});
  ReconstructionSpace space(mesh, build_all_patches(mesh, 5), 1);
  PiecewiseFunction v = smooth_function([](const Point& x) { return x.x(); },
                                        [](const Point&) { return Eigen::Vector2d(1, 0); });
  auto parts = energy_error(kZero, kZeroGrad, v, forms, space);
  double expected = 0.0;
  for (Index e = 0; e < mesh.num_elements(); ++e) expected += mesh.diameter(e) * mesh.area(e);
  CHECK(parts.streamline == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("reaction bound and velocity scale") {
  auto ex = make_example(ExampleId::ex1a, ExampleParams{1.0});
  auto mesh = voronoi_mesh(VoronoiOptions{40, 10, 3});
  DiscreteForms forms(mesh, ex.spec, FormSettings{6.0, 4, 4});
  const double b0 = velocity_scale(forms);
  CHECK(b0 > 0);
  CHECK(max_velocity(forms) <= std::sqrt(8.0) + 1e-12);
  CHECK(b0 == doctest::Approx(max_velocity(forms) / std::sqrt(2.0)));
  auto rbar = reaction_lower_bound(forms);
  for (Index e = 0; e < mesh.num_elements(); ++e) {
    CHECK(rbar[e] + b0 > 0);
    for (const auto& q : forms.quadrature().elements[e]) CHECK(rbar[e] <= 1 + 2 * q.x.x() * q.x.y() + 1e-12);
  }
}

TEST_CASE("norm ordering and triangle inequality") {
  auto ex = make_example(ExampleId::ex1b, ExampleParams{0.01});
  auto mesh = voronoi_mesh(VoronoiOptions{60, 10, 6});
  ReconstructionSpace space(mesh, build_all_patches(mesh, 9), 2);
  DiscreteForms forms(mesh, ex.spec, FormSettings{18.0, 6, 6});
  std::mt19937_64 rng(12);
  std::normal_distribution<double> n01;
  auto random_dofs = [&] {
    std::vector<double> d(mesh.num_elements());
    for (double& x : d) x = n01(rng);
    return d;
  };
  for (int t = 0; t < 5; ++t) {
    auto a = random_dofs(), b = random_dofs(), s = a;
    for (std::size_t i = 0; i < s.size(); ++i) s[i] += b[i];
    auto fa = reconstructed_function(space, a), fb = reconstructed_function(space, b),
         fs = reconstructed_function(space, s);
    auto pa = energy_error(kZero, kZeroGrad, fa, forms, space);
    CHECK(pa.supg() >= pa.energy());
    CHECK(pa.energy() >= pa.diffusive());
    auto norms = [&](const PiecewiseFunction& f) {
      return std::array<double, 3>{l2_error(kZero, f, forms), dg_energy_error(kZero, kZeroGrad, f, forms, space),
                                   supg_error(kZero, kZeroGrad, f, forms, space)};
    };
    auto na = norms(fa), nb = norms(fb), ns = norms(fs);
    for (int i = 0; i < 3; ++i) CHECK(ns[i] <= na[i] + nb[i] + 1e-12);
  }
}

TEST_CASE("convection dominance count") {
  auto mesh = triangulate_unit_square(4);
  DiscreteForms diffusive(mesh, constant_problem(1.0, {1, 0}, 1.0), FormSettings{});
  DiscreteForms convective(mesh, constant_problem(1e-9, {1, 0}, 1.0), FormSettings{});
  CHECK(convection_dominance_violations(diffusive) == mesh.num_elements());
  CHECK(convection_dominance_violations(convective) == 0);
}

TEST_CASE("observed rates") {
  CHECK(*observed_rate(1e-2, 2.5e-3, 0.1, 0.05) == doctest::Approx(2.0));
  CHECK(*observed_rate(8e-4, 1e-4, 0.1, 0.05) == doctest::Approx(3.0));
  CHECK(*observed_rate(1e-3, 1e-3, 0.1, 0.05) == 0.0);
  CHECK_FALSE(observed_rate(0.0, 1e-3, 0.1, 0.05).has_value());
  CHECK_FALSE(observed_rate(1e-3, 1e-3, 0.1, 0.1).has_value());
  auto r = rates({1.0, 0.25, 0.0625}, {1.0, 0.5, 0.25});
  REQUIRE(r.size() == 2);
  CHECK(*r[0] == doctest::Approx(2.0));
  CHECK(*r[1] == doctest::Approx(2.0));
  // noisy data around slope 3
  CHECK(*fitted_rate({1.0, 0.13, 0.0155}, {1.0, 0.5, 0.25}) == doctest::Approx(3.0).epsilon(0.02));
  CHECK_FALSE(fitted_rate({1.0}, {1.0}).has_value());

  RunRecord tri{"ex1a", "tri", 1, 1.0, 32, 32, 0.35, 0, 0, 0};
  RunRecord poly{"ex1a", "poly", 1, 1.0, 100, 100, 0.2, 0, 0, 0};
  CHECK(rate_size(tri) == 0.35);
  CHECK(rate_size(poly) == doctest::Approx(0.1));
}

TEST_CASE("csv report") {
  std::vector<RunRecord> runs = {{"ex1a", "tri", 1, 1.0, 128, 128, 0.2, 1e-2, 1e-1, 1e-1},
                                 {"ex1a", "tri", 1, 1.0, 512, 512, 0.1, 2.5e-3, 5e-2, 5e-2}};
  auto csv = format_csv(runs, {"example=ex1a"});
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "# example=ex1a");
  std::getline(in, line);
  CHECK(line == "example,mesh,k,nu,ncells,dofs,h,l2,dg,supg,rate_l2,rate_dg,rate_supg");
  std::getline(in, line);
  CHECK(line.substr(line.size() - 3) == ",,,");
  std::getline(in, line);
  CHECK(line.rfind("ex1a,tri,1,1,512,512,0.1,0.0025,0.05,0.05,2,1,1", 0) == 0);
}

}  // TEST_SUITE
