#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "prdg/quadrature.hpp"

using namespace prdg;

namespace {

double factorial(int n) { return std::tgamma(n + 1.0); }

double binomial(int n, int k) { return factorial(n) / (factorial(k) * factorial(n - k)); }

// Exact integral of x^a y^b over the triangle (p0, p1, p2): with x = x0 + s dx1 + t dx2 the
// integrand expands into reference monomials s^i t^j whose integrals are i! j! / (i + j + 2)!.
double exact_triangle_monomial(const Point& p0, const Point& p1, const Point& p2, int a, int b) {
  const Point d1 = p1 - p0, d2 = p2 - p0;
  const double jac = std::abs(d1.x() * d2.y() - d1.y() * d2.x());
  double total = 0.0;
  // x^a = sum over (a0 + a1 + a2 = a) of trinomial * x0^a0 (dx1 s)^a1 (dx2 t)^a2, same for y^b
  for (int a1 = 0; a1 <= a; ++a1)
    for (int a2 = 0; a1 + a2 <= a; ++a2)
      for (int b1 = 0; b1 <= b; ++b1)
        for (int b2 = 0; b1 + b2 <= b; ++b2) {
          const int a0 = a - a1 - a2, b0 = b - b1 - b2;
          const double ca = binomial(a, a1) * binomial(a - a1, a2);
          const double cb = binomial(b, b1) * binomial(b - b1, b2);
          const double coef = ca * cb * std::pow(p0.x(), a0) * std::pow(d1.x(), a1) * std::pow(d2.x(), a2) *
                              std::pow(p0.y(), b0) * std::pow(d1.y(), b1) * std::pow(d2.y(), b2);
          const int i = a1 + b1, j = a2 + b2;
          total += coef * factorial(i) * factorial(j) / factorial(i + j + 2);
        }
  return jac * total;
}

double integrate(const QuadRule& rule, int a, int b) {
  double s = 0.0;
  for (const auto& q : rule) s += q.w * std::pow(q.x.x(), a) * std::pow(q.x.y(), b);
  return s;
}

}  // namespace

TEST_SUITE("quadrature") {

TEST_CASE("gauss-legendre on [0,1]") {
  for (int n = 1; n <= 12; ++n) {
    auto gl = gauss_legendre(n);
    REQUIRE(gl.nodes.size() == static_cast<std::size_t>(n));
    double sum = 0.0;
    for (double w : gl.weights) {
      CHECK(w > 0);
      sum += w;
    }
    CHECK(std::abs(sum - 1.0) <= 1e-14);
    for (int d = 0; d <= 2 * n - 1; ++d) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += gl.weights[i] * std::pow(gl.nodes[i], d);
      CHECK(s == doctest::Approx(1.0 / (d + 1)).epsilon(1e-13));
    }
  }
}

TEST_CASE("element rules on the unit square") {
  std::vector<Point> v = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  PolyMesh mesh(v, {{0, 1, 2, 3}});
  auto sub = subtriangulate(mesh);
  auto rule = element_quadrature(mesh, sub, 0, 5);
  CHECK(integrate(rule, 0, 0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(integrate(rule, 1, 0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(integrate(rule, 2, 3) == doctest::Approx(1.0 / 12).epsilon(1e-14));
}

TEST_CASE("edge rules") {
  auto unit = segment_quadrature(Point(0, 0), Point(1, 0), 2);
  double len = 0.0, x2 = 0.0;
  for (const auto& q : unit) {
    len += q.w;
    x2 += q.w * q.x.x() * q.x.x();
  }
  CHECK(len == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(x2 == doctest::Approx(1.0 / 3).epsilon(1e-14));

  auto vertical = segment_quadrature(Point(0, 0), Point(0, 2), 3);
  double y3 = 0.0;
  for (const auto& q : vertical) y3 += q.w * std::pow(q.x.y(), 3);
  CHECK(y3 == doctest::Approx(4.0).epsilon(1e-14));

  auto mesh = voronoi_mesh(VoronoiOptions{30, 2, 1});
  for (const auto& e : mesh.edges()) {
    double s = 0.0;
    for (const auto& q : edge_quadrature(mesh, e, 4)) s += q.w;
    CHECK(s == doctest::Approx(e.length).epsilon(1e-14));
  }
}

TEST_CASE("triangle rules are exact on random triangles") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    Point a(u(rng), u(rng)), b(u(rng), u(rng)), c(u(rng), u(rng));
    if (std::abs((b - a).x() * (c - a).y() - (b - a).y() * (c - a).x()) < 1e-2) continue;
    for (int order = 0; order <= 8; ++order) {
      auto rule = triangle_quadrature(a, b, c, order);
      for (const auto& q : rule) CHECK(q.w > 0);
      for (int d = 0; d <= order; ++d)
        for (int j = 0; j <= d; ++j) {
          const double exact = exact_triangle_monomial(a, b, c, d - j, j);
          CHECK(integrate(rule, d - j, j) == doctest::Approx(exact).epsilon(1e-11).scale(1.0));
        }
    }
  }
}

TEST_CASE("polygon rules integrate products of degree-k polynomials") {
  auto mesh = voronoi_mesh(VoronoiOptions{40, 3, 8});
  auto sub = subtriangulate(mesh);
  std::mt19937_64 rng(5);
  for (int k = 1; k <= 3; ++k) {
    auto p = testing::random_polynomial(k, rng), q = testing::random_polynomial(k, rng);
    for (Index e = 0; e < mesh.num_elements(); ++e) {
      auto coarse = element_quadrature(mesh, sub, e, 2 * k);
      auto fine = element_quadrature(mesh, sub, e, 2 * k + 6);
      double s1 = 0.0, s2 = 0.0, area = 0.0;
      for (const auto& x : coarse) {
        s1 += x.w * p(x.x) * q(x.x);
        area += x.w;
      }
      for (const auto& x : fine) s2 += x.w * p(x.x) * q(x.x);
      CHECK(s1 == doctest::Approx(s2).epsilon(1e-12).scale(1.0));
      CHECK(area == doctest::Approx(mesh.area(e)).epsilon(1e-13));
    }
  }
}

TEST_CASE("mesh quadrature holds one rule per element and edge") {
  auto mesh = triangulate_unit_square(3);
  MeshQuadrature mq(mesh, 4, 5);
  CHECK(mq.elements.size() == mesh.num_elements());
  CHECK(mq.edges.size() == mesh.num_edges());
  double area = 0.0;
  for (const auto& r : mq.elements)
    for (const auto& q : r) area += q.w;
  CHECK(area == doctest::Approx(1.0).epsilon(1e-14));
}

}  // TEST_SUITE
