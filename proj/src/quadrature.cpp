#include "prdg/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "prdg/error.hpp"

namespace prdg {

namespace {

// P_n(x) and P_n'(x) by the three-term recurrence
std::pair<double, double> legendre(int n, double x) {
  double p0 = 1.0, p1 = x;
  for (int k = 2; k <= n; ++k) {
    double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  return {p1, n * (x * p1 - p0) / (x * x - 1.0)};
}

GaussLegendre compute_gauss_legendre(int n) {
  GaussLegendre gl;
  gl.nodes.resize(n);
  gl.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      auto [p, dp] = legendre(n, x);
      double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double dp = legendre(n, x).second;
    // mapped from [-1,1] to [0,1], ascending
    gl.nodes[n - 1 - i] = 0.5 * (x + 1.0);
    gl.weights[n - 1 - i] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
  return gl;
}

}  // namespace

GaussLegendre gauss_legendre(int n) {
  if (n < 1) throw InvalidInput("gauss_legendre: n must be positive");
  static std::mutex mutex;
  static std::map<int, GaussLegendre> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_gauss_legendre(n)).first;
  return it->second;
}

QuadRule triangle_quadrature(const Point& a, const Point& b, const Point& c, int order) {
  if (order < 0) throw InvalidInput("quadrature order must be non-negative");
  // x = s, y = t(1-s) on the reference triangle; the Jacobian (1-s) raises the s-degree by one
  const int n = (order + 2) / 2 + ((order + 2) % 2);
  const auto gl = gauss_legendre(std::max(1, n));
  const double area2 = std::abs((b - a).x() * (c - a).y() - (b - a).y() * (c - a).x());
  QuadRule rule;
  rule.reserve(gl.nodes.size() * gl.nodes.size());
  for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
    double s = gl.nodes[i];
    for (std::size_t j = 0; j < gl.nodes.size(); ++j) {
      double t = gl.nodes[j];
      double xi = s, eta = t * (1.0 - s);
      Point x = a + xi * (b - a) + eta * (c - a);
      rule.push_back({x, gl.weights[i] * gl.weights[j] * (1.0 - s) * area2});
    }
  }
  return rule;
}

QuadRule element_quadrature(const PolyMesh& mesh, const SubTriangulation& subtri, Index element, int order) {
  QuadRule rule;
  for (const auto& t : subtri.triangles[element]) {
    auto tr = triangle_quadrature(mesh.vertex(t[0]), mesh.vertex(t[1]), mesh.vertex(t[2]), order);
    rule.insert(rule.end(), tr.begin(), tr.end());
  }
  return rule;
}

QuadRule segment_quadrature(const Point& a, const Point& b, int order) {
  if (order < 0) throw InvalidInput("quadrature order must be non-negative");
  const auto gl = gauss_legendre(std::max(1, order / 2 + 1));
  const double len = (b - a).norm();
  QuadRule rule;
  rule.reserve(gl.nodes.size());
  for (std::size_t i = 0; i < gl.nodes.size(); ++i) rule.push_back({a + gl.nodes[i] * (b - a), gl.weights[i] * len});
  return rule;
}

QuadRule edge_quadrature(const PolyMesh& mesh, const Edge& edge, int order) {
  return segment_quadrature(mesh.vertex(edge.vertices[0]), mesh.vertex(edge.vertices[1]), order);
}

MeshQuadrature::MeshQuadrature(const PolyMesh& mesh, int volume_order, int edge_order)
    : volume_order(volume_order), edge_order(edge_order) {
  const auto subtri = subtriangulate(mesh);
  elements.reserve(mesh.num_elements());
  for (Index e = 0; e < mesh.num_elements(); ++e) elements.push_back(element_quadrature(mesh, subtri, e, volume_order));
  edges.reserve(mesh.num_edges());
  for (const auto& edge : mesh.edges()) this->edges.push_back(edge_quadrature(mesh, edge, edge_order));
}

}  // namespace prdg
