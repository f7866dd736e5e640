#pragma once

#include <vector>

#include "prdg/mesh.hpp"

namespace prdg {

struct QuadPoint {
  Point x;
  double w;
};

using QuadRule = std::vector<QuadPoint>;

/// Gauss-Legendre nodes and weights on [0,1], exact up to degree 2n-1.
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussLegendre gauss_legendre(int n);

/// Collapsed (Duffy) Gauss rule on the triangle (a,b,c), exact for total degree <= order.
QuadRule triangle_quadrature(const Point& a, const Point& b, const Point& c, int order);

/// Rule on element `element` through its sub-triangulation, exact for degree <= order.
QuadRule element_quadrature(const PolyMesh& mesh, const SubTriangulation& subtri, Index element, int order);

/// Gauss-Legendre rule on the segment of `edge`, exact for degree <= order.
QuadRule edge_quadrature(const PolyMesh& mesh, const Edge& edge, int order);
QuadRule segment_quadrature(const Point& a, const Point& b, int order);

/// Per-element and per-edge rules computed once for a mesh.
struct MeshQuadrature {
  MeshQuadrature(const PolyMesh& mesh, int volume_order, int edge_order);
  int volume_order;
  int edge_order;
  std::vector<QuadRule> elements;
  std::vector<QuadRule> edges;
};

}  // namespace prdg
