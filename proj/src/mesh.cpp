#include "prdg/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

#include "prdg/error.hpp"

namespace prdg {

namespace {

double cross(const Point& a, const Point& b) { return a.x() * b.y() - a.y() * b.x(); }

bool segments_intersect(const Point& p1, const Point& p2, const Point& q1, const Point& q2) {
  auto orient = [](const Point& a, const Point& b, const Point& c) {
    double v = cross(b - a, c - a);
    double scale = (b - a).norm() * (c - a).norm();
    if (std::abs(v) <= 1e-14 * scale) return 0;
    return v > 0 ? 1 : -1;
  };
  auto on_segment = [](const Point& a, const Point& b, const Point& p) {
    return std::min(a.x(), b.x()) - 1e-14 <= p.x() && p.x() <= std::max(a.x(), b.x()) + 1e-14 &&
           std::min(a.y(), b.y()) - 1e-14 <= p.y() && p.y() <= std::max(a.y(), b.y()) + 1e-14;
  };
  int o1 = orient(p1, p2, q1), o2 = orient(p1, p2, q2);
  int o3 = orient(q1, q2, p1), o4 = orient(q1, q2, p2);
  if (o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0) return true;
  if (o1 == 0 && on_segment(p1, p2, q1)) return true;
  if (o2 == 0 && on_segment(p1, p2, q2)) return true;
  if (o3 == 0 && on_segment(q1, q2, p1)) return true;
  if (o4 == 0 && on_segment(q1, q2, p2)) return true;
  return false;
}

}  // namespace

double signed_area(std::span<const Point> polygon) {
  double a = 0.0;
  for (std::size_t i = 0, n = polygon.size(); i < n; ++i)
    a += cross(polygon[i], polygon[(i + 1) % n]);
  return 0.5 * a;
}

Point polygon_centroid(std::span<const Point> polygon) {
  // shifted to the first vertex to limit cancellation
  const Point o = polygon[0];
  double a = 0.0;
  Point c = Point::Zero();
  for (std::size_t i = 0, n = polygon.size(); i < n; ++i) {
    Point p = polygon[i] - o, q = polygon[(i + 1) % n] - o;
    double w = cross(p, q);
    a += w;
    c += w * (p + q);
  }
  return o + c / (3.0 * a);
}

bool polygon_is_simple(std::span<const Point> polygon) {
  const std::size_t n = polygon.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    if ((polygon[i] - polygon[(i + 1) % n]).norm() == 0.0) return false;
    for (std::size_t j = i + 1; j < n; ++j) {
      // adjacent edges share a vertex by construction
      if (j == i + 1 || (i == 0 && j == n - 1)) continue;
      if (segments_intersect(polygon[i], polygon[(i + 1) % n], polygon[j], polygon[(j + 1) % n]))
        return false;
    }
  }
  return true;
}

bool point_in_polygon(std::span<const Point> polygon, const Point& p, double tol) {
  const std::size_t n = polygon.size();
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point& a = polygon[i];
    const Point& b = polygon[j];
    // on-edge test
    Point ab = b - a;
    double len2 = ab.squaredNorm();
    double t = len2 > 0 ? std::clamp((p - a).dot(ab) / len2, 0.0, 1.0) : 0.0;
    if ((a + t * ab - p).norm() <= tol) return true;
    if ((a.y() > p.y()) != (b.y() > p.y())) {
      double x = a.x() + (p.y() - a.y()) / (b.y() - a.y()) * (b.x() - a.x());
      if (p.x() < x) inside = !inside;
    }
  }
  return inside;
}

PolyMesh::PolyMesh(std::vector<Point> vertices, std::vector<std::vector<Index>> elements)
    : vertices_(std::move(vertices)), elements_(std::move(elements)) {
  if (elements_.empty()) throw InvalidInput("mesh has no elements");
  const std::size_t ne = elements_.size();
  barycenters_.resize(ne);
  diameters_.resize(ne);
  areas_.resize(ne);
  std::vector<Point> poly;
  for (Index e = 0; e < ne; ++e) {
    const auto& cyc = elements_[e];
    if (cyc.size() < 3) throw GeometryError("element " + std::to_string(e) + " has fewer than 3 vertices");
    poly.clear();
    for (Index v : cyc) {
      if (v >= vertices_.size())
        throw GeometryError("element " + std::to_string(e) + " references vertex " + std::to_string(v));
      poly.push_back(vertices_[v]);
    }
    if (!polygon_is_simple(poly)) throw GeometryError("element " + std::to_string(e) + " is not a simple polygon");
    double a = signed_area(poly);
    if (!(a > 0)) throw GeometryError("element " + std::to_string(e) + " is not counter-clockwise");
    areas_[e] = a;
    barycenters_[e] = polygon_centroid(poly);
    double d = 0.0;
    for (std::size_t i = 0; i < poly.size(); ++i)
      for (std::size_t j = i + 1; j < poly.size(); ++j) d = std::max(d, (poly[i] - poly[j]).norm());
    diameters_[e] = d;
    h_ = std::max(h_, d);
  }
  build_topology();
  build_locator();
}

void PolyMesh::build_topology() {
  std::map<std::pair<Index, Index>, Index> lookup;
  element_edges_.assign(elements_.size(), {});
  for (Index e = 0; e < elements_.size(); ++e) {
    const auto& cyc = elements_[e];
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      Index a = cyc[i], b = cyc[(i + 1) % cyc.size()];
      auto key = std::minmax(a, b);
      auto it = lookup.find(key);
      if (it == lookup.end()) {
        Edge edge;
        edge.vertices = {a, b};
        edge.left = e;
        Point d = vertices_[b] - vertices_[a];
        edge.length = d.norm();
        edge.normal = Point(d.y(), -d.x()) / edge.length;
        lookup.emplace(key, edges_.size());
        element_edges_[e].push_back(edges_.size());
        edges_.push_back(edge);
      } else {
        Edge& edge = edges_[it->second];
        if (edge.right != kBoundary || edge.left == e)
          throw GeometryError("edge (" + std::to_string(a) + "," + std::to_string(b) +
                              ") has more than two incident elements");
        if (edge.vertices[0] != b)
          throw GeometryError("elements " + std::to_string(edge.left) + " and " + std::to_string(e) +
                              " traverse a shared edge in the same direction");
        edge.right = e;
        element_edges_[e].push_back(it->second);
      }
    }
  }
}

void PolyMesh::build_locator() {
  Point lo = vertices_.front(), hi = vertices_.front();
  for (const auto& v : vertices_) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  domain_diameter_ = (hi - lo).norm();
  lo_ = lo;
  std::size_t n = std::max<std::size_t>(1, static_cast<std::size_t>(std::sqrt(double(elements_.size()))));
  nbx_ = nby_ = n;
  Point ext = (hi - lo).cwiseMax(Point::Constant(1e-300));
  cell_ = Point(ext.x() / nbx_, ext.y() / nby_);
  buckets_.assign(nbx_ * nby_, {});
  auto clampi = [](double v, std::size_t m) {
    return static_cast<std::size_t>(std::clamp(v, 0.0, double(m - 1)));
  };
  for (Index e = 0; e < elements_.size(); ++e) {
    Point blo = vertices_[elements_[e][0]], bhi = blo;
    for (Index v : elements_[e]) {
      blo = blo.cwiseMin(vertices_[v]);
      bhi = bhi.cwiseMax(vertices_[v]);
    }
    std::size_t i0 = clampi((blo.x() - lo_.x()) / cell_.x(), nbx_), i1 = clampi((bhi.x() - lo_.x()) / cell_.x(), nbx_);
    std::size_t j0 = clampi((blo.y() - lo_.y()) / cell_.y(), nby_), j1 = clampi((bhi.y() - lo_.y()) / cell_.y(), nby_);
    for (std::size_t j = j0; j <= j1; ++j)
      for (std::size_t i = i0; i <= i1; ++i) buckets_[j * nbx_ + i].push_back(e);
  }
}

std::optional<Index> PolyMesh::locate(const Point& p) const {
  double fx = (p.x() - lo_.x()) / cell_.x(), fy = (p.y() - lo_.y()) / cell_.y();
  if (fx < -1e-9 || fy < -1e-9 || fx > nbx_ + 1e-9 || fy > nby_ + 1e-9) return std::nullopt;
  auto i = std::min(nbx_ - 1, static_cast<std::size_t>(std::max(0.0, fx)));
  auto j = std::min(nby_ - 1, static_cast<std::size_t>(std::max(0.0, fy)));
  std::vector<Point> poly;
  for (Index e : buckets_[j * nbx_ + i]) {
    poly.clear();
    for (Index v : elements_[e]) poly.push_back(vertices_[v]);
    if (point_in_polygon(poly, p)) return e;
  }
  return std::nullopt;
}

double PolyMesh::total_area() const {
  double a = 0.0;
  for (double v : areas_) a += v;
  return a;
}

std::vector<Index> PolyMesh::neighbors(Index e) const {
  std::vector<Index> out;
  for (Index id : element_edges_[e]) {
    const Edge& edge = edges_[id];
    if (!edge.is_boundary()) out.push_back(edge.other(e));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::size_t PolyMesh::max_edges_per_element() const {
  std::size_t m = 0;
  for (const auto& ee : element_edges_) m = std::max(m, ee.size());
  return m;
}

PolyMesh triangulate_unit_square(std::size_t n) {
  if (n == 0) throw InvalidInput("triangulate_unit_square: n must be positive");
  std::vector<Point> verts;
  verts.reserve((n + 1) * (n + 1));
  for (std::size_t j = 0; j <= n; ++j)
    for (std::size_t i = 0; i <= n; ++i) verts.emplace_back(double(i) / n, double(j) / n);
  std::vector<std::vector<Index>> elems;
  elems.reserve(2 * n * n);
  auto id = [n](std::size_t i, std::size_t j) { return j * (n + 1) + i; };
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      elems.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      elems.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  return PolyMesh(std::move(verts), std::move(elems));
}

std::vector<std::array<Index, 3>> triangulate_polygon(std::span<const Point> polygon) {
  const std::size_t n = polygon.size();
  std::vector<std::array<Index, 3>> tris;
  if (n < 3) throw GeometryError("polygon has fewer than 3 vertices");
  if (n == 3) return {{0, 1, 2}};
  std::vector<Index> ring(n);
  for (Index i = 0; i < n; ++i) ring[i] = i;
  double scale = 0.0;
  for (const auto& p : polygon) scale = std::max(scale, p.cwiseAbs().maxCoeff());
  const double eps = 1e-14 * std::max(1.0, scale * scale);
  std::size_t guard = 0;
  std::size_t i = 0;
  while (ring.size() > 3) {
    if (++guard > 4 * n * n) throw GeometryError("ear clipping failed: polygon is not simple");
    std::size_t m = ring.size();
    Index a = ring[(i + m - 1) % m], b = ring[i % m], c = ring[(i + 1) % m];
    const Point &pa = polygon[a], &pb = polygon[b], &pc = polygon[c];
    bool ear = cross(pb - pa, pc - pb) > eps;
    for (std::size_t t = 0; ear && t < m; ++t) {
      Index q = ring[t];
      if (q == a || q == b || q == c) continue;
      const Point& p = polygon[q];
      if (cross(pb - pa, p - pa) >= -eps && cross(pc - pb, p - pb) >= -eps && cross(pa - pc, p - pc) >= -eps)
        ear = false;
    }
    if (ear) {
      tris.push_back({a, b, c});
      ring.erase(ring.begin() + static_cast<std::ptrdiff_t>(i % m));
      i = i % ring.size();
      guard = 0;
    } else {
      i = (i + 1) % m;
    }
  }
  tris.push_back({ring[0], ring[1], ring[2]});
  return tris;
}

SubTriangulation subtriangulate(const PolyMesh& mesh) {
  SubTriangulation st;
  st.triangles.resize(mesh.num_elements());
  std::vector<Point> poly;
  for (Index e = 0; e < mesh.num_elements(); ++e) {
    auto cyc = mesh.element(e);
    poly.clear();
    for (Index v : cyc) poly.push_back(mesh.vertex(v));
    for (const auto& t : triangulate_polygon(poly)) st.triangles[e].push_back({cyc[t[0]], cyc[t[1]], cyc[t[2]]});
  }
  return st;
}

}  // namespace prdg
