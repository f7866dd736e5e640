#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace prdg {

using Point = Eigen::Vector2d;
using Index = std::size_t;

inline constexpr Index kBoundary = std::numeric_limits<Index>::max();

struct Edge {
  /// Endpoints ordered as they appear in the CCW cycle of `left`.
  std::array<Index, 2> vertices;
  Index left = kBoundary;
  /// `kBoundary` for edges on the domain boundary.
  Index right = kBoundary;
  double length = 0.0;
  /// Unit normal pointing out of `left`.
  Point normal = Point::Zero();

  bool is_boundary() const { return right == kBoundary; }
  Index other(Index element) const { return element == left ? right : left; }
};

/// Immutable 2D polygonal mesh with full edge topology and per-element geometry.
class PolyMesh {
public:
  PolyMesh() = default;

  /// Builds topology and geometry from CCW vertex cycles; throws GeometryError
  /// on non-simple or clockwise polygons and on non-manifold edges.
  PolyMesh(std::vector<Point> vertices, std::vector<std::vector<Index>> elements);

  std::size_t num_vertices() const { return vertices_.size(); }
  std::size_t num_elements() const { return elements_.size(); }
  std::size_t num_edges() const { return edges_.size(); }

  std::span<const Point> vertices() const { return vertices_; }
  const Point& vertex(Index v) const { return vertices_[v]; }
  std::span<const Index> element(Index e) const { return elements_[e]; }
  const std::vector<std::vector<Index>>& elements() const { return elements_; }
  std::span<const Edge> edges() const { return edges_; }
  const Edge& edge(Index e) const { return edges_[e]; }
  /// Edge ids bounding element `e`, in cycle order.
  std::span<const Index> element_edges(Index e) const { return element_edges_[e]; }

  const Point& barycenter(Index e) const { return barycenters_[e]; }
  double diameter(Index e) const { return diameters_[e]; }
  double area(Index e) const { return areas_[e]; }
  double h() const { return h_; }
  /// Diameter of the bounding box of all vertices.
  double domain_diameter() const { return domain_diameter_; }
  double total_area() const;

  /// Face-neighbouring elements of `e` (no duplicates, ascending id).
  std::vector<Index> neighbors(Index e) const;

  /// Largest number of edges on any element.
  std::size_t max_edges_per_element() const;

  /// Element containing `p` (boundary points resolve to one incident element).
  std::optional<Index> locate(const Point& p) const;

private:
  void build_topology();
  void build_locator();

  std::vector<Point> vertices_;
  std::vector<std::vector<Index>> elements_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Index>> element_edges_;
  std::vector<Point> barycenters_;
  std::vector<double> diameters_;
  std::vector<double> areas_;
  double h_ = 0.0;
  double domain_diameter_ = 0.0;

  // uniform bucket grid over the bounding box for point location
  Point lo_ = Point::Zero();
  Point cell_ = Point::Ones();
  std::size_t nbx_ = 0;
  std::size_t nby_ = 0;
  std::vector<std::vector<Index>> buckets_;
};

/// Signed polygon area (positive for CCW).
double signed_area(std::span<const Point> polygon);
/// Area centroid of a simple polygon.
Point polygon_centroid(std::span<const Point> polygon);
bool polygon_is_simple(std::span<const Point> polygon);
bool point_in_polygon(std::span<const Point> polygon, const Point& p, double tol = 1e-12);

/// 2n^2 right triangles on (0,1)^2, each square split along its SW-NE diagonal.
PolyMesh triangulate_unit_square(std::size_t n);

struct VoronoiOptions {
  std::size_t n_cells = 10;
  std::size_t lloyd_iters = 0;
  std::uint64_t seed = 0;
};

/// Voronoi diagram of seeds clipped to (0,1)^2 with optional Lloyd relaxation.
PolyMesh voronoi_mesh(const VoronoiOptions& options);
/// Voronoi diagram of given seeds clipped to (0,1)^2; duplicate seeds are an error.
PolyMesh voronoi_mesh(std::span<const Point> seeds, std::size_t lloyd_iters = 0);

struct ReadOptions {
  bool fix_orientation = false;
};

PolyMesh read_mesh(const std::filesystem::path& path, const ReadOptions& options = {});
PolyMesh parse_mesh(const std::string& text, const ReadOptions& options = {});
void write_mesh(const PolyMesh& mesh, const std::filesystem::path& path);
std::string format_mesh(const PolyMesh& mesh);

/// Per-element cover by triangles (vertex triples referencing mesh vertices).
struct SubTriangulation {
  std::vector<std::vector<std::array<Index, 3>>> triangles;
};

SubTriangulation subtriangulate(const PolyMesh& mesh);
/// Ear clipping of a single simple CCW polygon; returns local index triples.
std::vector<std::array<Index, 3>> triangulate_polygon(std::span<const Point> polygon);

}  // namespace prdg
