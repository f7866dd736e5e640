#include <algorithm>
#include <cmath>
#include <random>
#include <unordered_map>

#include "prdg/error.hpp"
#include "prdg/mesh.hpp"

namespace prdg {

namespace {

using Polygon = std::vector<Point>;

// keeps the part of `poly` where (x - mid) . dir <= 0, written to `out`
void clip_halfplane(const Polygon& poly, const Point& mid, const Point& dir, Polygon& out) {
  out.clear();
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point& p = poly[i];
    const Point& q = poly[(i + 1) % n];
    double dp = (p - mid).dot(dir), dq = (q - mid).dot(dir);
    if (dp <= 0) out.push_back(p);
    if ((dp < 0 && dq > 0) || (dp > 0 && dq < 0)) {
      double t = dp / (dp - dq);
      out.push_back(p + t * (q - p));
    }
  }
}

double max_distance(const Polygon& poly, const Point& p) {
  double r2 = 0.0;
  for (const auto& v : poly) r2 = std::max(r2, (v - p).squaredNorm());
  return std::sqrt(r2);
}

class SeedGrid {
public:
  explicit SeedGrid(std::span<const Point> seeds) : seeds_(seeds) {
    n_ = std::max<std::size_t>(1, static_cast<std::size_t>(std::sqrt(double(seeds.size()) / 2.0)));
    cells_.assign(n_ * n_, {});
    for (Index i = 0; i < seeds.size(); ++i) cells_[bucket(seeds[i])].push_back(i);
  }

  std::size_t size() const { return n_; }
  double cell_width() const { return 1.0 / double(n_); }
  std::pair<std::size_t, std::size_t> coords(const Point& p) const {
    auto c = [this](double v) { return std::min(n_ - 1, static_cast<std::size_t>(std::clamp(v, 0.0, 1.0) * n_)); };
    return {c(p.x()), c(p.y())};
  }
  const std::vector<Index>& at(std::size_t i, std::size_t j) const { return cells_[j * n_ + i]; }

private:
  std::size_t bucket(const Point& p) const {
    auto [i, j] = coords(p);
    return j * n_ + i;
  }
  std::span<const Point> seeds_;
  std::size_t n_;
  std::vector<std::vector<Index>> cells_;
};

std::vector<Polygon> voronoi_cells(std::span<const Point> seeds) {
  SeedGrid grid(seeds);
  const auto n = static_cast<long>(grid.size());
  std::vector<Polygon> cells(seeds.size());
  Polygon scratch;
  std::vector<std::pair<double, Index>> ring;
  for (Index s = 0; s < seeds.size(); ++s) {
    Polygon poly = {Point(0, 0), Point(1, 0), Point(1, 1), Point(0, 1)};
    const Point& p = seeds[s];
    auto [ci, cj] = grid.coords(p);
    double radius = max_distance(poly, p);
    for (long r = 0; r <= n; ++r) {
      // every seed outside the processed block is at least (r - 1) * width away
      if (r > 0 && double(r - 1) * grid.cell_width() > 2.0 * radius) break;
      ring.clear();
      for (long j = long(cj) - r; j <= long(cj) + r; ++j)
        for (long i = long(ci) - r; i <= long(ci) + r; ++i) {
          if (std::max(std::abs(i - long(ci)), std::abs(j - long(cj))) != r) continue;
          if (i < 0 || j < 0 || i >= n || j >= n) continue;
          for (Index t : grid.at(std::size_t(i), std::size_t(j)))
            if (t != s) ring.emplace_back((seeds[t] - p).norm(), t);
        }
      std::sort(ring.begin(), ring.end());
      for (const auto& [d, t] : ring) {
        // a seed farther than twice the cell radius cannot cut the cell
        if (d >= 2.0 * radius) break;
        const Point& q = seeds[t];
        clip_halfplane(poly, 0.5 * (p + q), q - p, scratch);
        poly.swap(scratch);
        radius = max_distance(poly, p);
      }
    }
    cells[s] = std::move(poly);
  }
  return cells;
}

struct VertexMerger {
  explicit VertexMerger(double tol) : tol(tol) {}

  Index insert(const Point& p) {
    long kx = std::lround(p.x() / tol), ky = std::lround(p.y() / tol);
    for (long dy = -1; dy <= 1; ++dy)
      for (long dx = -1; dx <= 1; ++dx) {
        auto it = map.find(key(kx + dx, ky + dy));
        if (it == map.end()) continue;
        for (Index v : it->second)
          if ((vertices[v] - p).norm() <= tol) return v;
      }
    map[key(kx, ky)].push_back(vertices.size());
    vertices.push_back(p);
    return vertices.size() - 1;
  }

  static std::uint64_t key(long x, long y) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(x)) << 32) | static_cast<std::uint32_t>(y);
  }

  double tol;
  std::vector<Point> vertices;
  std::unordered_map<std::uint64_t, std::vector<Index>> map;
};

PolyMesh assemble_mesh(const std::vector<Polygon>& cells) {
  VertexMerger merger(1e-10);
  std::vector<std::vector<Index>> elements;
  elements.reserve(cells.size());
  for (const auto& poly : cells) {
    std::vector<Index> cyc;
    for (const auto& p : poly) {
      Index v = merger.insert(p);
      if (cyc.empty() || cyc.back() != v) cyc.push_back(v);
    }
    while (cyc.size() > 1 && cyc.front() == cyc.back()) cyc.pop_back();
    if (cyc.size() < 3) throw GeometryError("degenerate Voronoi cell");
    elements.push_back(std::move(cyc));
  }
  return PolyMesh(std::move(merger.vertices), std::move(elements));
}

void check_seeds(std::span<const Point> seeds) {
  if (seeds.size() < 2) throw InvalidInput("voronoi_mesh: need at least 2 seeds");
  std::vector<Index> order(seeds.size());
  for (Index i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](Index a, Index b) {
    return seeds[a].x() < seeds[b].x() || (seeds[a].x() == seeds[b].x() && seeds[a].y() < seeds[b].y());
  });
  for (Index i = 0; i < order.size(); ++i) {
    const Point& p = seeds[order[i]];
    if (p.x() <= 0 || p.x() >= 1 || p.y() <= 0 || p.y() >= 1)
      throw InvalidInput("voronoi_mesh: seed outside the open unit square");
    for (Index j = i + 1; j < order.size() && seeds[order[j]].x() - p.x() <= 1e-12; ++j)
      if ((seeds[order[j]] - p).norm() <= 1e-12)
        throw InvalidInput("voronoi_mesh: duplicate seeds " + std::to_string(order[i]) + " and " +
                           std::to_string(order[j]));
  }
}

}  // namespace

PolyMesh voronoi_mesh(std::span<const Point> input, std::size_t lloyd_iters) {
  check_seeds(input);
  std::vector<Point> seeds(input.begin(), input.end());
  auto cells = voronoi_cells(seeds);
  for (std::size_t it = 0; it < lloyd_iters; ++it) {
    for (Index s = 0; s < seeds.size(); ++s) seeds[s] = polygon_centroid(cells[s]);
    cells = voronoi_cells(seeds);
  }
  return assemble_mesh(cells);
}

PolyMesh voronoi_mesh(const VoronoiOptions& options) {
  if (options.n_cells < 2) throw InvalidInput("voronoi_mesh: n_cells must be at least 2");
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<Point> seeds;
  seeds.reserve(options.n_cells);
  while (seeds.size() < options.n_cells) {
    Point p(unif(rng), unif(rng));
    if (p.x() > 0 && p.y() > 0) seeds.push_back(p);
  }
  return voronoi_mesh(seeds, options.lloyd_iters);
}

}  // namespace prdg
