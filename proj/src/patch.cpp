#include "prdg/patch.hpp"

#include <algorithm>
#include <array>
#include <string>
#include <unordered_set>

#include "prdg/error.hpp"

namespace prdg {

MeshFamily parse_mesh_family(std::string_view name) {
  if (name == "tri" || name == "triangulation") return MeshFamily::triangulation;
  if (name == "poly" || name == "polygonal") return MeshFamily::polygonal;
  if (name == "voronoi") return MeshFamily::voronoi;
  throw InvalidInput("unknown mesh family '" + std::string(name) + "'");
}

std::string_view to_string(MeshFamily family) {
  switch (family) {
    case MeshFamily::triangulation: return "tri";
    case MeshFamily::polygonal: return "poly";
    case MeshFamily::voronoi: return "voronoi";
  }
  return "?";
}

std::optional<std::size_t> default_patch_size(MeshFamily family, int k) {
  static constexpr std::array<std::array<std::size_t, 3>, 3> table = {{
      {4, 7, 11},   // uniform triangulations
      {5, 9, 15},   // regular polygonal meshes
      {7, 12, 19},  // general Voronoi meshes
  }};
  if (k < 1 || k > 3) return std::nullopt;
  return table[static_cast<std::size_t>(family)][static_cast<std::size_t>(k - 1)];
}

std::vector<std::vector<Index>> patch_rings(const PolyMesh& mesh, Index owner, std::size_t min_count) {
  if (min_count > mesh.num_elements())
    throw InvalidInput("patch size " + std::to_string(min_count) + " exceeds mesh size " +
                       std::to_string(mesh.num_elements()));
  std::vector<std::vector<Index>> rings{{owner}};
  std::unordered_set<Index> seen{owner};
  std::size_t count = 1;
  while (count < min_count) {
    std::vector<Index> next;
    for (Index e : rings.back())
      for (Index nb : mesh.neighbors(e))
        if (seen.insert(nb).second) next.push_back(nb);
    if (next.empty())
      throw GeometryError("element " + std::to_string(owner) + ": mesh is disconnected, patch cannot reach " +
                          std::to_string(min_count) + " elements");
    std::sort(next.begin(), next.end());
    count += next.size();
    rings.push_back(std::move(next));
  }
  return rings;
}

std::vector<double> compute_weights(const Point& anchor, std::span<const Point> samples) {
  std::vector<double> w(samples.size());
  double total = 0.0;
  for (std::size_t j = 0; j < samples.size(); ++j) {
    double d2 = (samples[j] - anchor).squaredNorm();
    if (d2 == 0.0) throw GeometryError("patch sample coincides with the anchor barycenter");
    w[j] = 1.0 / d2;
    total += w[j];
  }
  for (double& v : w) v /= total;
  return w;
}

namespace {

void sort_by_distance(const PolyMesh& mesh, const Point& anchor, std::vector<Index>& ids) {
  std::stable_sort(ids.begin(), ids.end(), [&](Index a, Index b) {
    double da = (mesh.barycenter(a) - anchor).squaredNorm();
    double db = (mesh.barycenter(b) - anchor).squaredNorm();
    return da < db || (da == db && a < b);
  });
}

void finalize(const PolyMesh& mesh, ElementPatch& patch) {
  patch.samples.clear();
  for (Index m : patch.members) patch.samples.push_back(mesh.barycenter(m));
  patch.weights = compute_weights(patch.samples[0], std::span(patch.samples).subspan(1));
}

}  // namespace

ElementPatch build_patch(const PolyMesh& mesh, Index owner, std::size_t M) {
  if (M == 0) throw InvalidInput("patch size must be positive");
  if (owner >= mesh.num_elements()) throw InvalidInput("patch owner out of range");
  auto rings = patch_rings(mesh, owner, M);
  const Point& anchor = mesh.barycenter(owner);
  ElementPatch patch;
  patch.owner = owner;
  for (std::size_t j = 0; j < rings.size(); ++j) {
    auto ring = rings[j];
    sort_by_distance(mesh, anchor, ring);
    for (Index e : ring) {
      if (patch.members.size() == M) break;
      patch.members.push_back(e);
      patch.rings.push_back(j);
    }
  }
  finalize(mesh, patch);
  return patch;
}

ElementPatch expand_patch(const PolyMesh& mesh, const ElementPatch& patch) {
  std::unordered_set<Index> in(patch.members.begin(), patch.members.end());
  std::vector<Index> next;
  for (Index e : patch.members)
    for (Index nb : mesh.neighbors(e))
      if (in.insert(nb).second) next.push_back(nb);
  if (next.empty())
    throw GeometryError("element " + std::to_string(patch.owner) + ": patch cannot be expanded further");
  sort_by_distance(mesh, mesh.barycenter(patch.owner), next);
  ElementPatch out = patch;
  std::size_t ring = *std::max_element(patch.rings.begin(), patch.rings.end()) + 1;
  for (Index e : next) {
    out.members.push_back(e);
    out.rings.push_back(ring);
  }
  finalize(mesh, out);
  return out;
}

std::vector<ElementPatch> build_all_patches(const PolyMesh& mesh, std::size_t M) {
  std::vector<ElementPatch> patches;
  patches.reserve(mesh.num_elements());
  for (Index e = 0; e < mesh.num_elements(); ++e) patches.push_back(build_patch(mesh, e, M));
  return patches;
}

}  // namespace prdg
