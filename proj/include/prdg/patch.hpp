#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "prdg/mesh.hpp"

namespace prdg {

/// Element patch S(K): the owner followed by nearby elements, with least-squares weights.
struct ElementPatch {
  Index owner = 0;
  /// members[0] == owner
  std::vector<Index> members;
  /// barycenters of members, same order
  std::vector<Point> samples;
  /// weights of members[1..], normalized to sum to one
  std::vector<double> weights;
  /// ring index of every member (0 for the owner)
  std::vector<std::size_t> rings;

  std::size_t size() const { return members.size(); }
};

enum class MeshFamily { triangulation, polygonal, voronoi };

MeshFamily parse_mesh_family(std::string_view name);
std::string_view to_string(MeshFamily family);

/// Reference patch sizes per mesh family for k = 1, 2, 3; nullopt outside that range.
std::optional<std::size_t> default_patch_size(MeshFamily family, int k);

/// Face-adjacency rings S_0 = {owner}, S_1, ... until the cumulative count reaches
/// `min_count` or the mesh is exhausted. Throws InvalidInput if `min_count` exceeds the mesh.
std::vector<std::vector<Index>> patch_rings(const PolyMesh& mesh, Index owner, std::size_t min_count);

/// Builds S(K) with M members: inner rings kept whole, the outermost ring
/// trimmed by distance to the owner's barycenter (ties broken by element id).
ElementPatch build_patch(const PolyMesh& mesh, Index owner, std::size_t M);

/// Grows a patch by the next face-adjacency ring around its current members.
ElementPatch expand_patch(const PolyMesh& mesh, const ElementPatch& patch);

/// Inverse-square distance weights normalized to sum to one.
std::vector<double> compute_weights(const Point& anchor, std::span<const Point> samples);

std::vector<ElementPatch> build_all_patches(const PolyMesh& mesh, std::size_t M);

}  // namespace prdg
