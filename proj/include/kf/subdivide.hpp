#pragma once

#include <array>
#include <string>
#include <vector>

#include "kf/core.hpp"
#include "kf/torus.hpp"

namespace kf {

/// Vertex-level carrier data: refinement vertex -> base simplex (vertex ids of
/// the base complex). Cell carriers are unions of vertex carriers.
struct CarrierMap {
  std::vector<std::vector<Vertex>> vertex_carrier;

  // smallest base simplex containing a refinement cell; throws CheckError if
  // the union of vertex carriers is not a base cell (non-monotone data)
  std::vector<Vertex> carrier_of(const SimplicialComplex& base,
                                 std::span<const Vertex> cell) const;
  void validate(const SimplicialComplex& refinement, const SimplicialComplex& base) const;
};

struct SubdivisionResult {
  SimplicialComplex refined;
  CarrierMap carrier;
  // for 3-complex subdivisions: source cells(3) index per refined tetrahedron
  std::vector<uint32_t> tet_source;
};

/// The 10-triangle subdivision pattern of a single triangle.
struct TriangleTemplate {
  std::vector<std::string> vertices;                      // 3 corners, 3 midpoints, 3 interior
  std::vector<std::array<std::string, 3>> triangles;      // 10
  // original edge (sorted pair) -> its two half edges
  std::vector<std::pair<std::array<std::string, 2>, std::array<std::array<std::string, 2>, 2>>>
      boundary_map;
};

TriangleTemplate triangle_template();

std::string midpoint_label(const std::string& u, const std::string& v);

/// Edge bisection plus the triangle pattern, compatible along shared edges.
SubdivisionResult subdivide_surface(const SimplicialComplex& k);

/// Subdivision of a pure 3-complex that restricts to subdivide_surface on the
/// 2-skeleton and is verified flag and square-free a posteriori.
SubdivisionResult ps_subdivide_3(const SimplicialComplex& k);

/// The 264-tetrahedron subdivision of the 36-tetrahedron solid torus: type (a)
/// tetrahedra coned over the face pattern, type (b) split in two.
SolidTorusComplex subdivide_solid_torus(const SolidTorusComplex& n);

struct BlockBoundaryReport {
  SimplicialComplex annulus;           // 60 triangles
  std::vector<std::string> bottom_cycle;  // 6 vertices, consecutive
  std::vector<std::string> special_vertices;  // adjacent to two distinct bottom vertices
  bool special_pairs_adjacent = false;
  std::vector<std::string> adjacent_intersection_cycle;  // with the next block
};

BlockBoundaryReport block_boundary_pattern(const SolidTorusComplex& nprime, int block);

/// T_base x [0,1] with T_base at the bottom and the subdivision T_top at the
/// top; every cell of the base is coned from one new apex.
/// Labels of base and top must be disjoint; apex labels carry `tag`.
SimplicialComplex collar_triangulation(const SimplicialComplex& t_base,
                                       const SimplicialComplex& t_top,
                                       const CarrierMap& carrier, const std::string& tag);

}  // namespace kf
