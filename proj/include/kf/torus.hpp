#pragma once

#include <array>
#include <string>
#include <vector>

#include "kf/core.hpp"

namespace kf {

/// Exact rational with a small numerator/denominator, used for the affine
/// torus coordinates and the overlay arithmetic.
struct Rat {
  int64_t num = 0;
  int64_t den = 1;

  Rat() = default;
  Rat(int64_t n) : num(n), den(1) {}
  Rat(int64_t n, int64_t d);

  Rat operator+(const Rat& o) const;
  Rat operator-(const Rat& o) const;
  Rat operator*(const Rat& o) const;
  Rat operator/(const Rat& o) const;
  Rat operator-() const { return {-num, den}; }
  bool operator==(const Rat& o) const { return num == o.num && den == o.den; }
  bool operator!=(const Rat& o) const { return !(*this == o); }
  bool operator<(const Rat& o) const;
  bool operator<=(const Rat& o) const { return *this < o || *this == o; }
  std::string str() const;

  // x mod 1 in [0,1)
  Rat mod1() const;
  int64_t floor() const;
};

struct Vec2 {
  Rat x, y;
  bool operator==(const Vec2& o) const { return x == o.x && y == o.y; }
  bool operator<(const Vec2& o) const { return x < o.x || (x == o.x && y < o.y); }
};

/// Labeled prism triangulation with its two marked square faces.
struct PrismComplex {
  SimplicialComplex complex;
  std::array<std::string, 3> bottom, top;
  // F and G quads listed as cycles (corner order), plus the split diagonal
  std::array<std::string, 4> f_cycle, g_cycle;
  std::array<std::string, 2> f_diagonal, g_diagonal;
};

struct BlockComplex {
  SimplicialComplex complex;
  std::string bottom_center, top_center;
  std::array<std::string, 3> bottom_outer, top_outer;
  std::array<std::string, 2> center_edge;
};

/// Affine triangulation of the boundary torus: label -> point of R^2/Z^2,
/// triangles with explicit lifts (three lifted points each).
struct AffineTorus {
  std::vector<std::string> labels;
  std::vector<Vec2> coords;                       // canonical representative in [0,1)^2
  std::vector<std::array<std::string, 3>> tris;   // vertex labels
  std::vector<std::array<Vec2, 3>> lifts;         // positively oriented lifts
};

struct SolidTorusComplex {
  SimplicialComplex complex;
  std::vector<std::string> interior_vertices;  // 4, core order
  std::vector<std::string> boundary_vertices;  // 12
  std::array<std::string, 4> core;             // cyclic order
  std::vector<BlockComplex> blocks;            // 4 views (complexes share labels)
  std::vector<std::vector<std::string>> meridians;  // outer 3-cycle per level
  std::vector<std::string> longitude;               // closed path over all 4 levels
  AffineTorus boundary_affine;

  // tet index lists into complex.cells(3)
  std::vector<uint32_t> type_a, type_b;
};

PrismComplex build_prism();
BlockComplex build_block();
SolidTorusComplex build_solid_torus(const std::string& prefix = "");

/// (typeA, typeB) tetrahedra of the 36-tet solid torus: joins of a boundary
/// triangle with an interior vertex vs. joins of a core edge with a boundary
/// edge. Throws CheckError if some tetrahedron fits neither pattern.
std::pair<std::vector<std::vector<std::string>>, std::vector<std::vector<std::string>>>
classify_tetrahedra(const SolidTorusComplex& n);

/// Shared structure of two blocks: level disk for adjacent blocks, empty
/// complex for opposite ones.
SimplicialComplex block_intersection(const SolidTorusComplex& n, int i, int j);

/// Gates for the shipped affine table: positive triangles tiling the torus.
void validate_affine_torus(const AffineTorus& t);

}  // namespace kf
