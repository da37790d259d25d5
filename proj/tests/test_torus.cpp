#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "kf/core.hpp"
#include "kf/torus.hpp"

using namespace kf;

TEST_CASE("prism is three tetrahedra") {
  auto p = build_prism();
  CHECK(p.complex.n_cells(3) == 3);
  CHECK(p.complex.n_vertices() == 6);
  // F face: two triangles along the diagonal from the origin corner
  Vertex b0 = p.complex.vertex("b0"), t1 = p.complex.vertex("t1");
  CHECK(p.complex.has_edge(b0, t1));
  std::vector<Vertex> f1{b0, p.complex.vertex("b1"), t1};
  std::sort(f1.begin(), f1.end());
  CHECK(p.complex.contains(f1));
  std::vector<Vertex> f2{b0, p.complex.vertex("t0"), t1};
  std::sort(f2.begin(), f2.end());
  CHECK(p.complex.contains(f2));
}

TEST_CASE("cube from six chains contains the prism") {
  // canonical six-tetrahedra cube via chains 0 <= x_s1 <= x_s2 <= x_s3 <= 1
  std::vector<std::vector<std::string>> cells;
  int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  auto corner = [](int x, int y, int z) {
    return std::to_string(x) + std::to_string(y) + std::to_string(z);
  };
  for (auto& s : perms) {
    int c[3] = {0, 0, 0};
    std::vector<std::string> tet{corner(0, 0, 0)};
    for (int step = 2; step >= 0; --step) {
      c[s[step]] = 1;
      tet.push_back(corner(c[0], c[1], c[2]));
    }
    cells.push_back(tet);
  }
  auto cube = build_complex(cells);
  CHECK(cube.n_cells(3) == 6);
  CHECK(cube.n_vertices() == 8);
}

TEST_CASE("block counts and adjacency bullets") {
  auto blk = build_block();
  CHECK(blk.complex.n_cells(3) == 9);
  CHECK(blk.complex.n_vertices() == 8);
  auto& k = blk.complex;
  // unique edge joining the two centers
  CHECK(k.has_edge(k.vertex("cb"), k.vertex("ct")));
  // bottom center adjacent to everything
  CHECK(k.neighbors(k.vertex("cb")).size() == 7);
  // top center adjacent to no bottom vertex except the bottom center
  std::set<std::string> top_nb;
  for (Vertex v : k.neighbors(k.vertex("ct"))) top_nb.insert(k.label(v));
  CHECK(top_nb.count("cb") == 1);
  CHECK(top_nb.count("o0") == 0);
  CHECK(top_nb.count("o1") == 0);
  CHECK(top_nb.count("o2") == 0);
}

TEST_CASE("solid torus counts, core, classification") {
  auto n = build_solid_torus();
  CHECK(n.complex.n_cells(3) == 36);
  CHECK(n.complex.n_vertices() == 16);
  CHECK(n.interior_vertices.size() == 4);
  CHECK(n.boundary_vertices.size() == 12);

  auto [ta, tb] = classify_tetrahedra(n);
  CHECK(ta.size() == 24);
  CHECK(tb.size() == 12);

  // the core is a square entirely on interior vertices, and it is the only one
  auto squares = enumerate_squares(n.complex);
  std::set<std::string> interior(n.interior_vertices.begin(), n.interior_vertices.end());
  int interior_squares = 0;
  for (auto& s : squares) {
    bool all_in = true;
    for (Vertex v : s.cycle) all_in &= interior.count(n.complex.label(v)) > 0;
    interior_squares += all_in ? 1 : 0;
  }
  CHECK(interior_squares == 1);
  auto core_canon = canonical_square({n.complex.vertex(n.core[0]), n.complex.vertex(n.core[1]),
                                      n.complex.vertex(n.core[2]), n.complex.vertex(n.core[3])});
  bool found = false;
  for (auto& s : squares) found |= s.cycle == core_canon;
  CHECK(found);
}

TEST_CASE("solid torus boundary is a (12,36,24) torus") {
  auto n = build_solid_torus();
  auto& k = n.complex;
  // collect boundary triangles (in exactly one tetrahedron)
  const CellSet& tris = k.cells(2);
  std::vector<int> cnt(tris.size(), 0);
  const CellSet& tets = k.cells(3);
  std::vector<Vertex> face;
  for (size_t i = 0; i < tets.size(); ++i) {
    auto c = tets.get(i);
    for (int skip = 0; skip < 4; ++skip) {
      face.clear();
      for (int j = 0; j < 4; ++j)
        if (j != skip) face.push_back(c[j]);
      ++cnt[tris.find(face)];
    }
  }
  ComplexBuilder bb;
  int boundary_tris = 0;
  for (size_t i = 0; i < tris.size(); ++i) {
    CHECK(cnt[i] >= 1);
    CHECK(cnt[i] <= 2);
    if (cnt[i] == 1) {
      ++boundary_tris;
      auto c = tris.get(i);
      Vertex cell[3] = {bb.intern(k.label(c[0])), bb.intern(k.label(c[1])),
                        bb.intern(k.label(c[2]))};
      bb.add_cell(std::span<const Vertex>(cell, 3));
    }
  }
  CHECK(boundary_tris == 24);
  auto bdry = bb.build();
  CHECK(bdry.n_vertices() == 12);
  CHECK(bdry.n_cells(1) == 36);
  CHECK(bdry.euler() == 0);
  // closed surface: every boundary edge in exactly two boundary triangles
  const CellSet& btr = bdry.cells(2);
  std::vector<int> ecnt(bdry.n_cells(1), 0);
  for (size_t i = 0; i < btr.size(); ++i) {
    auto c = btr.get(i);
    for (int skip = 0; skip < 3; ++skip) {
      std::vector<Vertex> e;
      for (int j = 0; j < 3; ++j)
        if (j != skip) e.push_back(c[j]);
      ++ecnt[bdry.cells(1).find(e)];
    }
  }
  for (int c : ecnt) CHECK(c == 2);
  // homology of the boundary: (1,2,1)
  auto h = homology(bdry);
  CHECK(h.betti[0] == 1);
  CHECK(h.betti[1] == 2);
  CHECK(h.betti[2] == 1);
}

TEST_CASE("block intersections") {
  auto n = build_solid_torus();
  auto disk = block_intersection(n, 0, 1);
  CHECK(disk.n_vertices() == 4);
  CHECK(disk.n_cells(2) == 3);
  auto empty = block_intersection(n, 0, 2);
  CHECK(empty.n_vertices() == 0);
  CHECK_THROWS_AS(block_intersection(n, 1, 1), InputError);
}

TEST_CASE("meridian and longitude markings") {
  auto n = build_solid_torus();
  auto& k = n.complex;
  for (auto& m : n.meridians) {
    REQUIRE(m.size() == 3);
    for (int i = 0; i < 3; ++i) CHECK(k.has_edge(k.vertex(m[i]), k.vertex(m[(i + 1) % 3])));
  }
  REQUIRE(n.longitude.size() == 4);
  for (int i = 0; i < 4; ++i)
    CHECK(k.has_edge(k.vertex(n.longitude[i]), k.vertex(n.longitude[(i + 1) % 4])));
}

TEST_CASE("affine boundary table validates") {
  auto n = build_solid_torus();
  CHECK(n.boundary_affine.tris.size() == 24);
  CHECK_NOTHROW(validate_affine_torus(n.boundary_affine));
}

TEST_CASE("every tetrahedron has an interior vertex and locality holds") {
  auto n = build_solid_torus();
  auto& k = n.complex;
  std::set<std::string> interior(n.interior_vertices.begin(), n.interior_vertices.end());
  const CellSet& tets = k.cells(3);
  for (size_t i = 0; i < tets.size(); ++i) {
    auto c = tets.get(i);
    int cnt = 0;
    for (Vertex v : c) cnt += interior.count(k.label(v)) ? 1 : 0;
    CHECK(cnt >= 1);
  }
}

TEST_CASE("rationals") {
  Rat a(1, 3), b(1, 4);
  CHECK((a + b) == Rat(7, 12));
  CHECK((a * b) == Rat(1, 12));
  CHECK(Rat(-1, 3).mod1() == Rat(2, 3));
  CHECK(Rat(5, 3).floor() == 1);
  CHECK(Rat(-5, 3).floor() == -2);
  CHECK_THROWS_AS(Rat(1, 0), InputError);
}
