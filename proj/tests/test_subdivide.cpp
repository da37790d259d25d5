#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "kf/core.hpp"
#include "kf/overlay.hpp"
#include "kf/subdivide.hpp"
#include "kf/torus.hpp"

using namespace kf;

namespace {

SimplicialComplex boundary_delta4() {
  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> verts = {"p0", "p1", "p2", "p3", "p4"};
  for (int skip = 0; skip < 5; ++skip) {
    std::vector<std::string> c;
    for (int i = 0; i < 5; ++i)
      if (i != skip) c.push_back(verts[i]);
    cells.push_back(c);
  }
  return build_complex(cells);
}

// counts boundary triangles (those inside exactly one tetrahedron)
int64_t boundary_triangles(const SimplicialComplex& k) {
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
  int64_t b = 0;
  for (int c : cnt) b += (c == 1);
  return b;
}

}  // namespace

TEST_CASE("triangle template counts and structure") {
  auto t = triangle_template();
  CHECK(t.vertices.size() == 9);
  CHECK(t.triangles.size() == 10);

  std::vector<std::vector<std::string>> cells;
  for (auto& tr : t.triangles) cells.push_back({tr[0], tr[1], tr[2]});
  auto k = build_complex(cells);
  auto f = k.f_vector();
  REQUIRE(f.size() == 3);
  CHECK(f[0] == 9);
  CHECK(f[1] == 18);
  CHECK(f[2] == 10);
  CHECK(k.euler() == 1);
  CHECK(is_flag(k).flag);
  CHECK(enumerate_squares(k).empty());
  // no corner adjacent to the opposite edge midpoint
  CHECK_FALSE(k.has_edge(k.vertex("A"), k.vertex(midpoint_label("B", "C"))));
  CHECK_FALSE(k.has_edge(k.vertex("B"), k.vertex(midpoint_label("A", "C"))));
  CHECK_FALSE(k.has_edge(k.vertex("C"), k.vertex(midpoint_label("A", "B"))));
}

TEST_CASE("subdivide_surface on a single triangle") {
  auto k = build_complex({{"a", "b", "c"}});
  auto r = subdivide_surface(k);
  CHECK(r.refined.n_cells(2) == 10);
  CHECK(r.refined.n_vertices() == 9);
  CHECK(r.refined.euler() == 1);
  CHECK_NOTHROW(r.carrier.validate(r.refined, k));
}

TEST_CASE("subdivide_surface on the solid torus boundary") {
  auto n = build_solid_torus();
  auto bdry = affine_torus_complex(n.boundary_affine);
  CHECK(bdry.n_vertices() == 12);
  CHECK(bdry.n_cells(1) == 36);
  CHECK(bdry.n_cells(2) == 24);
  auto r = subdivide_surface(bdry);
  auto f = r.refined.f_vector();
  CHECK(f[0] == 120);
  CHECK(f[1] == 360);
  CHECK(f[2] == 240);
  CHECK(r.refined.euler() == 0);
  CHECK(is_flag(r.refined).flag);
  CHECK(enumerate_squares(r.refined).empty());
}

TEST_CASE("subdivide_surface twice stays flag and square-free") {
  auto k = build_complex({{"a", "b", "c"}, {"b", "c", "d"}});
  auto r1 = subdivide_surface(k);
  auto r2 = subdivide_surface(r1.refined);
  CHECK(r2.refined.euler() == k.euler());
  CHECK(is_flag(r2.refined).flag);
  CHECK(enumerate_squares(r2.refined).empty());
}

TEST_CASE("ps_subdivide_3 on a single tetrahedron") {
  auto k = build_complex({{"a", "b", "c", "d"}});
  auto r = ps_subdivide_3(k);  // throws if not flag / square-free
  CHECK(boundary_triangles(r.refined) == 40);
  CHECK(r.refined.euler() == 1);
  CHECK_NOTHROW(r.carrier.validate(r.refined, k));
}

TEST_CASE("ps_subdivide_3 on two tetrahedra sharing a triangle") {
  auto k = build_complex({{"a", "b", "c", "d"}, {"b", "c", "d", "e"}});
  auto r = ps_subdivide_3(k);
  CHECK(r.refined.euler() == 1);
  // restriction to the shared triangle is the same template from both sides
  auto shared = subdivide_surface(build_complex({{"b", "c", "d"}}));
  for (size_t i = 0; i < shared.refined.cells(2).size(); ++i) {
    auto c = shared.refined.cells(2).get(i);
    std::vector<Vertex> mapped;
    for (Vertex v : c) mapped.push_back(r.refined.vertex(shared.refined.label(v)));
    std::sort(mapped.begin(), mapped.end());
    CHECK(r.refined.contains(mapped));
  }
}

TEST_CASE("ps_subdivide_3 on tetrahedra fanned around an edge") {
  // three tetrahedra around the edge (a, b)
  auto k = build_complex(
      {{"a", "b", "x0", "x1"}, {"a", "b", "x1", "x2"}, {"a", "b", "x2", "x0"}});
  auto r = ps_subdivide_3(k);
  CHECK(is_flag(r.refined).flag);
}

TEST_CASE("ps_subdivide_3 on the boundary of the 4-simplex") {
  auto s3 = boundary_delta4();
  auto r = ps_subdivide_3(s3);
  CHECK(r.refined.n_cells(3) == 5 * 1160);
  auto cert = sphere3_certificate(r.refined);
  CHECK(cert.pass());
  // full-subcomplex restriction: the subdivision of one tetrahedron's
  // boundary sphere is full in the subdivided complex
  auto one = subdivide_surface(build_complex({{"p0", "p1", "p2"},
                                              {"p0", "p1", "p3"},
                                              {"p0", "p2", "p3"},
                                              {"p1", "p2", "p3"}}));
  CHECK(is_full_subcomplex(r.refined, one.refined));
}

TEST_CASE("subdivide_solid_torus counts and flagness") {
  auto n = build_solid_torus();
  auto np = subdivide_solid_torus(n);
  CHECK(np.complex.n_cells(3) == 264);
  CHECK(np.complex.n_vertices() == 124);
  CHECK(np.boundary_vertices.size() == 120);
  CHECK(boundary_triangles(np.complex) == 240);
  CHECK(is_flag(np.complex).flag);

  // boundary is the subdivided boundary with the same labels
  auto bdry = subdivide_surface(affine_torus_complex(n.boundary_affine));
  for (auto& l : bdry.refined.labels()) CHECK(np.complex.try_vertex(l).has_value());

  // core unchanged and still the unique interior square
  auto squares = enumerate_squares(np.complex);
  std::set<std::string> interior(np.interior_vertices.begin(), np.interior_vertices.end());
  int interior_squares = 0;
  for (auto& s : squares) {
    bool all = true;
    for (Vertex v : s.cycle) all &= interior.count(np.complex.label(v)) > 0;
    interior_squares += all;
  }
  CHECK(interior_squares == 1);
}

TEST_CASE("block boundary pattern") {
  auto n = build_solid_torus();
  auto np = subdivide_solid_torus(n);
  for (int blk = 0; blk < 4; ++blk) {
    auto rep = block_boundary_pattern(np, blk);
    CHECK(rep.annulus.n_cells(2) == 60);
    CHECK(rep.special_vertices.size() == 6);
    CHECK(rep.special_pairs_adjacent);
    CHECK(rep.adjacent_intersection_cycle.size() == 6);
  }
}

TEST_CASE("collar over the identity subdivision of a triangle") {
  auto base = build_complex({{"a", "b", "c"}});
  auto top = build_complex({{"ta", "tb", "tc"}});
  CarrierMap cm;
  cm.vertex_carrier = {{base.vertex("a")}, {base.vertex("b")}, {base.vertex("c")}};
  // order of top labels follows build order: ta, tb, tc
  auto collar = collar_triangulation(base, top, cm, "t0");
  // 3-ball: one apex per base edge and one for the triangle
  CHECK(collar.n_vertices() == 6 + 3 + 1);
  CHECK(collar.euler() == 1);
  // bottom face present, top face present
  std::vector<Vertex> bot{collar.vertex("a"), collar.vertex("b"), collar.vertex("c")};
  std::sort(bot.begin(), bot.end());
  CHECK(collar.contains(bot));
  std::vector<Vertex> top3{collar.vertex("ta"), collar.vertex("tb"), collar.vertex("tc")};
  std::sort(top3.begin(), top3.end());
  CHECK(collar.contains(top3));
}

TEST_CASE("collar over a true subdivision has matching boundaries") {
  auto base = build_complex({{"a", "b", "c"}});
  auto sub = subdivide_surface(base);
  // relabel the subdivision to keep label sets disjoint
  ComplexBuilder rb;
  std::vector<Vertex> map(sub.refined.n_vertices());
  for (Vertex v = 0; v < static_cast<Vertex>(sub.refined.n_vertices()); ++v)
    map[v] = rb.intern("T." + sub.refined.label(v));
  const CellSet& ts = sub.refined.cells(2);
  for (size_t i = 0; i < ts.size(); ++i) {
    auto c = ts.get(i);
    Vertex cell[3] = {map[c[0]], map[c[1]], map[c[2]]};
    rb.add_cell(std::span<const Vertex>(cell, 3));
  }
  auto top = rb.build();
  CarrierMap cm;
  cm.vertex_carrier.resize(top.n_vertices());
  for (Vertex v = 0; v < static_cast<Vertex>(sub.refined.n_vertices()); ++v)
    cm.vertex_carrier[top.vertex("T." + sub.refined.label(v))] =
        sub.carrier.vertex_carrier[v];
  auto collar = collar_triangulation(base, top, cm, "x");
  CHECK(collar.euler() == 1);
  CHECK(boundary_triangles(collar) == 1 + 10 + 15);
  // every interior triangle in exactly two tets
  const CellSet& tris = collar.cells(2);
  std::vector<int> cnt(tris.size(), 0);
  const CellSet& tets = collar.cells(3);
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
  for (int c : cnt) {
    CHECK(c >= 1);
    CHECK(c <= 2);
  }
}

TEST_CASE("overlay of the torus with itself under the identity") {
  auto n = build_solid_torus();
  auto& t = n.boundary_affine;
  TorusTransform id{{{1, 0}, {0, 1}}};
  auto r = overlay_refinement(t, t, id);
  CHECK(r.refinement.n_cells(2) == 24);
  CHECK(r.refinement.n_vertices() == 12);
  CHECK(verify_overlay_carriers(r, t, t, id));
}

TEST_CASE("overlay with the swap matrix") {
  auto n = build_solid_torus();
  auto& t = n.boundary_affine;
  TorusTransform swap{{{0, 1}, {1, 0}}};
  auto r = overlay_refinement(t, t, swap);
  CHECK(r.refinement.euler() == 0);
  CHECK(r.refinement.n_cells(2) > 24);
  CHECK(verify_overlay_carriers(r, t, t, swap));
  // every t1 vertex appears with a singleton carrier
  int singletons = 0;
  for (auto& c : r.carrier1) singletons += (c.size() == 1);
  CHECK(singletons >= 12);
}

TEST_CASE("overlay rejects a non-invertible transform") {
  auto n = build_solid_torus();
  TorusTransform bad{{{2, 0}, {0, 1}}};
  CHECK_THROWS_AS(overlay_refinement(n.boundary_affine, n.boundary_affine, bad), InputError);
}
