#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "kf/core.hpp"
#include "kf/group.hpp"
#include "kf/smith.hpp"

using namespace kf;

namespace {

// independent brute-force oracles, kept free of the production search paths

bool oracle_has_edge(const SimplicialComplex& k, Vertex a, Vertex b) {
  std::vector<Vertex> e{std::min(a, b), std::max(a, b)};
  return k.contains(e);
}

std::set<std::array<Vertex, 4>> oracle_squares(const SimplicialComplex& k) {
  std::set<std::array<Vertex, 4>> out;
  int n = static_cast<int>(k.n_vertices());
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          if (a == b || a == c || a == d || b == c || b == d || c == d) continue;
          if (!oracle_has_edge(k, a, b) || !oracle_has_edge(k, b, c) ||
              !oracle_has_edge(k, c, d) || !oracle_has_edge(k, d, a))
            continue;
          if (oracle_has_edge(k, a, c) || oracle_has_edge(k, b, d)) continue;
          out.insert(canonical_square({static_cast<Vertex>(a), static_cast<Vertex>(b),
                                       static_cast<Vertex>(c), static_cast<Vertex>(d)}));
        }
  return out;
}

bool oracle_is_flag(const SimplicialComplex& k) {
  int n = static_cast<int>(k.n_vertices());
  // every clique over all vertex subsets must span
  for (uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::vector<Vertex> sub;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) sub.push_back(i);
    if (sub.size() < 3) continue;
    bool clique = true;
    for (size_t i = 0; i < sub.size() && clique; ++i)
      for (size_t j = i + 1; j < sub.size(); ++j)
        if (!oracle_has_edge(k, sub[i], sub[j])) {
          clique = false;
          break;
        }
    if (clique && !k.contains(sub)) return false;
  }
  return true;
}

SimplicialComplex octahedron() {
  // three antipodal pairs (a,a'), (b,b'), (c,c')
  std::vector<std::vector<std::string>> tris;
  for (std::string a : {"a0", "a1"})
    for (std::string b : {"b0", "b1"})
      for (std::string c : {"c0", "c1"}) tris.push_back({a, b, c});
  return build_complex(tris);
}

SimplicialComplex boundary_delta(int n, const std::string& stem) {
  // boundary of the n-simplex on n+1 vertices
  std::vector<std::string> verts;
  for (int i = 0; i <= n; ++i) verts.push_back(stem + std::to_string(i));
  std::vector<std::vector<std::string>> cells;
  for (int skip = 0; skip <= n; ++skip) {
    std::vector<std::string> c;
    for (int i = 0; i <= n; ++i)
      if (i != skip) c.push_back(verts[i]);
    cells.push_back(c);
  }
  return build_complex(cells);
}

}  // namespace

TEST_CASE("build_complex closure and errors") {
  auto k = build_complex({{"a", "b", "c"}});
  CHECK(k.n_cells(2) == 1);
  CHECK(k.n_cells(1) == 3);
  CHECK(k.n_cells(0) == 3);

  auto sq = build_complex({{"a", "b"}, {"b", "c"}, {"c", "d"}, {"d", "a"}});
  CHECK(sq.n_cells(1) == 4);
  CHECK(sq.dim() == 1);
  CHECK(enumerate_squares(sq).size() == 1);

  CHECK_THROWS_AS(build_complex({{"a", "b", "a"}}), InputError);
}

TEST_CASE("is_flag basics") {
  auto hollow = boundary_delta(3, "v");  // boundary of tetrahedron as 2-complex
  auto rep = is_flag(hollow);
  CHECK_FALSE(rep.flag);
  CHECK(rep.witness.size() == 4);

  auto sq = build_complex({{"a", "b"}, {"b", "c"}, {"c", "d"}, {"d", "a"}});
  CHECK(is_flag(sq).flag);

  auto oct = octahedron();
  CHECK(is_flag(oct).flag);
}

TEST_CASE("octahedron squares") {
  auto oct = octahedron();
  auto sqs = enumerate_squares(oct);
  CHECK(sqs.size() == 3);  // one equatorial square per antipodal pair choice
  auto iso = has_isolated_squares(oct);
  CHECK_FALSE(iso.ok);  // every vertex lies in two squares
  CHECK(iso.offending_vertex.has_value());
}

TEST_CASE("squares agree with brute force on random complexes") {
  std::mt19937_64 rng(12345);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 4 + static_cast<int>(rng() % 9);  // up to 12 vertices
    double p = 0.2 + 0.06 * static_cast<double>(rng() % 10);
    std::vector<std::vector<std::string>> cells;
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back("v" + std::to_string(i));
    for (int i = 0; i < n; ++i) cells.push_back({names[i]});
    std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (std::uniform_real_distribution<>(0, 1)(rng) < p) {
          adj[i][j] = adj[j][i] = 1;
          cells.push_back({names[i], names[j]});
        }
    // fill some triangles to vary dimension
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        for (int l = j + 1; l < n; ++l)
          if (adj[i][j] && adj[j][l] && adj[i][l] && rng() % 2)
            cells.push_back({names[i], names[j], names[l]});
    auto k = build_complex(cells);
    auto prod = enumerate_squares(k);
    std::set<std::array<Vertex, 4>> got;
    for (auto& s : prod) got.insert(s.cycle);
    CHECK(got.size() == prod.size());
    CHECK(got == oracle_squares(k));
  }
}

TEST_CASE("is_flag agrees with brute force on random clique complexes") {
  std::mt19937_64 rng(999);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 4 + static_cast<int>(rng() % 7);
    std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
    std::vector<std::vector<std::string>> cells;
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back("v" + std::to_string(i));
    for (int i = 0; i < n; ++i) cells.push_back({names[i]});
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (rng() % 100 < 45) {
          adj[i][j] = adj[j][i] = 1;
          cells.push_back({names[i], names[j]});
        }
    // add all cliques as simplices for half of the trials; else leave hollow
    bool make_flag = trial % 2 == 0;
    if (make_flag) {
      for (uint32_t mask = 0; mask < (1u << n); ++mask) {
        std::vector<std::string> sub;
        bool clique = true;
        for (int i = 0; i < n && clique; ++i)
          if (mask & (1u << i)) {
            for (int j = i + 1; j < n; ++j)
              if ((mask & (1u << j)) && !adj[i][j]) {
                clique = false;
                break;
              }
            sub.push_back(names[i]);
          }
        if (clique && sub.size() >= 3) cells.push_back(sub);
      }
    }
    auto k = build_complex(cells);
    CHECK(is_flag(k).flag == oracle_is_flag(k));
  }
}

TEST_CASE("full subcomplex") {
  auto tri = build_complex({{"a", "b", "c"}});
  auto edge = build_complex({{"a", "b"}});
  CHECK(is_full_subcomplex(tri, edge));

  auto hollow = build_complex({{"a", "b"}, {"b", "c"}, {"a", "c"}});
  CHECK_FALSE(is_full_subcomplex(tri, hollow));  // 2-cell is missing from the sub

  CHECK(is_full_subcomplex(tri, std::vector<std::string>{"a", "b"}));
  CHECK_THROWS_AS(is_full_subcomplex(tri, std::vector<std::string>{"z"}), InputError);
}

TEST_CASE("vertex links") {
  auto solid = build_complex({{"a", "b", "c", "d"}});
  auto lk = vertex_link(solid, "a");
  CHECK(lk.dim() == 2);
  CHECK(lk.n_cells(2) == 1);

  auto oct = octahedron();
  auto lk2 = vertex_link(oct, "a0");
  CHECK(link_is_circle(lk2));
  CHECK(lk2.n_vertices() == 4);

  CHECK_THROWS_AS(vertex_link(oct, "zz"), InputError);
}

TEST_CASE("homology of spheres and torus") {
  auto oct = octahedron();
  auto h = homology(oct);
  REQUIRE(h.betti.size() == 3);
  CHECK(h.betti[0] == 1);
  CHECK(h.betti[1] == 0);
  CHECK(h.betti[2] == 1);
  CHECK(h.torsion_free());

  // euler characteristic cross-check
  int64_t chi = 0;
  for (size_t q = 0; q < h.betti.size(); ++q) chi += (q % 2 ? -1 : 1) * h.betti[q];
  CHECK(chi == oct.euler());

  auto rp2 = build_complex({{"1", "2", "3"}, {"1", "3", "4"}, {"1", "4", "5"},
                            {"1", "5", "6"}, {"1", "2", "6"}, {"2", "3", "5"},
                            {"3", "5", "6"}, {"3", "4", "6"}, {"2", "4", "6"},
                            {"2", "4", "5"}});  // minimal projective plane
  auto h2 = homology(rp2);
  CHECK(h2.betti[0] == 1);
  CHECK(h2.betti[1] == 0);
  CHECK(h2.betti[2] == 0);
  REQUIRE(h2.torsion[1].size() == 1);
  CHECK(h2.torsion[1][0] == "2");
}

TEST_CASE("dense smith") {
  std::vector<std::vector<bigint>> m = {{bigint(2), bigint(4)}, {bigint(6), bigint(8)}};
  auto d = dense_smith(m);
  REQUIRE(d.size() == 2);
  CHECK(d[0] == 2);
  CHECK(d[1] == 4);
}

TEST_CASE("sphere3 certificate on the 4-simplex boundary") {
  auto s3 = boundary_delta(4, "p");
  auto rep = sphere3_certificate(s3);
  CHECK(rep.pure_ok);
  CHECK(rep.closed_ok);
  CHECK(rep.links_ok);
  CHECK(rep.homology_ok);
  CHECK(rep.pi1 == Sphere3Report::Pi1::Trivial);
  CHECK(rep.pass());
}

TEST_CASE("pi1 and tietze basics") {
  auto circle = build_complex({{"a", "b"}, {"b", "c"}, {"c", "a"}});
  auto p = pi1_presentation(circle, "a");
  CHECK(p.generators.size() == 1);
  CHECK(p.relators.empty());

  auto disk = build_complex({{"a", "b", "c"}});
  auto p2 = pi1_presentation(disk, "a");
  auto t2 = tietze_simplify(p2);
  CHECK(t2.trivialized);

  GroupPresentation gp;
  gp.generators = {"x", "y"};
  gp.relators = {{2}};  // y = 1
  auto t3 = tietze_simplify(gp);
  CHECK(t3.presentation.generators.size() == 1);
  CHECK(t3.presentation.relators.empty());

  GroupPresentation gp2;
  gp2.generators = {"x", "y"};
  gp2.relators = {{1, 2}};  // xy = 1
  auto t4 = tietze_simplify(gp2);
  CHECK(t4.presentation.generators.size() == 1);
  CHECK(t4.presentation.relators.empty());
}

TEST_CASE("abelianization") {
  GroupPresentation trefoil;
  trefoil.generators = {"a", "b"};
  trefoil.relators = {{1, 2, 1, -2, -1, -2}};  // aba = bab
  auto h = abelianization(trefoil);
  CHECK(h.betti[0] == 1);
  CHECK(h.torsion[0].empty());

  GroupPresentation z2;
  z2.generators = {"x"};
  z2.relators = {{1, 1}};
  auto h2 = abelianization(z2);
  CHECK(h2.betti[0] == 0);
  REQUIRE(h2.torsion[0].size() == 1);
  CHECK(h2.torsion[0][0] == "2");
}

TEST_CASE("nonabelian certificates") {
  GroupPresentation trefoil;
  trefoil.generators = {"a", "b"};
  trefoil.relators = {{1, 2, 1, -2, -1, -2}};
  auto cert = nonabelian_certificate(trefoil, {"S3"}, 5000);
  REQUIRE(cert.has_value());
  CHECK(cert->target == "S3");
  CHECK(cert->generated_subgroup_order == 6);
  CHECK(verify_certificate(trefoil, *cert));

  GroupPresentation z;
  z.generators = {"x"};
  auto none = nonabelian_certificate(z, {"S3", "D4", "A4", "S4", "A5"}, 5000);
  CHECK_FALSE(none.has_value());  // cyclic image can never be the whole target
}

TEST_CASE("euler equals alternating betti sum on torsion-free corpus") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    int n = 5 + static_cast<int>(rng() % 5);
    std::vector<std::vector<std::string>> cells;
    for (int i = 0; i < n; ++i) cells.push_back({"v" + std::to_string(i)});
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (rng() % 100 < 40) cells.push_back({"v" + std::to_string(i), "v" + std::to_string(j)});
    auto k = build_complex(cells);  // 1-dimensional: always torsion-free
    auto h = homology(k);
    int64_t chi = 0;
    for (size_t q = 0; q < h.betti.size(); ++q) chi += (q % 2 ? -1 : 1) * h.betti[q];
    CHECK(chi == k.euler());
    CHECK(h.torsion_free());
  }
}
