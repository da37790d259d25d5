#include "kf/subdivide.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace kf {

// ---------------------------------------------------------------- carrier

std::vector<Vertex> CarrierMap::carrier_of(const SimplicialComplex& base,
                                           std::span<const Vertex> cell) const {
  std::vector<Vertex> u;
  for (Vertex v : cell)
    for (Vertex b : vertex_carrier[v]) u.push_back(b);
  std::sort(u.begin(), u.end());
  u.erase(std::unique(u.begin(), u.end()), u.end());
  if (!base.contains(u)) throw CheckError("carrier: union of vertex carriers is not a base cell");
  return u;
}

void CarrierMap::validate(const SimplicialComplex& refinement,
                          const SimplicialComplex& base) const {
  if (vertex_carrier.size() != refinement.n_vertices())
    throw CheckError("carrier: wrong vertex count");
  for (int d = 0; d <= refinement.dim(); ++d) {
    const CellSet& cs = refinement.cells(d);
    for (size_t i = 0; i < cs.size(); ++i) carrier_of(base, cs.get(i));
  }
}

// ---------------------------------------------------------------- template

std::string midpoint_label(const std::string& u, const std::string& v) {
  const std::string& a = std::min(u, v);
  const std::string& b = std::max(u, v);
  return "m|" + a + "|" + b;
}

static std::string interior_label(const std::array<std::string, 3>& corners, int p) {
  return "i|" + corners[0] + "|" + corners[1] + "|" + corners[2] + "|" + std::to_string(p);
}

// The 10-triangle pattern on sorted corners (a, b, c): two triangles at each
// corner through its private interior vertex, an ear per midpoint, and the
// central triangle. Midpoints are pairwise non-adjacent and no corner sees
// the opposite midpoint.
static std::vector<std::array<std::string, 3>> pattern_triangles(
    const std::array<std::string, 3>& c) {
  std::string mab = midpoint_label(c[0], c[1]);
  std::string mac = midpoint_label(c[0], c[2]);
  std::string mbc = midpoint_label(c[1], c[2]);
  std::string ia = interior_label(c, 0), ib = interior_label(c, 1), ic = interior_label(c, 2);
  return {
      {c[0], mab, ia}, {c[0], ia, mac},
      {c[1], mbc, ib}, {c[1], ib, mab},
      {c[2], mac, ic}, {c[2], ic, mbc},
      {ib, mab, ia},   {ia, mac, ic},   {ic, mbc, ib},
      {ia, ib, ic},
  };
}

TriangleTemplate triangle_template() {
  TriangleTemplate t;
  std::array<std::string, 3> c = {"A", "B", "C"};
  t.vertices = {"A",
                "B",
                "C",
                midpoint_label("A", "B"),
                midpoint_label("A", "C"),
                midpoint_label("B", "C"),
                interior_label(c, 0),
                interior_label(c, 1),
                interior_label(c, 2)};
  t.triangles = pattern_triangles(c);
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      std::string m = midpoint_label(c[i], c[j]);
      t.boundary_map.push_back({{c[i], c[j]}, {{{c[i], m}, {m, c[j]}}}});
    }
  return t;
}

// ---------------------------------------------------------------- surface

SubdivisionResult subdivide_surface(const SimplicialComplex& k) {
  if (k.dim() > 2) throw InputError("subdivide_surface expects a complex of dimension <= 2");
  ComplexBuilder b;
  std::vector<std::vector<Vertex>> vc;
  auto intern = [&](const std::string& label, std::vector<Vertex> carrier) {
    size_t before = b.n_vertices();
    Vertex v = b.intern(label);
    if (b.n_vertices() > before) vc.push_back(std::move(carrier));
    return v;
  };
  for (Vertex v = 0; v < static_cast<Vertex>(k.n_vertices()); ++v) intern(k.label(v), {v});
  if (k.dim() >= 1) {
    const CellSet& es = k.cells(1);
    for (size_t i = 0; i < es.size(); ++i) {
      auto e = es.get(i);
      Vertex m = intern(midpoint_label(k.label(e[0]), k.label(e[1])), {e[0], e[1]});
      b.add_cell({static_cast<Vertex>(e[0]), m});
      b.add_cell({m, static_cast<Vertex>(e[1])});
    }
  }
  if (k.dim() >= 2) {
    const CellSet& ts = k.cells(2);
    for (size_t i = 0; i < ts.size(); ++i) {
      auto t = ts.get(i);
      std::array<std::string, 3> c = {k.label(t[0]), k.label(t[1]), k.label(t[2])};
      std::sort(c.begin(), c.end());
      std::vector<Vertex> fc = {t[0], t[1], t[2]};
      std::sort(fc.begin(), fc.end());
      for (int p = 0; p < 3; ++p) intern(interior_label(c, p), fc);
      for (auto& tri : pattern_triangles(c)) {
        Vertex cell[3];
        for (int j = 0; j < 3; ++j) cell[j] = *b.lookup(tri[j]);
        b.add_cell(std::span<const Vertex>(cell, 3));
      }
    }
  }
  SubdivisionResult r;
  r.refined = b.build();
  r.carrier.vertex_carrier = std::move(vc);
  return r;
}

// ---------------------------------------------------------------- 3d fill

namespace {

// Subdivided boundary sphere of one tetrahedron: 22 vertices, 40 triangles.
struct TetBoundary {
  std::vector<std::string> verts;              // local id -> label
  std::vector<std::array<int, 3>> tris;        // 40
  std::vector<std::array<int, 2>> edge_verts;  // per boundary edge
  std::vector<std::array<int, 2>> edge_tris;   // its two triangles
  std::map<std::array<int, 2>, int> edge_id;
};

TetBoundary tet_boundary(const std::array<std::string, 4>& corners) {
  TetBoundary tb;
  std::map<std::string, int> local;
  auto id = [&](const std::string& l) {
    auto it = local.find(l);
    if (it != local.end()) return it->second;
    int v = static_cast<int>(tb.verts.size());
    local.emplace(l, v);
    tb.verts.push_back(l);
    return v;
  };
  for (auto& c : corners) id(c);
  std::map<std::array<int, 2>, std::vector<int>> et;
  for (int skip = 3; skip >= 0; --skip) {
    std::array<std::string, 3> f;
    int w = 0;
    for (int j = 0; j < 4; ++j)
      if (j != skip) f[w++] = corners[j];
    for (auto& tri : pattern_triangles(f)) {
      std::array<int, 3> t = {id(tri[0]), id(tri[1]), id(tri[2])};
      int ti = static_cast<int>(tb.tris.size());
      tb.tris.push_back(t);
      for (int a = 0; a < 3; ++a)
        for (int b2 = a + 1; b2 < 3; ++b2)
          et[{std::min(t[a], t[b2]), std::max(t[a], t[b2])}].push_back(ti);
    }
  }
  for (auto& [e, ts] : et) {
    if (ts.size() != 2) throw CheckError("tet boundary: edge not in exactly two triangles");
    tb.edge_id[e] = static_cast<int>(tb.edge_verts.size());
    tb.edge_verts.push_back(e);
    tb.edge_tris.push_back({ts[0], ts[1]});
  }
  return tb;
}

}  // namespace

SubdivisionResult ps_subdivide_3(const SimplicialComplex& k) {
  if (k.dim() != 3) throw InputError("ps_subdivide_3 expects a 3-dimensional complex");
  {
    // purity: every lower cell is a face of some tetrahedron
    CellSet tri_seen(3), edge_seen(2);
    std::vector<char> seen_v(k.n_vertices(), 0);
    const CellSet& tets = k.cells(3);
    std::vector<Vertex> face, e2;
    for (size_t i = 0; i < tets.size(); ++i) {
      auto c = tets.get(i);
      for (Vertex v : c) seen_v[v] = 1;
      for (int skip = 0; skip < 4; ++skip) {
        face.clear();
        for (int j = 0; j < 4; ++j)
          if (j != skip) face.push_back(c[j]);
        tri_seen.insert(face);
        for (int s2 = 0; s2 < 3; ++s2) {
          e2.clear();
          for (int j = 0; j < 3; ++j)
            if (j != s2) e2.push_back(face[j]);
          edge_seen.insert(e2);
        }
      }
    }
    bool pure = tri_seen.size() == k.n_cells(2) && edge_seen.size() == k.n_cells(1);
    for (char c : seen_v) pure &= c != 0;
    if (!pure) throw InputError("ps_subdivide_3: complex is not pure 3-dimensional");
  }

  ComplexBuilder b;
  std::vector<std::vector<Vertex>> vc;
  auto intern = [&](const std::string& label, const std::vector<Vertex>& carrier) {
    size_t before = b.n_vertices();
    Vertex v = b.intern(label);
    if (b.n_vertices() > before) vc.push_back(carrier);
    return v;
  };
  for (Vertex v = 0; v < static_cast<Vertex>(k.n_vertices()); ++v) intern(k.label(v), {v});

  std::vector<uint32_t> tet_source;
  const CellSet& tets = k.cells(3);
  for (size_t i = 0; i < tets.size(); ++i) {
    size_t before = b.n_cells(3);
    (void)before;
    auto c = tets.get(i);
    std::array<std::string, 4> labels = {k.label(c[0]), k.label(c[1]), k.label(c[2]),
                                         k.label(c[3])};
    std::sort(labels.begin(), labels.end());
    std::vector<Vertex> tet_carrier(c.begin(), c.end());
    std::string sig = labels[0] + "|" + labels[1] + "|" + labels[2] + "|" + labels[3];

    // carriers for every boundary label of this tetrahedron
    std::map<std::string, std::vector<Vertex>> car;
    for (auto& l : labels) car[l] = {k.vertex(l)};
    for (int a = 0; a < 4; ++a)
      for (int b2 = a + 1; b2 < 4; ++b2) {
        std::vector<Vertex> e = {k.vertex(labels[a]), k.vertex(labels[b2])};
        std::sort(e.begin(), e.end());
        car[midpoint_label(labels[a], labels[b2])] = e;
      }
    for (int skip = 0; skip < 4; ++skip) {
      std::array<std::string, 3> f;
      int w = 0;
      for (int j = 0; j < 4; ++j)
        if (j != skip) f[w++] = labels[j];
      std::vector<Vertex> fv = {k.vertex(f[0]), k.vertex(f[1]), k.vertex(f[2])};
      std::sort(fv.begin(), fv.end());
      for (int p = 0; p < 3; ++p) car[interior_label(f, p)] = fv;
    }

    TetBoundary tb = tet_boundary(labels);
    std::vector<Vertex> bv(tb.verts.size());
    for (size_t j = 0; j < tb.verts.size(); ++j) bv[j] = intern(tb.verts[j], car.at(tb.verts[j]));

    // interior fill: anchors behind boundary triangles, an inner vertex copy
    // with verticals, a medial layer over the copy, per-triangle centers,
    // two cap layers over the copy's vertices, and one central vertex
    size_t nt = tb.tris.size(), nv = tb.verts.size(), ne = tb.edge_verts.size();
    std::vector<Vertex> q(nt), u(nt), w(nv), kk(nv), r(nv), l(ne);
    for (size_t j = 0; j < nt; ++j) {
      q[j] = intern("q|" + sig + "|" + std::to_string(j), tet_carrier);
      u[j] = intern("u|" + sig + "|" + std::to_string(j), tet_carrier);
    }
    for (size_t j = 0; j < nv; ++j) {
      w[j] = intern("w|" + sig + "|" + std::to_string(j), tet_carrier);
      kk[j] = intern("k|" + sig + "|" + std::to_string(j), tet_carrier);
      r[j] = intern("r|" + sig + "|" + std::to_string(j), tet_carrier);
    }
    for (size_t j = 0; j < ne; ++j)
      l[j] = intern("l|" + sig + "|" + std::to_string(j), tet_carrier);
    Vertex z = intern("z|" + sig, tet_carrier);

    auto eid = [&](int a2, int b2) {
      return tb.edge_id.at({std::min(a2, b2), std::max(a2, b2)});
    };
    for (size_t t = 0; t < nt; ++t) {
      auto& tr = tb.tris[t];
      int x = tr[0], y = tr[1], z3 = tr[2];
      Vertex lxy = l[eid(x, y)], lyz = l[eid(y, z3)], lxz = l[eid(x, z3)];
      b.add_cell({bv[x], bv[y], bv[z3], q[t]});
      b.add_cell({q[t], w[x], lxy, lxz});
      b.add_cell({q[t], w[y], lxy, lyz});
      b.add_cell({q[t], w[z3], lxz, lyz});
      b.add_cell({q[t], lxy, lyz, lxz});
      b.add_cell({kk[x], w[x], lxy, lxz});
      b.add_cell({kk[y], w[y], lxy, lyz});
      b.add_cell({kk[z3], w[z3], lxz, lyz});
      b.add_cell({u[t], lxy, lyz, lxz});
      b.add_cell({kk[x], u[t], lxy, lxz});
      b.add_cell({kk[y], u[t], lxy, lyz});
      b.add_cell({kk[z3], u[t], lxz, lyz});
      b.add_cell({u[t], r[x], r[y], r[z3]});
      b.add_cell({z, r[x], r[y], r[z3]});
    }
    for (size_t e = 0; e < ne; ++e) {
      int x = tb.edge_verts[e][0], y = tb.edge_verts[e][1];
      int t1 = tb.edge_tris[e][0], t2 = tb.edge_tris[e][1];
      b.add_cell({bv[x], bv[y], q[t1], q[t2]});
      b.add_cell({bv[x], q[t1], q[t2], w[x]});
      b.add_cell({bv[y], q[t1], q[t2], w[y]});
      b.add_cell({q[t1], q[t2], w[x], l[e]});
      b.add_cell({q[t1], q[t2], l[e], w[y]});
      b.add_cell({l[e], u[t1], u[t2], kk[x]});
      b.add_cell({l[e], u[t1], u[t2], kk[y]});
      b.add_cell({kk[x], u[t1], u[t2], r[x]});
      b.add_cell({kk[y], u[t1], u[t2], r[y]});
      b.add_cell({r[x], r[y], u[t1], u[t2]});
    }
    while (tet_source.size() < b.n_cells(3)) tet_source.push_back(static_cast<uint32_t>(i));
  }

  SubdivisionResult r;
  r.refined = b.build();
  r.carrier.vertex_carrier = std::move(vc);
  r.tet_source = std::move(tet_source);

  // hard postcondition: flag and square-free, or fail loudly
  FlagReport fr = is_flag(r.refined);
  if (!fr.flag) {
    std::string w;
    for (auto& s : fr.witness) w += s + " ";
    throw CheckError("ps_subdivide_3: output not flag; clique witness: " + w);
  }
  auto sq = enumerate_squares(r.refined);
  if (!sq.empty()) {
    std::string w;
    for (Vertex v : sq[0].cycle) w += r.refined.label(v) + " ";
    throw CheckError("ps_subdivide_3: output has a square: " + w);
  }
  return r;
}

// ---------------------------------------------------------------- solid torus

namespace {

// subdivision of one 9-tetrahedron block (shared by the full rule)
SimplicialComplex subdivide_block_complex(const SimplicialComplex& bk,
                                          const std::set<std::string>& interior) {
  ComplexBuilder bb;
  const CellSet& btets = bk.cells(3);
  for (size_t i = 0; i < btets.size(); ++i) {
    auto c = btets.get(i);
    std::vector<std::string> in, outv;
    for (Vertex v : c) (interior.count(bk.label(v)) ? in : outv).push_back(bk.label(v));
    if (in.size() == 1) {
      std::array<std::string, 3> face = {outv[0], outv[1], outv[2]};
      std::sort(face.begin(), face.end());
      Vertex av = bb.intern(in[0]);
      for (auto& tri : pattern_triangles(face)) {
        Vertex cell[4] = {av, bb.intern(tri[0]), bb.intern(tri[1]), bb.intern(tri[2])};
        bb.add_cell(std::span<const Vertex>(cell, 4));
      }
    } else if (in.size() == 2) {
      Vertex m = bb.intern(midpoint_label(outv[0], outv[1]));
      Vertex cell1[4] = {bb.intern(in[0]), bb.intern(in[1]), bb.intern(outv[0]), m};
      Vertex cell2[4] = {bb.intern(in[0]), bb.intern(in[1]), m, bb.intern(outv[1])};
      bb.add_cell(std::span<const Vertex>(cell1, 4));
      bb.add_cell(std::span<const Vertex>(cell2, 4));
    } else {
      throw CheckError("subdivide block: unexpected interior count");
    }
  }
  return bb.build();
}

}  // namespace

SolidTorusComplex subdivide_solid_torus(const SolidTorusComplex& n) {
  const SimplicialComplex& k = n.complex;
  std::set<std::string> interior(n.interior_vertices.begin(), n.interior_vertices.end());

  SolidTorusComplex out;
  out.complex = subdivide_block_complex(k, interior);
  out.interior_vertices = n.interior_vertices;
  out.core = n.core;
  for (auto& l : out.complex.labels())
    if (!interior.count(l)) out.boundary_vertices.push_back(l);
  for (auto& blk : n.blocks) {
    BlockComplex nb;
    nb.bottom_center = blk.bottom_center;
    nb.top_center = blk.top_center;
    nb.bottom_outer = blk.bottom_outer;
    nb.top_outer = blk.top_outer;
    nb.center_edge = blk.center_edge;
    nb.complex = subdivide_block_complex(blk.complex, {blk.bottom_center, blk.top_center});
    out.blocks.push_back(std::move(nb));
  }
  for (auto& m : n.meridians) {
    std::vector<std::string> curve;
    for (size_t i = 0; i < m.size(); ++i) {
      curve.push_back(m[i]);
      curve.push_back(midpoint_label(m[i], m[(i + 1) % m.size()]));
    }
    out.meridians.push_back(std::move(curve));
  }
  for (size_t i = 0; i < n.longitude.size(); ++i) {
    out.longitude.push_back(n.longitude[i]);
    out.longitude.push_back(
        midpoint_label(n.longitude[i], n.longitude[(i + 1) % n.longitude.size()]));
  }
  return out;
}

// ---------------------------------------------------------------- block pattern

BlockBoundaryReport block_boundary_pattern(const SolidTorusComplex& nprime, int block) {
  if (block < 0 || block > 3) throw InputError("block index out of range");
  if (nprime.blocks.size() != 4) throw InputError("block_boundary_pattern expects 4 blocks");
  const BlockComplex& blk = nprime.blocks[block];
  const BlockComplex& next = nprime.blocks[(block + 1) % 4];
  BlockBoundaryReport rep;

  const SimplicialComplex& bk = blk.complex;
  std::set<std::string> centers{blk.bottom_center, blk.top_center};
  {
    const CellSet& tris = bk.cells(2);
    std::vector<int> cnt(tris.size(), 0);
    const CellSet& tets = bk.cells(3);
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
    ComplexBuilder ab;
    for (size_t i = 0; i < tris.size(); ++i) {
      if (cnt[i] != 1) continue;
      auto c = tris.get(i);
      bool center = false;
      for (Vertex v : c) center |= centers.count(bk.label(v)) > 0;
      if (center) continue;
      Vertex cell[3] = {ab.intern(bk.label(c[0])), ab.intern(bk.label(c[1])),
                        ab.intern(bk.label(c[2]))};
      ab.add_cell(std::span<const Vertex>(cell, 3));
    }
    rep.annulus = ab.build();
  }
  if (rep.annulus.n_cells(2) != 60)
    throw CheckError("block boundary: annulus is not 60 triangles");

  for (int i = 0; i < 3; ++i) {
    rep.bottom_cycle.push_back(blk.bottom_outer[i]);
    rep.bottom_cycle.push_back(
        midpoint_label(blk.bottom_outer[i], blk.bottom_outer[(i + 1) % 3]));
  }
  std::set<std::string> bottom(rep.bottom_cycle.begin(), rep.bottom_cycle.end());
  for (size_t i = 0; i < rep.bottom_cycle.size(); ++i) {
    Vertex a = rep.annulus.vertex(rep.bottom_cycle[i]);
    Vertex b = rep.annulus.vertex(rep.bottom_cycle[(i + 1) % rep.bottom_cycle.size()]);
    if (!rep.annulus.has_edge(a, b)) throw CheckError("block boundary: bottom cycle broken");
  }

  rep.special_pairs_adjacent = true;
  for (auto& l : rep.annulus.labels()) {
    if (bottom.count(l)) continue;
    std::vector<std::string> hits;
    for (Vertex w : rep.annulus.neighbors(rep.annulus.vertex(l)))
      if (bottom.count(rep.annulus.label(w))) hits.push_back(rep.annulus.label(w));
    if (hits.size() >= 2) {
      rep.special_vertices.push_back(l);
      for (size_t a = 0; a < hits.size(); ++a)
        for (size_t b = a + 1; b < hits.size(); ++b)
          if (!rep.annulus.has_edge(rep.annulus.vertex(hits[a]), rep.annulus.vertex(hits[b])))
            rep.special_pairs_adjacent = false;
    }
  }
  std::sort(rep.special_vertices.begin(), rep.special_vertices.end());
  if (rep.special_vertices.size() != 6)
    throw CheckError("block boundary: expected exactly six special vertices");
  if (!rep.special_pairs_adjacent)
    throw CheckError("block boundary: special vertex with non-adjacent bottom pair");

  {
    std::set<std::string> theirs(next.complex.labels().begin(), next.complex.labels().end());
    for (int i = 0; i < 3; ++i) {
      rep.adjacent_intersection_cycle.push_back(blk.top_outer[i]);
      rep.adjacent_intersection_cycle.push_back(
          midpoint_label(blk.top_outer[i], blk.top_outer[(i + 1) % 3]));
    }
    std::set<std::string> interior(nprime.interior_vertices.begin(),
                                   nprime.interior_vertices.end());
    std::set<std::string> shared_boundary;
    for (auto& l : blk.complex.labels())
      if (theirs.count(l) && !interior.count(l)) shared_boundary.insert(l);
    std::set<std::string> cyc(rep.adjacent_intersection_cycle.begin(),
                              rep.adjacent_intersection_cycle.end());
    if (shared_boundary != cyc)
      throw CheckError("block boundary: adjacent intersection is not the 6-vertex circle");
    for (size_t i = 0; i < rep.adjacent_intersection_cycle.size(); ++i) {
      auto& a = rep.adjacent_intersection_cycle[i];
      auto& b = rep.adjacent_intersection_cycle[(i + 1) % rep.adjacent_intersection_cycle.size()];
      if (!blk.complex.has_edge(blk.complex.vertex(a), blk.complex.vertex(b)))
        throw CheckError("block boundary: shared circle is not consecutive edges");
    }
  }
  return rep;
}

// ---------------------------------------------------------------- collar

SimplicialComplex collar_triangulation(const SimplicialComplex& t_base,
                                       const SimplicialComplex& t_top,
                                       const CarrierMap& carrier, const std::string& tag) {
  if (carrier.vertex_carrier.size() != t_top.n_vertices())
    throw InputError("collar: carrier does not match the top complex");
  for (auto& l : t_top.labels())
    if (t_base.try_vertex(l)) throw InputError("collar: base and top labels overlap: " + l);
  std::vector<Vertex> top_copy(t_base.n_vertices(), -1);
  for (Vertex v = 0; v < static_cast<Vertex>(t_top.n_vertices()); ++v) {
    auto& c = carrier.vertex_carrier[v];
    if (c.size() == 1) {
      if (top_copy[c[0]] >= 0) throw InputError("collar: two top copies of one base vertex");
      top_copy[c[0]] = v;
    }
  }
  for (Vertex v = 0; v < static_cast<Vertex>(t_base.n_vertices()); ++v)
    if (top_copy[v] < 0)
      throw InputError("collar: base vertex '" + t_base.label(v) + "' has no top copy");
  carrier.validate(t_top, t_base);  // throws on non-monotone data
  if (t_base.dim() < 1) throw InputError("collar: base must have edges");

  ComplexBuilder b;
  auto B = [&](Vertex v) { return b.intern(t_base.label(v)); };
  auto T = [&](Vertex v) { return b.intern(t_top.label(v)); };

  std::map<std::vector<Vertex>, std::vector<std::vector<Vertex>>> top_edges_by_carrier,
      top_tris_by_carrier;
  for (int d = 1; d <= std::min(t_top.dim(), 2); ++d) {
    const CellSet& cs = t_top.cells(d);
    for (size_t i = 0; i < cs.size(); ++i) {
      auto c = cs.get(i);
      std::vector<Vertex> carv = carrier.carrier_of(t_base, c);
      std::vector<Vertex> cell(c.begin(), c.end());
      (d == 1 ? top_edges_by_carrier : top_tris_by_carrier)[carv].push_back(cell);
    }
  }

  struct Wall {
    std::vector<std::array<Vertex, 3>> tris;
  };
  std::map<std::array<Vertex, 2>, Wall> walls;

  auto build_wall = [&](Vertex u, Vertex v) -> Wall& {
    std::array<Vertex, 2> key{std::min(u, v), std::max(u, v)};
    auto it = walls.find(key);
    if (it != walls.end()) return it->second;
    Wall w;
    std::vector<std::vector<Vertex>> path_edges;
    auto pe = top_edges_by_carrier.find({key[0], key[1]});
    if (pe != top_edges_by_carrier.end()) path_edges = pe->second;
    std::map<Vertex, std::vector<Vertex>> adj;
    for (auto& e : path_edges) {
      adj[e[0]].push_back(e[1]);
      adj[e[1]].push_back(e[0]);
    }
    std::vector<Vertex> path{top_copy[key[0]]};
    Vertex prev = -1;
    while (path.back() != top_copy[key[1]]) {
      Vertex nxt = -1;
      for (Vertex x : adj[path.back()])
        if (x != prev) nxt = x;
      if (nxt < 0 || path.size() > path_edges.size() + 1)
        throw InputError("collar: top edges over a base edge do not form a path");
      prev = path.back();
      path.push_back(nxt);
    }
    if (path.size() != path_edges.size() + 1)
      throw InputError("collar: stray top edges over a base edge");
    Vertex apex =
        b.intern("ce|" + tag + "|" + t_base.label(key[0]) + "|" + t_base.label(key[1]));
    std::vector<Vertex> cyc;
    cyc.push_back(B(key[0]));
    cyc.push_back(B(key[1]));
    for (size_t i = path.size(); i-- > 0;) cyc.push_back(T(path[i]));
    for (size_t i = 0; i < cyc.size(); ++i)
      w.tris.push_back({apex, cyc[i], cyc[(i + 1) % cyc.size()]});
    return walls.emplace(key, std::move(w)).first->second;
  };

  const CellSet& bes = t_base.cells(1);
  for (size_t i = 0; i < bes.size(); ++i) {
    auto e = bes.get(i);
    build_wall(e[0], e[1]);
  }
  if (t_base.dim() >= 2) {
    const CellSet& bts = t_base.cells(2);
    for (size_t i = 0; i < bts.size(); ++i) {
      auto tcell = bts.get(i);
      Vertex apex = b.intern("ct|" + tag + "|" + t_base.label(tcell[0]) + "|" +
                             t_base.label(tcell[1]) + "|" + t_base.label(tcell[2]));
      b.add_cell({apex, B(tcell[0]), B(tcell[1]), B(tcell[2])});
      std::vector<Vertex> carv(tcell.begin(), tcell.end());
      size_t top_count = 0;
      for (auto& [carr, tris] : top_tris_by_carrier) {
        if (!std::includes(carv.begin(), carv.end(), carr.begin(), carr.end())) continue;
        for (auto& tt : tris) {
          b.add_cell({apex, T(tt[0]), T(tt[1]), T(tt[2])});
          ++top_count;
        }
      }
      if (top_count == 0) throw InputError("collar: base triangle has no top triangles");
      for (int a = 0; a < 3; ++a)
        for (int b2 = a + 1; b2 < 3; ++b2) {
          Wall& w = build_wall(tcell[a], tcell[b2]);
          for (auto& tr : w.tris) b.add_cell({apex, tr[0], tr[1], tr[2]});
        }
    }
  }
  return b.build();
}

}  // namespace kf
