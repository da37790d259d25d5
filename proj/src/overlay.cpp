#include "kf/overlay.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace kf {

namespace {

Rat cross(const Vec2& o, const Vec2& a, const Vec2& b) {
  return (a.x - o.x) * (b.y - o.y) - (b.x - o.x) * (a.y - o.y);
}

Rat ceil_rat(const Rat& r) { return Rat(-((Rat(0) - r).floor())); }

using Poly = std::vector<Vec2>;

Poly clip_halfplane(const Poly& poly, const Vec2& a, const Vec2& b) {
  // keep the closed left side of a -> b
  Poly out;
  size_t n = poly.size();
  for (size_t i = 0; i < n; ++i) {
    const Vec2& s = poly[i];
    const Vec2& e = poly[(i + 1) % n];
    Rat cs = cross(a, b, s), ce = cross(a, b, e);
    bool ins = !(cs < Rat(0)), ine = !(ce < Rat(0));
    if (ins) out.push_back(s);
    if (ins != ine) {
      Rat t = cs / (cs - ce);
      out.push_back({s.x + t * (e.x - s.x), s.y + t * (e.y - s.y)});
    }
  }
  return out;
}

void clean_poly(Poly& p) {
  // drop duplicate and collinear chain points, one at a time
  bool changed = true;
  while (changed && p.size() >= 3) {
    changed = false;
    size_t n = p.size();
    for (size_t i = 0; i < n; ++i) {
      const Vec2& prev = p[(i + n - 1) % n];
      const Vec2& cur = p[i];
      const Vec2& next = p[(i + 1) % n];
      if (cur == prev || cross(prev, cur, next) == Rat(0)) {
        p.erase(p.begin() + i);
        changed = true;
        break;
      }
    }
  }
  if (p.size() < 3) p.clear();
}

Rat poly_area2(const Poly& p) {
  Rat a(0);
  for (size_t i = 0; i < p.size(); ++i) {
    const Vec2& s = p[i];
    const Vec2& e = p[(i + 1) % p.size()];
    a = a + (s.x * e.y - e.x * s.y);
  }
  return a;
}

// smallest simplex of the triangle (by labels) containing p; lifts CCW
std::vector<std::string> carrier_in_triangle(const Vec2& p, const std::array<Vec2, 3>& l,
                                             const std::array<std::string, 3>& labels) {
  Rat w0 = cross(p, l[1], l[2]);
  Rat w1 = cross(p, l[2], l[0]);
  Rat w2 = cross(p, l[0], l[1]);
  if (w0 < Rat(0) || w1 < Rat(0) || w2 < Rat(0)) return {};
  std::vector<std::string> out;
  if (w0 != Rat(0)) out.push_back(labels[0]);
  if (w1 != Rat(0)) out.push_back(labels[1]);
  if (w2 != Rat(0)) out.push_back(labels[2]);
  std::sort(out.begin(), out.end());
  return out;
}

AffineTorus transformed(const AffineTorus& t, const TorusTransform& m) {
  int64_t det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  if (det != 1 && det != -1) throw InputError("overlay: transform is not in GL2(Z)");
  AffineTorus out;
  out.labels = t.labels;
  auto ap = [&](const Vec2& p) -> Vec2 {
    return {Rat(m[0][0]) * p.x + Rat(m[0][1]) * p.y, Rat(m[1][0]) * p.x + Rat(m[1][1]) * p.y};
  };
  for (auto& c : t.coords) {
    Vec2 q = ap(c);
    out.coords.push_back({q.x.mod1(), q.y.mod1()});
  }
  for (size_t i = 0; i < t.tris.size(); ++i) {
    std::array<Vec2, 3> l = {ap(t.lifts[i][0]), ap(t.lifts[i][1]), ap(t.lifts[i][2])};
    std::array<std::string, 3> names = t.tris[i];
    if (det < 0) {  // restore positive orientation
      std::swap(l[1], l[2]);
      std::swap(names[1], names[2]);
    }
    out.tris.push_back(names);
    out.lifts.push_back(l);
  }
  validate_affine_torus(out);
  return out;
}

}  // namespace

SimplicialComplex affine_torus_complex(const AffineTorus& t) {
  ComplexBuilder b;
  for (auto& l : t.labels) b.intern(l);
  for (auto& tri : t.tris) {
    Vertex cell[3] = {*b.lookup(tri[0]), *b.lookup(tri[1]), *b.lookup(tri[2])};
    b.add_cell(std::span<const Vertex>(cell, 3));
  }
  return b.build();
}

OverlayResult overlay_refinement(const AffineTorus& t1, const AffineTorus& t2,
                                 const TorusTransform& transform) {
  validate_affine_torus(t1);
  validate_affine_torus(t2);
  AffineTorus u2 = transformed(t2, transform);

  struct VertexRec {
    Vec2 pt;
    std::vector<std::string> c1, c2;
  };
  std::map<Vec2, int> vid;
  std::vector<VertexRec> recs;
  auto merge_carrier = [](std::vector<std::string>& dst, const std::vector<std::string>& src) {
    if (src.empty()) return;
    if (dst.empty() || src.size() < dst.size()) dst = src;
  };
  auto intern_pt = [&](const Vec2& lifted, const std::vector<std::string>& c1,
                       const std::vector<std::string>& c2) {
    Vec2 canon{lifted.x.mod1(), lifted.y.mod1()};
    auto it = vid.find(canon);
    int id;
    if (it == vid.end()) {
      id = static_cast<int>(recs.size());
      vid.emplace(canon, id);
      recs.push_back({canon, {}, {}});
    } else {
      id = it->second;
    }
    merge_carrier(recs[id].c1, c1);
    merge_carrier(recs[id].c2, c2);
    return id;
  };

  std::vector<std::array<int, 3>> tris;
  Rat covered(0);
  for (size_t ia = 0; ia < t1.tris.size(); ++ia) {
    const auto& A = t1.lifts[ia];
    Rat ax0 = std::min({A[0].x, A[1].x, A[2].x}), ax1 = std::max({A[0].x, A[1].x, A[2].x});
    Rat ay0 = std::min({A[0].y, A[1].y, A[2].y}), ay1 = std::max({A[0].y, A[1].y, A[2].y});
    for (size_t ib = 0; ib < u2.tris.size(); ++ib) {
      const auto& B = u2.lifts[ib];
      Rat bx0 = std::min({B[0].x, B[1].x, B[2].x}), bx1 = std::max({B[0].x, B[1].x, B[2].x});
      Rat by0 = std::min({B[0].y, B[1].y, B[2].y}), by1 = std::max({B[0].y, B[1].y, B[2].y});
      int64_t sx0 = ceil_rat(ax0 - bx1).floor(), sx1 = (ax1 - bx0).floor();
      int64_t sy0 = ceil_rat(ay0 - by1).floor(), sy1 = (ay1 - by0).floor();
      for (int64_t sx = sx0; sx <= sx1; ++sx)
        for (int64_t sy = sy0; sy <= sy1; ++sy) {
          Poly poly = {{B[0].x + Rat(sx), B[0].y + Rat(sy)},
                       {B[1].x + Rat(sx), B[1].y + Rat(sy)},
                       {B[2].x + Rat(sx), B[2].y + Rat(sy)}};
          for (int e = 0; e < 3 && !poly.empty(); ++e)
            poly = clip_halfplane(poly, A[e], A[(e + 1) % 3]);
          clean_poly(poly);
          if (poly.empty()) continue;
          Rat area2 = poly_area2(poly);
          if (!(Rat(0) < area2)) continue;
          covered = covered + area2;
          std::vector<int> ids;
          std::array<Vec2, 3> Bs = {poly[0], poly[0], poly[0]};  // shifted B lift
          std::array<Vec2, 3> Bshift = {
              Vec2{B[0].x + Rat(sx), B[0].y + Rat(sy)},
              Vec2{B[1].x + Rat(sx), B[1].y + Rat(sy)},
              Vec2{B[2].x + Rat(sx), B[2].y + Rat(sy)}};
          (void)Bs;
          for (auto& pt : poly) {
            auto c1 = carrier_in_triangle(pt, A, t1.tris[ia]);
            auto c2 = carrier_in_triangle(pt, Bshift, u2.tris[ib]);
            if (c1.empty() || c2.empty())
              throw CheckError("overlay: clipped point escaped its source triangles");
            ids.push_back(intern_pt(pt, c1, c2));
          }
          for (size_t j = 1; j + 1 < ids.size(); ++j)
            tris.push_back({ids[0], ids[static_cast<int>(j)], ids[j + 1]});
        }
    }
  }
  if (covered != Rat(2)) throw CheckError("overlay: cells do not tile the torus");

  // deterministic labels by coordinate order
  std::vector<int> order(recs.size());
  for (size_t i = 0; i < recs.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return recs[a].pt < recs[b].pt; });
  std::vector<int> rank(recs.size());
  for (size_t i = 0; i < order.size(); ++i) rank[order[i]] = static_cast<int>(i);

  OverlayResult out;
  ComplexBuilder b;
  out.coords.resize(recs.size());
  out.carrier1.resize(recs.size());
  out.carrier2.resize(recs.size());
  for (size_t i = 0; i < order.size(); ++i) {
    int src = order[i];
    b.intern("ov" + std::to_string(i));
    out.coords[i] = recs[src].pt;
    out.carrier1[i] = recs[src].c1;
    out.carrier2[i] = recs[src].c2;
  }
  for (auto& t : tris) {
    Vertex cell[3] = {static_cast<Vertex>(rank[t[0]]), static_cast<Vertex>(rank[t[1]]),
                      static_cast<Vertex>(rank[t[2]])};
    b.add_cell(std::span<const Vertex>(cell, 3));
  }
  out.refinement = b.build();

  // structural gates: closed surface with torus euler characteristic
  if (out.refinement.euler() != 0) throw CheckError("overlay: refinement is not a torus");
  {
    const CellSet& ts = out.refinement.cells(2);
    std::vector<int> cnt(out.refinement.n_cells(1), 0);
    std::vector<Vertex> e;
    for (size_t i = 0; i < ts.size(); ++i) {
      auto c = ts.get(i);
      for (int skip = 0; skip < 3; ++skip) {
        e.clear();
        for (int j = 0; j < 3; ++j)
          if (j != skip) e.push_back(c[j]);
        ++cnt[out.refinement.cells(1).find(e)];
      }
    }
    for (int c : cnt)
      if (c != 2) throw CheckError("overlay: refinement is not a closed surface");
  }
  return out;
}

bool verify_overlay_carriers(const OverlayResult& r, const AffineTorus& t1,
                             const AffineTorus& t2, const TorusTransform& transform) {
  AffineTorus u2 = transformed(t2, transform);
  auto check_one = [&](const AffineTorus& t, const std::vector<std::string>& carrier,
                       const Vec2& pt) {
    // point must lie exactly on the named simplex of some lifted triangle
    for (size_t i = 0; i < t.tris.size(); ++i) {
      std::set<std::string> tri(t.tris[i].begin(), t.tris[i].end());
      bool sub = true;
      for (auto& c : carrier) sub &= tri.count(c) > 0;
      if (!sub) continue;
      // candidate integer shifts from the bounding box
      const auto& L = t.lifts[i];
      Rat bx0 = std::min({L[0].x, L[1].x, L[2].x}), bx1 = std::max({L[0].x, L[1].x, L[2].x});
      Rat by0 = std::min({L[0].y, L[1].y, L[2].y}), by1 = std::max({L[0].y, L[1].y, L[2].y});
      int64_t sx0 = ceil_rat(pt.x - bx1).floor(), sx1 = (pt.x - bx0).floor();
      int64_t sy0 = ceil_rat(pt.y - by1).floor(), sy1 = (pt.y - by0).floor();
      for (int64_t sx = sx0 - 1; sx <= sx1 + 1; ++sx)
        for (int64_t sy = sy0 - 1; sy <= sy1 + 1; ++sy) {
          std::array<Vec2, 3> Ls = {Vec2{L[0].x + Rat(sx), L[0].y + Rat(sy)},
                                    Vec2{L[1].x + Rat(sx), L[1].y + Rat(sy)},
                                    Vec2{L[2].x + Rat(sx), L[2].y + Rat(sy)}};
          auto got = carrier_in_triangle(pt, Ls, t.tris[i]);
          if (got == carrier) return true;
        }
    }
    return false;
  };
  for (size_t v = 0; v < r.coords.size(); ++v) {
    if (!check_one(t1, r.carrier1[v], r.coords[v])) return false;
    if (!check_one(u2, r.carrier2[v], r.coords[v])) return false;
  }
  return true;
}

}  // namespace kf
