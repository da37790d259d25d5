#include "kf/torus.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace kf {

// ---------------------------------------------------------------- Rat

using int128 = __int128;

static int128 gcd128(int128 a, int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) {
    int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

static Rat make_rat128(int128 n, int128 d) {
  if (d == 0) throw InputError("rational with zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  int128 g = gcd128(n, d);
  if (g == 0) g = 1;
  n /= g;
  d /= g;
  if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
    throw CheckError("rational overflow after reduction");
  Rat r;
  r.num = static_cast<int64_t>(n);
  r.den = static_cast<int64_t>(d);
  return r;
}

Rat::Rat(int64_t n, int64_t d) { *this = make_rat128(n, d); }

Rat Rat::operator+(const Rat& o) const {
  return make_rat128(static_cast<int128>(num) * o.den + static_cast<int128>(o.num) * den,
                     static_cast<int128>(den) * o.den);
}
Rat Rat::operator-(const Rat& o) const {
  return make_rat128(static_cast<int128>(num) * o.den - static_cast<int128>(o.num) * den,
                     static_cast<int128>(den) * o.den);
}
Rat Rat::operator*(const Rat& o) const {
  return make_rat128(static_cast<int128>(num) * o.num, static_cast<int128>(den) * o.den);
}
Rat Rat::operator/(const Rat& o) const {
  if (o.num == 0) throw InputError("rational division by zero");
  return make_rat128(static_cast<int128>(num) * o.den, static_cast<int128>(den) * o.num);
}
bool Rat::operator<(const Rat& o) const {
  return static_cast<int128>(num) * o.den < static_cast<int128>(o.num) * den;
}

std::string Rat::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

int64_t Rat::floor() const {
  int64_t q = num / den;
  if (num % den != 0 && num < 0) --q;
  return q;
}

Rat Rat::mod1() const { return *this - Rat(floor()); }

// ---------------------------------------------------------------- prism

PrismComplex build_prism() {
  // Triangulated region x1 <= x2 of the unit cube: chains through the six
  // corners with x1 <= x2. Bottom b* at x3 = 0, top t* at x3 = 1;
  // b0/t0 = (0,0,*), b1/t1 = (0,1,*), b2/t2 = (1,1,*).
  PrismComplex p;
  ComplexBuilder b;
  std::array<std::string, 6> names = {"b0", "b1", "b2", "t0", "t1", "t2"};
  std::array<Vertex, 6> v;
  for (int i = 0; i < 6; ++i) v[i] = b.intern(names[i]);
  b.add_cell({v[0], v[3], v[4], v[5]});  // x1<=x2<=x3
  b.add_cell({v[0], v[1], v[4], v[5]});  // x1<=x3<=x2
  b.add_cell({v[0], v[1], v[2], v[5]});  // x3<=x1<=x2
  p.complex = b.build();
  p.bottom = {"b0", "b1", "b2"};
  p.top = {"t0", "t1", "t2"};
  p.f_cycle = {"b0", "b1", "t1", "t0"};  // face x1 = 0
  p.f_diagonal = {"b0", "t1"};
  p.g_cycle = {"b0", "b2", "t2", "t0"};  // face x1 = x2
  p.g_diagonal = {"b0", "t2"};
  return p;
}

// block tetrahedra in (center/outer) labels; i runs mod 3
static void block_cells(ComplexBuilder& b, const std::string& cb, const std::string& ct,
                        const std::array<std::string, 3>& o, const std::array<std::string, 3>& u) {
  auto I = [&](const std::string& s) { return b.intern(s); };
  for (int i = 0; i < 3; ++i) {
    int j = (i + 2) % 3;  // i - 1
    b.add_cell({I(cb), I(ct), I(u[i]), I(u[j])});
    b.add_cell({I(cb), I(o[i]), I(u[i]), I(u[j])});
    b.add_cell({I(cb), I(o[i]), I(o[j]), I(u[j])});
  }
}

BlockComplex build_block() {
  BlockComplex blk;
  ComplexBuilder b;
  std::array<std::string, 3> o = {"o0", "o1", "o2"}, u = {"u0", "u1", "u2"};
  block_cells(b, "cb", "ct", o, u);
  blk.complex = b.build();
  blk.bottom_center = "cb";
  blk.top_center = "ct";
  blk.bottom_outer = o;
  blk.top_outer = u;
  blk.center_edge = {"cb", "ct"};

  // construction invariants from the block description
  auto& k = blk.complex;
  if (k.n_cells(3) != 9 || k.n_vertices() != 8) throw CheckError("block: wrong cell counts");
  Vertex cb = k.vertex("cb"), ct = k.vertex("ct");
  if (!k.has_edge(cb, ct)) throw CheckError("block: missing center edge");
  if (k.neighbors(cb).size() != 7) throw CheckError("block: bottom center not adjacent to all");
  for (auto& s : o)
    if (k.has_edge(ct, k.vertex(s))) throw CheckError("block: top center adjacent to bottom outer");
  return blk;
}

SolidTorusComplex build_solid_torus(const std::string& prefix) {
  SolidTorusComplex n;
  ComplexBuilder b;
  auto cname = [&](int k) { return prefix + "c" + std::to_string(((k % 4) + 4) % 4); };
  auto wname = [&](int k, int i) {
    return prefix + "w" + std::to_string(((k % 4) + 4) % 4) + "." + std::to_string(((i % 3) + 3) % 3);
  };
  // block k sits between levels k and k+1; centers c_k, outers w_{k,i}
  for (int k = 0; k < 4; ++k) {
    std::array<std::string, 3> o, u;
    for (int i = 0; i < 3; ++i) {
      o[i] = wname(k, i);
      u[i] = wname(k + 1, i);
    }
    block_cells(b, cname(k), cname(k + 1), o, u);
  }
  n.complex = b.build();

  for (int k = 0; k < 4; ++k) n.interior_vertices.push_back(cname(k));
  for (int k = 0; k < 4; ++k)
    for (int i = 0; i < 3; ++i) n.boundary_vertices.push_back(wname(k, i));
  n.core = {cname(0), cname(1), cname(2), cname(3)};
  for (int k = 0; k < 4; ++k) {
    BlockComplex blk;
    blk.bottom_center = cname(k);
    blk.top_center = cname(k + 1);
    for (int i = 0; i < 3; ++i) {
      blk.bottom_outer[i] = wname(k, i);
      blk.top_outer[i] = wname(k + 1, i);
    }
    blk.center_edge = {cname(k), cname(k + 1)};
    ComplexBuilder bb;
    block_cells(bb, blk.bottom_center, blk.top_center, blk.bottom_outer, blk.top_outer);
    blk.complex = bb.build();
    n.blocks.push_back(std::move(blk));
  }
  for (int k = 0; k < 4; ++k) {
    std::vector<std::string> m;
    for (int i = 0; i < 3; ++i) m.push_back(wname(k, i));
    n.meridians.push_back(std::move(m));
  }
  for (int k = 0; k < 4; ++k) n.longitude.push_back(wname(k, 0));

  // affine coordinates of the boundary torus: meridian along x, longitude along y
  AffineTorus& t = n.boundary_affine;
  for (int k = 0; k < 4; ++k)
    for (int i = 0; i < 3; ++i) {
      t.labels.push_back(wname(k, i));
      t.coords.push_back({Rat(i, 3), Rat(k, 4)});
    }
  for (int k = 0; k < 4; ++k)
    for (int i = 0; i < 3; ++i) {
      Vec2 p00{Rat(i, 3), Rat(k, 4)};          // w_{k,i}
      Vec2 p01{Rat(i, 3), Rat(k + 1, 4)};      // w_{k+1,i}
      Vec2 p11{Rat(i - 1, 3), Rat(k + 1, 4)};  // w_{k+1,i-1}
      Vec2 p10{Rat(i - 1, 3), Rat(k, 4)};      // w_{k,i-1}
      t.tris.push_back({wname(k, i), wname(k + 1, i), wname(k + 1, i - 1)});
      t.lifts.push_back({p00, p01, p11});
      t.tris.push_back({wname(k, i), wname(k + 1, i - 1), wname(k, i - 1)});
      t.lifts.push_back({p00, p11, p10});
    }
  validate_affine_torus(t);

  // structural invariants from Step 1
  auto& k3 = n.complex;
  if (k3.n_cells(3) != 36 || k3.n_vertices() != 16) throw CheckError("solid torus: wrong counts");
  for (int k = 0; k < 4; ++k) {
    Vertex a = k3.vertex(cname(k));
    Vertex opp = k3.vertex(cname(k + 2));
    if (k3.has_edge(a, opp)) throw CheckError("solid torus: core diagonal present");
    if (!k3.has_edge(a, k3.vertex(cname(k + 1)))) throw CheckError("solid torus: core edge missing");
    // adjacent boundary vertices all in block k
    std::set<std::string> allowed;
    for (int i = 0; i < 3; ++i) {
      allowed.insert(wname(k, i));
      allowed.insert(wname(k + 1, i));
    }
    for (Vertex w : k3.neighbors(a)) {
      std::string l = k3.label(w);
      if (l == cname(k + 1) || l == cname(k + 3)) continue;
      if (!allowed.count(l)) throw CheckError("solid torus: interior vertex sees a foreign block");
    }
  }
  // classify and cache tet types
  const CellSet& tets = k3.cells(3);
  std::set<std::string> interior(n.interior_vertices.begin(), n.interior_vertices.end());
  for (size_t i = 0; i < tets.size(); ++i) {
    auto c = tets.get(i);
    int ni = 0;
    for (Vertex v : c) ni += interior.count(k3.label(v)) ? 1 : 0;
    if (ni == 1)
      n.type_a.push_back(static_cast<uint32_t>(i));
    else if (ni == 2)
      n.type_b.push_back(static_cast<uint32_t>(i));
    else
      throw CheckError("solid torus: tetrahedron with bad interior count");
  }
  if (n.type_a.size() != 24 || n.type_b.size() != 12)
    throw CheckError("solid torus: (24,12) split failed");
  return n;
}

std::pair<std::vector<std::vector<std::string>>, std::vector<std::vector<std::string>>>
classify_tetrahedra(const SolidTorusComplex& n) {
  auto& k = n.complex;
  std::set<std::string> interior(n.interior_vertices.begin(), n.interior_vertices.end());
  // boundary triangle / edge membership
  std::set<std::vector<std::string>> btris, bedges;
  {
    // boundary triangles: in exactly one tetrahedron
    const CellSet& tris = k.cells(2);
    std::vector<uint8_t> cnt(tris.size(), 0);
    const CellSet& tets = k.cells(3);
    std::vector<Vertex> face;
    for (size_t i = 0; i < tets.size(); ++i) {
      auto c = tets.get(i);
      for (size_t skip = 0; skip < 4; ++skip) {
        face.clear();
        for (size_t j = 0; j < 4; ++j)
          if (j != skip) face.push_back(c[j]);
        ++cnt[tris.find(face)];
      }
    }
    for (size_t i = 0; i < tris.size(); ++i) {
      if (cnt[i] != 1) continue;
      auto c = tris.get(i);
      std::vector<std::string> t{k.label(c[0]), k.label(c[1]), k.label(c[2])};
      std::sort(t.begin(), t.end());
      btris.insert(t);
      for (int a = 0; a < 3; ++a)
        for (int b2 = a + 1; b2 < 3; ++b2) bedges.insert({std::min(t[a], t[b2]), std::max(t[a], t[b2])});
    }
  }
  std::set<std::vector<std::string>> core_edges;
  for (int i = 0; i < 4; ++i) {
    std::string a = n.core[i], b = n.core[(i + 1) % 4];
    core_edges.insert({std::min(a, b), std::max(a, b)});
  }

  std::vector<std::vector<std::string>> ta, tb;
  const CellSet& tets = k.cells(3);
  for (size_t i = 0; i < tets.size(); ++i) {
    auto c = tets.get(i);
    std::vector<std::string> in, out;
    for (Vertex v : c)
      (interior.count(k.label(v)) ? in : out).push_back(k.label(v));
    std::sort(in.begin(), in.end());
    std::sort(out.begin(), out.end());
    std::vector<std::string> lbl{k.label(c[0]), k.label(c[1]), k.label(c[2]), k.label(c[3])};
    if (in.size() == 1 && out.size() == 3 && btris.count(out)) {
      ta.push_back(lbl);
    } else if (in.size() == 2 && core_edges.count(in) && bedges.count(out)) {
      tb.push_back(lbl);
    } else {
      throw CheckError("classify_tetrahedra: tetrahedron fits neither join pattern");
    }
  }
  return {ta, tb};
}

SimplicialComplex block_intersection(const SolidTorusComplex& n, int i, int j) {
  if (i == j) throw InputError("block_intersection: i == j");
  if (i < 0 || i > 3 || j < 0 || j > 3) throw InputError("block_intersection: index out of range");
  auto& bi = n.blocks[i];
  auto& bj = n.blocks[j];
  std::set<std::string> vi(bi.complex.labels().begin(), bi.complex.labels().end());
  std::vector<Vertex> shared;
  for (auto& l : bj.complex.labels())
    if (vi.count(l)) shared.push_back(bj.complex.vertex(l));
  SimplicialComplex within_j = bj.complex.induced(shared);
  // intersect with block i's cells
  ComplexBuilder out;
  std::vector<Vertex> cell;
  for (int d2 = within_j.dim(); d2 >= 0; --d2) {
    const CellSet& cs = within_j.cells(d2);
    for (size_t c = 0; c < cs.size(); ++c) {
      auto sp = cs.get(c);
      std::vector<Vertex> in_i;
      bool ok = true;
      for (Vertex v : sp) {
        auto lv = bi.complex.try_vertex(within_j.label(v));
        if (!lv) {
          ok = false;
          break;
        }
        in_i.push_back(*lv);
      }
      if (!ok) continue;
      std::sort(in_i.begin(), in_i.end());
      if (!bi.complex.contains(in_i)) continue;
      cell.clear();
      for (Vertex v : sp) cell.push_back(out.intern(within_j.label(v)));
      out.add_cell(cell);
    }
  }
  return out.build();
}

void validate_affine_torus(const AffineTorus& t) {
  Rat total(0);
  for (size_t i = 0; i < t.tris.size(); ++i) {
    auto& l = t.lifts[i];
    Rat area2 = (l[1].x - l[0].x) * (l[2].y - l[0].y) - (l[2].x - l[0].x) * (l[1].y - l[0].y);
    if (!(Rat(0) < area2)) throw CheckError("affine torus: non-positive triangle");
    total = total + area2;
    // lift projects to the stored coordinates
    for (int j = 0; j < 3; ++j) {
      auto it = std::find(t.labels.begin(), t.labels.end(), t.tris[i][j]);
      if (it == t.labels.end()) throw CheckError("affine torus: unknown label");
      const Vec2& c = t.coords[it - t.labels.begin()];
      if (l[j].x.mod1() != c.x || l[j].y.mod1() != c.y)
        throw CheckError("affine torus: lift does not project to the vertex");
    }
  }
  if (total != Rat(2)) throw CheckError("affine torus: triangles do not tile the torus");
}

}  // namespace kf
