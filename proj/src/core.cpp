#include "kf/core.hpp"

#include <algorithm>
#include <numeric>

#include "kf/group.hpp"
#include "kf/smith.hpp"

namespace kf {

// ---------------------------------------------------------------- CellSet

uint64_t CellSet::hash_cell(std::span<const Vertex> cell) {
  uint64_t h = 1469598103934665603ull;
  for (Vertex v : cell) {
    h ^= static_cast<uint64_t>(static_cast<uint32_t>(v));
    h *= 1099511628211ull;
  }
  return h;
}

bool CellSet::equal_at(uint32_t idx, std::span<const Vertex> cell) const {
  const Vertex* p = data_.data() + static_cast<size_t>(idx) * arity_;
  for (int i = 0; i < arity_; ++i)
    if (p[i] != cell[i]) return false;
  return true;
}

void CellSet::rehash(size_t n) {
  size_t cap = 16;
  while (cap < n * 2) cap <<= 1;
  table_.assign(cap, 0);
  mask_ = cap - 1;
  size_t count = size();
  for (size_t i = 0; i < count; ++i) {
    uint64_t h = hash_cell(get(i)) & mask_;
    while (table_[h] != 0) h = (h + 1) & mask_;
    table_[h] = static_cast<uint32_t>(i + 1);
  }
}

std::pair<uint32_t, bool> CellSet::insert(std::span<const Vertex> cell) {
  if (size() * 2 + 2 >= table_.size()) rehash(size() + 1);
  uint64_t h = hash_cell(cell) & mask_;
  while (table_[h] != 0) {
    uint32_t idx = table_[h] - 1;
    if (equal_at(idx, cell)) return {idx, false};
    h = (h + 1) & mask_;
  }
  uint32_t idx = static_cast<uint32_t>(size());
  data_.insert(data_.end(), cell.begin(), cell.end());
  table_[h] = idx + 1;
  return {idx, true};
}

int64_t CellSet::find(std::span<const Vertex> cell) const {
  if (cell.size() != static_cast<size_t>(arity_)) return -1;
  uint64_t h = hash_cell(cell) & mask_;
  while (table_[h] != 0) {
    uint32_t idx = table_[h] - 1;
    if (equal_at(idx, cell)) return idx;
    h = (h + 1) & mask_;
  }
  return -1;
}

// ---------------------------------------------------------------- builder

Vertex ComplexBuilder::intern(const std::string& label) {
  auto it = index_.find(label);
  if (it != index_.end()) return it->second;
  Vertex v = static_cast<Vertex>(labels_.size());
  labels_.push_back(label);
  index_.emplace(label, v);
  return v;
}

std::optional<Vertex> ComplexBuilder::lookup(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void ComplexBuilder::add_cell(std::span<const Vertex> cell) {
  std::vector<Vertex> sorted(cell.begin(), cell.end());
  std::sort(sorted.begin(), sorted.end());
  for (size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i] == sorted[i - 1])
      throw InputError("duplicate vertex '" + labels_[sorted[i]] + "' inside one simplex");
  int k = static_cast<int>(sorted.size()) - 1;
  while (static_cast<int>(cells_.size()) <= k) cells_.emplace_back(static_cast<int>(cells_.size()) + 1);

  // Insert recursively; if a face is already present its subfaces are too.
  std::vector<std::vector<Vertex>> stack{sorted};
  std::vector<Vertex> face;
  while (!stack.empty()) {
    std::vector<Vertex> cur = std::move(stack.back());
    stack.pop_back();
    auto [idx, inserted] = cells_[cur.size() - 1].insert(cur);
    (void)idx;
    if (!inserted || cur.size() == 1) continue;
    for (size_t skip = 0; skip < cur.size(); ++skip) {
      face.clear();
      for (size_t i = 0; i < cur.size(); ++i)
        if (i != skip) face.push_back(cur[i]);
      if (!cells_[face.size() - 1].contains(face)) stack.push_back(face);
    }
  }
}

SimplicialComplex ComplexBuilder::build() {
  SimplicialComplex k;
  k.labels_ = std::move(labels_);
  k.index_ = std::move(index_);
  // every listed vertex is a member even if no cell mentioned it
  if (cells_.empty()) cells_.emplace_back(1);
  for (Vertex v = 0; v < static_cast<Vertex>(k.labels_.size()); ++v) {
    Vertex c[1] = {v};
    cells_[0].insert(std::span<const Vertex>(c, 1));
  }
  k.cells_ = std::move(cells_);
  while (k.cells_.size() > 1 && k.cells_.back().size() == 0) k.cells_.pop_back();
  return k;
}

// ---------------------------------------------------------------- complex

SimplicialComplex SimplicialComplex::from_maximal(
    const std::vector<std::string>& vertex_labels,
    const std::vector<std::vector<Vertex>>& maximal) {
  ComplexBuilder b;
  for (auto& l : vertex_labels) b.intern(l);
  for (auto& c : maximal) b.add_cell(c);
  return b.build();
}

Vertex SimplicialComplex::vertex(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) throw InputError("unknown vertex '" + label + "'");
  return it->second;
}

std::optional<Vertex> SimplicialComplex::try_vertex(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<int64_t> SimplicialComplex::f_vector() const {
  std::vector<int64_t> f;
  for (auto& cs : cells_) f.push_back(static_cast<int64_t>(cs.size()));
  return f;
}

int64_t SimplicialComplex::euler() const {
  int64_t chi = 0, sign = 1;
  for (auto& cs : cells_) {
    chi += sign * static_cast<int64_t>(cs.size());
    sign = -sign;
  }
  return chi;
}

bool SimplicialComplex::contains(std::span<const Vertex> cell) const {
  int k = static_cast<int>(cell.size()) - 1;
  if (k < 0 || k > dim()) return false;
  return cells_[k].contains(cell);
}

bool SimplicialComplex::has_edge(Vertex u, Vertex v) const {
  if (dim() < 1) return false;
  Vertex e[2] = {std::min(u, v), std::max(u, v)};
  return cells_[1].contains(std::span<const Vertex>(e, 2));
}

void SimplicialComplex::build_adjacency() const {
  if (!adj_off_.empty()) return;
  size_t n = labels_.size();
  std::vector<size_t> deg(n, 0);
  if (dim() >= 1) {
    const CellSet& es = cells_[1];
    for (size_t i = 0; i < es.size(); ++i) {
      auto e = es.get(i);
      ++deg[e[0]];
      ++deg[e[1]];
    }
  }
  adj_off_.assign(n + 1, 0);
  for (size_t v = 0; v < n; ++v) adj_off_[v + 1] = adj_off_[v] + deg[v];
  adj_flat_.assign(adj_off_[n], 0);
  std::vector<size_t> pos(adj_off_.begin(), adj_off_.end() - 1);
  if (dim() >= 1) {
    const CellSet& es = cells_[1];
    for (size_t i = 0; i < es.size(); ++i) {
      auto e = es.get(i);
      adj_flat_[pos[e[0]]++] = e[1];
      adj_flat_[pos[e[1]]++] = e[0];
    }
  }
  for (size_t v = 0; v < n; ++v)
    std::sort(adj_flat_.begin() + adj_off_[v], adj_flat_.begin() + adj_off_[v + 1]);
}

std::span<const Vertex> SimplicialComplex::neighbors(Vertex v) const {
  build_adjacency();
  return {adj_flat_.data() + adj_off_[v], adj_off_[v + 1] - adj_off_[v]};
}

void SimplicialComplex::build_star() const {
  if (!star_off_.empty()) return;
  size_t n = labels_.size();
  int d = dim();
  std::vector<size_t> deg(n, 0);
  if (d >= 0) {
    const CellSet& ts = cells_[d];
    for (size_t i = 0; i < ts.size(); ++i)
      for (Vertex v : ts.get(i)) ++deg[v];
  }
  star_off_.assign(n + 1, 0);
  for (size_t v = 0; v < n; ++v) star_off_[v + 1] = star_off_[v] + deg[v];
  star_flat_.assign(star_off_[n], 0);
  std::vector<size_t> pos(star_off_.begin(), star_off_.end() - 1);
  const CellSet& ts = cells_[d];
  for (size_t i = 0; i < ts.size(); ++i)
    for (Vertex v : ts.get(i)) star_flat_[pos[v]++] = static_cast<uint32_t>(i);
}

std::span<const uint32_t> SimplicialComplex::star_top(Vertex v) const {
  build_star();
  return {star_flat_.data() + star_off_[v], star_off_[v + 1] - star_off_[v]};
}

size_t SimplicialComplex::components() const {
  size_t n = labels_.size();
  std::vector<Vertex> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::vector<Vertex> tmp;
  auto find = [&](Vertex x) {
    tmp.clear();
    while (parent[x] != x) {
      tmp.push_back(x);
      x = parent[x];
    }
    for (Vertex y : tmp) parent[y] = x;
    return x;
  };
  if (dim() >= 1) {
    const CellSet& es = cells_[1];
    for (size_t i = 0; i < es.size(); ++i) {
      auto e = es.get(i);
      parent[find(e[0])] = find(e[1]);
    }
  }
  size_t c = 0;
  for (size_t v = 0; v < n; ++v)
    if (find(static_cast<Vertex>(v)) == static_cast<Vertex>(v)) ++c;
  return c;
}

bool SimplicialComplex::is_connected() const { return n_vertices() <= 1 || components() == 1; }

std::vector<std::vector<Vertex>> SimplicialComplex::maximal_cells() const {
  std::vector<std::vector<Vertex>> out;
  std::vector<Vertex> face;
  for (int k = 0; k <= dim(); ++k) {
    const CellSet& cs = cells_[k];
    for (size_t i = 0; i < cs.size(); ++i) {
      auto c = cs.get(i);
      bool maximal = true;
      if (k + 1 <= dim() && cells_[k + 1].size() > 0) {
        // c is maximal iff no coface; test by extending with each other vertex
        // would be quadratic, so check via neighbor intersection instead.
        if (k == 0) {
          maximal = neighbors(c[0]).empty();
        } else {
          // candidate extensions are common neighbors of all vertices of c
          std::vector<Vertex> common(neighbors(c[0]).begin(), neighbors(c[0]).end());
          std::vector<Vertex> next;
          for (size_t j = 1; j < c.size() && !common.empty(); ++j) {
            auto nb = neighbors(c[j]);
            next.clear();
            std::set_intersection(common.begin(), common.end(), nb.begin(), nb.end(),
                                  std::back_inserter(next));
            common.swap(next);
          }
          for (Vertex w : common) {
            face.assign(c.begin(), c.end());
            face.push_back(w);
            std::sort(face.begin(), face.end());
            if (cells_[k + 1].contains(face)) {
              maximal = false;
              break;
            }
          }
        }
      }
      if (maximal) out.emplace_back(c.begin(), c.end());
    }
  }
  return out;
}

SimplicialComplex SimplicialComplex::induced(const std::vector<Vertex>& verts) const {
  std::vector<char> in(labels_.size(), 0);
  ComplexBuilder b;
  std::vector<Vertex> remap(labels_.size(), -1);
  for (Vertex v : verts) {
    if (in[v]) continue;
    in[v] = 1;
    remap[v] = b.intern(labels_[v]);
  }
  std::vector<Vertex> cell;
  for (int k = dim(); k >= 0; --k) {
    const CellSet& cs = cells_[k];
    for (size_t i = 0; i < cs.size(); ++i) {
      auto c = cs.get(i);
      bool ok = true;
      for (Vertex v : c)
        if (!in[v]) {
          ok = false;
          break;
        }
      if (!ok) continue;
      cell.clear();
      for (Vertex v : c) cell.push_back(remap[v]);
      b.add_cell(cell);
    }
  }
  return b.build();
}

std::vector<std::vector<std::string>> SimplicialComplex::cells_as_labels(int k) const {
  std::vector<std::vector<std::string>> out;
  if (k < 0 || k > dim()) return out;
  const CellSet& cs = cells_[k];
  for (size_t i = 0; i < cs.size(); ++i) {
    auto c = cs.get(i);
    std::vector<std::string> row;
    for (Vertex v : c) row.push_back(labels_[v]);
    out.push_back(std::move(row));
  }
  return out;
}

// ---------------------------------------------------------------- ops

SimplicialComplex build_complex(const std::vector<std::vector<std::string>>& maximal_simplices) {
  ComplexBuilder b;
  for (auto& cell : maximal_simplices) {
    if (cell.empty()) throw InputError("empty simplex in input");
    for (auto& l : cell) b.intern(l);
  }
  for (auto& cell : maximal_simplices) {
    std::vector<Vertex> c;
    for (auto& l : cell) c.push_back(*b.lookup(l));
    b.add_cell(c);
  }
  return b.build();
}

FlagReport is_flag(const SimplicialComplex& k) {
  FlagReport rep;
  int d = k.dim();
  if (d < 1) return rep;
  // size-by-size: every s-clique of the 1-skeleton must span an (s-1)-cell.
  // At each size we extend the present (s-1)-cells, which are exactly the
  // (s-1)-cliques once the previous size passed.
  std::vector<Vertex> clique, common, next;
  for (int s = 3;; ++s) {
    int cell_dim = s - 1;
    size_t found = 0;
    const CellSet& base = k.cells(cell_dim - 1);
    for (size_t i = 0; i < base.size(); ++i) {
      auto c = base.get(i);
      common.assign(k.neighbors(c[0]).begin(), k.neighbors(c[0]).end());
      for (size_t j = 1; j < c.size() && !common.empty(); ++j) {
        auto nb = k.neighbors(c[j]);
        next.clear();
        std::set_intersection(common.begin(), common.end(), nb.begin(), nb.end(),
                              std::back_inserter(next));
        common.swap(next);
      }
      Vertex top = c[c.size() - 1];
      for (Vertex w : common) {
        if (w <= top) continue;
        ++found;
        clique.assign(c.begin(), c.end());
        clique.push_back(w);
        if (cell_dim > d || !k.cells(cell_dim).contains(clique)) {
          rep.flag = false;
          for (Vertex v : clique) rep.witness.push_back(k.label(v));
          return rep;
        }
      }
    }
    if (found == 0 || cell_dim >= d + 1) break;
  }
  return rep;
}

std::array<Vertex, 4> canonical_square(std::array<Vertex, 4> cycle) {
  std::array<Vertex, 4> best = cycle;
  for (int r = 0; r < 4; ++r) {
    std::array<Vertex, 4> f{cycle[r], cycle[(r + 1) % 4], cycle[(r + 2) % 4], cycle[(r + 3) % 4]};
    std::array<Vertex, 4> b{cycle[r], cycle[(r + 3) % 4], cycle[(r + 2) % 4], cycle[(r + 1) % 4]};
    if (f < best) best = f;
    if (b < best) best = b;
  }
  return best;
}

std::vector<SquareRec> enumerate_squares(const SimplicialComplex& k) {
  std::vector<SquareRec> out;
  size_t n = k.n_vertices();
  if (k.dim() < 1) return out;
  // paths u - v - w with u < w and (u,w) a non-edge; the two path midpoints of
  // a square are its other diagonal. Emitting only at u = min of the square
  // makes every square appear exactly once.
  std::vector<std::vector<Vertex>> mids;  // per w (local map), midpoints
  std::vector<Vertex> touched;
  std::vector<int32_t> slot(n, -1);
  for (Vertex u = 0; u < static_cast<Vertex>(n); ++u) {
    touched.clear();
    auto nu = k.neighbors(u);
    for (Vertex v : nu) {
      if (v <= u) continue;  // midpoints must be > u for u to be the minimum
      for (Vertex w : k.neighbors(v)) {
        if (w <= u || w == v) continue;
        if (std::binary_search(nu.begin(), nu.end(), w)) continue;  // (u,w) edge
        if (slot[w] < 0) {
          slot[w] = static_cast<int32_t>(touched.size());
          touched.push_back(w);
          if (mids.size() <= touched.size()) mids.emplace_back();
          mids[slot[w]].clear();
        }
        mids[slot[w]].push_back(v);
      }
    }
    for (Vertex w : touched) {
      auto& m = mids[slot[w]];
      if (m.size() >= 2) {
        std::sort(m.begin(), m.end());
        for (size_t i = 0; i < m.size(); ++i)
          for (size_t j = i + 1; j < m.size(); ++j)
            if (!k.has_edge(m[i], m[j]))
              out.push_back({canonical_square({u, m[i], w, m[j]})});
      }
      slot[w] = -1;
    }
  }
  std::sort(out.begin(), out.end(),
            [](const SquareRec& a, const SquareRec& b) { return a.cycle < b.cycle; });
  return out;
}

IsolatedReport has_isolated_squares(const SimplicialComplex& k) {
  IsolatedReport rep;
  auto squares = enumerate_squares(k);
  std::vector<uint8_t> count(k.n_vertices(), 0);
  Vertex worst = -1;
  for (auto& s : squares)
    for (Vertex v : s.cycle) {
      if (count[v] == 1 && (worst < 0 || v < worst)) worst = v;
      if (count[v] < 2) ++count[v];
    }
  if (worst >= 0) {
    rep.ok = false;
    rep.offending_vertex = k.label(worst);
  }
  return rep;
}

bool is_full_subcomplex(const SimplicialComplex& ambient, const SimplicialComplex& sub) {
  std::vector<char> in(ambient.n_vertices(), 0);
  for (auto& l : sub.labels()) in[ambient.vertex(l)] = 1;
  std::vector<Vertex> mapped;
  for (int k = 0; k <= ambient.dim(); ++k) {
    const CellSet& cs = ambient.cells(k);
    for (size_t i = 0; i < cs.size(); ++i) {
      auto c = cs.get(i);
      bool inside = true;
      for (Vertex v : c)
        if (!in[v]) {
          inside = false;
          break;
        }
      if (!inside) continue;
      mapped.clear();
      for (Vertex v : c) mapped.push_back(sub.vertex(ambient.label(v)));
      std::sort(mapped.begin(), mapped.end());
      if (!sub.contains(mapped)) return false;
    }
  }
  return true;
}

bool is_full_subcomplex(const SimplicialComplex& ambient, const std::vector<std::string>& vertex_set) {
  std::vector<Vertex> verts;
  for (auto& l : vertex_set) verts.push_back(ambient.vertex(l));
  return is_full_subcomplex(ambient, ambient.induced(verts));
}

SimplicialComplex vertex_link(const SimplicialComplex& k, const std::string& label) {
  Vertex v = k.vertex(label);
  ComplexBuilder b;
  std::vector<Vertex> cell;
  for (int d = k.dim(); d >= 1; --d) {
    const CellSet& cs = k.cells(d);
    for (size_t i = 0; i < cs.size(); ++i) {
      auto c = cs.get(i);
      if (!std::binary_search(c.begin(), c.end(), v)) continue;
      cell.clear();
      for (Vertex u : c)
        if (u != v) cell.push_back(b.intern(k.label(u)));
      b.add_cell(cell);
    }
  }
  return b.build();
}

// link of v assembled from top-dimensional star only (pure complexes)
static SimplicialComplex link_from_star(const SimplicialComplex& k, Vertex v) {
  ComplexBuilder b;
  std::vector<Vertex> cell;
  for (uint32_t ti : k.star_top(v)) {
    auto c = k.cells(k.dim()).get(ti);
    cell.clear();
    for (Vertex u : c)
      if (u != v) cell.push_back(b.intern(k.label(u)));
    b.add_cell(cell);
  }
  return b.build();
}

bool link_is_circle(const SimplicialComplex& link) {
  if (link.dim() != 1 || link.n_vertices() == 0) return false;
  if (!link.is_connected()) return false;
  for (Vertex v = 0; v < static_cast<Vertex>(link.n_vertices()); ++v)
    if (link.neighbors(v).size() != 2) return false;
  return link.euler() == 0;
}

bool link_is_2sphere(const SimplicialComplex& link) {
  if (link.dim() != 2) return false;
  if (!link.is_connected()) return false;
  if (link.euler() != 2) return false;
  // closed surface: every edge in exactly two triangles, vertex links circles
  size_t ne = link.n_cells(1);
  std::vector<uint8_t> cnt(ne, 0);
  const CellSet& tris = link.cells(2);
  std::vector<Vertex> e(2);
  for (size_t i = 0; i < tris.size(); ++i) {
    auto t = tris.get(i);
    for (int skip = 0; skip < 3; ++skip) {
      e.clear();
      for (int j = 0; j < 3; ++j)
        if (j != skip) e.push_back(t[j]);
      int64_t idx = link.cells(1).find(e);
      if (idx < 0 || cnt[idx] >= 2) return false;
      ++cnt[idx];
    }
  }
  for (size_t i = 0; i < ne; ++i)
    if (cnt[i] != 2) return false;
  for (Vertex v = 0; v < static_cast<Vertex>(link.n_vertices()); ++v) {
    SimplicialComplex lk2 = link_from_star(link, v);
    if (!link_is_circle(lk2)) return false;
  }
  return true;
}

// boundary matrix of dimension k: cells(k) -> cells(k-1)
static SparseIntMat boundary_matrix(const SimplicialComplex& k, int dim) {
  SparseIntMat m;
  m.rows = static_cast<int64_t>(k.n_cells(dim - 1));
  m.cols = static_cast<int64_t>(k.n_cells(dim));
  m.col.resize(m.cols);
  const CellSet& cs = k.cells(dim);
  std::vector<Vertex> face;
  for (size_t i = 0; i < cs.size(); ++i) {
    auto c = cs.get(i);
    int64_t sign = 1;
    for (size_t skip = 0; skip < c.size(); ++skip) {
      face.clear();
      for (size_t j = 0; j < c.size(); ++j)
        if (j != skip) face.push_back(c[j]);
      int64_t r = k.cells(dim - 1).find(face);
      m.col[i].push_back({static_cast<int32_t>(r), sign});
      sign = -sign;
    }
    std::sort(m.col[i].begin(), m.col[i].end());
  }
  return m;
}

HomologyProfile homology(const SimplicialComplex& k) {
  if (k.n_vertices() == 0) throw InputError("homology of the empty complex");
  HomologyProfile prof;
  int d = k.dim();
  std::vector<int64_t> rank(d + 2, 0);
  std::vector<std::vector<bigint>> tors(d + 2);
  // dim 1 incidence matrices are totally unimodular: rank from components.
  if (d >= 1) rank[1] = static_cast<int64_t>(k.n_vertices() - k.components());
  for (int q = 2; q <= d; ++q) {
    SmithSummary s = smith_summary(boundary_matrix(k, q));
    rank[q] = s.rank;
    tors[q] = std::move(s.nontrivial_factors);
  }
  prof.betti.resize(d + 1);
  prof.torsion.resize(d + 1);
  for (int q = 0; q <= d; ++q) {
    int64_t cycles = static_cast<int64_t>(k.n_cells(q)) - rank[q];
    prof.betti[q] = cycles - rank[q + 1];
    for (auto& f : tors[q + 1]) prof.torsion[q].push_back(f.str());
  }
  return prof;
}

Sphere3Report sphere3_certificate(const SimplicialComplex& k) {
  Sphere3Report rep;
  if (k.dim() != 3) throw InputError("sphere3_certificate expects a 3-dimensional complex");
  // purity: every cell is a face of a tetrahedron
  {
    std::vector<char> seen_v(k.n_vertices(), 0);
    CellSet tri_seen(3), edge_seen(2);
    const CellSet& tets = k.cells(3);
    std::vector<Vertex> face;
    for (size_t i = 0; i < tets.size(); ++i) {
      auto t = tets.get(i);
      for (Vertex v : t) seen_v[v] = 1;
      for (size_t a = 0; a < 4; ++a) {
        face.clear();
        for (size_t j = 0; j < 4; ++j)
          if (j != a) face.push_back(t[j]);
        tri_seen.insert(face);
        for (size_t bskip = 0; bskip < 3; ++bskip) {
          std::vector<Vertex> e;
          for (size_t j = 0; j < 3; ++j)
            if (j != bskip) e.push_back(face[j]);
          edge_seen.insert(e);
        }
      }
    }
    rep.pure_ok = true;
    for (char c : seen_v)
      if (!c) rep.pure_ok = false;
    if (tri_seen.size() != k.n_cells(2) || edge_seen.size() != k.n_cells(1)) rep.pure_ok = false;
    if (!rep.pure_ok) throw InputError("sphere3_certificate expects a pure 3-complex");
  }
  // closed: every triangle in exactly two tetrahedra
  {
    std::vector<uint8_t> cnt(k.n_cells(2), 0);
    const CellSet& tets = k.cells(3);
    std::vector<Vertex> face;
    bool ok = true;
    for (size_t i = 0; i < tets.size() && ok; ++i) {
      auto t = tets.get(i);
      for (size_t a = 0; a < 4; ++a) {
        face.clear();
        for (size_t j = 0; j < 4; ++j)
          if (j != a) face.push_back(t[j]);
        int64_t idx = k.cells(2).find(face);
        if (cnt[idx] >= 2) {
          ok = false;
          break;
        }
        ++cnt[idx];
      }
    }
    for (size_t i = 0; i < cnt.size() && ok; ++i)
      if (cnt[i] != 2) ok = false;
    rep.closed_ok = ok && k.is_connected();
  }
  rep.links_ok = true;
  for (Vertex v = 0; v < static_cast<Vertex>(k.n_vertices()) && rep.links_ok; ++v) {
    SimplicialComplex lk = link_from_star(k, v);
    if (!link_is_2sphere(lk)) {
      rep.links_ok = false;
      rep.detail = "link of '" + k.label(v) + "' is not a 2-sphere";
    }
  }
  if (rep.closed_ok) {
    HomologyProfile h = homology(k);
    rep.homology_ok = h.betti.size() == 4 && h.betti[0] == 1 && h.betti[1] == 0 &&
                      h.betti[2] == 0 && h.betti[3] == 1 && h.torsion_free();
  }
  if (rep.closed_ok && rep.links_ok) {
    GroupPresentation p = pi1_presentation(k);
    TietzeResult t = tietze_simplify(p);
    rep.pi1 = t.trivialized ? Sphere3Report::Pi1::Trivial : Sphere3Report::Pi1::Undetermined;
  }
  return rep;
}

}  // namespace kf
