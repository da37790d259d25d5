#include "kf/group.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <map>
#include <numeric>
#include <set>

#include "kf/smith.hpp"

namespace kf {

// ---------------------------------------------------------------- pi1

GroupPresentation pi1_presentation(const SimplicialComplex& k, const std::string& basepoint) {
  if (!k.is_connected()) throw InputError("pi1_presentation: complex is disconnected");
  size_t n = k.n_vertices();
  Vertex base = k.vertex(basepoint);

  // label-lexicographic rank for deterministic BFS tie-breaking
  std::vector<Vertex> by_label(n);
  std::iota(by_label.begin(), by_label.end(), 0);
  std::sort(by_label.begin(), by_label.end(),
            [&](Vertex a, Vertex b) { return k.label(a) < k.label(b); });
  std::vector<int32_t> rank(n);
  for (size_t i = 0; i < n; ++i) rank[by_label[i]] = static_cast<int32_t>(i);

  // BFS spanning tree
  std::vector<Vertex> parent(n, -1);
  std::vector<char> seen(n, 0);
  std::deque<Vertex> queue{base};
  seen[base] = 1;
  while (!queue.empty()) {
    Vertex v = queue.front();
    queue.pop_front();
    std::vector<Vertex> nb(k.neighbors(v).begin(), k.neighbors(v).end());
    std::sort(nb.begin(), nb.end(), [&](Vertex a, Vertex b) { return rank[a] < rank[b]; });
    for (Vertex w : nb)
      if (!seen[w]) {
        seen[w] = 1;
        parent[w] = v;
        queue.push_back(w);
      }
  }

  GroupPresentation p;
  // generator per non-tree edge, oriented low label-rank -> high
  const CellSet& edges = k.cells(1);
  std::vector<int32_t> gen_of_edge(edges.size(), 0);  // signed id for low->high traversal
  for (size_t i = 0; i < edges.size(); ++i) {
    auto e = edges.get(i);
    Vertex u = e[0], v = e[1];
    bool tree = (parent[u] == v) || (parent[v] == u);
    if (tree) continue;
    p.generators.push_back("g" + std::to_string(p.generators.size()));
    gen_of_edge[i] = static_cast<int32_t>(p.generators.size());
  }
  p.involution.assign(p.generators.size(), 0);

  auto edge_letter = [&](Vertex a, Vertex b) -> int32_t {  // letter for walking a -> b
    Vertex e[2] = {std::min(a, b), std::max(a, b)};
    int64_t idx = edges.find(std::span<const Vertex>(e, 2));
    int32_t g = gen_of_edge[idx];
    if (g == 0) return 0;
    return rank[a] < rank[b] ? g : -g;
  };
  if (k.dim() >= 2) {
    const CellSet& tris = k.cells(2);
    for (size_t i = 0; i < tris.size(); ++i) {
      auto t = tris.get(i);
      std::vector<int32_t> word;
      Vertex walk[4] = {t[0], t[1], t[2], t[0]};
      for (int j = 0; j < 3; ++j) {
        int32_t l = edge_letter(walk[j], walk[j + 1]);
        if (l != 0) word.push_back(l);
      }
      if (!word.empty()) p.relators.push_back(std::move(word));
    }
  }
  return p;
}

GroupPresentation pi1_presentation(const SimplicialComplex& k) {
  if (k.n_vertices() == 0) throw InputError("pi1_presentation: empty complex");
  size_t best = 0;
  for (size_t i = 1; i < k.n_vertices(); ++i)
    if (k.label(static_cast<Vertex>(i)) < k.label(static_cast<Vertex>(best))) best = i;
  return pi1_presentation(k, k.label(static_cast<Vertex>(best)));
}

// ---------------------------------------------------------------- tietze

namespace {

// Signed union-find over generators. parent[g] is a signed id; a root has
// parent[g] == +g. dead[g] marks generators known to equal the identity.
struct GenState {
  std::vector<int32_t> parent;
  std::vector<char> dead;

  explicit GenState(size_t n) : parent(n + 1), dead(n + 1, 0) {
    std::iota(parent.begin(), parent.end(), 0);
  }

  // signed root that g (> 0) equals, or 0 when g == identity
  int32_t resolve_gen(int32_t g) {
    std::vector<int32_t> path;
    int32_t cur = g;
    while (!dead[cur]) {
      int32_t p = parent[cur];
      if (std::abs(p) == cur) break;
      path.push_back(cur);
      cur = std::abs(p);
    }
    if (dead[cur]) {
      dead[g] = 1;
      for (int32_t v : path) dead[v] = 1;
      return 0;
    }
    int32_t s_next = 1;  // sign from the walked node to the root
    for (size_t i = path.size(); i-- > 0;) {
      int32_t v = path[i];
      int32_t psign = parent[v] < 0 ? -1 : 1;
      int32_t s_v = psign * s_next;
      parent[v] = s_v < 0 ? -cur : cur;
      s_next = s_v;
    }
    if (path.empty()) return cur;
    return parent[g];
  }

  int32_t resolve(int32_t x) {
    int32_t r = resolve_gen(std::abs(x));
    if (r == 0) return 0;
    return x < 0 ? -r : r;
  }
};

}  // namespace

TietzeResult tietze_simplify(const GroupPresentation& input, TietzeOptions opt) {
  size_t ng = input.generators.size();
  GenState gs(ng);
  std::vector<std::vector<int32_t>> rels = input.relators;
  std::vector<char> rel_dead(rels.size(), 0);
  std::vector<std::vector<int32_t>> occ(ng + 1);  // gen -> relator ids (stale superset)
  std::set<int32_t> len3;                         // settled relators of length 3
  size_t substitutions = 0;

  size_t budget =
      std::max(static_cast<size_t>(input.total_length() * opt.growth_factor), opt.min_budget);

  auto normalize = [&](std::vector<int32_t>& w) {
    std::vector<int32_t> out;
    out.reserve(w.size());
    for (int32_t x : w) {
      int32_t r = gs.resolve(x);
      if (r == 0) continue;
      if (!out.empty() && out.back() == -r)
        out.pop_back();
      else
        out.push_back(r);
    }
    while (out.size() >= 2 && out.front() == -out.back()) {
      out.erase(out.begin());
      out.pop_back();
    }
    w = std::move(out);
  };

  std::deque<int32_t> work;
  for (size_t i = 0; i < rels.size(); ++i) work.push_back(static_cast<int32_t>(i));
  auto register_occ = [&](int32_t ri) {
    for (int32_t x : rels[ri]) occ[std::abs(x)].push_back(ri);
    if (rels[ri].size() == 3) len3.insert(ri);
  };
  auto touch_gen = [&](int32_t g) {
    for (int32_t ri : occ[g])
      if (!rel_dead[ri]) work.push_back(ri);
    occ[g].clear();
  };

  auto cascade = [&]() {
    while (!work.empty()) {
      int32_t ri = work.front();
      work.pop_front();
      if (rel_dead[ri]) continue;
      len3.erase(ri);
      normalize(rels[ri]);
      auto& w = rels[ri];
      if (w.empty()) {
        rel_dead[ri] = 1;
        continue;
      }
      if (w.size() == 1) {
        int32_t g = std::abs(w[0]);
        rel_dead[ri] = 1;
        gs.dead[g] = 1;
        touch_gen(g);
        continue;
      }
      if (w.size() == 2) {
        int32_t a = w[0], b = w[1];
        if (std::abs(a) == std::abs(b)) {  // involution a^2 = 1; keep
          register_occ(ri);
          continue;
        }
        int32_t ga = std::abs(a), gb = std::abs(b);
        int32_t victim = std::max(ga, gb);
        int32_t keep, vsigned;
        if (victim == gb) {
          keep = (a > 0) ? -ga : ga;  // b = a^-1
          vsigned = b;
        } else {
          keep = (b > 0) ? -gb : gb;  // a = b^-1
          vsigned = a;
        }
        gs.parent[victim] = (vsigned > 0) ? keep : -keep;
        rel_dead[ri] = 1;
        touch_gen(victim);
        continue;
      }
      register_occ(ri);
    }
  };

  while (true) {
    cascade();
    // stuck: substitute a generator defined by a length-3 relator
    int32_t best_rel = -1, best_gen = 0;
    size_t best_cost = SIZE_MAX;
    int examined = 0;
    for (auto it = len3.begin(); it != len3.end() && examined < 64;) {
      int32_t ri = *it;
      if (rel_dead[ri] || rels[ri].size() != 3) {
        it = len3.erase(it);
        continue;
      }
      ++examined;
      auto& w = rels[ri];
      for (int j = 0; j < 3; ++j) {
        int32_t g = std::abs(w[j]);
        int cnt = 0;
        for (int l = 0; l < 3; ++l)
          if (std::abs(w[l]) == g) ++cnt;
        if (cnt != 1) continue;
        size_t cost = 0;
        for (int32_t rj : occ[g])
          if (!rel_dead[rj]) cost += rels[rj].size();
        if (cost < best_cost) {
          best_cost = cost;
          best_rel = ri;
          best_gen = w[j];
        }
      }
      ++it;
    }
    if (best_rel < 0 || substitutions >= opt.max_substitutions) break;

    auto w = rels[best_rel];
    while (std::abs(w[0]) != std::abs(best_gen)) std::rotate(w.begin(), w.begin() + 1, w.end());
    int32_t g = std::abs(w[0]);
    std::vector<int32_t> repl;  // word equal to g
    if (w[0] > 0) {
      for (size_t j = w.size(); j-- > 1;) repl.push_back(-w[j]);
    } else {
      for (size_t j = 1; j < w.size(); ++j) repl.push_back(w[j]);
    }
    rel_dead[best_rel] = 1;
    len3.erase(best_rel);
    ++substitutions;
    std::vector<int32_t> users = occ[g];
    occ[g].clear();
    gs.dead[g] = 1;  // all occurrences are rewritten below
    for (int32_t ri : users) {
      if (rel_dead[ri]) continue;
      std::vector<int32_t> nw;
      for (int32_t x : rels[ri]) {
        if (std::abs(x) == g) {
          if (x > 0)
            nw.insert(nw.end(), repl.begin(), repl.end());
          else
            for (size_t j = repl.size(); j-- > 0;) nw.push_back(-repl[j]);
        } else {
          nw.push_back(x);
        }
      }
      rels[ri] = std::move(nw);
      len3.erase(ri);
      work.push_back(ri);
    }
    size_t total = 0;
    for (size_t ri = 0; ri < rels.size(); ++ri)
      if (!rel_dead[ri]) total += rels[ri].size();
    if (total > budget) {
      cascade();
      break;
    }
  }

  TietzeResult res;
  res.substitutions = substitutions;
  std::vector<int32_t> remap(ng + 1, 0);
  for (size_t g = 1; g <= ng; ++g) {
    int32_t r = gs.resolve(static_cast<int32_t>(g));
    if (r == 0 || static_cast<size_t>(std::abs(r)) != g) continue;
    remap[g] = static_cast<int32_t>(res.presentation.generators.size()) + 1;
    res.presentation.generators.push_back(input.generators[g - 1]);
  }
  std::set<std::vector<int32_t>> dedup;
  for (size_t ri = 0; ri < rels.size(); ++ri) {
    if (rel_dead[ri]) continue;
    normalize(rels[ri]);
    if (rels[ri].empty()) continue;
    std::vector<int32_t> w;
    for (int32_t x : rels[ri]) {
      int32_t g = std::abs(x);
      w.push_back(x > 0 ? remap[g] : -remap[g]);
    }
    if (dedup.insert(w).second) res.presentation.relators.push_back(std::move(w));
  }
  res.presentation.involution.assign(res.presentation.generators.size(), 0);
  res.trivialized = res.presentation.generators.empty() && res.presentation.relators.empty();
  return res;
}

// ---------------------------------------------------------------- abelianization

HomologyProfile abelianization(const GroupPresentation& p) {
  SparseIntMat m;
  m.rows = static_cast<int64_t>(p.generators.size());
  m.cols = static_cast<int64_t>(p.relators.size());
  m.col.resize(m.cols);
  for (size_t j = 0; j < p.relators.size(); ++j) {
    std::map<int32_t, int64_t> sums;
    for (int32_t x : p.relators[j]) sums[std::abs(x) - 1] += (x > 0 ? 1 : -1);
    for (auto& [g, s] : sums)
      if (s != 0) m.col[j].push_back({g, s});
  }
  SmithSummary s = smith_summary(m);
  HomologyProfile prof;
  prof.betti = {static_cast<int64_t>(p.generators.size()) - s.rank};
  prof.torsion.resize(1);
  for (auto& f : s.nontrivial_factors) prof.torsion[0].push_back(f.str());
  return prof;
}

// ---------------------------------------------------------------- finite targets

namespace {

using Perm = std::vector<int>;

Perm pcompose(const Perm& a, const Perm& b) {  // (a*b)(x) = a(b(x))
  Perm r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[b[i]];
  return r;
}

FiniteGroup from_generators(const std::string& name, int points, std::vector<Perm> gens) {
  std::set<Perm> elems;
  Perm id(points);
  std::iota(id.begin(), id.end(), 0);
  elems.insert(id);
  std::deque<Perm> queue{id};
  while (!queue.empty()) {
    Perm cur = queue.front();
    queue.pop_front();
    for (auto& g : gens) {
      Perm nx = pcompose(cur, g);
      if (elems.insert(nx).second) queue.push_back(nx);
    }
  }
  std::vector<Perm> list(elems.begin(), elems.end());
  FiniteGroup fg;
  fg.name = name;
  fg.order = static_cast<int>(list.size());
  std::map<Perm, int> idx;
  for (int i = 0; i < fg.order; ++i) idx[list[i]] = i;
  fg.identity = idx[id];
  fg.mul.assign(fg.order, std::vector<int>(fg.order));
  fg.inv.assign(fg.order, 0);
  for (int i = 0; i < fg.order; ++i)
    for (int j = 0; j < fg.order; ++j) fg.mul[i][j] = idx[pcompose(list[i], list[j])];
  for (int i = 0; i < fg.order; ++i)
    for (int j = 0; j < fg.order; ++j)
      if (fg.mul[i][j] == fg.identity) fg.inv[i] = j;
  fg.abelian = true;
  for (int i = 0; i < fg.order && fg.abelian; ++i)
    for (int j = 0; j < fg.order; ++j)
      if (fg.mul[i][j] != fg.mul[j][i]) {
        fg.abelian = false;
        break;
      }
  for (auto& p : list) {
    std::string s = "(";
    for (size_t i = 0; i < p.size(); ++i) s += std::to_string(p[i]) + (i + 1 < p.size() ? " " : "");
    s += ")";
    fg.element_names.push_back(s);
  }
  return fg;
}

}  // namespace

const std::vector<FiniteGroup>& builtin_targets() {
  static const std::vector<FiniteGroup> groups = [] {
    std::vector<FiniteGroup> g;
    g.push_back(from_generators("S3", 3, {{1, 0, 2}, {0, 2, 1}}));
    g.push_back(from_generators("D4", 4, {{1, 2, 3, 0}, {1, 0, 3, 2}}));
    g.push_back(from_generators("A4", 4, {{1, 2, 0, 3}, {0, 2, 3, 1}}));
    g.push_back(from_generators("S4", 4, {{1, 0, 2, 3}, {1, 2, 3, 0}}));
    g.push_back(from_generators("A5", 5, {{1, 2, 0, 3, 4}, {0, 1, 3, 4, 2}}));
    return g;
  }();
  return groups;
}

const FiniteGroup* find_target(const std::string& name) {
  for (auto& g : builtin_targets())
    if (g.name == name) return &g;
  return nullptr;
}

static int subgroup_order(const FiniteGroup& g, const std::vector<int>& gens) {
  std::set<int> sub{g.identity};
  std::deque<int> queue{g.identity};
  while (!queue.empty()) {
    int x = queue.front();
    queue.pop_front();
    for (int h : gens) {
      int y = g.mul[x][h];
      if (sub.insert(y).second) queue.push_back(y);
    }
  }
  return static_cast<int>(sub.size());
}

static int eval_word(const FiniteGroup& g, const std::vector<int32_t>& word,
                     const std::vector<int>& images) {
  int acc = g.identity;
  for (int32_t x : word) {
    int e = images[std::abs(x) - 1];
    if (x < 0) e = g.inv[e];
    acc = g.mul[acc][e];
  }
  return acc;
}

std::optional<QuotientCertificate> nonabelian_certificate(
    const GroupPresentation& p, const std::vector<std::string>& target_names,
    int64_t budget_ms) {
  using clock = std::chrono::steady_clock;
  auto deadline = clock::now() + std::chrono::milliseconds(budget_ms);
  size_t ng = p.generators.size();
  if (ng == 0) return std::nullopt;

  for (auto& name : target_names) {
    const FiniteGroup* gp = find_target(name);
    if (!gp) throw InputError("unknown target group '" + name + "'");
    const FiniteGroup& g = *gp;
    if (g.abelian) continue;

    std::vector<std::vector<int32_t>> by_depth(ng + 1);
    for (size_t ri = 0; ri < p.relators.size(); ++ri) {
      int32_t mx = 0;
      for (int32_t x : p.relators[ri]) mx = std::max(mx, std::abs(x));
      if (mx > 0 && static_cast<size_t>(mx) <= ng) by_depth[mx].push_back(static_cast<int32_t>(ri));
    }

    std::vector<int> images(ng, -1);
    std::vector<int> stack{0};
    size_t depth = 0;
    size_t steps = 0;
    while (true) {
      if ((++steps & 0x3ff) == 0 && clock::now() > deadline) return std::nullopt;
      if (stack[depth] >= g.order) {
        if (depth == 0) break;
        stack.pop_back();
        --depth;
        ++stack[depth];
        continue;
      }
      images[depth] = stack[depth];
      bool ok = true;
      for (int32_t ri : by_depth[depth + 1])
        if (eval_word(g, p.relators[ri], images) != g.identity) {
          ok = false;
          break;
        }
      if (!ok) {
        ++stack[depth];
        continue;
      }
      if (depth + 1 == ng) {
        if (subgroup_order(g, images) == g.order) {
          QuotientCertificate cert;
          cert.target = g.name;
          cert.images = images;
          for (int e : images) cert.image_names.push_back(g.element_names[e]);
          cert.generated_subgroup_order = g.order;
          for (auto& r : p.relators)
            cert.relator_transcript.push_back(g.element_names[eval_word(g, r, images)]);
          return cert;
        }
        ++stack[depth];
        continue;
      }
      ++depth;
      stack.push_back(0);
    }
  }
  return std::nullopt;
}

bool verify_certificate(const GroupPresentation& p, const QuotientCertificate& cert) {
  const FiniteGroup* gp = find_target(cert.target);
  if (!gp) return false;
  const FiniteGroup& g = *gp;
  if (g.abelian) return false;
  if (cert.images.size() != p.generators.size()) return false;
  for (int e : cert.images)
    if (e < 0 || e >= g.order) return false;
  for (auto& r : p.relators)
    if (eval_word(g, r, cert.images) != g.identity) return false;
  return subgroup_order(g, cert.images) == g.order;
}

}  // namespace kf
