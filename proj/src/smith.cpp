#include "kf/smith.hpp"

#include <algorithm>
#include <cstdlib>
#include <queue>
#include <stdexcept>

namespace kf {

namespace {

struct RetryBig {};

inline int64_t checked_mul(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw RetryBig{};
  return r;
}
inline int64_t checked_sub(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw RetryBig{};
  return r;
}

inline bigint checked_mul(const bigint& a, const bigint& b) { return a * b; }
inline bigint checked_sub(const bigint& a, const bigint& b) { return a - b; }

template <typename VT>
bool is_unit(const VT& v) {
  return v == 1 || v == -1;
}

template <typename VT>
struct Elim {
  int64_t rows, cols;
  std::vector<std::vector<std::pair<int32_t, VT>>> col;
  std::vector<std::vector<int32_t>> row_cols;  // may contain stale ids
  std::vector<int32_t> col_nnz, row_nnz;
  std::vector<char> col_alive, row_alive;
  int64_t pivots = 0;

  using Cand = std::tuple<int64_t, int32_t, int32_t>;  // score, row, col
  std::priority_queue<Cand, std::vector<Cand>, std::greater<Cand>> heap;

  explicit Elim(const SparseIntMat& m) {
    rows = m.rows;
    cols = m.cols;
    col.resize(cols);
    row_cols.resize(rows);
    col_nnz.assign(cols, 0);
    row_nnz.assign(rows, 0);
    col_alive.assign(cols, 1);
    row_alive.assign(rows, 1);
    for (int64_t j = 0; j < cols; ++j) {
      col[j].reserve(m.col[j].size());
      for (auto& [r, v] : m.col[j]) {
        col[j].push_back({r, VT(v)});
        row_cols[r].push_back(static_cast<int32_t>(j));
        ++row_nnz[r];
        ++col_nnz[j];
      }
    }
    for (int64_t j = 0; j < cols; ++j) seed_column(static_cast<int32_t>(j));
  }

  const VT* entry(int32_t j, int32_t r) const {
    auto& c = col[j];
    auto it = std::lower_bound(c.begin(), c.end(), r,
                               [](const std::pair<int32_t, VT>& p, int32_t key) { return p.first < key; });
    if (it == c.end() || it->first != r) return nullptr;
    return &it->second;
  }

  int64_t score(int32_t r, int32_t j) const {
    return static_cast<int64_t>(row_nnz[r] - 1) * static_cast<int64_t>(col_nnz[j] - 1);
  }

  void seed_column(int32_t j) {
    if (!col_alive[j]) return;
    for (auto& [r, v] : col[j])
      if (row_alive[r] && is_unit(v)) heap.push({score(r, j), r, j});
  }

  void compact_row(int32_t r) {
    auto& rc = row_cols[r];
    std::vector<int32_t> keep;
    keep.reserve(row_nnz[r]);
    for (int32_t j : rc)
      if (col_alive[j] && entry(j, r)) keep.push_back(j);
    std::sort(keep.begin(), keep.end());
    keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
    rc = std::move(keep);
  }

  // col[j] -= m * col[c]; maintains row structures
  void add_multiple(int32_t j, int32_t c, const VT& m) {
    auto& cj = col[j];
    auto& cc = col[c];
    std::vector<std::pair<int32_t, VT>> out;
    out.reserve(cj.size() + cc.size());
    size_t a = 0, b = 0;
    while (a < cj.size() || b < cc.size()) {
      if (b == cc.size() || (a < cj.size() && cj[a].first < cc[b].first)) {
        out.push_back(cj[a++]);
      } else if (a == cj.size() || cc[b].first < cj[a].first) {
        VT nv = checked_sub(VT(0), checked_mul(m, cc[b].second));
        if (nv != 0) {
          out.push_back({cc[b].first, nv});
          ++row_nnz[cc[b].first];
          row_cols[cc[b].first].push_back(j);
        }
        ++b;
      } else {
        VT nv = checked_sub(cj[a].second, checked_mul(m, cc[b].second));
        if (nv != 0) {
          out.push_back({cj[a].first, nv});
        } else {
          --row_nnz[cj[a].first];
        }
        ++a;
        ++b;
      }
    }
    col_nnz[j] = static_cast<int32_t>(out.size());
    cj = std::move(out);
  }

  void pivot(int32_t r, int32_t c) {
    const VT* pv = entry(c, r);
    VT p = *pv;  // +-1
    compact_row(r);
    std::vector<int32_t> affected = row_cols[r];
    for (int32_t j : affected) {
      if (j == c || !col_alive[j]) continue;
      const VT* av = entry(j, r);
      if (!av) continue;
      VT m = (p == 1) ? *av : checked_sub(VT(0), *av);
      add_multiple(j, c, m);
    }
    // row r is now zero outside column c
    row_alive[r] = 0;
    col_alive[c] = 0;
    for (auto& [rr, vv] : col[c])
      if (row_alive[rr]) --row_nnz[rr];
    col[c].clear();
    col_nnz[c] = 0;
    row_cols[r].clear();
    ++pivots;
    for (int32_t j : affected)
      if (col_alive[j]) seed_column(j);
  }

  void run() {
    while (!heap.empty()) {
      auto [sc, r, c] = heap.top();
      heap.pop();
      if (!row_alive[r] || !col_alive[c]) continue;
      const VT* v = entry(c, r);
      if (!v || !is_unit(*v)) continue;
      int64_t now = score(r, c);
      if (now > sc) {
        heap.push({now, r, c});
        continue;
      }
      pivot(r, c);
    }
  }

  // residual as dense bigint matrix
  std::vector<std::vector<bigint>> residual() const {
    std::vector<int32_t> rmap(rows, -1), live_rows;
    std::vector<int32_t> live_cols;
    for (int64_t j = 0; j < cols; ++j)
      if (col_alive[j] && !col[j].empty()) live_cols.push_back(static_cast<int32_t>(j));
    for (int32_t j : live_cols)
      for (auto& [r, v] : col[j])
        if (row_alive[r] && rmap[r] < 0) {
          rmap[r] = static_cast<int32_t>(live_rows.size());
          live_rows.push_back(r);
        }
    std::vector<std::vector<bigint>> dense(live_rows.size(),
                                           std::vector<bigint>(live_cols.size(), 0));
    for (size_t jj = 0; jj < live_cols.size(); ++jj)
      for (auto& [r, v] : col[live_cols[jj]])
        if (row_alive[r]) dense[rmap[r]][jj] = bigint(v);
    return dense;
  }
};

template <typename VT>
SmithSummary run_elim(const SparseIntMat& m) {
  Elim<VT> e(m);
  e.run();
  SmithSummary s;
  auto dense = e.residual();
  std::vector<bigint> fs = dense_smith(std::move(dense));
  s.rank = e.pivots + static_cast<int64_t>(fs.size());
  for (auto& f : fs)
    if (f != 1) s.nontrivial_factors.push_back(f);
  return s;
}

}  // namespace

std::vector<bigint> dense_smith(std::vector<std::vector<bigint>> a) {
  size_t nr = a.size(), nc = nr ? a[0].size() : 0;
  std::vector<bigint> diag;
  size_t t = 0;
  auto abs_ = [](const bigint& x) { return x < 0 ? bigint(-x) : x; };
  while (t < nr && t < nc) {
    // locate minimal nonzero entry in the submatrix
    size_t bi = nr, bj = nc;
    for (size_t i = t; i < nr; ++i)
      for (size_t j = t; j < nc; ++j)
        if (a[i][j] != 0 && (bi == nr || abs_(a[i][j]) < abs_(a[bi][bj]))) {
          bi = i;
          bj = j;
        }
    if (bi == nr) break;
    std::swap(a[t], a[bi]);
    for (size_t i = t; i < nr; ++i) std::swap(a[i][t], a[i][bj]);
    bool clean = false;
    while (!clean) {
      clean = true;
      for (size_t i = t + 1; i < nr; ++i) {
        if (a[i][t] == 0) continue;
        bigint q = a[i][t] / a[t][t];
        for (size_t j = t; j < nc; ++j) a[i][j] -= q * a[t][j];
        if (a[i][t] != 0) {  // remainder smaller than pivot; swap up
          std::swap(a[t], a[i]);
          clean = false;
        }
      }
      for (size_t j = t + 1; j < nc; ++j) {
        if (a[t][j] == 0) continue;
        bigint q = a[t][j] / a[t][t];
        for (size_t i = t; i < nr; ++i) a[i][j] -= q * a[i][t];
        if (a[t][j] != 0) {
          for (size_t i = t; i < nr; ++i) std::swap(a[i][t], a[i][j]);
          clean = false;
        }
      }
    }
    diag.push_back(abs_(a[t][t]));
    ++t;
  }
  // divisibility chain
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i + 1 < diag.size(); ++i)
      for (size_t j = i + 1; j < diag.size(); ++j) {
        if (diag[j] % diag[i] == 0) continue;
        bigint g = boost::multiprecision::gcd(diag[i], diag[j]);
        bigint l = diag[i] / g * diag[j];
        diag[i] = g;
        diag[j] = l;
        changed = true;
      }
  }
  std::sort(diag.begin(), diag.end());
  return diag;
}

SmithSummary smith_summary(const SparseIntMat& m) {
  if (m.rows == 0 || m.cols == 0) return {};
  try {
    return run_elim<int64_t>(m);
  } catch (RetryBig&) {
    return run_elim<bigint>(m);
  }
}

}  // namespace kf
