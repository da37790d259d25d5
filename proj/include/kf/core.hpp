#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace kf {

using Vertex = int32_t;

struct InputError : std::runtime_error {
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};
struct CheckError : std::runtime_error {
  explicit CheckError(const std::string& what) : std::runtime_error(what) {}
};

/// Pool of fixed-arity cells (sorted vertex tuples) with open-addressing dedupe.
/// Cells keep their insertion order, which makes downstream output deterministic.
class CellSet {
 public:
  explicit CellSet(int arity = 1) : arity_(arity) { rehash(16); }

  int arity() const { return arity_; }
  size_t size() const { return data_.size() / arity_; }

  std::span<const Vertex> get(size_t i) const {
    return {data_.data() + i * arity_, static_cast<size_t>(arity_)};
  }

  // Inserts a sorted tuple; returns (index, inserted?).
  std::pair<uint32_t, bool> insert(std::span<const Vertex> cell);
  int64_t find(std::span<const Vertex> cell) const;
  bool contains(std::span<const Vertex> cell) const { return find(cell) >= 0; }

 private:
  void rehash(size_t n);
  static uint64_t hash_cell(std::span<const Vertex> cell);
  bool equal_at(uint32_t idx, std::span<const Vertex> cell) const;

  int arity_;
  std::vector<Vertex> data_;
  std::vector<uint32_t> table_;  // 1-based, 0 = empty
  uint64_t mask_ = 0;
};

struct FlagReport {
  bool flag = true;
  std::vector<std::string> witness;  // minimal non-spanning clique, when !flag
};

struct SquareRec {
  std::array<Vertex, 4> cycle;  // canonical: lex-least of the 8 dihedral orderings
  std::array<std::array<Vertex, 2>, 2> diagonals() const {
    return {{{cycle[0], cycle[2]}, {cycle[1], cycle[3]}}};
  }
};

struct IsolatedReport {
  bool ok = true;
  std::optional<std::string> offending_vertex;
};

struct HomologyProfile {
  // betti[k], torsion[k] = invariant factors > 1, each dividing the next.
  std::vector<int64_t> betti;
  std::vector<std::vector<std::string>> torsion;  // decimal strings (may be large)
  bool reduced = false;

  bool torsion_free() const {
    for (auto& t : torsion)
      if (!t.empty()) return false;
    return true;
  }
};

struct Sphere3Report {
  bool pure_ok = false;
  bool closed_ok = false;     // every triangle in exactly two tetrahedra
  bool links_ok = false;      // every vertex link is a 2-sphere
  bool homology_ok = false;   // betti (1,0,0,1), no torsion
  enum class Pi1 { Trivial, Undetermined } pi1 = Pi1::Undetermined;
  std::string detail;

  bool pass() const {
    return pure_ok && closed_ok && links_ok && homology_ok && pi1 == Pi1::Trivial;
  }
};

class SimplicialComplex {
 public:
  SimplicialComplex() = default;

  // Construction from maximal simplices; downward closure is computed.
  static SimplicialComplex from_maximal(
      const std::vector<std::string>& vertex_labels,
      const std::vector<std::vector<Vertex>>& maximal);

  int dim() const { return static_cast<int>(cells_.size()) - 1; }
  size_t n_vertices() const { return labels_.size(); }
  size_t n_cells(int k) const {
    return (k >= 0 && k <= dim()) ? cells_[k].size() : 0;
  }
  std::vector<int64_t> f_vector() const;
  int64_t euler() const;

  const std::string& label(Vertex v) const { return labels_[v]; }
  Vertex vertex(const std::string& label) const;
  std::optional<Vertex> try_vertex(const std::string& label) const;
  const std::vector<std::string>& labels() const { return labels_; }

  const CellSet& cells(int k) const { return cells_[k]; }
  bool contains(std::span<const Vertex> cell) const;
  bool has_edge(Vertex u, Vertex v) const;

  // Sorted neighbor lists (built on demand, cached).
  std::span<const Vertex> neighbors(Vertex v) const;
  // Top-cell star of a vertex, as indices into cells(dim()).
  std::span<const uint32_t> star_top(Vertex v) const;

  size_t components() const;
  bool is_connected() const;

  // Maximal cells (not a face of anything), insertion order.
  std::vector<std::vector<Vertex>> maximal_cells() const;

  // Induced (full) subcomplex on a vertex subset; labels carried over.
  SimplicialComplex induced(const std::vector<Vertex>& verts) const;

  std::vector<std::vector<std::string>> cells_as_labels(int k) const;

 private:
  friend class ComplexBuilder;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, Vertex> index_;
  std::vector<CellSet> cells_;

  mutable std::vector<Vertex> adj_flat_;
  mutable std::vector<size_t> adj_off_;
  mutable std::vector<uint32_t> star_flat_;
  mutable std::vector<size_t> star_off_;
  void build_adjacency() const;
  void build_star() const;
};

/// Incremental builder used by the construction-heavy modules.
class ComplexBuilder {
 public:
  Vertex intern(const std::string& label);
  std::optional<Vertex> lookup(const std::string& label) const;
  const std::string& label(Vertex v) const { return labels_[v]; }
  size_t n_vertices() const { return labels_.size(); }

  // Adds a cell plus all of its faces. Vertices must already be interned.
  void add_cell(std::span<const Vertex> cell);
  void add_cell(std::initializer_list<Vertex> cell) {
    add_cell(std::span<const Vertex>(cell.begin(), cell.size()));
  }

  size_t n_cells(int k) const {
    return (k >= 0 && k < static_cast<int>(cells_.size())) ? cells_[k].size() : 0;
  }

  SimplicialComplex build();

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, Vertex> index_;
  std::vector<CellSet> cells_;
};

// ---- complex_core operations ----

SimplicialComplex build_complex(const std::vector<std::vector<std::string>>& maximal_simplices);

FlagReport is_flag(const SimplicialComplex& k);

std::vector<SquareRec> enumerate_squares(const SimplicialComplex& k);

IsolatedReport has_isolated_squares(const SimplicialComplex& k);

bool is_full_subcomplex(const SimplicialComplex& k, const std::vector<std::string>& vertex_set);
bool is_full_subcomplex(const SimplicialComplex& k, const SimplicialComplex& sub);

SimplicialComplex vertex_link(const SimplicialComplex& k, const std::string& v);

HomologyProfile homology(const SimplicialComplex& k);

Sphere3Report sphere3_certificate(const SimplicialComplex& k);

// Link of a vertex checked against "2-sphere": closed surface, connected, euler 2.
bool link_is_2sphere(const SimplicialComplex& link);
bool link_is_circle(const SimplicialComplex& link);

std::array<Vertex, 4> canonical_square(std::array<Vertex, 4> cycle);

}  // namespace kf
