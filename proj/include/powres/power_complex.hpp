#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "powres/monomial.hpp"
#include "powres/parallel.hpp"
#include "powres/report.hpp"
#include "powres/support_tree.hpp"

namespace powres {

/// A subset of the edge indices {1..q}, as a bit mask (bit i <-> e_i).
class DirectionSet {
 public:
  DirectionSet() = default;
  explicit DirectionSet(std::uint32_t mask);
  static DirectionSet of(std::initializer_list<int> indices);

  std::uint32_t mask() const noexcept { return mask_; }
  int size() const noexcept { return __builtin_popcount(mask_); }
  bool empty() const noexcept { return mask_ == 0; }
  bool contains(int i) const noexcept { return (mask_ >> i) & 1u; }
  bool subset_of(DirectionSet other) const noexcept { return (mask_ & ~other.mask_) == 0; }
  DirectionSet without(int i) const noexcept { return DirectionSet(mask_ & ~(1u << i)); }
  /// Members in ascending order.
  std::vector<int> indices() const;

  friend bool operator==(DirectionSet, DirectionSet) = default;
  std::string to_string() const;

 private:
  std::uint32_t mask_ = 0;
};

/// Lexicographic order on the sorted member lists.
bool lex_less(DirectionSet a, DirectionSet b);

using Point = std::vector<int>;

/// phi(a) = Phi * (a_1..a_q)^T.
class Embedding {
 public:
  explicit Embedding(const RootedTree& tree);
  Point operator()(const ExponentVector& a) const;
  const PathMatrix& matrix() const noexcept { return phi_; }

 private:
  PathMatrix phi_;
};

struct PowerGraph {
  struct Edge {
    std::size_t source;  // indices into `vertices`
    std::size_t sink;
    int direction;       // i with sink = source + f_i - f_tau(i)
  };
  int r = 0;
  std::vector<ExponentVector> vertices;  // N_r, canonical order
  std::vector<Point> coords;             // phi of each vertex
  std::vector<Edge> edges;
};

PowerGraph power_graph(const RootedTree& tree, int r);

/// The cube C(b, B): sink b and direction set B within supp(b).
struct Cube {
  ExponentVector sink;
  DirectionSet directions;

  int dimension() const noexcept { return directions.size(); }
  friend bool operator==(const Cube&, const Cube&) = default;
  std::string to_string() const;
};

/// Validates B within supp(b).
Cube cube(const ExponentVector& sink, DirectionSet directions);

/// a = b - sum_{i in B} (f_i - f_tau(i)).
ExponentVector cube_source(const RootedTree& tree, const Cube& c);

/// The 2^|B| vertices b - sum_{i in B'} (f_i - f_tau(i)), indexed by the
/// submask B' of B read as an integer over B's ascending members.
std::vector<ExponentVector> cube_vertices(const RootedTree& tree, const Cube& c);

struct Facet {
  Cube cube;
  int sign;        // incidence number in the oriented chain complex
  int direction;   // the removed direction j_k
  bool keeps_sink; // C(b, B\{j}) rather than C(b - f_j + f_tau(j), B\{j})
};

/// The 2|B| codimension-one faces. For B = {j_1 < ... < j_i}, first the
/// faces C(b, B\{j_k}) with sign (-1)^(k+1), then C(b - f_jk + f_tau(jk),
/// B\{j_k}) with sign (-1)^k, each in increasing k.
std::vector<Facet> faces(const Cube& c, const RootedTree& tree);

/// t_j: C(b, B) -> C(b + f_j, B).
Cube translate(const Cube& c, int j);

/// The cubical complex with cells C(b, B) for b in N_r, B within supp(b),
/// grouped by dimension and canonically ordered (sink, then B lexicographic).
class CellComplex {
 public:
  CellComplex(RootedTree tree, int r, std::vector<std::vector<Cube>> cells);

  const RootedTree& tree() const noexcept { return tree_; }
  int r() const noexcept { return r_; }
  int q() const noexcept { return tree_.q(); }
  /// Highest dimension with a cell.
  int dimension() const noexcept { return static_cast<int>(cells_.size()) - 1; }
  std::span<const Cube> cells(int dim) const;
  std::vector<std::size_t> f_vector() const;
  std::size_t cell_count() const;
  const std::vector<ExponentVector>& vertices() const noexcept { return vertices_; }

  /// Position of `c` within its dimension, if it is a cell.
  std::optional<std::size_t> index_of(const Cube& c) const;

  friend bool operator==(const CellComplex& a, const CellComplex& b) {
    return a.tree_ == b.tree_ && a.r_ == b.r_ && a.cells_ == b.cells_;
  }

 private:
  std::uint64_t key(const Cube& c) const;

  RootedTree tree_;
  int r_;
  std::vector<std::vector<Cube>> cells_;
  std::vector<ExponentVector> vertices_;
  std::vector<std::unordered_map<std::uint64_t, std::size_t>> index_;
};

/// Guardrail on the total number of cells (POWRES_MAX_CELLS overrides).
std::size_t max_cells();

/// Sum over t of C(q,t) * C(q+r-t, r-t).
std::uint64_t expected_cell_count(int q, int r);

/// Builds the complex; throws ResourceError above `max_cells()`.
CellComplex assemble_complex(const RootedTree& tree, int r);

/// Every pairwise intersection of cells is a common face.
CheckReport validate_polyhedral(const CellComplex& complex, Execution exec = Execution::parallel);
/// phi is injective on N_r.
CheckReport check_phi_injective(const RootedTree& tree, int r);
/// The three descriptions of the edges of G^r agree.
CheckReport check_edge_equivalence(const RootedTree& tree, int r);
/// Each cube's induced subgraph is a cube 1-skeleton with the stated source and sink.
CheckReport check_cube_source_sink(const CellComplex& complex);
/// Every iterated face of every cube is a cell and a geometric face.
CheckReport check_face_closure(const CellComplex& complex);
/// #t-cells = C(q,t) * C(q+r-t, r-t).
CheckReport check_f_vector(const CellComplex& complex);

/// Every cube of the (r+1)-complex is t_i of a cube of the r-complex.
/// Requires r >= q (throws std::invalid_argument otherwise).
CheckReport covering_check(const RootedTree& tree, int r);

}  // namespace powres
