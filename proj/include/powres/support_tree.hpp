#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "powres/monomial.hpp"
#include "powres/parallel.hpp"

namespace powres {

/// A tree whose vertices carry monomial labels, before rooting.
struct UnrootedTree {
  std::vector<Monomial> labels;
  std::vector<std::pair<int, int>> edges;
};

/// A tree labeled so that every path from the root v_0 visits increasing
/// indices. Edge e_i (i = 1..q) is directed from v_{tau(i)} to v_i.
class RootedTree {
 public:
  /// `parent[0]` must be -1 and `parent[i] < i` for i >= 1.
  RootedTree(Ring ring, std::vector<Monomial> labels, std::vector<int> parent);

  const Ring& ring() const noexcept { return ring_; }
  int q() const noexcept { return static_cast<int>(labels_.size()) - 1; }
  std::size_t vertex_count() const noexcept { return labels_.size(); }
  const std::vector<Monomial>& labels() const noexcept { return labels_; }
  const Monomial& label(int i) const { return labels_.at(i); }
  int tau(int i) const;
  const std::vector<int>& parents() const noexcept { return parent_; }

  /// lcm(m_i, m_tau(i)).
  Monomial edge_label(int i) const;
  /// lcm(m_i, m_tau(i)) / m_i, the coefficient of T_i in the syzygy g_i.
  Monomial sink_ratio(int i) const;
  /// lcm(m_i, m_tau(i)) / m_tau(i).
  Monomial source_ratio(int i) const;

  UnrootedTree unrooted() const;
  MonomialIdeal ideal() const;

  bool operator==(const RootedTree&) const = default;

 private:
  Ring ring_;
  std::vector<Monomial> labels_;
  std::vector<int> parent_;
};

/// Relabels by breadth-first search from `root`; children are visited in
/// decreasing lexicographic order of their monomials. Throws
/// std::invalid_argument if the input is not a tree.
RootedTree root_and_label(const Ring& ring, const UnrootedTree& tree, int root);

/// q x q matrix: entry (i-1, j-1) is 1 iff e_i lies on the path v_0 -> v_j.
using PathMatrix = std::vector<std::vector<int>>;
PathMatrix path_matrix(const RootedTree& tree);

struct MultidegreeCheck {
  Monomial degree;
  std::size_t vertex_count = 0;  // vertices whose label divides `degree`
  bool connected = true;
};

struct SupportReport {
  std::vector<MultidegreeCheck> lattice;  // one entry per lcm-lattice element
  bool edges_minimal = true;
  std::optional<int> non_minimal_edge;
  std::optional<Monomial> witness;        // first disconnected multidegree
  bool supports_minimal_resolution() const { return edges_minimal && !witness; }
};

/// Checks that the tree supports a minimal free resolution of `ideal` by
/// testing connectivity of the induced subgraph at every lcm-lattice degree.
/// Throws std::invalid_argument if the vertex labels are not the generators.
SupportReport validate_support(const RootedTree& tree, const MonomialIdeal& ideal);
SupportReport validate_support(const Ring& ring, const UnrootedTree& tree, const MonomialIdeal& ideal);

/// The least common multiples of all nonempty subsets of `labels`.
std::vector<Monomial> lcm_lattice(std::span<const Monomial> labels);

/// Finds a tree supporting the minimal resolution of a square-free ideal by
/// exhaustive search over spanning trees in Pruefer order. The first success
/// in enumeration order is returned, rooted at vertex `root` (input order).
/// Throws DomainError when the ideal is not square-free, violates q+1 <= n,
/// or has no supporting tree.
RootedTree build_support_tree(const MonomialIdeal& ideal, Execution exec = Execution::parallel,
                              std::optional<int> root = std::nullopt);

/// Decodes a Pruefer sequence over {0..n-1} into the edges of a tree.
std::vector<std::pair<int, int>> prufer_decode(std::span<const int> sequence, int n);

/// First spanning tree (Pruefer order) that does NOT support the resolution,
/// if any. Used for negative controls.
std::optional<UnrootedTree> first_non_supporting_tree(const MonomialIdeal& ideal);

/// Text format: `label: i <monomial>` and `edge: i j` lines.
std::string format_tree_text(const RootedTree& tree);
UnrootedTree parse_tree_text(std::string_view text, const Ring& ring);

}  // namespace powres
