#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "powres/linalg.hpp"
#include "powres/monomial.hpp"
#include "powres/power_complex.hpp"

namespace powres {

/// One term coeff * monomial at (row, col).
struct Entry {
  std::size_t row = 0;
  std::size_t col = 0;
  std::int64_t coeff = 0;
  Monomial monomial;

  bool operator==(const Entry&) const = default;
};

/// Sparse matrix whose entries are signed monomial terms.
struct SparseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Entry> entries;  // sorted by (col, row), no duplicate positions

  /// The scalar coefficients, ignoring monomials.
  IntMatrix scalars() const;
  bool operator==(const SparseMatrix&) const = default;
};

/// Per column: (row, monomial) -> summed coefficient, zero terms dropped.
using ColumnTerms = std::map<std::pair<std::size_t, Monomial>, std::int64_t>;
std::vector<ColumnTerms> column_terms(const SparseMatrix& m);

/// A graded free complex 0 <- F_0 <- F_1 <- ... with an augmentation
/// F_0 -> R whose entries are the generators of the resolved ideal.
struct GradedComplex {
  Ring ring;
  std::vector<std::vector<Monomial>> degrees;  // degrees[i][k]: multidegree of basis element k of F_i
  std::vector<SparseMatrix> differentials;     // differentials[i]: F_i -> F_{i-1}; [0] is empty
  std::optional<SparseMatrix> augmentation;    // 1 x rank F_0

  /// Largest i with F_i != 0.
  int length() const { return static_cast<int>(degrees.size()) - 1; }
  std::size_t rank(int i) const;
  bool operator==(const GradedComplex&) const = default;
};

/// m^b times, for each j in B, the variables dividing m_tau(j) but not m_j.
Monomial cell_label(const RootedTree& tree, const Cube& c);
/// lcm of m^v over the 2^|B| vertices v of the cube.
Monomial cell_label_bruteforce(const RootedTree& tree, const Cube& c);

/// The cellular chain complex with +-1 incidences; all degrees are 1.
GradedComplex oriented_chain_complex(const CellComplex& complex);

/// The labeled complex: face coefficients lcm(m_j, m_tau(j))/m_j on the
/// sink side and lcm(m_j, m_tau(j))/m_tau(j) on the source side.
GradedComplex homogenize(const CellComplex& complex);

struct RatioCheck {
  Monomial sink_side;    // m_C(b,B) / m_C(b, B\{i}), from brute-force labels
  Monomial source_side;  // m_C(b,B) / m_C(b - f_i + f_tau(i), B\{i})
  bool matches = false;  // equal to the two edge-label ratios of e_i
};

/// Throws std::invalid_argument unless i in B within supp(b).
RatioCheck simplify_ratios(const RootedTree& tree, const ExponentVector& b, DirectionSet B, int i);

/// C(q,t) * C(q+r-t, r-t) for t <= min(q, r), else 0.
std::uint64_t betti_formula(int q, int r, int t);

struct ProjectiveDimensions {
  int power;     // pd I^r
  int quotient;  // pd I^r / I^{r+1}
};
ProjectiveDimensions pd_formula(int q, int r);

}  // namespace powres
