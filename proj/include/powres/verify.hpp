#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "powres/linalg.hpp"
#include "powres/parallel.hpp"
#include "powres/report.hpp"
#include "powres/resolution.hpp"
#include "powres/support_tree.hpp"

namespace powres {

/// Consecutive differentials compose to zero, including augmentation . d_1.
CheckReport check_d_squared(const GradedComplex& complex);
/// No differential entry is a nonzero scalar times 1.
CheckReport check_minimality(const GradedComplex& complex);
/// entry monomial * row degree = column degree, for every nonzero entry.
CheckReport check_homogeneity(const GradedComplex& complex);

/// The strand of one multidegree b: the subcomplex on basis elements whose
/// degree divides x^b, with monomial entries replaced by their coefficients.
struct DegreeRecord {
  Monomial degree;
  std::vector<std::size_t> dims;    // dims[i]: basis elements of F_i in degree b
  std::vector<std::size_t> ranks;   // ranks[i]: rank of d_i restricted (ranks[0]: augmentation)
  std::vector<long> homology;       // homology[i] for i >= 0, computed against the augmentation
  std::size_t expected_h0 = 0;      // dim of (I^r)_b: 1 if some generator divides x^b
  bool composes_to_zero = true;     // consecutive restricted maps compose to zero
  bool exact = true;

  bool operator==(const DegreeRecord&) const = default;
};

struct ExactnessReport {
  Field field;
  bool passed = true;
  std::vector<DegreeRecord> degrees;  // sorted by multidegree
  std::optional<Monomial> first_failure;
};

/// The lcm closure of the degree-0 labels: the multidegrees where the
/// restricted complex can change. Throws ResourceError above `limit`.
std::vector<Monomial> multidegree_lattice(const GradedComplex& complex, std::size_t limit = 2'000'000);

/// Restricts the augmented complex to each lattice degree and checks
/// acyclicity over `field`, comparing degree 0 against the generators of the
/// resolved ideal. A complex is exact everywhere iff it is exact on the
/// lattice, since the restriction is constant between lattice points.
ExactnessReport degreewise_exactness(const GradedComplex& complex, std::span<const Monomial> generators, Field field,
                                     Execution exec = Execution::parallel);

/// rank F_t equals C(q,t) C(q+r-t, r-t) for every t, and the length is min(q, r).
CheckReport betti_agreement(const GradedComplex& complex, int q, int r);

/// Degreewise ranks over every field in `fields` equal those over the rationals.
CheckReport char_independence(const GradedComplex& complex, std::span<const Monomial> generators,
                              std::span<const Field> fields, Execution exec = Execution::parallel);

/// The translations t_i induce chain maps F(r) -> F(r+1) homogenized by m_i;
/// when r >= q their images together hit every basis element of F(r+1).
CheckReport chain_map_check(const RootedTree& tree, int r);

/// Copy of `complex` with the sign of one differential entry reversed.
GradedComplex flip_sign(const GradedComplex& complex, int degree, std::size_t entry);

/// Assembles and homogenizes the complex on a tree that does not support
/// the resolution of `ideal`, then runs the exactness check over Q. Empty if
/// every spanning tree supports the resolution.
std::optional<ExactnessReport> wrong_tree_control(const MonomialIdeal& ideal, int r);

/// All checks for one (tree, r) pair, in a fixed order.
struct Verification {
  std::vector<CheckReport> checks;
  std::vector<ExactnessReport> exactness;  // one per field
  bool passed() const;
};

Verification verify_resolution(const RootedTree& tree, int r, std::span<const Field> fields,
                               Execution exec = Execution::parallel);

}  // namespace powres
