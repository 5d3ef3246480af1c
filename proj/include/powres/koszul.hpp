#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "powres/power_complex.hpp"
#include "powres/resolution.hpp"

namespace powres {

/// g_k = (lcm/m_k) T_k - (lcm/m_tau(k)) T_tau(k), lcm = lcm(m_k, m_tau(k)).
struct SyzygyGenerator {
  int index = 0;
  int sink = 0;            // k
  int source = 0;          // tau(k)
  Monomial sink_coeff;     // coefficient of T_k
  Monomial source_coeff;   // coefficient of T_tau(k), entering with a minus sign
};

/// Throws std::logic_error if some g_k fails to vanish under T_i -> m_i.
std::vector<SyzygyGenerator> syzygy_generators(const RootedTree& tree);

/// Renders g_k as e.g. "x*T1 - z*T0".
std::string format_syzygy(const Ring& ring, const SyzygyGenerator& g);

/// Basis element e_J (x) T^w of the strand.
struct StrandBasis {
  DirectionSet wedge;
  ExponentVector t_exponent;
  bool operator==(const StrandBasis&) const = default;
};

/// Subsets of size i of {1..q} in colexicographic order.
std::vector<DirectionSet> colex_subsets(int q, int i);

/// The T-degree r strand of the Koszul complex on g_1..g_q, with the
/// augmentation S_r -> I^r, T^w -> m^w.
struct StrandComplex {
  int r = 0;
  GradedComplex complex;
  std::vector<std::vector<StrandBasis>> basis;  // J-major, J colex, w canonical
};

StrandComplex koszul_strand(const RootedTree& tree, int r);

struct RhoReport {
  bool bijective = true;
  bool degree_preserving = true;
  bool commutes = true;
  bool augmentation_commutes = true;
  std::size_t checked = 0;
  std::vector<std::string> mismatches;  // capped
  bool passed() const { return bijective && degree_preserving && commutes && augmentation_commutes; }
};

/// rho(C(b, B)) = e_B (x) T^(b - sum_{i in B} f_i).
StrandBasis rho(const Cube& c);

/// Checks that rho is a degree-preserving basis bijection and that
/// rho . d^F = d^K . rho entrywise.
RhoReport rho_isomorphism(const CellComplex& cells, const GradedComplex& f, const StrandComplex& k);

}  // namespace powres
