#include "powres/verify.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_set>

#include "powres/errors.hpp"
#include "powres/koszul.hpp"
#include "powres/power_complex.hpp"

namespace powres {

CheckReport check_d_squared(const GradedComplex& complex) {
  CheckReport report("d^2 = 0");
  auto compose = [&](const SparseMatrix& outer, const SparseMatrix& inner, const std::string& what) {
    const auto outer_cols = column_terms(outer);
    const auto inner_cols = column_terms(inner);
    for (std::size_t c = 0; c < inner_cols.size(); ++c) {
      ++report.checked;
      ColumnTerms acc;
      for (const auto& [key, a] : inner_cols[c])
        for (const auto& [key2, b] : outer_cols.at(key.first)) acc[{key2.first, key.second * key2.second}] += a * b;
      for (const auto& [key, v] : acc)
        if (v != 0) {
          report.fail(what + ": column " + std::to_string(c) + " row " + std::to_string(key.first) + " is nonzero");
          break;
        }
    }
  };
  for (int i = 2; i <= complex.length(); ++i)
    compose(complex.differentials[i - 1], complex.differentials[i], "d" + std::to_string(i - 1) + "*d" + std::to_string(i));
  if (complex.augmentation && complex.length() >= 1) compose(*complex.augmentation, complex.differentials[1], "augmentation*d1");
  return report;
}

CheckReport check_minimality(const GradedComplex& complex) {
  CheckReport report("no unit entries");
  for (int i = 1; i <= complex.length(); ++i) {
    for (const auto& e : complex.differentials[i].entries) {
      ++report.checked;
      if (e.coeff != 0 && e.monomial.is_one())
        report.fail("d" + std::to_string(i) + " has a unit entry at (" + std::to_string(e.row) + "," +
                    std::to_string(e.col) + ")");
    }
  }
  return report;
}

CheckReport check_homogeneity(const GradedComplex& complex) {
  CheckReport report("differentials are homogeneous");
  for (int i = 1; i <= complex.length(); ++i) {
    for (const auto& e : complex.differentials[i].entries) {
      ++report.checked;
      if (e.monomial * complex.degrees[i - 1][e.row] != complex.degrees[i][e.col])
        report.fail("d" + std::to_string(i) + " entry (" + std::to_string(e.row) + "," + std::to_string(e.col) +
                    ") is not homogeneous");
    }
  }
  if (complex.augmentation) {
    for (const auto& e : complex.augmentation->entries) {
      ++report.checked;
      if (e.monomial != complex.degrees[0][e.col])
        report.fail("augmentation entry " + std::to_string(e.col) + " does not match its degree");
    }
  }
  return report;
}

std::vector<Monomial> multidegree_lattice(const GradedComplex& complex, std::size_t limit) {
  std::unordered_set<Monomial, MonomialHash> seen;
  std::vector<Monomial> lattice;
  if (complex.degrees.empty()) return lattice;
  for (const Monomial& g : complex.degrees[0]) {
    if (seen.count(g)) continue;
    const std::size_t before = lattice.size();
    std::vector<Monomial> fresh{g};
    for (std::size_t k = 0; k < before; ++k) fresh.push_back(lcm(lattice[k], g));
    for (auto& m : fresh) {
      if (seen.insert(m).second) lattice.push_back(std::move(m));
    }
    if (lattice.size() > limit)
      throw ResourceError("lcm lattice exceeds " + std::to_string(limit) + " multidegrees");
  }
  std::sort(lattice.begin(), lattice.end());
  return lattice;
}

namespace {

bool composes_to_zero(const IntMatrix& a, const IntMatrix& b, Field field) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      std::int64_t sum = 0;
      for (std::size_t k = 0; k < a.cols(); ++k) sum += a(i, k) * b(k, j);
      if (field.characteristic == 0 ? sum != 0 : sum % field.characteristic != 0) return false;
    }
  return true;
}

DegreeRecord restrict_and_rank(const GradedComplex& complex, const Monomial& b,
                               std::span<const Monomial> generators, Field field) {
  const int top = complex.length();
  DegreeRecord rec;
  rec.degree = b;
  std::vector<std::vector<long>> pos(top + 1);
  rec.dims.assign(top + 1, 0);
  for (int i = 0; i <= top; ++i) {
    pos[i].assign(complex.degrees[i].size(), -1);
    for (std::size_t k = 0; k < complex.degrees[i].size(); ++k)
      if (complex.degrees[i][k].divides(b)) pos[i][k] = static_cast<long>(rec.dims[i]++);
  }
  rec.ranks.assign(top + 2, 0);
  // maps[i]: the restriction of d_i; maps[0] is the augmentation.
  std::vector<IntMatrix> maps(top + 1);
  maps[0] = IntMatrix(complex.augmentation ? 1 : 0, rec.dims[0]);
  if (complex.augmentation) {
    for (const auto& e : complex.augmentation->entries)
      if (pos[0][e.col] >= 0) maps[0](0, pos[0][e.col]) += e.coeff;
    rec.ranks[0] = rank(maps[0], field);
  }
  for (int i = 1; i <= top; ++i) {
    maps[i] = IntMatrix(rec.dims[i - 1], rec.dims[i]);
    for (const auto& e : complex.differentials[i].entries)
      if (pos[i][e.col] >= 0 && pos[i - 1][e.row] >= 0) maps[i](pos[i - 1][e.row], pos[i][e.col]) += e.coeff;
    rec.ranks[i] = rank(maps[i], field);
  }
  // Ranks only give homology when the restriction is a complex.
  for (int i = 1; i <= top && rec.composes_to_zero; ++i)
    rec.composes_to_zero = composes_to_zero(maps[i - 1], maps[i], field);
  for (const Monomial& g : generators)
    if (g.divides(b)) {
      rec.expected_h0 = 1;
      break;
    }
  rec.homology.assign(top + 1, 0);
  for (int i = 0; i <= top; ++i)
    rec.homology[i] = static_cast<long>(rec.dims[i]) - static_cast<long>(rec.ranks[i]) - static_cast<long>(rec.ranks[i + 1]);
  rec.ranks.pop_back();
  rec.exact = rec.composes_to_zero && rec.ranks[0] == rec.expected_h0;
  for (long h : rec.homology) rec.exact = rec.exact && h == 0;
  return rec;
}

}  // namespace

ExactnessReport degreewise_exactness(const GradedComplex& complex, std::span<const Monomial> generators, Field field,
                                     Execution exec) {
  ExactnessReport report;
  report.field = field;
  const auto lattice = multidegree_lattice(complex);
  report.degrees.resize(lattice.size());
  const long n = static_cast<long>(lattice.size());
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 8)
    for (long k = 0; k < n; ++k) report.degrees[k] = restrict_and_rank(complex, lattice[k], generators, field);
  } else {
    for (long k = 0; k < n; ++k) report.degrees[k] = restrict_and_rank(complex, lattice[k], generators, field);
  }
  for (const auto& rec : report.degrees)
    if (!rec.exact) {
      report.passed = false;
      if (!report.first_failure) report.first_failure = rec.degree;
    }
  return report;
}

CheckReport betti_agreement(const GradedComplex& complex, int q, int r) {
  CheckReport report("ranks match C(q,t)C(q+r-t,r-t)");
  for (int t = 0; t <= std::max(q, r) + 1; ++t) {
    ++report.checked;
    const std::uint64_t want = betti_formula(q, r, t);
    const std::uint64_t have = complex.rank(t);
    if (want != have)
      report.fail("F_" + std::to_string(t) + " has rank " + std::to_string(have) + ", expected " + std::to_string(want));
  }
  ++report.checked;
  if (complex.length() != pd_formula(q, r).power)
    report.fail("length " + std::to_string(complex.length()) + " differs from pd " + std::to_string(pd_formula(q, r).power));
  return report;
}

CheckReport char_independence(const GradedComplex& complex, std::span<const Monomial> generators,
                              std::span<const Field> fields, Execution exec) {
  CheckReport report("ranks independent of the field");
  const auto base = degreewise_exactness(complex, generators, Field::rationals(), exec);
  for (const Field& f : fields) {
    if (f.characteristic == 0) continue;
    const auto other = degreewise_exactness(complex, generators, f, exec);
    for (std::size_t k = 0; k < base.degrees.size(); ++k) {
      ++report.checked;
      if (base.degrees[k].ranks != other.degrees[k].ranks)
        report.fail(f.name() + ": ranks differ from Q at " + format_monomial(complex.ring, base.degrees[k].degree));
    }
  }
  return report;
}

CheckReport chain_map_check(const RootedTree& tree, int r) {
  CheckReport report("translations are chain maps");
  const CellComplex small = assemble_complex(tree, r);
  const CellComplex big = assemble_complex(tree, r + 1);
  const GradedComplex f = homogenize(small);
  const GradedComplex g = homogenize(big);
  const Embedding phi(tree);
  const int q = tree.q();
  std::vector<std::vector<bool>> hit(big.dimension() + 1);
  for (int d = 0; d <= big.dimension(); ++d) hit[d].assign(big.cells(d).size(), false);

  for (int i = 0; i <= q; ++i) {
    const std::string ti = "t_" + std::to_string(i);
    // map[d][c] = index of t_i(c) in the big complex
    std::vector<std::vector<std::size_t>> map(small.dimension() + 1);
    bool complete = true;
    for (int d = 0; d <= small.dimension(); ++d) {
      for (std::size_t c = 0; c < small.cells(d).size(); ++c) {
        ++report.checked;
        const Cube& cell = small.cells(d)[c];
        const Cube image = translate(cell, i);
        auto idx = big.index_of(image);
        if (!idx) {
          report.fail(ti + "(" + cell.to_string() + ") is not a cell");
          complete = false;
          map[d].push_back(0);
          continue;
        }
        map[d].push_back(*idx);
        hit[d][*idx] = true;
        if (g.degrees[d][*idx] != tree.label(i) * f.degrees[d][c])
          report.fail(ti + " is not homogeneous of degree m_" + std::to_string(i) + " at " + cell.to_string());
        if (i == 0 && phi(cell.sink) != phi(image.sink))
          report.fail("t_0 moves " + cell.to_string() + " in the embedding");
      }
    }
    if (!complete) continue;
    for (int d = 1; d <= small.dimension(); ++d) {
      const auto fcols = column_terms(f.differentials[d]);
      const auto gcols = column_terms(g.differentials[d]);
      for (std::size_t c = 0; c < fcols.size(); ++c) {
        ColumnTerms mapped;
        for (const auto& [key, coeff] : fcols[c]) mapped[{map[d - 1][key.first], key.second}] += coeff;
        if (mapped != gcols[map[d][c]])
          report.fail(ti + " does not commute with d" + std::to_string(d) + " at " + small.cells(d)[c].to_string());
      }
    }
    const auto fa = column_terms(*f.augmentation);
    const auto ga = column_terms(*g.augmentation);
    for (std::size_t c = 0; c < fa.size(); ++c) {
      ColumnTerms scaled;
      for (const auto& [key, coeff] : fa[c]) scaled[{key.first, key.second * tree.label(i)}] += coeff;
      if (scaled != ga[map[0][c]]) report.fail(ti + " does not lift multiplication by m_" + std::to_string(i));
    }
  }
  if (r >= q) {
    for (int d = 0; d <= big.dimension(); ++d)
      for (std::size_t c = 0; c < hit[d].size(); ++c) {
        ++report.checked;
        if (!hit[d][c]) report.fail(big.cells(d)[c].to_string() + " is not in the image of any t_i");
      }
  }
  return report;
}

GradedComplex flip_sign(const GradedComplex& complex, int degree, std::size_t entry) {
  GradedComplex out = complex;
  if (degree < 1 || degree > out.length()) throw std::invalid_argument("no differential in that degree");
  auto& entries = out.differentials[degree].entries;
  if (entry >= entries.size()) throw std::invalid_argument("entry index out of range");
  entries[entry].coeff = -entries[entry].coeff;
  return out;
}

std::optional<ExactnessReport> wrong_tree_control(const MonomialIdeal& ideal, int r) {
  auto bad = first_non_supporting_tree(ideal);
  if (!bad) return std::nullopt;
  const RootedTree tree = root_and_label(ideal.ring(), *bad, 0);
  const GradedComplex f = homogenize(assemble_complex(tree, r));
  std::vector<Monomial> gens;
  for (const auto& a : enumerate_Nr(ideal.q(), r)) gens.push_back(power_generator(ideal, a));
  return degreewise_exactness(f, gens, Field::rationals());
}

bool Verification::passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  for (const auto& e : exactness)
    if (!e.passed) return false;
  return true;
}

Verification verify_resolution(const RootedTree& tree, int r, std::span<const Field> fields, Execution exec) {
  Verification out;
  const int q = tree.q();
  const CellComplex cells = assemble_complex(tree, r);
  const GradedComplex f = homogenize(cells);
  std::vector<Monomial> gens;
  for (const auto& a : enumerate_Nr(q, r)) gens.push_back(power_generator(tree.labels(), a));

  out.checks.push_back(check_d_squared(f));
  out.checks.push_back(check_homogeneity(f));
  out.checks.push_back(check_minimality(f));
  out.checks.push_back(betti_agreement(f, q, r));
  {
    CheckReport labels("cell labels equal vertex lcms");
    for (int d = 0; d <= cells.dimension(); ++d)
      for (const Cube& c : cells.cells(d)) {
        ++labels.checked;
        if (cell_label(tree, c) != cell_label_bruteforce(tree, c)) labels.fail(c.to_string());
      }
    out.checks.push_back(std::move(labels));
  }
  {
    CheckReport ratios("face ratios equal edge-label ratios");
    for (int d = 1; d <= cells.dimension(); ++d)
      for (const Cube& c : cells.cells(d))
        for (int i : c.directions.indices()) {
          ++ratios.checked;
          if (!simplify_ratios(tree, c.sink, c.directions, i).matches)
            ratios.fail(c.to_string() + " direction " + std::to_string(i));
        }
    out.checks.push_back(std::move(ratios));
  }
  {
    CheckReport inj("a -> m^a injective on N_r");
    auto res = check_power_injectivity(tree.ideal(), r);
    inj.checked = gens.size();
    if (!res.injective) inj.fail(res.witness->first.to_string() + " and " + res.witness->second.to_string());
    out.checks.push_back(std::move(inj));
  }
  {
    const StrandComplex k = koszul_strand(tree, r);
    const RhoReport rho_report = rho_isomorphism(cells, f, k);
    CheckReport iso("rho is an isomorphism onto the Koszul strand");
    iso.checked = rho_report.checked;
    if (!rho_report.passed()) {
      iso.fail("rho check failed");
      for (const auto& m : rho_report.mismatches) iso.fail(m);
    }
    out.checks.push_back(std::move(iso));
  }

  bool has_q = false;
  for (const Field& fl : fields) {
    if (fl.characteristic == 0) has_q = true;
    out.exactness.push_back(degreewise_exactness(f, gens, fl, exec));
  }
  if (!has_q) out.exactness.insert(out.exactness.begin(), degreewise_exactness(f, gens, Field::rationals(), exec));
  {
    CheckReport agree("ranks independent of the field");
    const ExactnessReport* base = nullptr;
    for (const auto& e : out.exactness)
      if (e.field.characteristic == 0) base = &e;
    for (const auto& e : out.exactness) {
      if (&e == base) continue;
      for (std::size_t k = 0; k < base->degrees.size(); ++k) {
        ++agree.checked;
        if (base->degrees[k].ranks != e.degrees[k].ranks)
          agree.fail(e.field.name() + " differs at " + format_monomial(tree.ring(), base->degrees[k].degree));
      }
    }
    out.checks.push_back(std::move(agree));
  }
  return out;
}

}  // namespace powres
