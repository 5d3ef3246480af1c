#include "powres/koszul.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <tuple>

namespace powres {

std::vector<SyzygyGenerator> syzygy_generators(const RootedTree& tree) {
  std::vector<SyzygyGenerator> out;
  for (int k = 1; k <= tree.q(); ++k) {
    SyzygyGenerator g{k, k, tree.tau(k), tree.sink_ratio(k), tree.source_ratio(k)};
    if (g.sink_coeff * tree.label(k) != g.source_coeff * tree.label(g.source))
      throw std::logic_error("g_" + std::to_string(k) + " is not a syzygy");
    out.push_back(std::move(g));
  }
  return out;
}

std::string format_syzygy(const Ring& ring, const SyzygyGenerator& g) {
  return format_monomial(ring, g.sink_coeff) + "*T" + std::to_string(g.sink) + " - " +
         format_monomial(ring, g.source_coeff) + "*T" + std::to_string(g.source);
}

std::vector<DirectionSet> colex_subsets(int q, int i) {
  std::vector<DirectionSet> out;
  if (i < 0 || i > q) return out;
  for (std::uint32_t mask = 0; mask < (1u << q); ++mask)
    if (__builtin_popcount(mask) == i) out.emplace_back(mask << 1);
  // Colex on sets equals numeric order on their bit masks.
  return out;
}

StrandBasis rho(const Cube& c) {
  ExponentVector w = c.sink;
  for (int j : c.directions.indices()) w = w.shifted(j, -1);
  return {c.directions, w};
}

StrandComplex koszul_strand(const RootedTree& tree, int r) {
  if (r < 1) throw std::invalid_argument("r must be positive");
  const int q = tree.q();
  const auto gens = syzygy_generators(tree);
  StrandComplex out;
  out.r = r;
  out.complex.ring = tree.ring();
  const int top = std::min(q, r);
  out.basis.resize(top + 1);
  out.complex.degrees.resize(top + 1);
  out.complex.differentials.resize(top + 1);

  std::vector<std::vector<ExponentVector>> monomials(r + 1);
  for (int d = 0; d <= r; ++d) monomials[d] = d == 0 ? std::vector{ExponentVector(std::vector<int>(q + 1, 0))}
                                                     : enumerate_Nr(q, d);

  // Position lookup: (wedge mask, T-exponent) -> index.
  std::vector<std::map<std::pair<std::uint32_t, ExponentVector>, std::size_t>> where(top + 1);
  for (int i = 0; i <= top; ++i) {
    for (DirectionSet J : colex_subsets(q, i)) {
      for (const auto& w : monomials[r - i]) {
        where[i].emplace(std::make_pair(J.mask(), w), out.basis[i].size());
        out.basis[i].push_back({J, w});
        Monomial degree = power_generator(tree.labels(), w);
        for (int j : J.indices()) degree = degree * tree.edge_label(j);
        out.complex.degrees[i].push_back(std::move(degree));
      }
    }
  }

  for (int i = 1; i <= top; ++i) {
    SparseMatrix& m = out.complex.differentials[i];
    m.rows = out.basis[i - 1].size();
    m.cols = out.basis[i].size();
    for (std::size_t col = 0; col < out.basis[i].size(); ++col) {
      const auto& [J, w] = out.basis[i][col];
      const auto js = J.indices();
      for (std::size_t k = 0; k < js.size(); ++k) {
        const int sign = k % 2 == 0 ? 1 : -1;  // (-1)^(k-1) with k counted from 1
        const SyzygyGenerator& g = gens[js[k] - 1];
        const DirectionSet rest = J.without(js[k]);
        m.entries.push_back({where[i - 1].at({rest.mask(), w.shifted(g.sink, 1)}), col, sign, g.sink_coeff});
        m.entries.push_back({where[i - 1].at({rest.mask(), w.shifted(g.source, 1)}), col, -sign, g.source_coeff});
      }
    }
    std::sort(m.entries.begin(), m.entries.end(),
              [](const Entry& a, const Entry& b) { return std::tie(a.col, a.row) < std::tie(b.col, b.row); });
  }

  SparseMatrix aug;
  aug.rows = 1;
  aug.cols = out.basis[0].size();
  for (std::size_t col = 0; col < out.basis[0].size(); ++col)
    aug.entries.push_back({0, col, 1, power_generator(tree.labels(), out.basis[0][col].t_exponent)});
  out.complex.augmentation = std::move(aug);
  return out;
}

RhoReport rho_isomorphism(const CellComplex& cells, const GradedComplex& f, const StrandComplex& k) {
  RhoReport report;
  auto note = [&report](std::string message) {
    if (report.mismatches.size() < 20) report.mismatches.push_back(std::move(message));
  };
  const int top = cells.dimension();
  if (f.length() != top || k.complex.length() != top) {
    report.bijective = false;
    note("complexes have different lengths");
    return report;
  }

  // map[i][cell index] = strand index
  std::vector<std::vector<std::size_t>> map(top + 1);
  for (int i = 0; i <= top; ++i) {
    std::map<std::pair<std::uint32_t, ExponentVector>, std::size_t> where;
    for (std::size_t s = 0; s < k.basis[i].size(); ++s)
      where.emplace(std::make_pair(k.basis[i][s].wedge.mask(), k.basis[i][s].t_exponent), s);
    if (where.size() != cells.cells(i).size()) {
      report.bijective = false;
      note("degree " + std::to_string(i) + ": " + std::to_string(cells.cells(i).size()) + " cells vs " +
           std::to_string(where.size()) + " strand generators");
    }
    std::vector<bool> hit(k.basis[i].size(), false);
    for (std::size_t c = 0; c < cells.cells(i).size(); ++c) {
      ++report.checked;
      const Cube& cell = cells.cells(i)[c];
      const StrandBasis image = rho(cell);
      auto it = where.find({image.wedge.mask(), image.t_exponent});
      if (it == where.end() || hit[it->second]) {
        report.bijective = false;
        note(cell.to_string() + " has no distinct image");
        map[i].push_back(0);
        continue;
      }
      hit[it->second] = true;
      map[i].push_back(it->second);
      if (f.degrees[i][c] != k.complex.degrees[i][it->second]) {
        report.degree_preserving = false;
        note(cell.to_string() + ": degree differs from its image");
      }
    }
  }
  if (!report.bijective) return report;

  for (int i = 1; i <= top; ++i) {
    const auto fcols = column_terms(f.differentials[i]);
    const auto kcols = column_terms(k.complex.differentials[i]);
    for (std::size_t c = 0; c < fcols.size(); ++c) {
      ColumnTerms mapped;
      for (const auto& [key, coeff] : fcols[c]) mapped[{map[i - 1][key.first], key.second}] += coeff;
      if (mapped != kcols[map[i][c]]) {
        report.commutes = false;
        note("d(" + cells.cells(i)[c].to_string() + ") does not map to d(rho)");
      }
    }
  }
  if (f.augmentation && k.complex.augmentation) {
    const auto fa = column_terms(*f.augmentation);
    const auto ka = column_terms(*k.complex.augmentation);
    for (std::size_t c = 0; c < fa.size(); ++c)
      if (fa[c] != ka[map[0][c]]) {
        report.augmentation_commutes = false;
        note("augmentation differs at " + cells.cells(0)[c].to_string());
      }
  } else {
    report.augmentation_commutes = false;
    note("missing augmentation");
  }
  return report;
}

}  // namespace powres
