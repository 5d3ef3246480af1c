#include "powres/resolution.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace powres {

IntMatrix SparseMatrix::scalars() const {
  IntMatrix m(rows, cols);
  for (const auto& e : entries) m(e.row, e.col) += e.coeff;
  return m;
}

std::vector<ColumnTerms> column_terms(const SparseMatrix& m) {
  std::vector<ColumnTerms> out(m.cols);
  for (const auto& e : m.entries) out.at(e.col)[{e.row, e.monomial}] += e.coeff;
  for (auto& col : out) std::erase_if(col, [](const auto& kv) { return kv.second == 0; });
  return out;
}

std::size_t GradedComplex::rank(int i) const {
  if (i < 0 || i >= static_cast<int>(degrees.size())) return 0;
  return degrees[i].size();
}

Monomial cell_label(const RootedTree& tree, const Cube& c) {
  Monomial label = power_generator(tree.labels(), c.sink);
  for (int j : c.directions.indices()) label = label * tree.sink_ratio(j);
  return label;
}

Monomial cell_label_bruteforce(const RootedTree& tree, const Cube& c) {
  Monomial label(tree.ring().size());
  for (const auto& v : cube_vertices(tree, c)) label = lcm(label, power_generator(tree.labels(), v));
  return label;
}

namespace {

void sort_entries(SparseMatrix& m) {
  std::sort(m.entries.begin(), m.entries.end(),
            [](const Entry& a, const Entry& b) { return std::tie(a.col, a.row) < std::tie(b.col, b.row); });
}

GradedComplex build(const CellComplex& complex, bool labeled) {
  const RootedTree& tree = complex.tree();
  const std::size_t n = tree.ring().size();
  GradedComplex out;
  out.ring = tree.ring();
  const int top = complex.dimension();
  out.degrees.resize(top + 1);
  out.differentials.resize(top + 1);
  for (int d = 0; d <= top; ++d)
    for (const Cube& c : complex.cells(d)) out.degrees[d].push_back(labeled ? cell_label(tree, c) : Monomial(n));

  for (int d = 1; d <= top; ++d) {
    SparseMatrix& m = out.differentials[d];
    m.rows = complex.cells(d - 1).size();
    m.cols = complex.cells(d).size();
    const auto cells = complex.cells(d);
    for (std::size_t col = 0; col < cells.size(); ++col) {
      for (const Facet& f : faces(cells[col], tree)) {
        auto row = complex.index_of(f.cube);
        if (!row) throw std::logic_error("face " + f.cube.to_string() + " missing from the complex");
        Monomial coeff(n);
        if (labeled) coeff = f.keeps_sink ? tree.sink_ratio(f.direction) : tree.source_ratio(f.direction);
        m.entries.push_back({*row, col, f.sign, coeff});
      }
    }
    sort_entries(m);
  }

  SparseMatrix aug;
  aug.rows = 1;
  aug.cols = complex.cells(0).size();
  const auto vertices = complex.cells(0);
  for (std::size_t col = 0; col < vertices.size(); ++col)
    aug.entries.push_back({0, col, 1, labeled ? power_generator(tree.labels(), vertices[col].sink) : Monomial(n)});
  out.augmentation = std::move(aug);
  return out;
}

}  // namespace

GradedComplex oriented_chain_complex(const CellComplex& complex) { return build(complex, false); }

GradedComplex homogenize(const CellComplex& complex) { return build(complex, true); }

RatioCheck simplify_ratios(const RootedTree& tree, const ExponentVector& b, DirectionSet B, int i) {
  if (!B.contains(i)) throw std::invalid_argument("direction " + std::to_string(i) + " is not in " + B.to_string());
  const Cube c = cube(b, B);
  const Cube sink_face{b, B.without(i)};
  const Cube source_face{b.moved(i, tree.tau(i)), B.without(i)};
  const Monomial label = cell_label_bruteforce(tree, c);
  RatioCheck out;
  out.sink_side = label.divided_by(cell_label_bruteforce(tree, sink_face));
  out.source_side = label.divided_by(cell_label_bruteforce(tree, source_face));
  out.matches = out.sink_side == tree.sink_ratio(i) && out.source_side == tree.source_ratio(i);
  return out;
}

std::uint64_t betti_formula(int q, int r, int t) {
  if (q < 0 || r < 1 || t < 0) throw std::invalid_argument("betti_formula needs q >= 0, r >= 1, t >= 0");
  if (t > std::min(q, r)) return 0;
  const std::uint64_t a = binomial(q, t), b = binomial(q + r - t, r - t);
  std::uint64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("Betti number exceeds 64 bits");
  return out;
}

ProjectiveDimensions pd_formula(int q, int r) {
  if (q < 0 || r < 1) throw std::invalid_argument("pd_formula needs q >= 0, r >= 1");
  return {std::min(q, r), r >= q - 1 ? q + 1 : r + 2};
}

}  // namespace powres
