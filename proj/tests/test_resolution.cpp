#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "powres/resolution.hpp"
#include "support/instances.hpp"
#include "support/polymatrix.hpp"

using namespace powres;
using testing::PolyMatrix;

namespace {

ExponentVector E(std::vector<int> v) { return ExponentVector(std::move(v)); }

// Position in the canonical order of the cells listed c1..c6 and c'1..c'6.
constexpr std::size_t kEdge[6] = {0, 2, 3, 4, 1, 5};
constexpr std::size_t kVertex[6] = {0, 1, 3, 4, 2, 5};

struct Term {
  std::size_t row, col;
  std::int64_t coeff;
  const char* monomial;
};

PolyMatrix golden(const Ring& ring, std::initializer_list<Term> terms, const std::size_t* rows,
                  const std::size_t* cols) {
  PolyMatrix out;
  for (const Term& t : terms) testing::add_term(out[{rows[t.row], cols[t.col]}], parse_monomial(ring, t.monomial), t.coeff);
  return out;
}

// lcm of m^v over the cube's vertices, computed from exponent vectors.
Monomial label_oracle(const RootedTree& tree, const Cube& c) {
  std::vector<int> out(tree.ring().size(), 0);
  const auto members = c.directions.indices();
  for (std::uint32_t sub = 0; sub < (1u << members.size()); ++sub) {
    std::vector<int> v(c.sink.entries().begin(), c.sink.entries().end());
    for (std::size_t k = 0; k < members.size(); ++k)
      if ((sub >> k) & 1u) {
        --v[members[k]];
        ++v[tree.tau(members[k])];
      }
    std::vector<int> m(tree.ring().size(), 0);
    for (int i = 0; i <= tree.q(); ++i)
      for (std::size_t x = 0; x < m.size(); ++x) m[x] += v[i] * tree.label(i)[x];
    for (std::size_t x = 0; x < m.size(); ++x) out[x] = std::max(out[x], m[x]);
  }
  return Monomial(out);
}

}  // namespace

TEST_CASE("golden differentials of the running example at r = 2") {
  const RootedTree t = testing::running_tree();
  const GradedComplex F = homogenize(assemble_complex(t, 2));
  REQUIRE(F.length() == 2);
  const Ring& ring = t.ring();

  const PolyMatrix d1 = golden(ring,
                               {{0, 0, -1, "z"},
                                {1, 0, 1, "x"}, {1, 1, -1, "z"}, {1, 4, -1, "u"},
                                {2, 1, 1, "x"}, {2, 3, -1, "u"},
                                {3, 2, 1, "x"}, {3, 3, 1, "y"}, {3, 5, -1, "u"},
                                {4, 2, -1, "z"}, {4, 4, 1, "y"},
                                {5, 5, 1, "y"}},
                               kVertex, kEdge);
  CHECK(testing::to_poly(F.differentials[1]) == d1);

  const std::size_t square[1] = {0};
  const PolyMatrix d2 = golden(ring, {{1, 0, 1, "u"}, {2, 0, -1, "y"}, {3, 0, 1, "x"}, {4, 0, -1, "z"}}, kEdge, square);
  CHECK(testing::to_poly(F.differentials[2]) == d2);

  // The oriented boundary of the square: c2 + c4 - c3 - c5.
  const GradedComplex O = oriented_chain_complex(assemble_complex(t, 2));
  const PolyMatrix o2 = golden(ring, {{1, 0, 1, "1"}, {3, 0, 1, "1"}, {2, 0, -1, "1"}, {4, 0, -1, "1"}}, kEdge, square);
  CHECK(testing::to_poly(O.differentials[2]) == o2);
}

TEST_CASE("cell labels of the running example") {
  const RootedTree t = testing::running_tree();
  const Ring& ring = t.ring();
  const CellComplex c = assemble_complex(t, 2);
  const char* edges[6] = {"x^2*y^2*z", "x*y^2*z^2", "x*y*z^2*u", "y^2*z^2*u", "x*y^2*z*u", "y*z^2*u^2"};
  const char* vertices[6] = {"x^2*y^2", "x*y^2*z", "y^2*z^2", "y*z^2*u", "x*y*z*u", "z^2*u^2"};
  for (int k = 0; k < 6; ++k) {
    CHECK(format_monomial(ring, cell_label(t, c.cells(1)[kEdge[k]])) == edges[k]);
    CHECK(format_monomial(ring, cell_label(t, c.cells(0)[kVertex[k]])) == vertices[k]);
  }
  CHECK(format_monomial(ring, cell_label(t, {E({1, 0, 1}), DirectionSet::of({2})})) == "x*y^2*z*u");
  CHECK(format_monomial(ring, cell_label(t, {E({1, 0, 1}), DirectionSet()})) == "x*y*z*u");
  CHECK(format_monomial(ring, cell_label(t, c.cells(2)[0])) == "x*y^2*z^2*u");

  const GradedComplex F = homogenize(c);
  CHECK(format_monomial(ring, F.degrees[1][kEdge[4]]) == "x*y^2*z*u");
  CHECK(F.augmentation);
  for (std::size_t k = 0; k < 6; ++k) CHECK(F.augmentation->entries[k].monomial == F.degrees[0][k]);
}

TEST_CASE("closed-form labels agree with the vertex lcm") {
  for (const auto& named : testing::instance_set(20, 3)) {
    INFO(named.name);
    for (int r = 1; r <= 4; ++r) {
      const CellComplex c = assemble_complex(named.tree, r);
      for (int d = 0; d <= c.dimension(); ++d)
        for (const Cube& x : c.cells(d)) {
          const Monomial oracle = label_oracle(named.tree, x);
          CHECK(cell_label(named.tree, x) == oracle);
          CHECK(cell_label_bruteforce(named.tree, x) == oracle);
        }
    }
  }
}

TEST_CASE("face ratios reduce to the edge labels") {
  const RootedTree t = testing::running_tree();
  const Ring& ring = t.ring();
  const RatioCheck a = simplify_ratios(t, E({0, 1, 1}), DirectionSet::of({1, 2}), 1);
  CHECK(format_monomial(ring, a.sink_side) == "x");
  CHECK(format_monomial(ring, a.source_side) == "z");
  CHECK(a.matches);
  const RatioCheck b = simplify_ratios(t, E({0, 1, 1}), DirectionSet::of({2}), 2);
  CHECK(format_monomial(ring, b.sink_side) == "y");
  CHECK(format_monomial(ring, b.source_side) == "u");
  CHECK(b.matches);
  CHECK_THROWS_AS(simplify_ratios(t, E({0, 1, 1}), DirectionSet::of({2}), 1), std::invalid_argument);

  for (const auto& named : testing::instance_set(20, 3))
    for (int r = 1; r <= 4; ++r) {
      const CellComplex c = assemble_complex(named.tree, r);
      for (int d = 1; d <= c.dimension(); ++d)
        for (const Cube& x : c.cells(d))
          for (int i : x.directions.indices()) {
            const RatioCheck rc = simplify_ratios(named.tree, x.sink, x.directions, i);
            CHECK(rc.matches);
            CHECK(rc.sink_side == named.tree.sink_ratio(i));
            CHECK(rc.source_side == named.tree.source_ratio(i));
          }
    }
}

TEST_CASE("differentials square to zero and entries carry the face coefficients") {
  for (const auto& named : testing::instance_set(20, 3)) {
    INFO(named.name);
    for (int r = 1; r <= 4; ++r) {
      const CellComplex c = assemble_complex(named.tree, r);
      const GradedComplex F = homogenize(c);
      const GradedComplex O = oriented_chain_complex(c);
      for (int i = 2; i <= F.length(); ++i) {
        CHECK(testing::multiply(testing::to_poly(F.differentials[i - 1]), testing::to_poly(F.differentials[i])).empty());
        CHECK(testing::multiply(testing::to_poly(O.differentials[i - 1]), testing::to_poly(O.differentials[i])).empty());
      }
      CHECK(testing::multiply(testing::to_poly(*F.augmentation), testing::to_poly(F.differentials[1])).empty());
      for (int i = 1; i <= F.length(); ++i) {
        REQUIRE(F.differentials[i].entries.size() == O.differentials[i].entries.size());
        for (std::size_t k = 0; k < F.differentials[i].entries.size(); ++k) {
          const Entry& e = F.differentials[i].entries[k];
          CHECK(e.coeff == O.differentials[i].entries[k].coeff);
          CHECK(!e.monomial.is_one());
          CHECK(F.degrees[i][e.col] == F.degrees[i - 1][e.row] * e.monomial);
        }
      }
    }
  }
}

TEST_CASE("ranks follow the Betti formula") {
  CHECK(betti_formula(2, 3, 0) == 10);
  CHECK(betti_formula(2, 3, 1) == 12);
  CHECK(betti_formula(2, 3, 2) == 3);
  CHECK(betti_formula(2, 3, 3) == 0);
  CHECK(betti_formula(3, 1, 2) == 0);
  CHECK(betti_formula(0, 4, 0) == 1);
  for (const auto& named : testing::instance_set(10, 3))
    for (int r = 1; r <= 4; ++r) {
      const GradedComplex F = homogenize(assemble_complex(named.tree, r));
      const int q = named.tree.q();
      CHECK(F.length() == pd_formula(q, r).power);
      for (int t = 0; t <= F.length(); ++t) CHECK(F.rank(t) == betti_formula(q, r, t));
    }
}

TEST_CASE("projective dimension formulas") {
  CHECK(pd_formula(2, 1).power == 1);
  CHECK(pd_formula(2, 2).power == 2);
  CHECK(pd_formula(2, 5).power == 2);
  CHECK(pd_formula(4, 2).quotient == 4);
  CHECK(pd_formula(4, 3).quotient == 5);
  for (int q = 0; q <= 6; ++q)
    for (int r = 1; r <= 6; ++r) CHECK(pd_formula(q, r).quotient == 1 + pd_formula(q, r + 1).power);
  CHECK_THROWS_AS(pd_formula(2, 0), std::invalid_argument);
}

TEST_CASE("a principal ideal resolves by a single free module") {
  const MonomialIdeal ideal = parse_ideal("x*y");
  const RootedTree t(ideal.ring(), {ideal.generators().begin(), ideal.generators().end()}, {-1});
  const GradedComplex F = homogenize(assemble_complex(t, 3));
  CHECK(F.length() == 0);
  CHECK(F.rank(0) == 1);
  CHECK(format_monomial(t.ring(), F.degrees[0][0]) == "x^3*y^3");
}
