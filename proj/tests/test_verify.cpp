#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "powres/errors.hpp"
#include "powres/verify.hpp"
#include "support/instances.hpp"

using namespace powres;

namespace {

std::int64_t det(std::vector<std::vector<std::int64_t>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  std::int64_t out = 0;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<std::int64_t>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<std::int64_t> row;
      for (std::size_t j = 0; j < n; ++j)
        if (j != c) row.push_back(m[i][j]);
      minor.push_back(row);
    }
    out += (c % 2 == 0 ? 1 : -1) * m[0][c] * det(minor);
  }
  return out;
}

// Largest k with a nonzero k x k minor (mod p when p > 0).
std::size_t rank_by_minors(const IntMatrix& m, int p) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::size_t best = 0;
  for (std::uint32_t rs = 1; rs < (1u << rows); ++rs)
    for (std::uint32_t cs = 1; cs < (1u << cols); ++cs) {
      const int k = __builtin_popcount(rs);
      if (k != __builtin_popcount(cs) || static_cast<std::size_t>(k) <= best) continue;
      std::vector<std::vector<std::int64_t>> sub;
      for (std::size_t i = 0; i < rows; ++i) {
        if (!((rs >> i) & 1u)) continue;
        std::vector<std::int64_t> row;
        for (std::size_t j = 0; j < cols; ++j)
          if ((cs >> j) & 1u) row.push_back(m(i, j));
        sub.push_back(row);
      }
      const std::int64_t d = det(sub);
      if (p == 0 ? d != 0 : d % p != 0) best = k;
    }
  return best;
}

std::vector<Monomial> lcm_closure(const std::vector<Monomial>& labels) {
  std::set<Monomial> out(labels.begin(), labels.end());
  for (bool grew = true; grew;) {
    grew = false;
    const std::vector<Monomial> now(out.begin(), out.end());
    for (const auto& a : now)
      for (const auto& b : now) grew |= out.insert(lcm(a, b)).second;
  }
  return {out.begin(), out.end()};
}

std::vector<Monomial> generators_of_power(const RootedTree& tree, int r) {
  std::vector<Monomial> out;
  for (const auto& a : enumerate_Nr(tree.q(), r)) out.push_back(power_generator(tree.labels(), a));
  return out;
}

const std::vector<Field> kFields{Field::rationals(), Field::prime(2), Field::prime(3), Field::prime(5)};

}  // namespace

TEST_CASE("fields") {
  CHECK(parse_fields("q,2,3,5") == kFields);
  CHECK(parse_fields("0") == std::vector<Field>{Field::rationals()});
  CHECK(Field::rationals().name() == "Q");
  CHECK_THROWS(Field::prime(4));
  CHECK_THROWS(parse_fields("q,x"));
}

TEST_CASE("rank agrees with a minor expansion") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t rows = 1 + rng() % 5, cols = 1 + rng() % 5;
    IntMatrix m(rows, cols);
    const int spread = trial % 3 == 0 ? 1 : 4;
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = static_cast<std::int64_t>(rng() % (2 * spread + 1)) - spread;
    if (trial % 4 == 0 && rows > 1)
      for (std::size_t j = 0; j < cols; ++j) m(rows - 1, j) = 2 * m(0, j) - m(1 % rows, j);
    for (int p : {0, 2, 3, 5, 7}) CHECK(rank(m, p == 0 ? Field::rationals() : Field::prime(p)) == rank_by_minors(m, p));
  }
}

TEST_CASE("rank over the rationals survives large entries") {
  IntMatrix m(3, 3);
  const std::int64_t big = 1'000'000'007;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) m(i, j) = (i + 1) * big + static_cast<std::int64_t>(j * j);
  CHECK(rank(m, Field::rationals()) == 2);
  IntMatrix d(2, 2);
  d(0, 0) = 2;
  d(1, 1) = 3;
  CHECK(rank(d, Field::rationals()) == 2);
  CHECK(rank(d, Field::prime(2)) == 1);
  CHECK(rank(d, Field::prime(3)) == 1);
}

TEST_CASE("multidegree lattice is the lcm closure of the generators") {
  for (const auto& named : testing::instance_set(8, 3))
    for (int r = 1; r <= 3; ++r) {
      const GradedComplex F = homogenize(assemble_complex(named.tree, r));
      CHECK(multidegree_lattice(F) == lcm_closure(F.degrees[0]));
    }
  const GradedComplex F = homogenize(assemble_complex(testing::running_tree(), 3));
  CHECK_THROWS_AS(multidegree_lattice(F, 5), ResourceError);
}

TEST_CASE("structural checks on the homogenized complex") {
  for (const auto& named : testing::instance_set(12, 3))
    for (int r = 1; r <= 4; ++r) {
      const GradedComplex F = homogenize(assemble_complex(named.tree, r));
      CHECK(check_d_squared(F).passed);
      CHECK(check_minimality(F).passed);
      CHECK(check_homogeneity(F).passed);
      CHECK(betti_agreement(F, named.tree.q(), r).passed);
    }
  const GradedComplex O = oriented_chain_complex(assemble_complex(testing::running_tree(), 2));
  CHECK_FALSE(check_minimality(O).passed);
}

TEST_CASE("the running example is exact in every degree") {
  const RootedTree t = testing::running_tree();
  const GradedComplex F = homogenize(assemble_complex(t, 2));
  const auto gens = generators_of_power(t, 2);
  const ExactnessReport report = degreewise_exactness(F, gens, Field::rationals());
  CHECK(report.passed);
  CHECK_FALSE(report.first_failure);
  CHECK(report.degrees.size() == lcm_closure(F.degrees[0]).size());
  for (const DegreeRecord& d : report.degrees) {
    CHECK(d.exact);
    CHECK(d.expected_h0 == 1);
    long euler = 0;
    for (std::size_t i = 0; i < d.dims.size(); ++i) euler += (i % 2 == 0 ? 1 : -1) * static_cast<long>(d.dims[i]);
    CHECK(euler == 1);
    for (long h : d.homology) CHECK(h == 0);
  }
}

TEST_CASE("exactness over several fields, serial and parallel") {
  for (const auto& named : testing::instance_set(10, 3)) {
    INFO(named.name);
    for (int r = 1; r <= 3; ++r) {
      const GradedComplex F = homogenize(assemble_complex(named.tree, r));
      const auto gens = generators_of_power(named.tree, r);
      for (const Field& field : kFields) {
        const ExactnessReport serial = degreewise_exactness(F, gens, field, Execution::serial);
        const ExactnessReport parallel = degreewise_exactness(F, gens, field, Execution::parallel);
        CHECK(serial.passed);
        CHECK(serial.degrees == parallel.degrees);
      }
      CHECK(char_independence(F, gens, kFields).passed);
    }
  }
}

TEST_CASE("a flipped sign breaks d^2 or exactness") {
  const RootedTree t = testing::running_tree();
  const GradedComplex F = homogenize(assemble_complex(t, 2));
  const GradedComplex bad = flip_sign(F, 2, 0);
  CHECK(bad.differentials[2].entries[0].coeff == -F.differentials[2].entries[0].coeff);
  CHECK_FALSE(check_d_squared(bad).passed);
  const ExactnessReport flipped = degreewise_exactness(bad, generators_of_power(t, 2), Field::rationals());
  CHECK_FALSE(flipped.passed);
  REQUIRE(flipped.first_failure);
  CHECK(format_monomial(t.ring(), *flipped.first_failure) == "x*y^2*z^2*u");
  for (const auto& d : flipped.degrees)
    if (!d.exact) CHECK_FALSE(d.composes_to_zero);

  const GradedComplex bad1 = flip_sign(F, 1, 3);
  CHECK_FALSE(check_d_squared(bad1).passed);
  CHECK_FALSE(degreewise_exactness(bad1, generators_of_power(t, 2), Field::rationals()).passed);
  CHECK_THROWS(flip_sign(F, 3, 0));
}

TEST_CASE("a non-supporting tree gives a non-exact complex") {
  const MonomialIdeal ideal = testing::running_ideal();
  const auto wrong = first_non_supporting_tree(ideal);
  REQUIRE(wrong);
  const SupportReport support = validate_support(ideal.ring(), *wrong, ideal);
  REQUIRE(support.witness);
  for (int r = 1; r <= 3; ++r) {
    const auto report = wrong_tree_control(ideal, r);
    REQUIRE(report);
    CHECK_FALSE(report->passed);
    REQUIRE(report->first_failure);
    if (r == 1) CHECK(*report->first_failure == *support.witness);
  }
  CHECK_FALSE(wrong_tree_control(parse_ideal("x*y, y*z, z*x"), 1));
}

TEST_CASE("translations are chain maps") {
  for (const auto& named : testing::instance_set(8, 3))
    for (int r = 1; r <= 3; ++r) CHECK(chain_map_check(named.tree, r).passed);
}

TEST_CASE("full verification") {
  const RootedTree t = testing::running_tree();
  for (int r = 1; r <= 4; ++r) {
    const Verification v = verify_resolution(t, r, kFields);
    CHECK(v.passed());
    CHECK(v.exactness.size() == 4);
    for (const auto& c : v.checks) CHECK(c.passed);
  }
  const Verification only_p = verify_resolution(t, 2, std::vector<Field>{Field::prime(2)});
  CHECK(only_p.exactness.size() == 2);
  CHECK(only_p.passed());
}

TEST_CASE("the triangle ideal has resolved powers") {
  const RootedTree tri = build_support_tree(parse_ideal("x*y, y*z, z*x"));
  for (int r = 1; r <= 3; ++r) CHECK(verify_resolution(tri, r, kFields).passed());
}
