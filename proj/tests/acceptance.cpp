// One line per acceptance criterion. Exit status is 0 iff every criterion passes.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "powres/errors.hpp"
#include "powres/koszul.hpp"
#include "powres/verify.hpp"
#include "support/instances.hpp"

using namespace powres;

namespace {

class Criterion {
 public:
  explicit Criterion(std::string name) : name_(std::move(name)) {}

  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (!ok && failures_.size() < 10) failures_.push_back(what);
    if (!ok) ++failed_;
  }
  /// A failing sub-check that is known to be unattainable, with the reason.
  void expect_documented(bool ok, const std::string& what, const std::string& reason) {
    expect(ok, what);
    if (!ok) notes_.push_back(reason);
  }

  bool report(double seconds, double budget) {
    expect(seconds < budget, "runtime " + std::to_string(seconds) + " s over budget " + std::to_string(budget) + " s");
    const bool ok = failed_ == 0;
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.3f s, budget %.0f s", seconds, budget);
    std::cout << (ok ? "PASS " : "FAIL ") << name_ << " (" << checks_ << " checks, " << timing << ")\n";
    for (const auto& f : failures_) std::cout << "    failed: " << f << "\n";
    for (const auto& n : notes_) std::cout << "    note: " << n << "\n";
    return ok;
  }

 private:
  std::string name_;
  std::size_t checks_ = 0;
  std::size_t failed_ = 0;
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::uint64_t choose(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t out = 1;
  for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

std::vector<Monomial> generators_of_power(const RootedTree& tree, int r) {
  std::vector<Monomial> out;
  for (const auto& a : enumerate_Nr(tree.q(), r)) out.push_back(power_generator(tree.labels(), a));
  return out;
}

const std::vector<Field> kFields{Field::rationals(), Field::prime(2), Field::prime(3), Field::prime(5)};

// Dense matrix of "coeff*monomial" strings for comparison with a fixed table.
using Table = std::vector<std::vector<std::string>>;

Table table(const SparseMatrix& m, const Ring& ring, const std::vector<std::size_t>& rows,
            const std::vector<std::size_t>& cols) {
  Table out(rows.size(), std::vector<std::string>(cols.size(), "0"));
  for (const Entry& e : m.entries) {
    std::size_t i = 0, j = 0;
    while (rows[i] != e.row) ++i;
    while (cols[j] != e.col) ++j;
    const std::string mono = format_monomial(ring, e.monomial);
    out[i][j] = (e.coeff < 0 ? "-" : "") + mono;
  }
  return out;
}

bool running_example(Criterion& c) {
  const RootedTree t = testing::running_tree();
  const Ring& ring = t.ring();
  c.expect(path_matrix(t) == PathMatrix{{1, 1}, {0, 1}}, "Phi = [[1,1],[0,1]]");
  const PowerGraph g = power_graph(t, 2);
  c.expect(g.coords == std::vector<Point>{{0, 0}, {1, 0}, {1, 1}, {2, 0}, {2, 1}, {2, 2}}, "phi coordinates of N_2");
  const CellComplex cells = assemble_complex(t, 2);
  c.expect(cells.f_vector() == std::vector<std::size_t>{6, 6, 1}, "f-vector (6,6,1)");
  const GradedComplex f = homogenize(cells);
  // Canonical positions of the cells listed as c1..c6 and c'1..c'6.
  const std::vector<std::size_t> edges{0, 2, 3, 4, 1, 5}, vertices{0, 1, 3, 4, 2, 5};
  const Table d1{{"-z", "0", "0", "0", "0", "0"},  {"x", "-z", "0", "0", "-u", "0"}, {"0", "x", "0", "-u", "0", "0"},
                 {"0", "0", "x", "y", "0", "-u"}, {"0", "0", "-z", "0", "y", "0"},  {"0", "0", "0", "0", "0", "y"}};
  const Table d2{{"0"}, {"u"}, {"-y"}, {"x"}, {"-z"}, {"0"}};
  c.expect(table(f.differentials[1], ring, vertices, edges) == d1, "d1 equals the published 6x6 matrix");
  c.expect(table(f.differentials[2], ring, edges, {0}) == d2, "d2 equals the published 6x1 matrix");
  return true;
}

void betti_pd(Criterion& c) {
  c.expect(betti_formula(2, 3, 0) == 10 && betti_formula(2, 3, 1) == 12 && betti_formula(2, 3, 2) == 3 &&
               betti_formula(2, 3, 3) == 0,
           "betti(q=2, r=3) = (10, 12, 3)");
  c.expect(pd_formula(2, 3).power == 2, "pd I^3 = 2");
  c.expect(homogenize(assemble_complex(testing::running_tree(), 3)).length() == 2, "running example F(3) has length 2");
  for (int q = 0; q <= 4; ++q) {
    const MonomialIdeal ideal = q == 0 ? parse_ideal("x*y") : testing::random_pd1_instance(900 + q, q).ideal;
    const RootedTree tree = build_support_tree(ideal);
    for (int r = 1; r <= 5; ++r) {
      const CellComplex cells = assemble_complex(tree, r);
      for (int t = 0; t <= q + 1; ++t) {
        const std::uint64_t want = t <= std::min(q, r) ? choose(q, t) * choose(q + r - t, r - t) : 0;
        const std::size_t have = t <= cells.dimension() ? cells.cells(t).size() : 0;
        c.expect(have == want, "q=" + std::to_string(q) + " r=" + std::to_string(r) + " t=" + std::to_string(t) +
                                   ": " + std::to_string(have) + " cells, expected " + std::to_string(want));
        c.expect(betti_formula(q, r, t) == want, "betti_formula(" + std::to_string(q) + "," + std::to_string(r) + "," +
                                                     std::to_string(t) + ")");
      }
    }
  }
}

void certification(Criterion& c, const std::vector<testing::NamedTree>& set) {
  for (const auto& named : set)
    for (int r = 1; r <= 4; ++r) {
      const std::string where = named.name + ", r=" + std::to_string(r);
      const GradedComplex f = homogenize(assemble_complex(named.tree, r));
      const auto gens = generators_of_power(named.tree, r);
      c.expect(check_d_squared(f).passed, "d^2 = 0: " + where);
      c.expect(check_minimality(f).passed, "minimality: " + where);
      c.expect(check_homogeneity(f).passed, "homogeneity: " + where);
      c.expect(f.augmentation && std::set<Monomial>(f.degrees[0].begin(), f.degrees[0].end()) ==
                                     std::set<Monomial>(gens.begin(), gens.end()),
               "augmentation onto I^r: " + where);
      std::vector<std::vector<std::size_t>> ranks;
      for (const Field& field : kFields) {
        const ExactnessReport rep = degreewise_exactness(f, gens, field);
        c.expect(rep.passed, "exact over " + field.name() + ": " + where);
        for (const auto& d : rep.degrees) ranks.push_back(d.ranks);
      }
      const std::size_t per = ranks.size() / kFields.size();
      for (std::size_t k = 0; k < per; ++k)
        for (std::size_t fi = 1; fi < kFields.size(); ++fi)
          c.expect(ranks[k] == ranks[fi * per + k], kFields[fi].name() + " ranks differ from Q: " + where);
    }
}

void koszul_iso(Criterion& c, const std::vector<testing::NamedTree>& set) {
  for (const auto& named : set)
    for (int r = 1; r <= 4; ++r) {
      const CellComplex cells = assemble_complex(named.tree, r);
      const RhoReport rep = rho_isomorphism(cells, homogenize(cells), koszul_strand(named.tree, r));
      c.expect(rep.passed(), "rho: " + named.name + ", r=" + std::to_string(r));
    }
}

void covering(Criterion& c, const std::vector<testing::NamedTree>& set) {
  for (const auto& named : set) {
    const int q = named.tree.q();
    if (q > 3) continue;
    const CheckReport cover = covering_check(named.tree, q);
    c.expect(cover.passed, "covering: " + named.name);
    const CheckReport maps = chain_map_check(named.tree, q);
    c.expect(maps.passed, "chain maps and surjectivity: " + named.name);
  }
}

void structure(Criterion& c, const std::vector<testing::NamedTree>& set) {
  for (const auto& named : set)
    for (int r = 1; r <= 4; ++r) {
      const std::string where = named.name + ", r=" + std::to_string(r);
      const CellComplex cells = assemble_complex(named.tree, r);
      c.expect(check_phi_injective(named.tree, r).passed, "phi injective: " + where);
      c.expect(check_edge_equivalence(named.tree, r).passed, "edge descriptions agree: " + where);
      c.expect(check_cube_source_sink(cells).passed, "unique source and sink: " + where);
      c.expect(check_face_closure(cells).passed, "face closure: " + where);
      c.expect(validate_polyhedral(cells).passed, "intersections are faces: " + where);
      c.expect(check_power_injectivity(named.tree.ideal(), r).injective, "a -> m^a injective: " + where);
      bool ratios = true;
      for (int d = 1; d <= cells.dimension(); ++d)
        for (const Cube& x : cells.cells(d))
          for (int i : x.directions.indices()) ratios = ratios && simplify_ratios(named.tree, x.sink, x.directions, i).matches;
      c.expect(ratios, "ratio identities: " + where);
    }

  // Negative controls.
  const RootedTree t = testing::running_tree();
  const GradedComplex f = homogenize(assemble_complex(t, 2));
  for (int degree = 1; degree <= 2; ++degree)
    for (std::size_t k = 0; k < f.differentials[degree].entries.size(); ++k) {
      const GradedComplex bad = flip_sign(f, degree, k);
      c.expect(!degreewise_exactness(bad, generators_of_power(t, 2), Field::rationals()).passed,
               "sign flip of d" + std::to_string(degree) + " entry " + std::to_string(k) + " detected");
    }
  for (int r = 1; r <= 3; ++r) {
    const auto wrong = wrong_tree_control(testing::running_ideal(), r);
    c.expect(wrong && !wrong->passed, "non-supporting path tree detected at r=" + std::to_string(r));
  }
}

bool rejected_with_certificate(const std::string& ideal_text) {
  try {
    build_support_tree(parse_ideal(ideal_text));
  } catch (const DomainError& e) {
    return std::string(e.what()).find("disconnected at multidegree") != std::string::npos;
  }
  return false;
}

void rejection(Criterion& c) {
  c.expect_documented(
      rejected_with_certificate("x*y, y*z, z*x"), "(xy,yz,zx) is rejected with a no-supporting-tree certificate",
      "(xy,yz,zx) has projective dimension one: its minimal resolution is 0 -> R^2 -> R^3 -> I -> 0, and every "
      "spanning tree of the triangle is connected at each lcm-lattice degree (all pairwise lcms equal xyz). "
      "Rejecting it would be wrong; powres accepts it and certifies the resolutions of its powers.");
  c.expect(rejected_with_certificate("x, y, z"), "(x,y,z) is rejected with a certificate");
  c.expect(rejected_with_certificate("x*y, y*z, z*u, u*x"), "(xy,yz,zu,ux) is rejected with a certificate");
  bool intake = false;
  try {
    build_support_tree(parse_ideal("x*y, x*z, x*u, y*z, y*u"));
  } catch (const DomainError& e) {
    intake = std::string(e.what()).find("q+1 <= n") != std::string::npos;
  }
  c.expect(intake, "5 generators in 4 variables rejected at intake (q+1 <= n)");
}

}  // namespace

int main() {
  bool all = true;
  auto run = [&](const std::string& name, double budget, const std::function<void(Criterion&)>& body) {
    Criterion c(name);
    const auto start = std::chrono::steady_clock::now();
    try {
      body(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    all = c.report(seconds_since(start), budget) && all;
  };

  const auto set = testing::instance_set(27, 3);
  std::cout << "instance set: " << set.size() << " trees (2 examples, " << set.size() - 2 << " random, q <= 3)\n";

  run("[1] running example: Phi, phi, f-vector, d1, d2", 1, [](Criterion& c) { running_example(c); });
  run("[2] Betti numbers, pd, cell counts for q <= 4, r <= 5", 30, betti_pd);
  run("[3] resolution certified over Q, F2, F3, F5 for r <= 4", 300, [&](Criterion& c) { certification(c, set); });
  run("[4] rho is a chain isomorphism onto the Koszul strand", 300, [&](Criterion& c) { koszul_iso(c, set); });
  run("[5] covering at r = q and translation chain maps", 300, [&](Criterion& c) { covering(c, set); });
  run("[6] structural properties and negative controls", 300, [&](Criterion& c) { structure(c, set); });
  run("[7] rejection of non-pd-1 ideals and q+1 > n", 30, rejection);

  std::cout << (all ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL") << "\n";
  return all ? 0 : 1;
}
