#include "powres/power_complex.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>
#include <stdexcept>

#include "powres/errors.hpp"

namespace powres {

DirectionSet::DirectionSet(std::uint32_t mask) : mask_(mask) {
  if (mask & 1u) throw std::invalid_argument("direction 0 does not exist");
}

DirectionSet DirectionSet::of(std::initializer_list<int> indices) {
  std::uint32_t mask = 0;
  for (int i : indices) {
    if (i < 1 || i > 31) throw std::invalid_argument("direction out of range");
    mask |= 1u << i;
  }
  return DirectionSet(mask);
}

std::vector<int> DirectionSet::indices() const {
  std::vector<int> out;
  for (int i = 1; i < 32; ++i)
    if (contains(i)) out.push_back(i);
  return out;
}

std::string DirectionSet::to_string() const {
  std::string out = "{";
  bool first = true;
  for (int i : indices()) {
    if (!first) out += ',';
    out += std::to_string(i);
    first = false;
  }
  return out + "}";
}

bool lex_less(DirectionSet a, DirectionSet b) { return a.indices() < b.indices(); }

std::string Cube::to_string() const { return "C(" + sink.to_string() + "," + directions.to_string() + ")"; }

// ---------------------------------------------------------------------------

Embedding::Embedding(const RootedTree& tree) : phi_(path_matrix(tree)) {}

Point Embedding::operator()(const ExponentVector& a) const {
  const std::size_t q = phi_.size();
  if (a.size() != q + 1) throw std::invalid_argument("exponent vector does not match the tree");
  Point out(q, 0);
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j < q; ++j) out[i] += phi_[i][j] * a[j + 1];
  return out;
}

PowerGraph power_graph(const RootedTree& tree, int r) {
  if (r < 1) throw std::invalid_argument("r must be positive");
  PowerGraph g;
  g.r = r;
  g.vertices = enumerate_Nr(tree.q(), r);
  Embedding phi(tree);
  for (const auto& a : g.vertices) g.coords.push_back(phi(a));
  for (std::size_t s = 0; s < g.vertices.size(); ++s) {
    const auto& a = g.vertices[s];
    for (int i = 1; i <= tree.q(); ++i) {
      if (a[tree.tau(i)] == 0) continue;
      auto b = a.moved(tree.tau(i), i);
      g.edges.push_back({s, *canonical_rank(g.vertices, b), i});
    }
  }
  return g;
}

Cube cube(const ExponentVector& sink, DirectionSet directions) {
  if (!directions.subset_of(DirectionSet(sink.support_mask())))
    throw std::invalid_argument("direction set " + directions.to_string() + " is not within supp" + sink.to_string());
  return Cube{sink, directions};
}

ExponentVector cube_source(const RootedTree& tree, const Cube& c) {
  ExponentVector a = c.sink;
  for (int i : c.directions.indices()) a = a.moved(i, tree.tau(i));
  return a;
}

std::vector<ExponentVector> cube_vertices(const RootedTree& tree, const Cube& c) {
  const auto dirs = c.directions.indices();
  const std::size_t count = std::size_t{1} << dirs.size();
  std::vector<ExponentVector> out;
  out.reserve(count);
  const ExponentVector source = cube_source(tree, c);
  for (std::size_t sub = 0; sub < count; ++sub) {
    std::vector<int> e(source.entries().begin(), source.entries().end());
    for (std::size_t k = 0; k < dirs.size(); ++k) {
      if (sub >> k & 1u) {
        ++e[dirs[k]];
        --e[tree.tau(dirs[k])];
      }
    }
    out.emplace_back(std::move(e));
  }
  return out;
}

std::vector<Facet> faces(const Cube& c, const RootedTree& tree) {
  std::vector<Facet> out;
  const auto dirs = c.directions.indices();
  for (std::size_t k = 0; k < dirs.size(); ++k) {
    int sign = (k % 2 == 0) ? 1 : -1;  // (-1)^(k+1) with k counted from 1
    out.push_back({Cube{c.sink, c.directions.without(dirs[k])}, sign, dirs[k], true});
  }
  for (std::size_t k = 0; k < dirs.size(); ++k) {
    int sign = (k % 2 == 0) ? -1 : 1;
    int j = dirs[k];
    out.push_back({Cube{c.sink.moved(j, tree.tau(j)), c.directions.without(j)}, sign, j, false});
  }
  return out;
}

Cube translate(const Cube& c, int j) { return Cube{c.sink.shifted(static_cast<std::size_t>(j), 1), c.directions}; }

// ---------------------------------------------------------------------------

CellComplex::CellComplex(RootedTree tree, int r, std::vector<std::vector<Cube>> cells)
    : tree_(std::move(tree)), r_(r), cells_(std::move(cells)) {
  if (r_ < 1) throw std::invalid_argument("r must be positive");
  vertices_ = enumerate_Nr(tree_.q(), r_);
  index_.resize(cells_.size());
  for (std::size_t d = 0; d < cells_.size(); ++d) {
    for (std::size_t k = 0; k < cells_[d].size(); ++k) {
      const Cube& c = cells_[d][k];
      if (c.dimension() != static_cast<int>(d)) throw std::invalid_argument("cell filed under the wrong dimension");
      if (c.sink.size() != static_cast<std::size_t>(tree_.q() + 1) || c.sink.degree() != r_)
        throw std::invalid_argument("cell sink " + c.sink.to_string() + " is not in N_r");
      if (!c.directions.subset_of(DirectionSet(c.sink.support_mask())))
        throw std::invalid_argument("cell " + c.to_string() + " has directions outside its support");
      if (!index_[d].emplace(key(c), k).second) throw std::invalid_argument("duplicate cell " + c.to_string());
    }
  }
}

std::span<const Cube> CellComplex::cells(int dim) const {
  if (dim < 0 || dim >= static_cast<int>(cells_.size())) return {};
  return cells_[dim];
}

std::vector<std::size_t> CellComplex::f_vector() const {
  std::vector<std::size_t> out;
  for (const auto& level : cells_) out.push_back(level.size());
  return out;
}

std::size_t CellComplex::cell_count() const {
  std::size_t n = 0;
  for (const auto& level : cells_) n += level.size();
  return n;
}

std::uint64_t CellComplex::key(const Cube& c) const {
  auto rank = canonical_rank(vertices_, c.sink);
  if (!rank) return ~std::uint64_t{0};
  return (static_cast<std::uint64_t>(*rank) << 32) | c.directions.mask();
}

std::optional<std::size_t> CellComplex::index_of(const Cube& c) const {
  const int d = c.dimension();
  if (d >= static_cast<int>(index_.size())) return std::nullopt;
  if (c.sink.size() != vertices_.front().size()) return std::nullopt;
  auto it = index_[d].find(key(c));
  if (it == index_[d].end()) return std::nullopt;
  return it->second;
}

std::size_t max_cells() {
  if (const char* env = std::getenv("POWRES_MAX_CELLS")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 200000;
}

std::uint64_t expected_cell_count(int q, int r) {
  std::uint64_t total = 0;
  for (int t = 0; t <= std::min(q, r); ++t) {
    unsigned __int128 term = static_cast<unsigned __int128>(binomial(q, t)) * binomial(q + r - t, r - t);
    total += static_cast<std::uint64_t>(term);
  }
  return total;
}

CellComplex assemble_complex(const RootedTree& tree, int r) {
  if (r < 1) throw std::invalid_argument("r must be positive");
  const int q = tree.q();
  const std::uint64_t expected = expected_cell_count(q, r);
  if (expected > max_cells())
    throw ResourceError("complex would have " + std::to_string(expected) + " cells, above the limit of " +
                        std::to_string(max_cells()) + " (set POWRES_MAX_CELLS to raise it)");

  const auto nr = enumerate_Nr(q, r);
  // Distinct keys must give distinct geometric cubes; phi injective suffices.
  {
    Embedding phi(tree);
    std::set<Point> seen;
    for (const auto& a : nr)
      if (!seen.insert(phi(a)).second) throw std::logic_error("phi is not injective on N_r");
  }
  const int top = std::min(q, r);
  std::vector<std::vector<Cube>> cells(top + 1);
  for (const auto& b : nr) {
    std::vector<int> support = DirectionSet(b.support_mask()).indices();
    const int s = static_cast<int>(support.size());
    // Lexicographic combinations of each size.
    for (int t = 0; t <= std::min(s, top); ++t) {
      std::vector<int> pick(t);
      for (int k = 0; k < t; ++k) pick[k] = k;
      while (true) {
        std::uint32_t mask = 0;
        for (int k : pick) mask |= 1u << support[k];
        cells[t].push_back(Cube{b, DirectionSet(mask)});
        int k = t - 1;
        while (k >= 0 && pick[k] == s - t + k) --k;
        if (k < 0) break;
        ++pick[k];
        for (int m = k + 1; m < t; ++m) pick[m] = pick[m - 1] + 1;
      }
    }
  }
  while (cells.size() > 1 && cells.back().empty()) cells.pop_back();
  return CellComplex(tree, r, std::move(cells));
}

// ---------------------------------------------------------------------------
// Structural checks

namespace {

std::vector<std::pair<int, std::size_t>> flatten(const CellComplex& complex) {
  std::vector<std::pair<int, std::size_t>> all;
  for (int d = 0; d <= complex.dimension(); ++d)
    for (std::size_t k = 0; k < complex.cells(d).size(); ++k) all.emplace_back(d, k);
  return all;
}

// Vertices of a cube as (N_r rank, removed-from-sink mask over B's members).
std::map<std::size_t, std::uint32_t> vertex_masks(const CellComplex& complex, const Cube& c) {
  const auto& tree = complex.tree();
  const auto dirs = c.directions.indices();
  std::map<std::size_t, std::uint32_t> out;
  const std::size_t count = std::size_t{1} << dirs.size();
  for (std::size_t sub = 0; sub < count; ++sub) {
    ExponentVector v = c.sink;
    std::uint32_t removed = 0;
    for (std::size_t k = 0; k < dirs.size(); ++k) {
      if (sub >> k & 1u) {
        v = v.moved(dirs[k], tree.tau(dirs[k]));
        removed |= 1u << dirs[k];
      }
    }
    out.emplace(*canonical_rank(complex.vertices(), v), removed);
  }
  return out;
}

std::optional<std::string> check_pair(const CellComplex& complex, const Cube& p, const Cube& q) {
  const auto& tree = complex.tree();
  auto pv = vertex_masks(complex, p);
  auto qv = vertex_masks(complex, q);
  std::set<std::size_t> common;
  for (auto& [v, mask] : pv)
    if (qv.count(v)) common.insert(v);
  if (common.empty()) return std::nullopt;

  std::uint32_t b0 = p.directions.mask(), d0 = q.directions.mask();
  for (std::size_t v : common) {
    b0 &= pv.at(v);
    d0 &= qv.at(v);
  }
  ExponentVector c = p.sink;
  for (int j : DirectionSet(b0).indices()) c = c.moved(j, tree.tau(j));
  ExponentVector c_other = q.sink;
  for (int j : DirectionSet(d0).indices()) c_other = c_other.moved(j, tree.tau(j));
  const std::string where = p.to_string() + " & " + q.to_string();
  if (c != c_other) return where + ": minimal vertices disagree";
  const std::uint32_t dirs = (p.directions.mask() & ~b0) & (q.directions.mask() & ~d0);
  if (!DirectionSet(dirs).subset_of(DirectionSet(c.support_mask()))) return where + ": intersection is not a cell";
  const Cube face{c, DirectionSet(dirs)};
  if (!complex.index_of(face)) return where + ": " + face.to_string() + " missing from complex";
  auto fv = vertex_masks(complex, face);
  std::set<std::size_t> face_vertices;
  for (auto& [v, mask] : fv) face_vertices.insert(v);
  if (face_vertices != common) return where + ": intersection is not the face " + face.to_string();
  if (!face.directions.subset_of(p.directions) || !face.directions.subset_of(q.directions))
    return where + ": " + face.to_string() + " is not a face of both";
  return std::nullopt;
}

}  // namespace

CheckReport validate_polyhedral(const CellComplex& complex, Execution exec) {
  CheckReport report{"pairwise intersections are faces"};
  const auto all = flatten(complex);
  const std::size_t n = all.size();
  std::vector<std::vector<std::string>> per_row(n);
  auto row = [&](std::size_t a) {
    const Cube& p = complex.cells(all[a].first)[all[a].second];
    for (std::size_t b = a; b < n; ++b) {
      const Cube& q = complex.cells(all[b].first)[all[b].second];
      if (auto err = check_pair(complex, p, q)) per_row[a].push_back(*err);
    }
  };
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 4)
    for (std::size_t a = 0; a < n; ++a) row(a);
  } else {
    for (std::size_t a = 0; a < n; ++a) row(a);
  }
  report.checked = n * (n + 1) / 2;
  for (auto& errs : per_row)
    for (auto& e : errs) report.fail(std::move(e));
  return report;
}

CheckReport check_phi_injective(const RootedTree& tree, int r) {
  CheckReport report{"phi injective on N_r"};
  Embedding phi(tree);
  std::map<Point, ExponentVector> seen;
  for (const auto& a : enumerate_Nr(tree.q(), r)) {
    ++report.checked;
    auto [it, inserted] = seen.emplace(phi(a), a);
    if (!inserted) report.fail(a.to_string() + " and " + it->second.to_string() + " share an image");
  }
  return report;
}

CheckReport check_edge_equivalence(const RootedTree& tree, int r) {
  CheckReport report{"edge descriptions agree"};
  const int q = tree.q();
  const auto nr = enumerate_Nr(q, r);
  using Edge = std::tuple<std::size_t, std::size_t, int>;

  // Definition: W v_tau(i) -> W v_i for W in N_{r-1}.
  std::set<Edge> by_definition;
  for (const auto& w : enumerate_Nr(q, r - 1)) {
    for (int i = 1; i <= q; ++i) {
      auto a = w.shifted(tree.tau(i), 1);
      auto b = w.shifted(i, 1);
      by_definition.emplace(*canonical_rank(nr, a), *canonical_rank(nr, b), i);
    }
  }
  // Exponent difference b - a = f_i - f_tau(i), for a unique i.
  std::set<Edge> by_difference;
  // Embedded difference phi(b) - phi(a) = e_i.
  std::set<Edge> by_geometry;
  Embedding phi(tree);
  std::vector<Point> coords;
  for (const auto& a : nr) coords.push_back(phi(a));
  for (std::size_t s = 0; s < nr.size(); ++s) {
    for (std::size_t t = 0; t < nr.size(); ++t) {
      ++report.checked;
      int matches = 0;
      for (int i = 1; i <= q; ++i) {
        bool ok = true;
        for (int k = 0; k <= q && ok; ++k) {
          int expect = nr[s][k] + (k == i ? 1 : 0) - (k == tree.tau(i) ? 1 : 0);
          ok = nr[t][k] == expect;
        }
        if (ok) {
          ++matches;
          by_difference.emplace(s, t, i);
        }
        bool unit = true;
        for (int k = 0; k < q && unit; ++k) unit = coords[t][k] - coords[s][k] == (k == i - 1 ? 1 : 0);
        if (unit) by_geometry.emplace(s, t, i);
      }
      if (matches > 1) report.fail(nr[s].to_string() + " -> " + nr[t].to_string() + " matches several directions");
    }
  }
  if (by_definition != by_difference) report.fail("definition and exponent-difference edge sets differ");
  if (by_difference != by_geometry) report.fail("exponent-difference and embedded edge sets differ");
  std::set<Edge> built;
  for (const auto& e : power_graph(tree, r).edges) built.emplace(e.source, e.sink, e.direction);
  if (built != by_definition) report.fail("power_graph edges differ from the definition");
  return report;
}

CheckReport check_cube_source_sink(const CellComplex& complex) {
  CheckReport report{"cubes have one source and one sink"};
  const auto& tree = complex.tree();
  const PowerGraph g = power_graph(tree, complex.r());
  std::vector<std::vector<std::size_t>> out_edges(g.vertices.size());
  for (std::size_t e = 0; e < g.edges.size(); ++e) out_edges[g.edges[e].source].push_back(e);

  for (int d = 1; d <= complex.dimension(); ++d) {
    for (const Cube& c : complex.cells(d)) {
      ++report.checked;
      auto verts = cube_vertices(tree, c);
      std::map<std::size_t, std::size_t> where;  // N_r rank -> submask
      for (std::size_t sub = 0; sub < verts.size(); ++sub) where.emplace(*canonical_rank(g.vertices, verts[sub]), sub);
      std::map<std::size_t, int> indeg, outdeg;
      std::size_t edge_count = 0;
      const auto dirs = c.directions.indices();
      bool shape_ok = true;
      for (auto [v, sub] : where) {
        for (std::size_t e : out_edges[v]) {
          auto it = where.find(g.edges[e].sink);
          if (it == where.end()) continue;
          ++edge_count;
          ++outdeg[v];
          ++indeg[it->first];
          // Must add exactly one direction k of B not yet in the submask.
          std::size_t diff = it->second ^ sub;
          if ((it->second & sub) != sub || __builtin_popcountll(diff) != 1) {
            shape_ok = false;
          } else {
            int k = __builtin_ctzll(diff);
            if (dirs[k] != g.edges[e].direction) shape_ok = false;
          }
        }
      }
      const std::size_t expect_edges = dirs.size() << (dirs.size() - 1);
      std::vector<std::size_t> sources, sinks;
      for (auto [v, sub] : where) {
        if (indeg[v] == 0) sources.push_back(v);
        if (outdeg[v] == 0) sinks.push_back(v);
      }
      const std::size_t want_source = *canonical_rank(g.vertices, cube_source(tree, c));
      const std::size_t want_sink = *canonical_rank(g.vertices, c.sink);
      if (!shape_ok || edge_count != expect_edges || sources != std::vector{want_source} || sinks != std::vector{want_sink})
        report.fail(c.to_string() + " is not a directed cube with the expected source and sink");
    }
  }
  return report;
}

CheckReport check_face_closure(const CellComplex& complex) {
  CheckReport report{"faces of cells are cells"};
  const auto& tree = complex.tree();
  for (int d = 0; d <= complex.dimension(); ++d) {
    for (const Cube& c : complex.cells(d)) {
      auto verts = cube_vertices(tree, c);
      std::set<ExponentVector> vertex_set(verts.begin(), verts.end());
      const std::uint32_t full = c.directions.mask();
      // Faces: C(b - sum_{C'} (f_i - f_tau(i)), B \ C) for C' within C within B.
      for (std::uint32_t removed = full;; removed = (removed - 1) & full) {
        for (std::uint32_t moved = removed;; moved = (moved - 1) & removed) {
          ++report.checked;
          ExponentVector sink = c.sink;
          for (int j : DirectionSet(moved).indices()) sink = sink.moved(j, tree.tau(j));
          Cube face{sink, DirectionSet(full & ~removed)};
          if (!complex.index_of(face)) {
            report.fail(face.to_string() + " (face of " + c.to_string() + ") is not a cell");
          } else {
            for (const auto& v : cube_vertices(tree, face))
              if (!vertex_set.count(v)) report.fail(face.to_string() + " is not inside " + c.to_string());
          }
          if (moved == 0) break;
        }
        if (removed == 0) break;
      }
    }
  }
  return report;
}

CheckReport check_f_vector(const CellComplex& complex) {
  CheckReport report{"f-vector matches C(q,t)C(q+r-t,r-t)"};
  const int q = complex.q(), r = complex.r();
  for (int t = 0; t <= std::max(q, r); ++t) {
    ++report.checked;
    std::uint64_t want = t <= std::min(q, r) ? binomial(q, t) * binomial(q + r - t, r - t) : 0;
    std::uint64_t have = complex.cells(t).size();
    if (want != have)
      report.fail("dimension " + std::to_string(t) + ": " + std::to_string(have) + " cells, expected " +
                  std::to_string(want));
  }
  return report;
}

CheckReport covering_check(const RootedTree& tree, int r) {
  if (r < tree.q()) throw std::invalid_argument("covering by translates requires r >= q");
  CheckReport report{"translates of the r-complex cover the (r+1)-complex"};
  const CellComplex small = assemble_complex(tree, r);
  const CellComplex big = assemble_complex(tree, r + 1);
  for (int d = 0; d <= big.dimension(); ++d) {
    for (const Cube& c : big.cells(d)) {
      ++report.checked;
      bool covered = false;
      for (int i = 0; i <= tree.q() && !covered; ++i) {
        if (c.sink[i] == 0) continue;
        Cube pre{c.sink.shifted(i, -1), c.directions};
        if (small.index_of(pre) && translate(pre, i) == c) covered = true;
      }
      if (!covered) report.fail(c.to_string() + " is not a translate");
    }
  }
  return report;
}

}  // namespace powres
