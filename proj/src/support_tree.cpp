#include "powres/support_tree.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "powres/errors.hpp"

namespace powres {

RootedTree::RootedTree(Ring ring, std::vector<Monomial> labels, std::vector<int> parent)
    : ring_(std::move(ring)), labels_(std::move(labels)), parent_(std::move(parent)) {
  if (labels_.empty()) throw std::invalid_argument("a tree needs at least one vertex");
  if (labels_.size() > 32) throw std::invalid_argument("at most 32 tree vertices are supported");
  if (parent_.size() != labels_.size()) throw std::invalid_argument("parent map has the wrong length");
  if (parent_[0] != -1) throw std::invalid_argument("the root must have no parent");
  for (std::size_t i = 1; i < parent_.size(); ++i)
    if (parent_[i] < 0 || parent_[i] >= static_cast<int>(i))
      throw std::invalid_argument("labeling is not increasing: tau(" + std::to_string(i) + ") = " +
                                  std::to_string(parent_[i]));
  for (const auto& m : labels_)
    if (m.num_vars() != ring_.size()) throw std::invalid_argument("label does not belong to ring");
}

int RootedTree::tau(int i) const {
  if (i < 1 || i > q()) throw std::out_of_range("tau is defined on 1..q");
  return parent_[i];
}

Monomial RootedTree::edge_label(int i) const { return lcm(labels_[i], labels_[tau(i)]); }
Monomial RootedTree::sink_ratio(int i) const { return edge_label(i).divided_by(labels_[i]); }
Monomial RootedTree::source_ratio(int i) const { return edge_label(i).divided_by(labels_[tau(i)]); }

UnrootedTree RootedTree::unrooted() const {
  UnrootedTree out{labels_, {}};
  for (int i = 1; i <= q(); ++i) out.edges.emplace_back(parent_[i], i);
  return out;
}

MonomialIdeal RootedTree::ideal() const { return MonomialIdeal(ring_, labels_); }

// ---------------------------------------------------------------------------

namespace {

std::vector<std::vector<int>> adjacency(const UnrootedTree& tree) {
  const int n = static_cast<int>(tree.labels.size());
  std::vector<std::vector<int>> adj(n);
  std::set<std::pair<int, int>> seen;
  for (auto [u, v] : tree.edges) {
    if (u < 0 || v < 0 || u >= n || v >= n) throw std::invalid_argument("edge endpoint out of range");
    if (u == v) throw std::invalid_argument("not a tree: loop at vertex " + std::to_string(u));
    if (!seen.insert({std::min(u, v), std::max(u, v)}).second)
      throw std::invalid_argument("not a tree: repeated edge " + std::to_string(u) + "-" + std::to_string(v));
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  return adj;
}

}  // namespace

RootedTree root_and_label(const Ring& ring, const UnrootedTree& tree, int root) {
  const int n = static_cast<int>(tree.labels.size());
  if (n == 0) throw std::invalid_argument("empty tree");
  if (root < 0 || root >= n) throw std::invalid_argument("root is not a vertex");
  auto adj = adjacency(tree);
  if (static_cast<int>(tree.edges.size()) != n - 1) {
    throw std::invalid_argument("not a tree: " + std::to_string(tree.edges.size()) + " edges on " +
                                std::to_string(n) + " vertices");
  }

  std::vector<int> order;       // new index -> old index
  std::vector<int> new_index(n, -1);
  std::vector<int> parent;
  std::deque<int> queue{root};
  new_index[root] = 0;
  order.push_back(root);
  parent.push_back(-1);
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    std::vector<int> children;
    for (int v : adj[u])
      if (new_index[v] < 0) children.push_back(v);
    std::stable_sort(children.begin(), children.end(), [&](int a, int b) {
      if (tree.labels[a] != tree.labels[b]) return tree.labels[a] > tree.labels[b];
      return a < b;
    });
    for (int v : children) {
      new_index[v] = static_cast<int>(order.size());
      order.push_back(v);
      parent.push_back(new_index[u]);
      queue.push_back(v);
    }
  }
  if (static_cast<int>(order.size()) != n) {
    int missing = static_cast<int>(std::find(new_index.begin(), new_index.end(), -1) - new_index.begin());
    throw std::invalid_argument("not a tree: vertex " + std::to_string(missing) + " is disconnected");
  }
  std::vector<Monomial> labels;
  labels.reserve(n);
  for (int old : order) labels.push_back(tree.labels[old]);
  return RootedTree(ring, std::move(labels), std::move(parent));
}

PathMatrix path_matrix(const RootedTree& tree) {
  const int q = tree.q();
  PathMatrix phi(q, std::vector<int>(q, 0));
  for (int j = 1; j <= q; ++j)
    for (int k = j; k != 0; k = tree.tau(k)) phi[k - 1][j - 1] = 1;
  return phi;
}

std::vector<Monomial> lcm_lattice(std::span<const Monomial> labels) {
  std::unordered_set<Monomial, MonomialHash> lattice;
  for (const auto& label : labels) {
    std::vector<Monomial> fresh{label};
    for (const auto& existing : lattice) fresh.push_back(lcm(existing, label));
    lattice.insert(fresh.begin(), fresh.end());
  }
  std::vector<Monomial> out(lattice.begin(), lattice.end());
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

void require_same_generators(std::span<const Monomial> labels, const MonomialIdeal& ideal) {
  std::vector<Monomial> a(labels.begin(), labels.end());
  std::vector<Monomial> b(ideal.generators().begin(), ideal.generators().end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  if (a != b) throw std::invalid_argument("tree labels are not the generators of the ideal");
}

SupportReport validate_edges_and_lattice(const UnrootedTree& tree) {
  const int n = static_cast<int>(tree.labels.size());
  auto adj = adjacency(tree);
  SupportReport report;
  for (std::size_t e = 0; e < tree.edges.size(); ++e) {
    auto [u, v] = tree.edges[e];
    Monomial l = lcm(tree.labels[u], tree.labels[v]);
    if (l == tree.labels[u] || l == tree.labels[v]) {
      report.edges_minimal = false;
      if (!report.non_minimal_edge) report.non_minimal_edge = static_cast<int>(e);
    }
  }
  for (auto& degree : lcm_lattice(tree.labels)) {
    MultidegreeCheck check{degree, 0, true};
    std::vector<char> in(n, 0);
    int start = -1;
    for (int v = 0; v < n; ++v) {
      if (tree.labels[v].divides(degree)) {
        in[v] = 1;
        ++check.vertex_count;
        if (start < 0) start = v;
      }
    }
    if (start >= 0) {
      std::vector<char> seen(n, 0);
      std::vector<int> stack{start};
      seen[start] = 1;
      std::size_t reached = 1;
      while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int v : adj[u]) {
          if (in[v] && !seen[v]) {
            seen[v] = 1;
            ++reached;
            stack.push_back(v);
          }
        }
      }
      check.connected = reached == check.vertex_count;
    }
    if (!check.connected && !report.witness) report.witness = check.degree;
    report.lattice.push_back(std::move(check));
  }
  return report;
}

}  // namespace

SupportReport validate_support(const RootedTree& tree, const MonomialIdeal& ideal) {
  require_same_generators(tree.labels(), ideal);
  return validate_edges_and_lattice(tree.unrooted());
}

SupportReport validate_support(const Ring& ring, const UnrootedTree& tree, const MonomialIdeal& ideal) {
  if (ring != ideal.ring()) throw std::invalid_argument("tree and ideal use different rings");
  require_same_generators(tree.labels, ideal);
  if (tree.edges.size() + 1 != tree.labels.size()) throw std::invalid_argument("not a tree");
  return validate_edges_and_lattice(tree);
}

// ---------------------------------------------------------------------------
// Spanning tree search

std::vector<std::pair<int, int>> prufer_decode(std::span<const int> sequence, int n) {
  std::vector<std::pair<int, int>> edges;
  if (n <= 1) return edges;
  if (static_cast<int>(sequence.size()) != n - 2) throw std::invalid_argument("Pruefer sequence has the wrong length");
  std::vector<int> degree(n, 1);
  for (int s : sequence) {
    if (s < 0 || s >= n) throw std::invalid_argument("Pruefer entry out of range");
    ++degree[s];
  }
  for (int s : sequence) {
    int leaf = 0;
    while (degree[leaf] != 1) ++leaf;
    edges.emplace_back(std::min(leaf, s), std::max(leaf, s));
    --degree[leaf];
    --degree[s];
  }
  int u = -1;
  for (int v = 0; v < n; ++v) {
    if (degree[v] == 1) {
      if (u < 0) {
        u = v;
      } else {
        edges.emplace_back(u, v);
        break;
      }
    }
  }
  return edges;
}

namespace {

// Pairwise form of the connectivity criterion: the tree supports the
// resolution iff every vertex on the path between u and v divides
// lcm(m_u, m_v).
class SearchContext {
 public:
  explicit SearchContext(const MonomialIdeal& ideal) : n_(static_cast<int>(ideal.size())), div_(n_ * n_, 0) {
    for (int u = 0; u < n_; ++u) {
      for (int v = 0; v < n_; ++v) {
        Monomial l = lcm(ideal.generator(u), ideal.generator(v));
        std::uint32_t mask = 0;
        for (int w = 0; w < n_; ++w)
          if (ideal.generator(w).divides(l)) mask |= 1u << w;
        div_[u * n_ + v] = mask;
      }
    }
    total_ = 1;
    for (int i = 0; i + 2 < n_; ++i) total_ *= n_;
  }

  int n() const { return n_; }
  std::int64_t total() const { return total_; }

  std::vector<int> sequence(std::int64_t index) const {
    std::vector<int> seq(std::max(0, n_ - 2));
    for (int i = static_cast<int>(seq.size()) - 1; i >= 0; --i) {
      seq[i] = static_cast<int>(index % n_);
      index /= n_;
    }
    return seq;
  }

  std::vector<std::pair<int, int>> edges(std::int64_t index) const { return prufer_decode(sequence(index), n_); }

  // Number of violating pairs (stops at the first one when `early_exit`);
  // `first` receives the first violating pair.
  int violations(const std::vector<std::pair<int, int>>& edges, bool early_exit,
                 std::pair<int, int>* first = nullptr) const {
    std::vector<std::vector<int>> adj(n_);
    for (auto [u, v] : edges) {
      adj[u].push_back(v);
      adj[v].push_back(u);
    }
    std::vector<int> parent(n_, -1), depth(n_, 0);
    std::vector<std::uint32_t> ancestors(n_, 0);
    std::vector<int> stack{0};
    std::vector<char> seen(n_, 0);
    seen[0] = 1;
    ancestors[0] = 1u;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int v : adj[u]) {
        if (seen[v]) continue;
        seen[v] = 1;
        parent[v] = u;
        depth[v] = depth[u] + 1;
        ancestors[v] = ancestors[u] | (1u << v);
        stack.push_back(v);
      }
    }
    int count = 0;
    for (int u = 0; u < n_; ++u) {
      for (int v = u + 1; v < n_; ++v) {
        std::uint32_t common = ancestors[u] & ancestors[v];
        int lca = 0;
        for (int w = 0; w < n_; ++w)
          if ((common >> w & 1u) && depth[w] > depth[lca]) lca = w;
        std::uint32_t path = (ancestors[u] ^ ancestors[v]) | (1u << lca);
        if ((path & ~div_[u * n_ + v]) != 0) {
          if (count == 0 && first) *first = {u, v};
          ++count;
          if (early_exit) return count;
        }
      }
    }
    return count;
  }

 private:
  int n_;
  std::vector<std::uint32_t> div_;
  std::int64_t total_ = 1;
};

std::int64_t first_supporting_index_serial(const SearchContext& ctx) {
  for (std::int64_t k = 0; k < ctx.total(); ++k)
    if (ctx.violations(ctx.edges(k), true) == 0) return k;
  return -1;
}

std::int64_t first_supporting_index_parallel(const SearchContext& ctx) {
  const std::int64_t total = ctx.total();
  std::atomic<std::int64_t> best{total};
#pragma omp parallel for schedule(dynamic, 512)
  for (std::int64_t k = 0; k < total; ++k) {
    if (k >= best.load(std::memory_order_relaxed)) continue;
    if (ctx.violations(ctx.edges(k), true) == 0) {
      std::int64_t current = best.load(std::memory_order_relaxed);
      while (k < current && !best.compare_exchange_weak(current, k, std::memory_order_relaxed)) {
      }
    }
  }
  std::int64_t found = best.load();
  return found == total ? -1 : found;
}

std::string describe_edges(const Ring& ring, const MonomialIdeal& ideal, const std::vector<std::pair<int, int>>& edges) {
  std::string out;
  for (auto [u, v] : edges) {
    if (!out.empty()) out += ", ";
    out += format_monomial(ring, ideal.generator(u)) + " -- " + format_monomial(ring, ideal.generator(v));
  }
  return out;
}

}  // namespace

RootedTree build_support_tree(const MonomialIdeal& ideal, Execution exec, std::optional<int> root) {
  const Ring& ring = ideal.ring();
  if (!ideal.is_square_free()) throw DomainError("ideal " + ideal.to_string() + " is not square-free");
  const int vertices = static_cast<int>(ideal.size());
  if (vertices > static_cast<int>(ring.size())) {
    throw DomainError("not projective dimension one: " + std::to_string(vertices) +
                      " square-free generators in " + std::to_string(ring.size()) +
                      " variables violates q+1 <= n");
  }
  if (vertices > 10) throw ResourceError("spanning-tree search is limited to 10 generators");
  const int root_index = root.value_or(0);
  if (root_index < 0 || root_index >= vertices) throw std::invalid_argument("root is not a generator index");

  SearchContext ctx(ideal);
  std::int64_t index =
      exec == Execution::parallel ? first_supporting_index_parallel(ctx) : first_supporting_index_serial(ctx);
  if (index < 0) {
    // Report the candidate with the fewest violating pairs.
    int best_count = std::numeric_limits<int>::max();
    std::int64_t best_index = 0;
    std::pair<int, int> best_pair{0, 0};
    for (std::int64_t k = 0; k < ctx.total(); ++k) {
      std::pair<int, int> pair;
      int count = ctx.violations(ctx.edges(k), false, &pair);
      if (count < best_count) {
        best_count = count;
        best_index = k;
        best_pair = pair;
      }
    }
    Monomial witness = lcm(ideal.generator(best_pair.first), ideal.generator(best_pair.second));
    throw DomainError("not projective dimension one: none of the " + std::to_string(ctx.total()) +
                      " spanning trees supports a resolution; best candidate {" +
                      describe_edges(ring, ideal, ctx.edges(best_index)) + "} is disconnected at multidegree " +
                      format_monomial(ring, witness));
  }
  UnrootedTree tree{{ideal.generators().begin(), ideal.generators().end()}, ctx.edges(index)};
  RootedTree rooted = root_and_label(ring, tree, root_index);
  if (!validate_support(rooted, ideal).supports_minimal_resolution())
    throw std::logic_error("search returned a tree that fails validation");
  return rooted;
}

std::optional<UnrootedTree> first_non_supporting_tree(const MonomialIdeal& ideal) {
  if (ideal.size() > 10) throw ResourceError("spanning-tree search is limited to 10 generators");
  SearchContext ctx(ideal);
  for (std::int64_t k = 0; k < ctx.total(); ++k) {
    auto edges = ctx.edges(k);
    if (ctx.violations(edges, true) != 0)
      return UnrootedTree{{ideal.generators().begin(), ideal.generators().end()}, std::move(edges)};
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Text format

std::string format_tree_text(const RootedTree& tree) {
  std::ostringstream out;
  for (int i = 0; i <= tree.q(); ++i) out << "label: " << i << ' ' << format_monomial(tree.ring(), tree.label(i)) << '\n';
  for (int i = 1; i <= tree.q(); ++i) out << "edge: " << tree.tau(i) << ' ' << i << '\n';
  return out.str();
}

UnrootedTree parse_tree_text(std::string_view text, const Ring& ring) {
  std::map<int, Monomial> labels;
  std::vector<std::pair<int, int>> edges;
  std::size_t line_no = 0;
  std::size_t begin = 0;
  while (begin <= text.size()) {
    std::size_t end = text.find('\n', begin);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(begin, end - begin));
    begin = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream in(line);
    std::string keyword;
    if (!(in >> keyword)) {
      if (end == text.size()) break;
      continue;
    }
    if (keyword == "label:") {
      int index = -1;
      if (!(in >> index) || index < 0) throw ParseError("expected a vertex index", line_no, 1);
      std::string rest;
      std::getline(in, rest);
      Monomial m = parse_monomial(ring, rest);
      if (!labels.emplace(index, m).second) throw ParseError("vertex labeled twice", line_no, 1);
    } else if (keyword == "edge:") {
      int u = -1, v = -1;
      std::string extra;
      if (!(in >> u >> v) || (in >> extra)) throw ParseError("expected 'edge: i j'", line_no, 1);
      edges.emplace_back(u, v);
    } else {
      throw ParseError("unknown keyword '" + keyword + "'", line_no, 1);
    }
    if (end == text.size()) break;
  }
  UnrootedTree tree;
  int expected = 0;
  for (auto& [index, m] : labels) {
    if (index != expected++) throw ParseError("vertex indices must be 0..q without gaps", line_no, 1);
    tree.labels.push_back(m);
  }
  tree.edges = std::move(edges);
  return tree;
}

}  // namespace powres
