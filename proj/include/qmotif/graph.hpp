#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qmotif/common.hpp"

namespace qmotif {

/// Simple undirected graph on vertices 0..N-1, stored as sorted adjacency
/// lists. No self-loops, no parallel edges; adjacency is kept symmetric and
/// each undirected edge counts once in edge_count(). Immutable in practice
/// after construction, so instances are safe to share across threads.
class Graph {
 public:
  explicit Graph(int n_vertices) : n_(n_vertices), adj_(static_cast<std::size_t>(n_vertices)) {
    if (n_vertices < 1) throw std::invalid_argument("Graph: need at least one vertex");
  }

  static Graph from_edges(int n_vertices, const std::vector<std::pair<int, int>>& edges) {
    Graph g(n_vertices);
    for (auto [u, v] : edges) g.add_edge(u, v);
    return g;
  }

  static Graph complete(int n_vertices) {
    Graph g(n_vertices);
    for (int u = 0; u < n_vertices; ++u)
      for (int v = u + 1; v < n_vertices; ++v) g.add_edge(u, v);
    return g;
  }

  /// Inserts the undirected edge {u, v}; duplicates are ignored.
  void add_edge(int u, int v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw std::invalid_argument("Graph: self-loop " + std::to_string(u));
    if (has_edge(u, v)) return;
    insert_sorted(adj_[static_cast<std::size_t>(u)], v);
    insert_sorted(adj_[static_cast<std::size_t>(v)], u);
    ++edge_count_;
  }

  int n_vertices() const { return n_; }
  std::size_t edge_count() const { return edge_count_; }
  int degree(int v) const { return static_cast<int>(neighbors(v).size()); }

  const std::vector<int>& neighbors(int v) const {
    check_vertex(v);
    return adj_[static_cast<std::size_t>(v)];
  }

  bool has_edge(int u, int v) const {
    check_vertex(u);
    check_vertex(v);
    const auto& a = adj_[static_cast<std::size_t>(u)];
    return std::binary_search(a.begin(), a.end(), v);
  }

  /// All edges as (u, v) with u < v, lexicographically sorted.
  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(edge_count_);
    for (int u = 0; u < n_; ++u)
      for (int v : adj_[static_cast<std::size_t>(u)])
        if (u < v) out.emplace_back(u, v);
    return out;
  }

 private:
  void check_vertex(int v) const {
    if (v < 0 || v >= n_)
      throw std::invalid_argument("Graph: vertex " + std::to_string(v) + " out of range [0, " +
                                  std::to_string(n_) + ")");
  }

  static void insert_sorted(std::vector<int>& list, int v) {
    list.insert(std::upper_bound(list.begin(), list.end(), v), v);
  }

  int n_;
  std::size_t edge_count_ = 0;
  std::vector<std::vector<int>> adj_;
};

/// Subgraph pattern whose occurrences are counted: triangle, k-cycle or
/// m-clique. A triangle is the same pattern as Cycle(3) and Clique(3).
class MotifKind {
 public:
  enum class Shape { triangle, cycle, clique };

  static MotifKind triangle() { return MotifKind(Shape::triangle, 3); }

  static MotifKind cycle(int k) {
    if (k < 3) throw std::invalid_argument("MotifKind: cycle length must be >= 3");
    return MotifKind(Shape::cycle, k);
  }

  static MotifKind clique(int m) {
    if (m < 2) throw std::invalid_argument("MotifKind: clique size must be >= 2");
    return MotifKind(Shape::clique, m);
  }

  Shape shape() const { return shape_; }
  int size() const { return size_; }

  /// Number of edges in the pattern; this is also the number of state copies
  /// consumed per projective measurement.
  int edge_count() const {
    switch (shape_) {
      case Shape::triangle: return 3;
      case Shape::cycle: return size_;
      case Shape::clique: return size_ * (size_ - 1) / 2;
    }
    return 0;
  }

  std::string name() const {
    switch (shape_) {
      case Shape::triangle: return "triangle";
      case Shape::cycle: return "cycle:" + std::to_string(size_);
      case Shape::clique: return "clique:" + std::to_string(size_);
    }
    return {};
  }

  /// Stable numeric tag, used when deriving per-motif RNG streams.
  std::uint64_t tag() const {
    return static_cast<std::uint64_t>(shape_) * 256 + static_cast<std::uint64_t>(size_);
  }

  /// Parses "triangle", "cycle:<k>" or "clique:<m>".
  static std::optional<MotifKind> parse(std::string_view text) {
    if (text == "triangle") return triangle();
    auto parse_size = [](std::string_view s) -> std::optional<int> {
      int value = 0;
      if (s.empty() || s.size() > 6) return std::nullopt;
      for (char ch : s) {
        if (ch < '0' || ch > '9') return std::nullopt;
        value = value * 10 + (ch - '0');
      }
      return value;
    };
    if (text.rfind("cycle:", 0) == 0) {
      if (auto k = parse_size(text.substr(6)); k && *k >= 3) return cycle(*k);
      return std::nullopt;
    }
    if (text.rfind("clique:", 0) == 0) {
      if (auto m = parse_size(text.substr(7)); m && *m >= 2) return clique(*m);
      return std::nullopt;
    }
    return std::nullopt;
  }

  bool operator==(const MotifKind& other) const = default;

 private:
  MotifKind(Shape shape, int size) : shape_(shape), size_(size) {}

  Shape shape_;
  int size_;
};

/// Erdős–Rényi G(n, p) sampler. Each unordered pair is visited once in
/// lexicographic order and consumes exactly one uniform draw, so identical
/// (n, edge_prob, seed) triples produce bit-identical graphs.
inline Graph er_generate(int n, double edge_prob, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("er_generate: n must be positive");
  if (!(edge_prob >= 0.0 && edge_prob <= 1.0))
    throw std::invalid_argument("er_generate: edge probability must lie in [0, 1]");
  Graph g(n);
  SplitMix64 rng(seed);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (rng.uniform01() < edge_prob) g.add_edge(u, v);
  return g;
}

/// Parses the edge-list text format:
///   # comment
///   n <N>
///   u v
/// Endpoints are 0-based; reversed duplicates collapse to one edge.
inline Graph parse_edge_list(std::string_view text) {
  std::optional<Graph> g;
  std::size_t pos = 0;
  int line_no = 0;
  auto fail = [&](const std::string& what) {
    throw ParseError("edge list line " + std::to_string(line_no) + ": " + what);
  };
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    std::istringstream in(line);
    std::string first;
    if (!(in >> first) || first[0] == '#') {
      if (pos > text.size()) break;
      continue;
    }
    if (!g) {
      // Header line "n <N>" must come before any edge.
      int n = 0;
      std::string extra;
      if (first != "n" || !(in >> n) || (in >> extra) || n < 1)
        fail("expected header \"n <N>\"");
      g.emplace(n);
    } else {
      int u = 0, v = 0;
      std::string extra;
      std::istringstream edge_in(line);
      if (!(edge_in >> u >> v) || (edge_in >> extra)) fail("expected \"u v\"");
      if (u < 0 || u >= g->n_vertices() || v < 0 || v >= g->n_vertices())
        fail("vertex out of range [0, " + std::to_string(g->n_vertices()) + ")");
      if (u == v) fail("self-loop " + std::to_string(u));
      g->add_edge(u, v);
    }
    if (pos > text.size()) break;
  }
  if (!g) throw ParseError("edge list: missing header \"n <N>\"");
  return *g;
}

/// Writes the same format parse_edge_list reads, edges sorted, so output is
/// deterministic for a given graph.
inline void write_edge_list(const Graph& g, std::ostream& out) {
  out << "n " << g.n_vertices() << "\n";
  for (auto [u, v] : g.edges()) out << u << " " << v << "\n";
}

namespace detail {

inline std::uint64_t count_triangles(const Graph& g) {
  std::uint64_t total = 0;
  for (int u = 0; u < g.n_vertices(); ++u) {
    const auto& nu = g.neighbors(u);
    for (int v : nu) {
      if (v <= u) continue;
      // Common neighbors w of u and v with w > v; sorted lists, two pointers.
      const auto& nv = g.neighbors(v);
      auto iu = std::upper_bound(nu.begin(), nu.end(), v);
      auto iv = std::upper_bound(nv.begin(), nv.end(), v);
      while (iu != nu.end() && iv != nv.end()) {
        if (*iu < *iv) ++iu;
        else if (*iv < *iu) ++iv;
        else { ++total; ++iu; ++iv; }
      }
    }
  }
  return total;
}

inline std::uint64_t count_cliques(const Graph& g, int m) {
  if (m > g.n_vertices()) return 0;
  if (m == 2) return g.edge_count();
  std::uint64_t total = 0;
  // Grow cliques in ascending vertex order; cand holds common neighbors of
  // the current clique that exceed its largest member.
  auto extend = [&](auto&& self, const std::vector<int>& cand, int depth) -> void {
    if (static_cast<int>(cand.size()) + depth < m) return;
    for (std::size_t i = 0; i < cand.size(); ++i) {
      int v = cand[i];
      if (depth + 1 == m) {
        ++total;
        continue;
      }
      std::vector<int> next;
      const auto& nv = g.neighbors(v);
      std::set_intersection(cand.begin() + static_cast<std::ptrdiff_t>(i) + 1, cand.end(),
                            std::upper_bound(nv.begin(), nv.end(), v), nv.end(),
                            std::back_inserter(next));
      self(self, next, depth + 1);
    }
  };
  for (int v = 0; v < g.n_vertices(); ++v) {
    std::vector<int> cand;
    const auto& nv = g.neighbors(v);
    cand.assign(std::upper_bound(nv.begin(), nv.end(), v), nv.end());
    extend(extend, cand, 1);
  }
  return total;
}

inline std::uint64_t count_cycles(const Graph& g, int k) {
  // Roots each cycle at its minimum vertex s and walks paths through
  // vertices > s; each undirected cycle closes twice, once per orientation.
  std::uint64_t closed_walks = 0;
  std::vector<char> visited(static_cast<std::size_t>(g.n_vertices()), 0);
  auto dfs = [&](auto&& self, int root, int current, int depth) -> void {
    if (depth == k - 1) {
      if (g.has_edge(current, root)) ++closed_walks;
      return;
    }
    for (int w : g.neighbors(current)) {
      if (w <= root || visited[static_cast<std::size_t>(w)]) continue;
      visited[static_cast<std::size_t>(w)] = 1;
      self(self, root, w, depth + 1);
      visited[static_cast<std::size_t>(w)] = 0;
    }
  };
  for (int s = 0; s < g.n_vertices(); ++s) {
    for (int v : g.neighbors(s)) {
      if (v <= s) continue;
      visited[static_cast<std::size_t>(v)] = 1;
      dfs(dfs, s, v, 1);
      visited[static_cast<std::size_t>(v)] = 0;
    }
  }
  return closed_walks / 2;
}

}  // namespace detail

/// Exact motif count by enumeration. Triangles and cliques are counted once
/// per vertex subset; k-cycles once per undirected simple cycle (rotations
/// and the two orientations identified).
inline std::uint64_t count_motifs(const Graph& g, MotifKind kind) {
  switch (kind.shape()) {
    case MotifKind::Shape::triangle: return detail::count_triangles(g);
    case MotifKind::Shape::cycle: return detail::count_cycles(g, kind.size());
    case MotifKind::Shape::clique: return detail::count_cliques(g, kind.size());
  }
  return 0;
}

}  // namespace qmotif
