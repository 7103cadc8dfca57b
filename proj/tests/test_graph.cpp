#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>
#include <sstream>

#include "qmotif/graph.hpp"
#include "test_util.hpp"

using namespace qmotif;

TEST_CASE("er_generate honors degenerate probabilities") {
  const Graph empty = er_generate(4, 0.0, 99);
  CHECK(empty.edge_count() == 0);

  const Graph complete = er_generate(4, 1.0, 99);
  CHECK(complete.edge_count() == 6);
  CHECK(complete.has_edge(0, 3));
}

TEST_CASE("er_generate is deterministic per seed") {
  const Graph a = er_generate(16, 0.3, 42);
  const Graph b = er_generate(16, 0.3, 42);
  REQUIRE(a.n_vertices() == b.n_vertices());
  for (int v = 0; v < a.n_vertices(); ++v) CHECK(a.neighbors(v) == b.neighbors(v));
  const Graph c = er_generate(16, 0.3, 43);
  bool all_same = true;
  for (int v = 0; v < a.n_vertices(); ++v) all_same = all_same && a.neighbors(v) == c.neighbors(v);
  CHECK_FALSE(all_same);
}

TEST_CASE("er_generate rejects bad arguments") {
  CHECK_THROWS_AS(er_generate(0, 0.5, 1), std::invalid_argument);
  CHECK_THROWS_AS(er_generate(4, 1.5, 1), std::invalid_argument);
  CHECK_THROWS_AS(er_generate(4, -0.1, 1), std::invalid_argument);
}

TEST_CASE("parse_edge_list accepts the documented format") {
  const Graph g = parse_edge_list("n 3\n0 1\n1 2\n2 0");
  CHECK(g.n_vertices() == 3);
  CHECK(g.edge_count() == 3);
  CHECK(count_motifs(g, MotifKind::triangle()) == 1);
}

TEST_CASE("parse_edge_list deduplicates reversed edges and skips comments") {
  const Graph g = parse_edge_list("# comment\nn 4\n0 1\n1 0\n");
  CHECK(g.edge_count() == 1);
  CHECK(g.has_edge(1, 0));
}

TEST_CASE("parse_edge_list rejects malformed input with line numbers") {
  CHECK_THROWS_AS(parse_edge_list("n 2\n0 0"), ParseError);
  CHECK_THROWS_AS(parse_edge_list("n 2\n0 5"), ParseError);
  CHECK_THROWS_AS(parse_edge_list("0 1\n"), ParseError);
  CHECK_THROWS_AS(parse_edge_list(""), ParseError);
  try {
    parse_edge_list("n 3\n0 1\n0 x");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("edge list round-trips through the writer") {
  const Graph g = er_generate(9, 0.4, 7);
  std::ostringstream out;
  write_edge_list(g, out);
  const Graph back = parse_edge_list(out.str());
  REQUIRE(back.n_vertices() == g.n_vertices());
  for (int v = 0; v < g.n_vertices(); ++v) CHECK(back.neighbors(v) == g.neighbors(v));

  std::ostringstream again;
  write_edge_list(back, again);
  CHECK(again.str() == out.str());
}

TEST_CASE("count_motifs on small complete graphs") {
  const Graph k4 = Graph::complete(4);
  CHECK(count_motifs(k4, MotifKind::triangle()) == 4);
  CHECK(count_motifs(k4, MotifKind::cycle(4)) == 3);
  CHECK(count_motifs(k4, MotifKind::clique(4)) == 1);
  const Graph k5 = Graph::complete(5);
  CHECK(count_motifs(k5, MotifKind::clique(4)) == 5);
  CHECK(count_motifs(k5, MotifKind::cycle(5)) == 12);  // (5-1)!/2
}

TEST_CASE("triangle count matches the dense trace oracle") {
  const Graph g = er_generate(8, 0.5, 7);
  CHECK(count_motifs(g, MotifKind::triangle()) == test::trace_a3_over_6(g));

  SplitMix64 rng(2026);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 7);
    const double p = rng.uniform01();
    const Graph h = er_generate(n, p, rng());
    CHECK(count_motifs(h, MotifKind::triangle()) == test::trace_a3_over_6(h));
  }
}

TEST_CASE("triangle, 3-cycle and 3-clique counts coincide") {
  SplitMix64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const Graph g = er_generate(2 + static_cast<int>(rng() % 9), rng.uniform01(), rng());
    const std::uint64_t tri = count_motifs(g, MotifKind::triangle());
    CHECK(count_motifs(g, MotifKind::cycle(3)) == tri);
    CHECK(count_motifs(g, MotifKind::clique(3)) == tri);
  }
}

TEST_CASE("count_motifs is invariant under relabeling") {
  SplitMix64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 4 + static_cast<int>(rng() % 6);
    const Graph g = er_generate(n, 0.5, rng());
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    const Graph h = test::relabel(g, perm);
    for (MotifKind kind : {MotifKind::triangle(), MotifKind::cycle(4), MotifKind::clique(4)})
      CHECK(count_motifs(g, kind) == count_motifs(h, kind));
  }
}

TEST_CASE("complete graphs contain binomial(N, m) cliques") {
  for (int n = 2; n <= 8; ++n) {
    const Graph g = er_generate(n, 1.0, 1);
    std::uint64_t choose = 1;
    for (int m = 2; m <= n; ++m) {
      choose = 1;
      for (int i = 0; i < m; ++i) choose = choose * static_cast<std::uint64_t>(n - i) / (i + 1);
      CHECK(count_motifs(g, MotifKind::clique(m)) == choose);
    }
  }
}

TEST_CASE("hamming distance") {
  CHECK(hamming(0, 7, 3) == 3);
  CHECK(hamming(0, 0, 3) == 0);
  CHECK(hamming(5, 1, 3) == 1);
  CHECK_THROWS_AS(hamming(8, 0, 3), std::invalid_argument);
}

TEST_CASE("MotifKind parsing and edge counts") {
  CHECK(MotifKind::parse("triangle") == MotifKind::triangle());
  CHECK(MotifKind::parse("cycle:5") == MotifKind::cycle(5));
  CHECK(MotifKind::parse("clique:4") == MotifKind::clique(4));
  CHECK_FALSE(MotifKind::parse("cycle:2").has_value());
  CHECK_FALSE(MotifKind::parse("square").has_value());
  CHECK_FALSE(MotifKind::parse("clique:").has_value());
  CHECK(MotifKind::triangle().edge_count() == 3);
  CHECK(MotifKind::cycle(4).edge_count() == 4);
  CHECK(MotifKind::clique(4).edge_count() == 6);
  CHECK_THROWS_AS(MotifKind::cycle(2), std::invalid_argument);
  CHECK_THROWS_AS(MotifKind::clique(1), std::invalid_argument);
}

TEST_CASE("graph construction validates input") {
  Graph g(3);
  CHECK_THROWS_AS(g.add_edge(0, 0), std::invalid_argument);
  CHECK_THROWS_AS(g.add_edge(0, 3), std::invalid_argument);
  g.add_edge(2, 1);
  g.add_edge(1, 2);
  CHECK(g.edge_count() == 1);
  CHECK(g.neighbors(1) == std::vector<int>{2});
}
