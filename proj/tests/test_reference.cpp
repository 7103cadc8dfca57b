#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>
#include <sstream>

#include "qmotif/reference.hpp"
#include "test_util.hpp"

using namespace qmotif;
using Catch::Matchers::WithinAbs;

TEST_CASE("adjacency_state amplitudes") {
  const Graph edge = Graph::from_edges(2, {{0, 1}});
  const SparseState s = adjacency_state(edge);
  REQUIRE(s.num_qubits == 2);
  REQUIRE(s.amplitudes.size() == 2);
  const double r = 1.0 / std::sqrt(2.0);
  CHECK_THAT(s.amplitudes.at(0b01).real(), WithinAbs(r, 1e-15));  // |0⟩|1⟩
  CHECK_THAT(s.amplitudes.at(0b10).real(), WithinAbs(r, 1e-15));  // |1⟩|0⟩

  const Graph k3 = Graph::complete(3);
  const SparseState t = adjacency_state(k3);
  REQUIRE(t.num_qubits == 4);
  REQUIRE(t.amplitudes.size() == 6);
  for (const auto& [index, amp] : t.amplitudes)
    CHECK_THAT(amp.real(), WithinAbs(1.0 / std::sqrt(6.0), 1e-15));
  CHECK_THAT(t.norm_sq(), WithinAbs(1.0, 1e-12));

  const SparseState arc = adjacency_state(edge, /*directed=*/true);
  REQUIRE(arc.amplitudes.size() == 1);
  CHECK_THAT(arc.amplitudes.at(0b01).real(), WithinAbs(1.0, 1e-15));
}

TEST_CASE("adjacency_state rejects empty graphs") {
  CHECK_THROWS_AS(adjacency_state(Graph(3)), std::invalid_argument);
}

TEST_CASE("neighborhood_state amplitudes") {
  const Graph fig = test::example_graph_n8();
  const SparseState n4 = neighborhood_state(fig, 4);
  REQUIRE(n4.num_qubits == 3);
  REQUIRE(n4.amplitudes.size() == 5);
  for (std::uint64_t c : {0ull, 1ull, 2ull, 5ull, 7ull})
    CHECK_THAT(n4.amplitudes.at(c).real(), WithinAbs(1.0 / std::sqrt(5.0), 1e-15));

  const Graph path = Graph::from_edges(3, {{0, 1}, {1, 2}});
  const SparseState n0 = neighborhood_state(path, 0);
  REQUIRE(n0.amplitudes.size() == 1);
  CHECK_THAT(n0.amplitudes.at(1).real(), WithinAbs(1.0, 1e-15));

  const SparseState n2 = neighborhood_state(Graph::complete(3), 2);
  REQUIRE(n2.amplitudes.size() == 2);
  CHECK_THAT(n2.amplitudes.at(0).real(), WithinAbs(1.0 / std::sqrt(2.0), 1e-15));
  CHECK_THAT(n2.amplitudes.at(1).real(), WithinAbs(1.0 / std::sqrt(2.0), 1e-15));

  CHECK_THROWS_AS(neighborhood_state(Graph(2), 0), std::invalid_argument);
}

TEST_CASE("degree_state amplitudes") {
  const Graph fig = test::example_graph_n8();
  const SparseState d = degree_state(fig);
  const int degrees[8] = {4, 2, 3, 3, 5, 3, 3, 3};
  REQUIRE(d.amplitudes.size() == 8);
  for (int r = 0; r < 8; ++r)
    CHECK_THAT(d.amplitudes.at(static_cast<std::uint64_t>(r)).real(),
               WithinAbs(std::sqrt(degrees[r] / 26.0), 1e-15));

  const SparseState k2 = degree_state(Graph::complete(2));
  CHECK_THAT(k2.amplitudes.at(0).real(), WithinAbs(1.0 / std::sqrt(2.0), 1e-15));
  CHECK_THAT(k2.amplitudes.at(1).real(), WithinAbs(1.0 / std::sqrt(2.0), 1e-15));

  const Graph star = Graph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}});
  const SparseState sd = degree_state(star);
  CHECK_THAT(sd.amplitudes.at(0).real(), WithinAbs(std::sqrt(3.0 / 6.0), 1e-15));
  for (std::uint64_t leaf : {1ull, 2ull, 3ull})
    CHECK_THAT(sd.amplitudes.at(leaf).real(), WithinAbs(std::sqrt(1.0 / 6.0), 1e-15));
}

TEST_CASE("adjacency state decomposes into degree-weighted neighborhoods") {
  SplitMix64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const Graph g = er_generate(5 + static_cast<int>(rng() % 8), 0.5, rng());
    if (g.edge_count() == 0) continue;
    const SparseState adj = adjacency_state(g);
    const SparseState deg = degree_state(g);
    const int n = ceil_log2(static_cast<std::uint64_t>(g.n_vertices()));
    REQUIRE(adj.amplitudes.size() == 2 * g.edge_count());
    for (int r = 0; r < g.n_vertices(); ++r) {
      if (g.degree(r) == 0) continue;
      const SparseState nbr = neighborhood_state(g, r);
      for (const auto& [c, amp] : nbr.amplitudes) {
        const std::uint64_t index = (static_cast<std::uint64_t>(r) << n) | c;
        const Complex expected = deg.amplitudes.at(static_cast<std::uint64_t>(r)) * amp;
        REQUIRE_THAT(std::abs(adj.amplitudes.at(index) - expected), WithinAbs(0.0, 1e-13));
      }
    }
    CHECK_THAT(adj.norm_sq(), WithinAbs(1.0, 1e-12));
    CHECK_THAT(deg.norm_sq(), WithinAbs(1.0, 1e-12));
  }
}

TEST_CASE("success_probability exact rationals") {
  const auto k3 = success_probability(Graph::complete(3), MotifKind::triangle());
  CHECK(k3.numerator == 1);
  CHECK(k3.denominator == 216);
  CHECK_THAT(k3.value, WithinAbs(1.0 / 216.0, 1e-18));

  const Graph k4 = Graph::complete(4);
  const auto tri = success_probability(k4, MotifKind::triangle());
  CHECK(tri.numerator == 4);
  CHECK(tri.denominator == 1728);

  const auto clique = success_probability(k4, MotifKind::clique(4));
  CHECK(clique.numerator == 1);
  CHECK(clique.denominator == BigInt(12) * 12 * 12 * 12 * 12 * 12);

  const auto cyc = success_probability(k4, MotifKind::cycle(4));
  CHECK(cyc.numerator == 3);
  CHECK(cyc.denominator == BigInt(12) * 12 * 12 * 12);

  CHECK_THROWS_AS(success_probability(Graph(2), MotifKind::triangle()), std::invalid_argument);
}

TEST_CASE("projector oracle on tiny graphs") {
  const auto k3 = projector_expectation_oracle(Graph::complete(3), MotifKind::triangle());
  CHECK(k3.numerator == 1);
  CHECK(k3.denominator == 216);

  const auto none =
      projector_expectation_oracle(Graph::from_edges(2, {{0, 1}}), MotifKind::triangle());
  CHECK(none.numerator == 0);

  const Graph c4 = Graph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  const auto cyc = projector_expectation_oracle(c4, MotifKind::cycle(4));
  CHECK(cyc.numerator == 1);
  CHECK(cyc.denominator == 4096);
}

TEST_CASE("projector oracle enforces its enumeration budget") {
  const Graph k6 = Graph::complete(6);
  CHECK_THROWS_AS(projector_expectation_oracle(k6, MotifKind::clique(4), 100'000'000),
                  ResourceError);
  CHECK_NOTHROW(projector_expectation_oracle(k6, MotifKind::clique(4), 10'000'000'000ull));
}

TEST_CASE("formula and oracle agree as exact rationals") {
  SplitMix64 rng(47);
  int checked = 0;
  while (checked < 60) {
    const int n = 3 + static_cast<int>(rng() % 4);
    const Graph g = er_generate(n, 0.3 + 0.6 * rng.uniform01(), rng());
    if (g.edge_count() == 0) continue;
    ++checked;
    for (MotifKind kind : {MotifKind::triangle(), MotifKind::cycle(4), MotifKind::clique(4)}) {
      const auto formula = success_probability(g, kind);
      const auto oracle = projector_expectation_oracle(g, kind, 10'000'000'000ull);
      REQUIRE(formula.numerator == oracle.numerator);
      REQUIRE(formula.denominator == oracle.denominator);
    }
  }
}

TEST_CASE("success_probability is invariant under relabeling") {
  SplitMix64 rng(53);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 4 + static_cast<int>(rng() % 4);
    const Graph g = er_generate(n, 0.6, rng());
    if (g.edge_count() == 0) continue;
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    const Graph h = test::relabel(g, perm);
    for (MotifKind kind : {MotifKind::triangle(), MotifKind::cycle(4), MotifKind::clique(4)}) {
      const auto a = success_probability(g, kind);
      const auto b = success_probability(h, kind);
      CHECK(a.numerator == b.numerator);
      CHECK(a.denominator == b.denominator);
    }
  }
}

TEST_CASE("dense tensor-product cross-check for triangles") {
  SplitMix64 rng(59);
  for (int trial = 0; trial < 6; ++trial) {
    const int n = 4 + static_cast<int>(rng() % 5);  // up to 8 vertices
    const Graph g = er_generate(n, 0.5, rng());
    if (g.edge_count() == 0) continue;
    const double dense = dense_triangle_expectation(g);
    const auto exact = success_probability(g, MotifKind::triangle());
    CHECK_THAT(dense, WithinAbs(exact.value, 1e-12));
  }
}

TEST_CASE("sparse state embeds into a statevector and CSV") {
  const SparseState s = adjacency_state(Graph::complete(3));
  const Statevector dense = s.to_statevector();
  CHECK_THAT(dense.norm_sq(), WithinAbs(1.0, 1e-12));
  CHECK_THAT(fidelity_with_sparse(dense, s), WithinAbs(1.0, 1e-12));

  std::ostringstream out;
  write_amplitudes_csv(s, out);
  const std::string csv = out.str();
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 7);  // header + 6 nonzeros
}
