#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "ionc/graph.hpp"
#include "test_support.hpp"

using namespace ionc;

namespace {
constexpr NodeId X = 0, Y = 1, Z = 2;
}

TEST_SUITE("graph") {

TEST_CASE("is_acyclic on small edge lists") {
  const std::vector<Edge> chain{{0, 1}, {1, 2}};
  CHECK(is_acyclic(chain, 3));
  const std::vector<Edge> two_cycle{{0, 1}, {1, 0}};
  CHECK_FALSE(is_acyclic(two_cycle, 2));

  std::vector<Edge> tournament;
  for (NodeId a = 0; a < 5; ++a) {
    for (NodeId b = a + 1; b < 5; ++b) tournament.push_back({a, b});
  }
  CHECK(is_acyclic(tournament, 5));

  const std::vector<Edge> self{{1, 1}};
  CHECK_FALSE(is_acyclic(self, 2));

  const std::vector<Edge> bad{{0, 3}};
  CHECK_THROWS_AS(is_acyclic(bad, 3), MalformedGraph);
}

TEST_CASE("is_acyclic agrees with DFS and is invariant under relabeling") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> node(0, 5);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<Edge> edges;
    std::vector<std::pair<int, int>> plain;
    const int m = trial % 9;
    for (int i = 0; i < m; ++i) {
      const int a = node(rng), b = node(rng);
      edges.push_back({static_cast<NodeId>(a), static_cast<NodeId>(b)});
      plain.emplace_back(a, b);
    }
    const bool expected = !testing::has_cycle(6, plain);
    CHECK(is_acyclic(edges, 6) == expected);

    std::vector<NodeId> perm(6);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    for (Edge& e : edges) e = {perm[e.from], perm[e.to]};
    CHECK(is_acyclic(edges, 6) == expected);
  }
}

TEST_CASE("Dag rejects cycles, self-loops and out-of-range nodes") {
  Dag g(3);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  CHECK_THROWS_AS(g.add_edge(2, 0), MalformedGraph);
  CHECK_THROWS_AS(g.add_edge(1, 1), MalformedGraph);
  CHECK_THROWS_AS(g.add_edge(0, 3), MalformedGraph);
  CHECK(g.edge_count() == 2);
  CHECK(g.bitstring() == "010001000");

  const std::vector<Row> cyclic{0b10, 0b01};
  CHECK_THROWS_AS(Dag::from_rows(cyclic), MalformedGraph);
}

TEST_CASE("canonical order is the row-major bitstring order") {
  std::mt19937_64 rng(3);
  std::vector<Dag> gs;
  for (int i = 0; i < 200; ++i) gs.push_back(testing::random_dag(4, 0.5, rng));
  for (const Dag& a : gs) {
    for (const Dag& b : gs) {
      CHECK(canonical_less(a, b) == (a.bitstring() < b.bitstring()));
    }
  }
}

TEST_CASE("reachable_through with restricted intermediates") {
  const auto g = Dag::from_edges(3, std::vector<Edge>{{X, Z}, {Z, Y}});
  CHECK(reachable_through(g, X, Y, VarSet::of({Z})));
  CHECK_FALSE(reachable_through(g, X, Y, VarSet{}));

  const auto direct = Dag::from_edges(2, std::vector<Edge>{{X, Y}});
  CHECK(reachable_through(direct, X, Y, VarSet{}));
  CHECK_THROWS_AS(reachable_through(direct, X, X, VarSet{}), PreconditionError);
}

TEST_CASE("reachable_through over all nodes is plain reachability") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const Dag g = testing::random_dag(7, 0.3, rng);
    const auto adj = testing::adjacency_matrix(g);
    // Floyd-Warshall transitive closure as the reference.
    auto closure = adj;
    for (std::size_t k = 0; k < 7; ++k)
      for (std::size_t i = 0; i < 7; ++i)
        for (std::size_t j = 0; j < 7; ++j)
          if (closure[i][k] && closure[k][j]) closure[i][j] = true;
    for (NodeId a = 0; a < 7; ++a) {
      for (NodeId b = 0; b < 7; ++b) {
        if (a != b) CHECK(reachable_through(g, a, b, VarSet::all(7)) == closure[a][b]);
      }
    }
  }
}

TEST_CASE("d_separated on chains and colliders") {
  const auto chain = Dag::from_edges(3, std::vector<Edge>{{X, Y}, {Y, Z}});
  CHECK(d_separated(chain, X, Z, VarSet::of({Y})));
  CHECK_FALSE(d_separated(chain, X, Z, VarSet{}));

  // X -> Z <- Y
  const auto collider = Dag::from_edges(3, std::vector<Edge>{{X, Z}, {Y, Z}});
  CHECK(d_separated(collider, X, Y, VarSet{}));
  CHECK_FALSE(d_separated(collider, X, Y, VarSet::of({Z})));

  // Conditioning on a descendant of the collider also opens it.
  const auto desc = Dag::from_edges(4, std::vector<Edge>{{0, 2}, {1, 2}, {2, 3}});
  CHECK_FALSE(d_separated(desc, 0, 1, VarSet::of({3})));

  CHECK_THROWS_AS(d_separated(chain, X, X, VarSet{}), PreconditionError);
  CHECK_THROWS_AS(d_separated(chain, X, Z, VarSet::of({X})), PreconditionError);
}

TEST_CASE("d_separated matches exhaustive path blocking on random 5-node DAGs") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 60; ++trial) {
    const Dag g = testing::random_dag(5, 0.45, rng);
    for (NodeId x = 0; x < 5; ++x) {
      for (NodeId y = 0; y < 5; ++y) {
        if (x == y) continue;
        const Row others = low_mask(5) & ~bit(x) & ~bit(y);
        for (Row zm = 0; zm < 32; ++zm) {
          if (zm & ~others) continue;
          std::set<NodeId> zs;
          for (NodeId v : VarSet(zm)) zs.insert(v);
          const bool got = d_separated(g, x, y, VarSet(zm));
          CHECK(got == testing::d_separated_by_paths(g, x, y, zs));
          // Symmetric in x and y.
          CHECK(got == d_separated(g, y, x, VarSet(zm)));
          if (g.adjacent(x, y)) CHECK_FALSE(got);
        }
      }
    }
  }
}

TEST_CASE("Universe validates names") {
  CHECK_THROWS_AS(Universe({"a", "a"}), Error);
  CHECK_THROWS_AS(Universe({"a", ""}), Error);
  const Universe u({"a", "b"});
  CHECK(u.index_of("b") == 1);
  CHECK_THROWS_AS(u.index_of("c"), Error);
}

}
