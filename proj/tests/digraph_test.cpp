#include <random>
#include <set>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "orbends/digraph.hpp"
#include "orbends/errors.hpp"
#include "orbends/examples.hpp"
#include "orbends/treelike.hpp"

namespace orbends {
namespace {

Digraph two_disjoint_arcs() {
  std::vector<Arc> arcs{{0, 1}, {2, 3}};
  return Digraph(4, arcs);
}

Digraph path_abc() {
  std::vector<Arc> arcs{{0, 1}, {1, 2}};
  return Digraph(3, arcs);
}

Digraph random_connected(std::mt19937 &rng, int n, double extra) {
  std::set<Arc> arcs;
  for (int v = 1; v < n; ++v) {
    int u = std::uniform_int_distribution<int>(0, v - 1)(rng);
    if (rng() % 2)
      arcs.emplace(u, v);
    else
      arcs.emplace(v, u);
  }
  std::bernoulli_distribution coin(extra);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (u != v && coin(rng))
        arcs.emplace(u, v);
  std::vector<Arc> list(arcs.begin(), arcs.end());
  return Digraph(n, list);
}

TEST(Digraph, RejectsLoopsDuplicatesAndRange) {
  std::vector<Arc> loop{{1, 1}};
  EXPECT_THROW(Digraph(2, loop), input_error);
  std::vector<Arc> dup{{0, 1}, {0, 1}};
  EXPECT_THROW(Digraph(2, dup), input_error);
  std::vector<Arc> range{{0, 2}};
  EXPECT_THROW(Digraph(2, range), input_error);
  std::vector<Vertex> frontier{5};
  EXPECT_THROW(Digraph(2, {}, frontier), input_error);
}

TEST(Digraph, Connectivity) {
  EXPECT_FALSE(is_connected(two_disjoint_arcs()));
  EXPECT_TRUE(is_connected(directed_cycle(3)));
  EXPECT_TRUE(is_connected(Digraph(0)));
  auto trunc = build_truncation(k3_template(), 2, 3);
  EXPECT_TRUE(is_connected(trunc.graph));
  EXPECT_TRUE(oracle::connected(trunc.graph));
}

TEST(Digraph, UndirectedDistance) {
  auto g = directed_cycle(5);
  EXPECT_EQ(undirected_distance(g, 2, 2), 0);
  EXPECT_EQ(undirected_distance(g, 0, 1), 1);
  EXPECT_EQ(undirected_distance(g, 1, 0), 1);
  EXPECT_EQ(undirected_distance(g, 0, 2), 2);
  EXPECT_FALSE(undirected_distance(two_disjoint_arcs(), 0, 2).has_value());
  EXPECT_THROW(undirected_distance(g, 0, 7), input_error);

  auto trunc = build_truncation(k3_template(), 2, 2);
  // Every pair inside one K3 lobe is adjacent.
  for (const auto &inst : trunc.lobe_instances)
    for (Vertex u : inst.map)
      for (Vertex v : inst.map)
        if (u != v) {
          EXPECT_EQ(undirected_distance(trunc.graph, u, v), 1);
        }
}

TEST(Digraph, PathDecomposition) {
  auto d = cut_vertices_and_lobes(path_abc());
  EXPECT_EQ(d.cut_vertices, std::vector<Vertex>{1});
  ASSERT_EQ(d.lobes.size(), 2u);
  EXPECT_EQ(d.lobes[0].vertices, (std::vector<Vertex>{0, 1}));
  EXPECT_EQ(d.lobes[1].vertices, (std::vector<Vertex>{1, 2}));
}

TEST(Digraph, CompleteGraphIsOneLobe) {
  auto d = cut_vertices_and_lobes(complete_digraph(3));
  EXPECT_TRUE(d.cut_vertices.empty());
  ASSERT_EQ(d.lobes.size(), 1u);
  EXPECT_EQ(d.lobes[0].arcs.size(), 6u);
}

TEST(Digraph, DisconnectedDecompositionIsRejected) {
  EXPECT_THROW(cut_vertices_and_lobes(two_disjoint_arcs()), precondition_error);
  EXPECT_THROW(block_cut_vertex_tree(two_disjoint_arcs()), precondition_error);
}

TEST(Digraph, TruncationLobesAreTriangles) {
  auto trunc = build_truncation(k3_template(), 2, 3);
  auto d = cut_vertices_and_lobes(trunc.graph);
  for (const auto &lobe : d.lobes)
    EXPECT_EQ(lobe.vertices.size(), 3u);
  std::vector<Vertex> interior;
  for (Vertex v = 0; v < trunc.graph.vertex_count(); ++v)
    if (!trunc.graph.is_frontier(v))
      interior.push_back(v);
  EXPECT_EQ(d.cut_vertices, interior);
}

TEST(Digraph, BlockCutVertexTreeShapes) {
  auto star = block_cut_vertex_tree(complete_digraph(3));
  EXPECT_EQ(star.violet_count, 3);
  EXPECT_EQ(star.blue_count, 1);
  EXPECT_EQ(star.adjacency[star.blue_node(0)].size(), 3u);

  auto path = block_cut_vertex_tree(path_abc());
  EXPECT_EQ(path.node_count(), 5);
  EXPECT_EQ(path.edges.size(), 4u);
  EXPECT_EQ(tree_path(path, 0, 2),
            (std::vector<int>{0, path.blue_node(0), 1, path.blue_node(1), 2}));

  auto trunc = build_truncation(k3_template(), 2, 3);
  const auto &t = trunc.tree;
  for (int node = 0; node < t.node_count(); ++node) {
    if (t.is_violet(node)) {
      if (!trunc.graph.is_frontier(node)) {
        EXPECT_EQ(t.adjacency[node].size(), 2u);
      }
    } else {
      EXPECT_EQ(t.adjacency[node].size(), 3u);
    }
  }
}

TEST(Digraph, BlockCutVertexTreeProperties) {
  std::mt19937 rng(20261017);
  for (int trial = 0; trial < 200; ++trial) {
    int n = std::uniform_int_distribution<int>(1, 40)(rng);
    auto g = random_connected(rng, n, trial % 3 == 0 ? 0.0 : 0.04);
    auto d = cut_vertices_and_lobes(g);
    auto t = block_cut_vertex_tree(g);

    // Tree: connected with one edge fewer than nodes.
    EXPECT_EQ(t.edges.size() + 1, static_cast<std::size_t>(t.node_count()));
    auto dist = tree_distances(t, 0);
    for (int x : dist)
      EXPECT_GE(x, 0);

    // Lobes partition the undirected edges and share at most one vertex.
    std::set<std::pair<Vertex, Vertex>> edges, covered;
    for (auto [u, v] : g.arcs())
      edges.emplace(std::min(u, v), std::max(u, v));
    for (const auto &lobe : d.lobes) {
      EXPECT_GE(lobe.vertices.size(), 2u);
      for (auto [u, v] : lobe.arcs)
        covered.emplace(std::min(u, v), std::max(u, v));
    }
    EXPECT_EQ(edges, covered);
    for (std::size_t i = 0; i < d.lobes.size(); ++i)
      for (std::size_t j = i + 1; j < d.lobes.size(); ++j) {
        std::vector<Vertex> common;
        std::set_intersection(d.lobes[i].vertices.begin(), d.lobes[i].vertices.end(),
                              d.lobes[j].vertices.begin(), d.lobes[j].vertices.end(),
                              std::back_inserter(common));
        EXPECT_LE(common.size(), 1u);
      }

    // Cut vertices agree with deletion and with blue-degree >= 2.
    EXPECT_EQ(d.cut_vertices, oracle::cut_vertices_by_deletion(g));
    for (Vertex v = 0; v < n; ++v) {
      bool cut = std::binary_search(d.cut_vertices.begin(), d.cut_vertices.end(), v);
      EXPECT_EQ(cut, t.adjacency[v].size() >= 2);
    }
    // Violet v adjacent to blue b iff v belongs to lobe b.
    for (int b = 0; b < t.blue_count; ++b)
      EXPECT_EQ(t.adjacency[t.blue_node(b)], d.lobes[b].vertices);
  }
}

TEST(Digraph, Isomorphism) {
  EXPECT_TRUE(digraph_isomorphic(complete_digraph(3), complete_digraph(3)));
  std::vector<Arc> reversed{{1, 0}, {2, 1}, {0, 2}};
  auto iso = digraph_isomorphic(directed_cycle(3), Digraph(3, reversed));
  ASSERT_TRUE(iso);
  for (auto [u, v] : directed_cycle(3).arcs())
    EXPECT_TRUE(Digraph(3, reversed).has_arc((*iso)[u], (*iso)[v]));
  EXPECT_FALSE(digraph_isomorphic(directed_cycle(5), complete_digraph(3)));
  EXPECT_THROW(digraph_isomorphic(complete_digraph(13), complete_digraph(13)),
               capacity_error);
}

TEST(Digraph, IsomorphismIsAnEquivalence) {
  std::mt19937 rng(7);
  std::vector<Digraph> pool;
  for (int i = 0; i < 8; ++i) {
    auto g = random_connected(rng, 5, 0.15);
    pool.push_back(g);
    // A relabelled copy of every graph.
    std::vector<Vertex> perm{0, 1, 2, 3, 4};
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Arc> arcs;
    for (auto [u, v] : g.arcs())
      arcs.emplace_back(perm[u], perm[v]);
    std::sort(arcs.begin(), arcs.end());
    pool.emplace_back(5, arcs);
  }
  pool.push_back(directed_cycle(5));
  pool.push_back(undirected_path(5));
  auto iso = [&](std::size_t a, std::size_t b) {
    return digraph_isomorphic(pool[a], pool[b]).has_value();
  };
  for (std::size_t a = 0; a < pool.size(); ++a) {
    EXPECT_TRUE(iso(a, a));
    for (std::size_t b = 0; b < pool.size(); ++b) {
      EXPECT_EQ(iso(a, b), iso(b, a));
      for (std::size_t c = 0; c < pool.size(); ++c)
        if (iso(a, b) && iso(b, c)) {
          EXPECT_TRUE(iso(a, c));
        }
    }
  }
  for (std::size_t i = 0; i + 1 < 16; i += 2)
    EXPECT_TRUE(iso(i, i + 1));
}

TEST(Digraph, AutomorphismsMatchBruteForce) {
  for (const auto &g : {complete_digraph(3), directed_cycle(5), complete_digraph(4),
                        undirected_path(4), ladder_window(3)}) {
    auto found = all_automorphisms(g);
    auto expected = oracle::automorphisms(g);
    std::sort(found.begin(), found.end());
    EXPECT_EQ(found, expected);
  }
}

TEST(Digraph, Valencies) {
  EXPECT_EQ(in_out_valencies(Digraph(1), 0), (Valencies{0, 0}));
  EXPECT_EQ(in_out_valencies(directed_cycle(3), 1), (Valencies{1, 1}));
  auto trunc = build_truncation(c5_template(), 3, 2);
  for (Vertex v = 0; v < trunc.graph.vertex_count(); ++v)
    if (!trunc.graph.is_frontier(v)) {
      EXPECT_EQ(in_out_valencies(trunc.graph, v), (Valencies{3, 3}));
    }
  EXPECT_THROW(in_out_valencies(directed_cycle(3), 3), input_error);
}

TEST(Digraph, ZGrading) {
  EXPECT_FALSE(z_grading(directed_cycle(3)));
  std::vector<Arc> path{{0, 1}, {1, 2}, {2, 3}};
  EXPECT_EQ(z_grading(Digraph(4, path)), (std::vector<int>{0, 1, 2, 3}));

  // Width-two layers with all arcs between consecutive layers.
  const int layers = 6;
  std::vector<Arc> arcs;
  for (int i = 0; i + 1 < layers; ++i)
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        arcs.emplace_back(2 * i + a, 2 * (i + 1) + b);
  std::sort(arcs.begin(), arcs.end());
  auto levels = z_grading(Digraph(2 * layers, arcs));
  ASSERT_TRUE(levels);
  for (int v = 0; v < 2 * layers; ++v)
    EXPECT_EQ((*levels)[v], v / 2);
}

TEST(Digraph, ZGradingProperty) {
  std::mt19937 rng(99);
  int graded = 0;
  for (int trial = 0; trial < 300; ++trial) {
    int n = std::uniform_int_distribution<int>(2, 14)(rng);
    auto g = random_connected(rng, n, trial % 2 ? 0.0 : 0.05);
    auto levels = z_grading(g);
    if (!levels)
      continue;
    ++graded;
    for (auto [u, v] : g.arcs())
      EXPECT_EQ((*levels)[v], (*levels)[u] + 1);
    EXPECT_EQ(*std::min_element(levels->begin(), levels->end()), 0);
  }
  EXPECT_GT(graded, 50);
  for (int p : {3, 5, 7, 9, 11})
    EXPECT_FALSE(z_grading(directed_cycle(p)));
}

TEST(Digraph, TextRoundTrip) {
  std::vector<Arc> arcs{{2, 0}, {0, 1}};
  std::vector<Vertex> frontier{2};
  Digraph g(3, arcs, frontier);
  auto text = to_text(g);
  EXPECT_EQ(text, "digraph 3\n0 1\n2 0\nfrontier 2\n");
  EXPECT_EQ(parse_digraph(text), g);
  EXPECT_THROW(parse_digraph("digraph 2\n0 0\n"), parse_error);
  try {
    parse_digraph("digraph 2\n# comment\n0 5\n");
    FAIL();
  } catch (const parse_error &e) {
    EXPECT_EQ(e.line(), 3);
  }
}

} // namespace
} // namespace orbends
