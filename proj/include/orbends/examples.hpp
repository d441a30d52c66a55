#pragma once

#include <vector>

#include "orbends/amalgam.hpp"
#include "orbends/digraph.hpp"
#include "orbends/report.hpp"
#include "orbends/treelike.hpp"

namespace orbends {

/// S2 * S3 with trivial amalgamated subgroup.
AmalgamSpec free_product_s2_s3();

/// (S2 x S2) *_{S2} S3: the common S2 is one factor of A and a transposition
/// subgroup of S3, so the coset tree is (2,3)-biregular.
AmalgamSpec valency_two_three_amalgam();

LobeTemplate k3_template();
LobeTemplate k4_template();
LobeTemplate c5_template();

/// Orbital digraph of (root, first distance-2 A-node) on the A-nodes of the
/// Bass-Serre tree ball of even radius R. Frontier: A-nodes at distance R.
struct DistanceTwoWindow {
  CosetTree tree;
  std::vector<int> vertex_node; // window vertex -> tree node
  Digraph graph;
  bool matches_distance_two = false; // arcs == all A-node pairs at distance 2
};

DistanceTwoWindow distance_two_window(const AmalgamSpec &spec, int radius);

/// Amalgam elements as partial maps of the window's vertices.
std::vector<VertexMap> window_vertex_maps(const AmalgamSpec &spec,
                                          const DistanceTwoWindow &window,
                                          const std::vector<AmalgamElement> &elements);

struct ExampleFixtures {
  AmalgamSpec amalgam;
  LobeTemplate example_two_lobe;
  LobeTemplate example_three_lobe;
};

ExampleFixtures bundled_fixtures();

struct ExampleOptions {
  int depth = 2;             // Example 2 window: tree radius 2 * depth
  int witness_syllables = 4;
};

/// Sections for examples 2 and 3, then example 1 reported as out of scope.
std::vector<Section> verify_examples(const ExampleFixtures &fixtures,
                                     const ExampleOptions &options);

} // namespace orbends
