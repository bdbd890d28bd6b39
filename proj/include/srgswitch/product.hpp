#pragma once

#include <string_view>
#include <vector>

#include "srgswitch/graph.hpp"

namespace srgswitch {

// Graph product with Seidel matrix (S1 + I) kron (S2 + I) - I; over GF(2) the
// adjacency matrix is A1 kron J + J kron A2. Vertices are ordered
// lexicographically ((x1, x2) at index n2*x1 + x2) and labels compose with a
// comma when both factors are labelled.
Graph seidel_product(const Graph& a, const Graph& b);

// r1 + r2 - 2 when the all-ones vector is in both column spaces, else r1 + r2.
std::size_t predicted_2rank(const Graph& a, const Graph& b);

// Whether 1 lies in the product's column space: true iff it does for a factor.
bool ones_in_colspace_product(const Graph& a, const Graph& b);

Graph lattice4();    // 2K2 x 2K2, the 4x4 lattice graph
Graph shrikhande();  // Seidel switch of lattice4 at its diagonal coclique
Graph clebsch();     // 2K2 x K4

// Registry: lattice4, shrikhande, clebsch, g-3, g'-3, g+3, g'+3.
Graph named_graph(std::string_view name);

enum class HeadKind { K1, TwoK2, Lattice4, NormalizedHadamard };

// Recipe for the iterated-product construction: a product of floor(m/3)
// 64-vertex factor graphs behind a small head graph determined by m mod 3.
struct ProductPlan {
  Family family = Family::P0;
  std::size_t m = 0;
  std::vector<std::size_t> factor_ranks;
  HeadKind head = HeadKind::K1;
};

Graph head_graph(const ProductPlan& plan);
std::size_t theorem_expected_rank(const ProductPlan& plan);

// Validates the plan against the factors, builds the left-associated product
// and verifies the resulting rank and strongly-regular parameters before
// returning the graph. P0 factors are 64-vertex graphs with an isolated
// vertex whose deletion leaves a (63,32,16,16) graph; P+/P- factors are
// 64-vertex strongly regular graphs with 1 in their GF(2) column space.
Graph theorem_main_construct(const ProductPlan& plan, const std::vector<Graph>& factors);

}  // namespace srgswitch
