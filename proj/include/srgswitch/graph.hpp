#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "srgswitch/f2matrix.hpp"

namespace srgswitch {

// Simple graph: symmetric GF(2) adjacency matrix with zero diagonal, plus
// optional vertex labels (pairwise distinct when present).
struct Graph {
  F2Matrix adj;
  std::optional<std::vector<std::string>> labels;

  std::size_t order() const { return adj.rows; }
  bool adjacent(std::size_t u, std::size_t v) const { return adj.get(u, v); }
  std::size_t degree(std::size_t v) const { return adj.row_popcount(v); }
};

struct SrgParams {
  std::size_t n = 0, k = 0, lambda = 0, mu = 0;
  friend bool operator==(const SrgParams&, const SrgParams&) = default;
};

// Parameter families of the two-power strongly regular graphs handled here:
// P0(m)     = (4^m - 1, 2*4^(m-1), 4^(m-1), 4^(m-1))
// Pplus(m)  = (4^m, 2*4^(m-1) + 2^(m-1), 4^(m-1) + 2^(m-1), 4^(m-1) + 2^(m-1))
// Pminus(m) = the same with the sign flipped
enum class Family { P0, Pplus, Pminus };

std::string family_name(Family f);
Family parse_family(std::string_view name);

// Validates squareness, symmetry, zero diagonal and label consistency.
Graph from_adjacency(F2Matrix adj, std::optional<std::vector<std::string>> labels = std::nullopt);

Graph two_k2();  // vertices 1..4, edges {1,2} and {3,4}
Graph k4();
Graph k1();

// Symplectic graph over GF(2)^(2m): vertices are the nonzero vectors ordered
// by the integer value of their coordinate string read most-significant-first,
// adjacent when the standard symplectic form evaluates to 1. Labels are the
// coordinate strings.
Graph sp(std::size_t m);

// Exact integer test of A^2 = kI + lambda*A + mu*(J - I - A); returns nullopt
// when no (k, lambda, mu) fits, including complete and empty graphs where
// lambda or mu is undetermined.
std::optional<SrgParams> check_srg(const Graph& g);

SrgParams srg_params(Family family, std::size_t m);

// Inclusive [lo, hi] range of GF(2) ranks attainable within the family.
std::pair<std::size_t, std::size_t> feasible_2rank_interval(Family family, std::size_t m);

// k(k - lambda - 1) = (n - k - 1) mu
bool srg_identity_holds(const SrgParams& p);

Graph add_isolated(const Graph& g);
Graph drop_vertex(const Graph& g, std::size_t v);

// graph6 interchange format (labels do not survive the round trip)
std::string graph6_encode(const Graph& g);
Graph graph6_decode(std::string_view bytes);

// Strips '(', ')' and spaces so that "(1, 2, 3)" and "1,2,3" coincide.
std::string canonical_label(std::string_view label);

// Index of the vertex carrying `label` (after canonicalisation).
std::size_t label_index(const Graph& g, std::string_view label);

// Whether the all-ones vector lies in the GF(2) column space of the adjacency matrix.
bool ones_in_colspace(const Graph& g);

}  // namespace srgswitch
