#pragma once

#include <optional>
#include <vector>

#include "srgswitch/f2matrix.hpp"
#include "srgswitch/graph.hpp"

namespace srgswitch {

// Subset of the vertex set {0, ..., universe-1}; members sorted and distinct.
struct VertexSet {
  std::vector<std::size_t> members;
  std::size_t universe = 0;

  std::size_t size() const { return members.size(); }
  friend bool operator==(const VertexSet&, const VertexSet&) = default;
};

VertexSet make_vertex_set(std::vector<std::size_t> members, std::size_t universe);
F2Vector set_mask(const VertexSet& s);

// Outcome of testing W as a Godsil-McKay switching set: the induced subgraph
// is regular and every outside vertex sees |W|, |W|/2 or 0 of its vertices.
struct GmClassification {
  VertexSet inside;
  std::vector<std::size_t> full, half, zero;
  std::size_t induced_degree = 0;
};

// Complements the edges between X and its complement.
Graph seidel_switch(const Graph& g, const VertexSet& x);

// Seidel switch with respect to the neighbourhood of x, which isolates x.
Graph seidel_isolate(const Graph& g, std::size_t x);

// nullopt when W is not a valid switching set. |W| must be even and >= 2.
std::optional<GmClassification> classify_gm(const Graph& g, const VertexSet& w);

// Complements the W-neighbourhood of every half-type outside vertex.
Graph gm_switch(const Graph& g, const VertexSet& w);

// rank2 after switching minus rank2 before; always in {-2, 0, +2} because the
// switch adds a symmetric rank-2 perturbation over GF(2).
int rank_delta(const Graph& g, const VertexSet& w);

}  // namespace srgswitch
