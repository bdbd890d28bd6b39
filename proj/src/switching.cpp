#include "srgswitch/switching.hpp"

#include <algorithm>
#include <stdexcept>

namespace srgswitch {

namespace {

F2Vector complement_mask(const F2Vector& mask) {
  F2Vector out(mask.len);
  for (std::size_t k = 0; k < mask.words.size(); ++k) out.words[k] = ~mask.words[k];
  if (mask.len % 64 != 0 && !out.words.empty())
    out.words.back() &= (1ull << (mask.len % 64)) - 1;
  return out;
}

void check_universe(const Graph& g, const VertexSet& s, const char* what) {
  if (s.universe != g.order())
    throw std::invalid_argument(std::string(what) + ": vertex set universe does not match the graph");
}

}  // namespace

VertexSet make_vertex_set(std::vector<std::size_t> members, std::size_t universe) {
  std::sort(members.begin(), members.end());
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (members[i] >= universe)
      throw std::invalid_argument("vertex set member out of range");
    if (i > 0 && members[i] == members[i - 1])
      throw std::invalid_argument("vertex set members must be distinct");
  }
  return VertexSet{std::move(members), universe};
}

F2Vector set_mask(const VertexSet& s) {
  F2Vector mask(s.universe);
  for (std::size_t v : s.members) mask.set(v, true);
  return mask;
}

Graph seidel_switch(const Graph& g, const VertexSet& x) {
  check_universe(g, x, "seidel_switch");
  const std::size_t n = g.order();
  if (x.members.empty() || x.members.size() == n)
    throw std::invalid_argument("seidel_switch: switching set must be a nonempty proper subset");
  const F2Vector inside = set_mask(x);
  const F2Vector outside = complement_mask(inside);
  Graph out = g;
  // XOR row v with the characteristic vector of the other side; the row's own
  // bit is never touched, so the diagonal stays zero.
  for (std::size_t v = 0; v < n; ++v) {
    const F2Vector& other = inside.get(v) ? outside : inside;
    std::uint64_t* row = out.adj.row(v);
    for (std::size_t k = 0; k < out.adj.words_per_row; ++k) row[k] ^= other.words[k];
  }
  return out;
}

Graph seidel_isolate(const Graph& g, std::size_t x) {
  const std::size_t n = g.order();
  if (x >= n) throw std::invalid_argument("seidel_isolate: vertex index out of range");
  const std::size_t deg = g.degree(x);
  if (deg == 0) throw std::invalid_argument("seidel_isolate: vertex is already isolated");
  if (deg == n - 1)
    throw std::invalid_argument("seidel_isolate: vertex is adjacent to every other vertex");
  std::vector<std::size_t> nbrs;
  nbrs.reserve(deg);
  for (std::size_t v = 0; v < n; ++v)
    if (g.adjacent(x, v)) nbrs.push_back(v);
  return seidel_switch(g, make_vertex_set(std::move(nbrs), n));
}

std::optional<GmClassification> classify_gm(const Graph& g, const VertexSet& w) {
  check_universe(g, w, "classify_gm");
  const std::size_t size = w.members.size();
  if (size % 2 != 0) throw std::invalid_argument("classify_gm: |W| must be even");
  if (size < 2) throw std::invalid_argument("classify_gm: |W| must contain at least 2 vertices");
  const F2Vector mask = set_mask(w);
  const std::size_t words = g.adj.words_per_row;

  const std::size_t d0 = and_popcount(g.adj.row(w.members[0]), mask.words.data(), words);
  for (std::size_t i = 1; i < size; ++i)
    if (and_popcount(g.adj.row(w.members[i]), mask.words.data(), words) != d0) return std::nullopt;

  GmClassification c;
  const std::size_t half = size / 2;
  for (std::size_t v = 0; v < g.order(); ++v) {
    if (mask.get(v)) continue;
    const std::size_t cnt = and_popcount(g.adj.row(v), mask.words.data(), words);
    if (cnt == size)
      c.full.push_back(v);
    else if (cnt == half)
      c.half.push_back(v);
    else if (cnt == 0)
      c.zero.push_back(v);
    else
      return std::nullopt;
  }
  c.inside = w;
  c.induced_degree = d0;
  return c;
}

Graph gm_switch(const Graph& g, const VertexSet& w) {
  auto c = classify_gm(g, w);
  if (!c)
    throw std::invalid_argument("gm_switch: not a valid switching set for this graph");
  Graph out = g;
  const F2Vector w_mask = set_mask(w);
  F2Vector half_mask(g.order());
  for (std::size_t v : c->half) half_mask.set(v, true);
  // complement the W-neighbourhood of every half vertex, symmetrically;
  // half vertices are outside W, so no diagonal bit is touched
  for (std::size_t v : c->half) {
    std::uint64_t* row = out.adj.row(v);
    for (std::size_t k = 0; k < out.adj.words_per_row; ++k) row[k] ^= w_mask.words[k];
  }
  for (std::size_t u : w.members) {
    std::uint64_t* row = out.adj.row(u);
    for (std::size_t k = 0; k < out.adj.words_per_row; ++k) row[k] ^= half_mask.words[k];
  }
  return out;
}

int rank_delta(const Graph& g, const VertexSet& w) {
  const Graph switched = gm_switch(g, w);
  return static_cast<int>(rank2(switched.adj)) - static_cast<int>(rank2(g.adj));
}

}  // namespace srgswitch
