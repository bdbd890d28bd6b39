#include "srgswitch/graph.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <unordered_set>

namespace srgswitch {

namespace {

constexpr std::size_t kWordBits = 64;

void validate_labels(const std::vector<std::string>& labels, std::size_t n) {
  if (labels.size() != n)
    throw std::invalid_argument("label count does not match the vertex count");
  std::unordered_set<std::string> seen;
  for (const auto& l : labels)
    if (!seen.insert(l).second)
      throw std::invalid_argument("duplicate vertex label \"" + l + "\"");
}

}  // namespace

std::string family_name(Family f) {
  switch (f) {
    case Family::P0: return "P0";
    case Family::Pplus: return "P+";
    case Family::Pminus: return "P-";
  }
  throw std::logic_error("family_name: bad enum value");
}

Family parse_family(std::string_view name) {
  std::string s(name);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s == "p0") return Family::P0;
  if (s == "p+" || s == "pplus" || s == "p-plus") return Family::Pplus;
  if (s == "p-" || s == "pminus" || s == "p-minus") return Family::Pminus;
  throw std::invalid_argument("unknown parameter family \"" + std::string(name) + "\"");
}

Graph from_adjacency(F2Matrix adj, std::optional<std::vector<std::string>> labels) {
  if (adj.rows != adj.cols) throw std::invalid_argument("adjacency matrix must be square");
  if (!adj.is_symmetric()) throw std::invalid_argument("adjacency matrix must be symmetric");
  if (!adj.has_zero_diagonal())
    throw std::invalid_argument("adjacency matrix must have a zero diagonal");
  if (labels) validate_labels(*labels, adj.rows);
  return Graph{std::move(adj), std::move(labels)};
}

Graph two_k2() {
  F2Matrix adj(4, 4);
  adj.set(0, 1, true);
  adj.set(1, 0, true);
  adj.set(2, 3, true);
  adj.set(3, 2, true);
  return Graph{std::move(adj), std::vector<std::string>{"1", "2", "3", "4"}};
}

Graph k4() {
  F2Matrix adj(4, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      if (i != j) adj.set(i, j, true);
  return Graph{std::move(adj), std::vector<std::string>{"1", "2", "3", "4"}};
}

Graph k1() { return Graph{F2Matrix(1, 1), std::vector<std::string>{"1"}}; }

Graph sp(std::size_t m) {
  if (m == 0 || m > 16) throw std::invalid_argument("sp: m must be between 1 and 16");
  const std::size_t dim = 2 * m;
  const std::size_t n = (std::size_t(1) << dim) - 1;
  // The coordinate string x1..x_2m is read most-significant-first, so vertex i
  // carries the vector with integer value i+1 and coordinate pairs
  // (x_{2i-1}, x_{2i}) are adjacent bit pairs of that value.
  const std::uint64_t dim_mask = (dim == 64) ? ~0ull : (1ull << dim) - 1;
  const std::uint64_t lo_bits = 0x5555555555555555ull & dim_mask;
  const std::uint64_t hi_bits = 0xaaaaaaaaaaaaaaaaull & dim_mask;
  auto pair_swap = [&](std::uint64_t v) {
    return ((v & lo_bits) << 1) | ((v & hi_bits) >> 1);
  };
  F2Matrix adj(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t u = i + 1;
    for (std::size_t j = i + 1; j < n; ++j) {
      const std::uint64_t v = j + 1;
      if (std::popcount(u & pair_swap(v)) & 1) {
        adj.set(i, j, true);
        adj.set(j, i, true);
      }
    }
  }
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::string s(dim, '0');
    for (std::size_t b = 0; b < dim; ++b)
      if ((i + 1) >> (dim - 1 - b) & 1) s[b] = '1';
    labels[i] = std::move(s);
  }
  return Graph{std::move(adj), std::move(labels)};
}

std::optional<SrgParams> check_srg(const Graph& g) {
  const std::size_t n = g.order();
  if (n < 2) throw std::invalid_argument("check_srg: graph must have at least 2 vertices");
  const std::size_t k = g.degree(0);
  for (std::size_t v = 1; v < n; ++v)
    if (g.degree(v) != k) return std::nullopt;
  // Entrywise form of A^2 = kI + lambda*A + mu*(J-I-A): the common-neighbour
  // count of every adjacent pair is lambda and of every non-adjacent pair mu.
  std::optional<std::size_t> lambda, mu;
  const std::size_t w = g.adj.words_per_row;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const std::size_t common = and_popcount(g.adj.row(i), g.adj.row(j), w);
      std::optional<std::size_t>& slot = g.adjacent(i, j) ? lambda : mu;
      if (!slot)
        slot = common;
      else if (*slot != common)
        return std::nullopt;
    }
  if (!lambda || !mu) return std::nullopt;  // complete or empty graph
  return SrgParams{n, k, *lambda, *mu};
}

SrgParams srg_params(Family family, std::size_t m) {
  if (family == Family::P0) {
    if (m < 2 || m > 30) throw std::invalid_argument("srg_params: P0 requires 2 <= m <= 30");
    const std::size_t q = std::size_t(1) << (2 * m);
    return SrgParams{q - 1, q / 2, q / 4, q / 4};
  }
  if (m < 1 || m > 30) throw std::invalid_argument("srg_params: m must be between 1 and 30");
  const std::size_t q = std::size_t(1) << (2 * m);
  const std::size_t h = std::size_t(1) << (m - 1);
  if (family == Family::Pplus) return SrgParams{q, q / 2 + h, q / 4 + h, q / 4 + h};
  return SrgParams{q, q / 2 - h, q / 4 - h, q / 4 - h};
}

std::pair<std::size_t, std::size_t> feasible_2rank_interval(Family family, std::size_t m) {
  const std::size_t h = std::size_t(1) << (m - 1);
  if (family == Family::P0) {
    if (m < 2 || m > 30)
      throw std::invalid_argument("feasible_2rank_interval: P0 requires 2 <= m <= 30");
    return {2 * m, (std::size_t(1) << (2 * m - 1)) - h - 2};
  }
  if (m < 1 || m > 30)
    throw std::invalid_argument("feasible_2rank_interval: m must be between 1 and 30");
  return {2 * m + 2, (std::size_t(1) << (2 * m - 1)) - h};
}

bool srg_identity_holds(const SrgParams& p) {
  if (p.k < p.lambda + 1 || p.n < p.k + 1) return false;
  return p.k * (p.k - p.lambda - 1) == (p.n - p.k - 1) * p.mu;
}

Graph add_isolated(const Graph& g) {
  const std::size_t n = g.order();
  F2Matrix adj(n + 1, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t* src = g.adj.row(i);
    std::uint64_t* dst = adj.row(i);
    for (std::size_t k = 0; k < g.adj.words_per_row; ++k) dst[k] = src[k];
  }
  std::optional<std::vector<std::string>> labels = g.labels;
  if (labels) {
    // Prefer the all-zero string when the labels are uniform-width coordinate
    // strings (the new vertex is then the zero vector); otherwise synthesize.
    std::string fresh;
    const bool uniform = !labels->empty() &&
                         std::all_of(labels->begin(), labels->end(), [&](const std::string& l) {
                           return l.size() == labels->front().size();
                         });
    fresh = uniform ? std::string(labels->front().size(), '0') : "v" + std::to_string(n);
    while (std::find(labels->begin(), labels->end(), fresh) != labels->end()) fresh += "'";
    labels->push_back(std::move(fresh));
  }
  return Graph{std::move(adj), std::move(labels)};
}

Graph drop_vertex(const Graph& g, std::size_t v) {
  const std::size_t n = g.order();
  if (v >= n) throw std::invalid_argument("drop_vertex: vertex index out of range");
  F2Matrix adj(n - 1, n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    if (i == v) continue;
    const std::size_t di = i < v ? i : i - 1;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == v || !g.adj.get(i, j)) continue;
      adj.set(di, j < v ? j : j - 1, true);
    }
  }
  std::optional<std::vector<std::string>> labels;
  if (g.labels) {
    std::vector<std::string> kept;
    kept.reserve(n - 1);
    for (std::size_t i = 0; i < n; ++i)
      if (i != v) kept.push_back((*g.labels)[i]);
    labels = std::move(kept);
  }
  return Graph{std::move(adj), std::move(labels)};
}

std::string graph6_encode(const Graph& g) {
  const std::size_t n = g.order();
  std::string out;
  if (n <= 62) {
    out.push_back(static_cast<char>(63 + n));
  } else if (n <= 258047) {
    out.push_back(126);
    for (int shift = 12; shift >= 0; shift -= 6)
      out.push_back(static_cast<char>(63 + ((n >> shift) & 63)));
  } else if (n <= 68719476735ull) {
    out.push_back(126);
    out.push_back(126);
    for (int shift = 30; shift >= 0; shift -= 6)
      out.push_back(static_cast<char>(63 + ((n >> shift) & 63)));
  } else {
    throw std::invalid_argument("graph6_encode: graph too large for the format");
  }
  // upper triangle in column order, packed into 6-bit groups, zero padded
  unsigned group = 0;
  unsigned filled = 0;
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = 0; i < j; ++i) {
      group = (group << 1) | (g.adj.get(i, j) ? 1u : 0u);
      if (++filled == 6) {
        out.push_back(static_cast<char>(63 + group));
        group = 0;
        filled = 0;
      }
    }
  if (filled) out.push_back(static_cast<char>(63 + (group << (6 - filled))));
  return out;
}

Graph graph6_decode(std::string_view bytes) {
  constexpr std::string_view header = ">>graph6<<";
  if (bytes.substr(0, header.size()) == header) bytes.remove_prefix(header.size());
  while (!bytes.empty() && (bytes.back() == '\n' || bytes.back() == '\r')) bytes.remove_suffix(1);
  if (bytes.empty()) throw std::runtime_error("graph6: empty input");

  auto need = [&](std::size_t count) {
    if (bytes.size() < count) throw std::runtime_error("graph6: truncated input");
  };
  auto six = [&](std::size_t pos) -> std::size_t {
    const unsigned char c = static_cast<unsigned char>(bytes[pos]);
    if (c < 63 || c > 126) throw std::runtime_error("graph6: byte out of range");
    return c - 63;
  };

  std::size_t n = 0, pos = 0;
  if (six(0) < 63) {
    n = six(0);
    pos = 1;
  } else if (bytes.size() >= 2 && six(1) < 63) {
    need(4);
    n = (six(1) << 12) | (six(2) << 6) | six(3);
    pos = 4;
  } else {
    need(8);
    for (std::size_t k = 2; k < 8; ++k) n = (n << 6) | six(k);
    pos = 8;
  }

  const std::size_t tri_bits = n < 2 ? 0 : n * (n - 1) / 2;
  const std::size_t body = (tri_bits + 5) / 6;
  if (bytes.size() - pos < body) throw std::runtime_error("graph6: truncated input");
  if (bytes.size() - pos > body) throw std::runtime_error("graph6: trailing data after graph");

  F2Matrix adj(n, n);
  std::size_t bit = 0;
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = 0; i < j; ++i, ++bit) {
      const std::size_t value = six(pos + bit / 6);
      if ((value >> (5 - bit % 6)) & 1) {
        adj.set(i, j, true);
        adj.set(j, i, true);
      }
    }
  // zero padding is part of the format
  if (tri_bits % 6) {
    const std::size_t value = six(pos + body - 1);
    if (value & ((std::size_t(1) << (6 - tri_bits % 6)) - 1))
      throw std::runtime_error("graph6: nonzero padding bits");
  }
  return from_adjacency(std::move(adj));
}

std::string canonical_label(std::string_view label) {
  std::string out;
  out.reserve(label.size());
  for (char c : label)
    if (c != '(' && c != ')' && c != ' ') out.push_back(c);
  return out;
}

std::size_t label_index(const Graph& g, std::string_view label) {
  if (!g.labels) throw std::invalid_argument("label_index: graph has no labels");
  const std::string key = canonical_label(label);
  for (std::size_t i = 0; i < g.labels->size(); ++i)
    if ((*g.labels)[i] == key) return i;
  throw std::out_of_range("unknown vertex label \"" + std::string(label) + "\"");
}

bool ones_in_colspace(const Graph& g) { return in_colspace(g.adj, ones_vector(g.order())); }

}  // namespace srgswitch
