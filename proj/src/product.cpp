#include "srgswitch/product.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "srgswitch/hadamard.hpp"
#include "srgswitch/switching.hpp"

namespace srgswitch {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

std::size_t find_isolated(const Graph& g) {
  for (std::size_t v = 0; v < g.order(); ++v)
    if (g.degree(v) == 0) return v;
  throw std::invalid_argument("expected a graph with an isolated vertex");
}

[[noreturn]] void plan_error(const std::string& msg) {
  throw std::invalid_argument("product plan: " + msg);
}

}  // namespace

Graph seidel_product(const Graph& a, const Graph& b) {
  const std::size_t na = a.order(), nb = b.order();
  F2Matrix adj = add2(kron2(a.adj, all_ones(nb, nb)), kron2(all_ones(na, na), b.adj));
  std::optional<std::vector<std::string>> labels;
  if (a.labels && b.labels) {
    labels.emplace();
    labels->reserve(na * nb);
    for (const auto& la : *a.labels)
      for (const auto& lb : *b.labels) labels->push_back(la + "," + lb);
  }
  // symmetry and the zero diagonal follow from the two kron terms, but the
  // constructor re-checks them anyway
  return from_adjacency(std::move(adj), std::move(labels));
}

std::size_t predicted_2rank(const Graph& a, const Graph& b) {
  const std::size_t r = rank2(a.adj) + rank2(b.adj);
  return ones_in_colspace(a) && ones_in_colspace(b) ? r - 2 : r;
}

bool ones_in_colspace_product(const Graph& a, const Graph& b) {
  return ones_in_colspace(a) || ones_in_colspace(b);
}

Graph lattice4() { return seidel_product(two_k2(), two_k2()); }

Graph shrikhande() {
  Graph lat = lattice4();
  std::vector<std::size_t> diag;
  for (const char* l : {"1,1", "2,2", "3,3", "4,4"}) diag.push_back(label_index(lat, l));
  return seidel_switch(lat, make_vertex_set(std::move(diag), lat.order()));
}

Graph clebsch() { return seidel_product(two_k2(), k4()); }

Graph named_graph(std::string_view name) {
  const std::string key = lower(name);
  if (key == "lattice4") return lattice4();
  if (key == "shrikhande") return shrikhande();
  if (key == "clebsch") return clebsch();
  if (key == "g-3") return seidel_product(lattice4(), two_k2());
  if (key == "g+3") return seidel_product(lattice4(), k4());
  if (key == "g'-3") return seidel_product(shrikhande(), two_k2());
  if (key == "g'+3") return seidel_product(shrikhande(), k4());
  throw std::out_of_range("unknown graph name \"" + std::string(name) + "\"");
}

Graph head_graph(const ProductPlan& plan) {
  const std::size_t rem = plan.m - 3 * (plan.m / 3);
  switch (plan.head) {
    case HeadKind::K1:
      return k1();
    case HeadKind::TwoK2:
      return two_k2();
    case HeadKind::Lattice4:
      return lattice4();
    case HeadKind::NormalizedHadamard: {
      // graph of the order-4^rem normalized graphical Hadamard matrix
      SignMatrix h(1);  // the 1x1 matrix [+1]
      const SignMatrix base = normalize(h1());
      for (std::size_t i = 0; i < rem; ++i) h = kron(h, base);
      return graph_of(h);
    }
  }
  throw std::logic_error("head_graph: bad enum value");
}

std::size_t theorem_expected_rank(const ProductPlan& plan) {
  const std::size_t ell = plan.m / 3;
  std::size_t sum = 0;
  for (std::size_t r : plan.factor_ranks) sum += r;
  if (plan.family == Family::P0) return 2 * (plan.m - 3 * ell) + sum;
  if (plan.m == 3 * ell) return sum - 2 * ell + 2;
  const std::size_t head_rank = plan.m - 3 * ell == 1 ? 4 : 6;
  return head_rank + sum - 2 * ell;
}

Graph theorem_main_construct(const ProductPlan& plan, const std::vector<Graph>& factors) {
  const std::size_t ell = plan.m / 3;
  const std::size_t rem = plan.m - 3 * ell;
  if (plan.m == 0) plan_error("m must be positive");
  if (plan.family == Family::P0 && plan.m < 2) plan_error("P0 requires m >= 2");
  if (plan.factor_ranks.size() != ell)
    plan_error("expected " + std::to_string(ell) + " factor ranks, got " +
               std::to_string(plan.factor_ranks.size()));
  if (factors.size() != ell)
    plan_error("expected " + std::to_string(ell) + " factors, got " +
               std::to_string(factors.size()));

  // head shape is dictated by m mod 3
  if (plan.family == Family::P0) {
    if (plan.head != HeadKind::NormalizedHadamard && !(plan.head == HeadKind::K1 && rem == 0))
      plan_error("P0 requires a normalized-Hadamard head");
  } else {
    const HeadKind want = rem == 0 ? HeadKind::K1 : (rem == 1 ? HeadKind::TwoK2 : HeadKind::Lattice4);
    if (plan.head != want) plan_error("head does not match m mod 3");
  }

  const std::size_t lo = plan.family == Family::P0 ? 6 : 8;
  const std::size_t hi = plan.family == Family::P0 ? 24 : 26;
  for (std::size_t r : plan.factor_ranks)
    if (r % 2 != 0 || r < lo || r > hi)
      plan_error("factor rank " + std::to_string(r) + " is outside the attainable range [" +
                 std::to_string(lo) + ", " + std::to_string(hi) + "]");

  const SrgParams p0_63 = srg_params(Family::P0, 3);
  std::size_t plus_factors = 0;
  for (std::size_t i = 0; i < ell; ++i) {
    const Graph& f = factors[i];
    if (rank2(f.adj) != plan.factor_ranks[i])
      plan_error("factor " + std::to_string(i + 1) + " has rank " + std::to_string(rank2(f.adj)) +
                 ", plan says " + std::to_string(plan.factor_ranks[i]));
    if (plan.family == Family::P0) {
      if (f.order() != 64) plan_error("P0 factors must have 64 vertices");
      std::size_t iso;
      try {
        iso = find_isolated(f);
      } catch (const std::invalid_argument&) {
        plan_error("factor " + std::to_string(i + 1) + " has no isolated vertex");
      }
      auto p = check_srg(drop_vertex(f, iso));
      if (!p || *p != p0_63)
        plan_error("factor " + std::to_string(i + 1) +
                   " minus its isolated vertex is not a (63,32,16,16) graph");
    } else {
      auto p = check_srg(f);
      if (!p || (*p != srg_params(Family::Pplus, 3) && *p != srg_params(Family::Pminus, 3)))
        plan_error("factor " + std::to_string(i + 1) + " is not strongly regular with m=3 parameters");
      if (*p == srg_params(Family::Pplus, 3)) ++plus_factors;
      if (!ones_in_colspace(f))
        plan_error("factor " + std::to_string(i + 1) +
                   " does not have the all-ones vector in its column space");
    }
  }
  if (plan.family != Family::P0) {
    // the parameter sign of the product is the parity of the plus factors
    const Family result = plus_factors % 2 == 1 ? Family::Pplus : Family::Pminus;
    if (result != plan.family)
      plan_error("factors yield " + family_name(result) + "(" + std::to_string(plan.m) +
                 "), plan says " + family_name(plan.family));
  }

  Graph g = head_graph(plan);
  for (const Graph& f : factors) g = seidel_product(g, f);

  const std::size_t expected = theorem_expected_rank(plan);
  const std::size_t got = rank2(g.adj);
  if (got != expected)
    throw std::runtime_error("product construction: expected rank " + std::to_string(expected) +
                             ", computed " + std::to_string(got));

  if (plan.family == Family::P0) {
    const auto p = check_srg(drop_vertex(g, find_isolated(g)));
    if (!p || *p != srg_params(Family::P0, plan.m))
      throw std::runtime_error("product construction: parameter check failed");
  } else {
    const auto p = check_srg(g);
    if (!p || *p != srg_params(plan.family, plan.m))
      throw std::runtime_error("product construction: parameter check failed");
  }
  return g;
}

}  // namespace srgswitch
