// Command-line front end for the strongly-regular-graph switching library.
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "srgswitch/graph.hpp"
#include "srgswitch/hadamard.hpp"
#include "srgswitch/product.hpp"
#include "srgswitch/search.hpp"
#include "srgswitch/switching.hpp"

using nlohmann::json;
using namespace srgswitch;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << text;
}

// ---- shared flag groups ---------------------------------------------------

struct GraphInput {
  std::string construct;
  std::size_t m = 0;
  std::string g6_path;
};

void add_graph_input(CLI::App* cmd, GraphInput& in) {
  auto* c = cmd->add_option(
      "--construct", in.construct,
      "named graph: sp3, 2k2, k4, k1, lattice4, shrikhande, clebsch, g-3, g'-3, g+3, g'+3 "
      "(or 'sp' together with --m)");
  cmd->add_option("--m", in.m, "order parameter for --construct sp");
  auto* g = cmd->add_option("--g6", in.g6_path, "read the graph from a graph6 file");
  c->excludes(g);
  g->excludes(c);
}

Graph load_graph(const GraphInput& in) {
  if (!in.construct.empty()) {
    std::string name = in.construct;
    if (name == "sp" || name == "Sp" || name == "SP") {
      if (in.m == 0) throw std::invalid_argument("--construct sp requires --m");
      name += std::to_string(in.m);
    } else if (in.m != 0) {
      throw std::invalid_argument("--m applies only to --construct sp");
    }
    return resolve_named(name);
  }
  if (!in.g6_path.empty()) return graph6_decode(read_file(in.g6_path));
  throw std::invalid_argument("no input graph: pass --construct or --g6");
}

struct SetInput {
  std::string labels;   // semicolon-separated vertex labels
  std::string indices;  // comma-separated vertex indices
};

void add_set_input(CLI::App* cmd, SetInput& in) {
  auto* l = cmd->add_option("--set", in.labels,
                            "switching set as semicolon-separated labels, e.g. "
                            "\"1,1,1; 1,1,3; 2,2,1; 2,2,3\"");
  auto* i = cmd->add_option("--indices", in.indices,
                            "switching set as comma-separated vertex indices, e.g. 0,1,4,5");
  l->excludes(i);
  i->excludes(l);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : text) {
    if (ch == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  parts.push_back(cur);
  return parts;
}

VertexSet parse_set(const Graph& g, const SetInput& in) {
  std::vector<std::size_t> members;
  if (!in.labels.empty()) {
    for (const std::string& token : split(in.labels, ';'))
      members.push_back(label_index(g, token));
  } else if (!in.indices.empty()) {
    for (const std::string& token : split(in.indices, ',')) {
      std::size_t pos = 0;
      const unsigned long v = std::stoul(token, &pos);
      while (pos < token.size() && token[pos] == ' ') ++pos;
      if (pos != token.size()) throw std::invalid_argument("bad vertex index: " + token);
      members.push_back(v);
    }
  } else {
    throw std::invalid_argument("no switching set: pass --set or --indices");
  }
  return make_vertex_set(std::move(members), g.order());
}

std::size_t resolve_vertex(const Graph& g, const std::string& token) {
  if (g.labels) {
    try {
      return label_index(g, token);
    } catch (const std::out_of_range&) {
      // fall through to numeric parsing
    }
  }
  try {
    std::size_t pos = 0;
    const unsigned long v = std::stoul(token, &pos);
    if (pos == token.size() && v < g.order()) return v;
  } catch (const std::exception&) {
  }
  throw std::invalid_argument("unknown vertex: " + token);
}

// a factor is either a registry name or a path to a graph6 file
Graph resolve_factor(const std::string& token) {
  try {
    return resolve_named(token);
  } catch (const std::exception&) {
  }
  if (std::filesystem::exists(token)) return graph6_decode(read_file(token));
  throw std::invalid_argument("unknown graph name or file: " + token);
}

// ---- output helpers --------------------------------------------------------

json params_json(const std::optional<SrgParams>& p) {
  if (!p) return nullptr;
  return json::array({p->n, p->k, p->lambda, p->mu});
}

std::string params_text(const SrgParams& p) {
  return "(" + std::to_string(p.n) + ", " + std::to_string(p.k) + ", " +
         std::to_string(p.lambda) + ", " + std::to_string(p.mu) + ")";
}

json set_json(const Graph& g, const VertexSet& s) {
  json arr = json::array();
  for (std::size_t v : s.members) {
    if (g.labels)
      arr.push_back((*g.labels)[v]);
    else
      arr.push_back(v);
  }
  return arr;
}

std::string set_text(const Graph& g, const VertexSet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.members.size(); ++i) {
    if (i) out += "; ";
    out += g.labels ? (*g.labels)[s.members[i]] : std::to_string(s.members[i]);
  }
  return out + "}";
}

// graph6 goes to --out when given, otherwise to stdout (unless JSON mode,
// which always prints the result object to stdout)
void emit_graph(const Graph& g, bool as_json, const std::string& out_path, json extra = json::object()) {
  const std::string g6 = graph6_encode(g);
  if (!out_path.empty()) write_file(out_path, g6 + "\n");
  if (as_json) {
    json j = std::move(extra);
    j["n"] = g.order();
    j["graph6"] = g6;
    j["rank"] = rank2(g.adj);
    j["params"] = params_json(check_srg(g));
    std::cout << j.dump(2) << "\n";
  } else if (out_path.empty()) {
    std::cout << g6 << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"strongly regular graphs from graphical Hadamard matrices: "
               "GF(2) ranks, Seidel and Godsil-McKay switching, graph products "
               "and switching-table replay"};
  app.require_subcommand(1);
  app.fallthrough();
  bool as_json = false;
  app.add_flag("--json", as_json, "emit a machine-readable JSON object");

  GraphInput graph_in;
  SetInput set_in;
  std::string out_path, transcript_path, signs_path, isolate_token;
  std::string enumeration = "exhaustive", family_name_arg;
  std::uint64_t seed = 0;
  std::size_t budget = 5000, set_size = 4, plan_m = 0;
  std::int64_t max_rank = -1;
  std::vector<std::string> factor_tokens;
  std::vector<std::size_t> plan_ranks;
  std::string product_a, product_b;

  // construct -----------------------------------------------------------
  auto* c_construct = app.add_subcommand("construct", "build a named graph or re-encode a graph6 file");
  add_graph_input(c_construct, graph_in);
  c_construct->add_option("--out", out_path, "write graph6 to this file");
  c_construct->callback([&] {
    Graph g = load_graph(graph_in);
    json extra = json::object();
    if (g.labels) extra["labels"] = *g.labels;
    emit_graph(g, as_json, out_path, std::move(extra));
  });

  // rank ----------------------------------------------------------------
  auto* c_rank = app.add_subcommand("rank", "GF(2) rank of the adjacency matrix");
  add_graph_input(c_rank, graph_in);
  c_rank->callback([&] {
    const std::size_t r = rank2(load_graph(graph_in).adj);
    if (as_json)
      std::cout << json{{"rank", r}}.dump(2) << "\n";
    else
      std::cout << r << "\n";
  });

  // srg-check -----------------------------------------------------------
  auto* c_srg = app.add_subcommand("srg-check", "test strong regularity and report (n, k, lambda, mu)");
  add_graph_input(c_srg, graph_in);
  c_srg->callback([&] {
    Graph g = load_graph(graph_in);
    const auto p = check_srg(g);
    if (as_json) {
      std::cout << json{{"strongly_regular", p.has_value()}, {"params", params_json(p)}}.dump(2)
                << "\n";
    } else if (p) {
      std::cout << "strongly regular: " << params_text(*p) << "\n";
    } else {
      std::cout << "not strongly regular\n";
    }
  });

  // seidel-switch ---------------------------------------------------------
  auto* c_seidel = app.add_subcommand("seidel-switch",
                                      "Seidel switch at a vertex subset, or isolate one vertex");
  add_graph_input(c_seidel, graph_in);
  add_set_input(c_seidel, set_in);
  c_seidel->add_option("--isolate", isolate_token,
                       "switch with respect to the neighbourhood of this vertex (label or index)");
  c_seidel->add_option("--out", out_path, "write graph6 to this file");
  c_seidel->callback([&] {
    Graph g = load_graph(graph_in);
    const std::size_t before = rank2(g.adj);
    Graph switched = isolate_token.empty()
                         ? seidel_switch(g, parse_set(g, set_in))
                         : seidel_isolate(g, resolve_vertex(g, isolate_token));
    json extra = json::object();
    extra["rank_before"] = before;
    emit_graph(switched, as_json, out_path, std::move(extra));
  });

  // gm-switch -------------------------------------------------------------
  auto* c_gm = app.add_subcommand("gm-switch", "Godsil-McKay switch at a vertex subset");
  add_graph_input(c_gm, graph_in);
  add_set_input(c_gm, set_in);
  c_gm->add_option("--out", out_path, "write graph6 to this file");
  c_gm->callback([&] {
    Graph g = load_graph(graph_in);
    const std::size_t before = rank2(g.adj);
    const VertexSet w = parse_set(g, set_in);
    Graph switched = gm_switch(g, w);
    json extra = json::object();
    extra["rank_before"] = before;
    extra["rank_delta"] = static_cast<std::int64_t>(rank2(switched.adj)) -
                          static_cast<std::int64_t>(before);
    emit_graph(switched, as_json, out_path, std::move(extra));
  });

  // gm-validate -------------------------------------------------------------
  auto* c_gmv = app.add_subcommand("gm-validate",
                                   "check whether a vertex subset is a valid switching set");
  add_graph_input(c_gmv, graph_in);
  add_set_input(c_gmv, set_in);
  c_gmv->callback([&] {
    Graph g = load_graph(graph_in);
    const VertexSet w = parse_set(g, set_in);
    const auto cls = classify_gm(g, w);
    if (!cls) throw std::runtime_error("not a valid GM switching set");
    if (as_json) {
      json j{{"valid", true},
             {"induced_degree", cls->induced_degree},
             {"full", cls->full},
             {"half", cls->half},
             {"zero", cls->zero},
             {"rank_delta", rank_delta(g, w)}};
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << "valid: induced degree " << cls->induced_degree << ", outside full "
                << cls->full.size() << ", half " << cls->half.size() << ", zero "
                << cls->zero.size() << ", rank delta " << rank_delta(g, w) << "\n";
    }
  });

  // product -----------------------------------------------------------------
  auto* c_product = app.add_subcommand("product", "graph product of two factors");
  c_product->add_option("--a", product_a, "first factor: registry name or graph6 file")->required();
  c_product->add_option("--b", product_b, "second factor: registry name or graph6 file")->required();
  c_product->add_option("--out", out_path, "write graph6 to this file");
  c_product->callback([&] {
    Graph a = resolve_factor(product_a);
    Graph b = resolve_factor(product_b);
    Graph p = seidel_product(a, b);
    json extra = json::object();
    extra["predicted_rank"] = predicted_2rank(a, b);
    emit_graph(p, as_json, out_path, std::move(extra));
  });

  // predict-rank --------------------------------------------------------------
  auto* c_predict = app.add_subcommand("predict-rank",
                                       "product 2-rank from factor ranks and column spaces");
  c_predict->add_option("--a", product_a, "first factor: registry name or graph6 file")->required();
  c_predict->add_option("--b", product_b, "second factor: registry name or graph6 file")->required();
  c_predict->callback([&] {
    Graph a = resolve_factor(product_a);
    Graph b = resolve_factor(product_b);
    const std::size_t r = predicted_2rank(a, b);
    if (as_json)
      std::cout << json{{"predicted_rank", r},
                        {"ones_in_colspace", ones_in_colspace_product(a, b)}}
                       .dump(2)
                << "\n";
    else
      std::cout << r << "\n";
  });

  // search --------------------------------------------------------------------
  auto* c_search = app.add_subcommand("search",
                                      "greedy 2-rank chase through switching sets");
  add_graph_input(c_search, graph_in);
  c_search->add_option("--seed", seed, "random seed (default 0)");
  c_search->add_option("--budget", budget,
                       "consecutive rank-preserving switches before giving up (default 5000)");
  c_search->add_option("--max-rank", max_rank, "stop once the rank reaches this value");
  c_search->add_option("--set-size", set_size, "switching-set size (default 4)");
  c_search->add_option("--enumeration", enumeration, "candidate order: exhaustive or random")
      ->check(CLI::IsMember({"exhaustive", "random"}));
  c_search->add_option("--out", out_path, "write the final graph6 to this file");
  c_search->callback([&] {
    Graph g = load_graph(graph_in);
    SearchConfig cfg;
    cfg.set_size = set_size;
    cfg.budget_without_increase = budget;
    cfg.rng_seed = seed;
    if (max_rank >= 0) cfg.max_rank = static_cast<std::size_t>(max_rank);
    cfg.enumeration = enumeration == "random" ? Enumeration::Random : Enumeration::Exhaustive;
    const SearchReport r = search_increase(g, cfg);
    const std::string g6 = graph6_encode(r.final_graph);
    if (!out_path.empty()) write_file(out_path, g6 + "\n");
    if (as_json) {
      json path = json::array();
      for (const SearchStep& s : r.path)
        path.push_back(json{{"set", set_json(r.final_graph, s.set)},
                            {"rank", s.rank_after},
                            {"delta", s.delta}});
      std::cout << json{{"path", std::move(path)},
                        {"final_rank", r.final_rank},
                        {"terminated_by", termination_name(r.terminated_by)},
                        {"ones_in_colspace", r.ones_in_colspace_final},
                        {"graph6", g6}}
                       .dump(2)
                << "\n";
      return;
    }
    for (std::size_t i = 0; i < r.path.size(); ++i) {
      const SearchStep& s = r.path[i];
      std::cout << "step " << (i + 1) << ": " << (s.delta > 0 ? "+" : "") << s.delta
                << " -> rank " << s.rank_after << "  " << set_text(r.final_graph, s.set) << "\n";
    }
    std::cout << "terminated: " << termination_name(r.terminated_by) << "\n";
    std::cout << "final rank: " << r.final_rank << "\n";
    std::cout << "ones in colspace: " << (r.ones_in_colspace_final ? "yes" : "no") << "\n";
  });

  // replay ---------------------------------------------------------------------
  auto* c_replay = app.add_subcommand("replay", "re-run a recorded switching sequence");
  c_replay->add_option("--transcript", transcript_path, "transcript JSON file")->required();
  c_replay->add_option("--out", out_path, "write the final graph6 to this file");
  c_replay->callback([&] {
    const Transcript t = load_transcript(transcript_path);
    const SearchReport r = replay(t);
    const std::string g6 = graph6_encode(r.final_graph);
    if (!out_path.empty()) write_file(out_path, g6 + "\n");
    if (as_json) {
      json ranks = json::array();
      for (const SearchStep& s : r.path) ranks.push_back(s.rank_after);
      std::cout << json{{"start", t.start},
                        {"ranks", std::move(ranks)},
                        {"final_rank", r.final_rank},
                        {"ones_in_colspace", r.ones_in_colspace_final},
                        {"params", params_json(check_srg(r.final_graph))},
                        {"graph6", g6}}
                       .dump(2)
                << "\n";
      return;
    }
    for (std::size_t i = 0; i < r.path.size(); ++i)
      std::cout << "step " << (i + 1) << ": rank " << r.path[i].rank_after << "\n";
    std::cout << "final rank: " << r.final_rank << "\n";
    std::cout << "ones in colspace: " << (r.ones_in_colspace_final ? "yes" : "no") << "\n";
  });

  // hadamard-check ----------------------------------------------------------------
  auto* c_had = app.add_subcommand("hadamard-check",
                                   "test the Hadamard, graphical, regular and normalized "
                                   "properties of a sign matrix");
  c_had->add_option("--signs", signs_path,
                    "sign-matrix text file: one row per line of '+'/'-' characters");
  add_graph_input(c_had, graph_in);
  c_had->callback([&] {
    const bool have_graph = !graph_in.construct.empty() || !graph_in.g6_path.empty();
    if (signs_path.empty() && !have_graph)
      throw std::invalid_argument("no input: pass --signs, --construct or --g6");
    if (!signs_path.empty() && have_graph)
      throw std::invalid_argument("pass either --signs or a graph input, not both");
    SignMatrix h;
    if (!signs_path.empty()) {
      h = sign_text_decode(read_file(signs_path));
    } else {
      h = hadamard_of(load_graph(graph_in)).matrix;
    }
    const bool hadamard = is_hadamard(h);
    const bool graphical = is_graphical(h);
    const bool regular = is_regular(h);
    const bool normalized = hadamard && is_normalized(h);
    std::optional<int> sign;
    if (hadamard && regular) {
      try {
        sign = row_sum_sign(h);
      } catch (const std::exception&) {
      }
    }
    if (as_json) {
      std::cout << json{{"order", h.order()},
                        {"hadamard", hadamard},
                        {"graphical", graphical},
                        {"regular", regular},
                        {"normalized", normalized},
                        {"row_sum_sign", sign ? json(*sign) : json(nullptr)}}
                       .dump(2)
                << "\n";
      return;
    }
    std::cout << "order: " << h.order() << "\n";
    std::cout << "hadamard: " << (hadamard ? "yes" : "no") << "\n";
    std::cout << "graphical: " << (graphical ? "yes" : "no") << "\n";
    std::cout << "regular: " << (regular ? "yes" : "no") << "\n";
    std::cout << "normalized: " << (normalized ? "yes" : "no") << "\n";
    if (sign) std::cout << "row sum sign: " << (*sign > 0 ? "+1" : "-1") << "\n";
  });

  // theorem4 -------------------------------------------------------------------
  auto* c_thm = app.add_subcommand("theorem4",
                                   "iterated-product construction for a target family, order "
                                   "exponent and factor list");
  c_thm->add_option("--family", family_name_arg, "P0, P+ or P-")->required();
  c_thm->add_option("--m", plan_m, "order exponent: the result has 4^m (P+/P-) or 4^m - 1 (P0) vertices")
      ->required();
  c_thm->add_option("--factor", factor_tokens,
                    "64-vertex factor, repeatable: registry name or graph6 file; a 63-vertex "
                    "P0-family graph is extended with an isolated vertex automatically");
  c_thm->add_option("--ranks", plan_ranks, "expected factor ranks (default: computed)")
      ->delimiter(',');
  c_thm->add_option("--out", out_path, "write graph6 to this file");
  c_thm->callback([&] {
    ProductPlan plan;
    plan.family = parse_family(family_name_arg);
    plan.m = plan_m;
    std::vector<Graph> factors;
    for (const std::string& token : factor_tokens) {
      Graph f = resolve_factor(token);
      if (plan.family == Family::P0 && f.order() == 63) f = add_isolated(f);
      factors.push_back(std::move(f));
    }
    if (!plan_ranks.empty())
      plan.factor_ranks = plan_ranks;
    else
      for (const Graph& f : factors) plan.factor_ranks.push_back(rank2(f.adj));
    const std::size_t rem = plan.m - 3 * (plan.m / 3);
    if (plan.family == Family::P0)
      plan.head = HeadKind::NormalizedHadamard;
    else
      plan.head = rem == 0 ? HeadKind::K1 : (rem == 1 ? HeadKind::TwoK2 : HeadKind::Lattice4);
    Graph g = theorem_main_construct(plan, factors);
    json extra = json::object();
    extra["family"] = family_name(plan.family);
    extra["m"] = plan.m;
    extra["expected_rank"] = theorem_expected_rank(plan);
    extra["family_params"] = params_json(srg_params(plan.family, plan.m));
    if (!as_json && out_path.empty()) {
      const auto p = check_srg(g);
      std::cout << "n: " << g.order() << "\n";
      std::cout << "rank: " << rank2(g.adj) << "\n";
      std::cout << "params: " << (p ? params_text(*p) : std::string("(isolated vertex present)"))
                << "\n";
      std::cout << "family params: " << params_text(srg_params(plan.family, plan.m)) << "\n";
      return;
    }
    emit_graph(g, as_json, out_path, std::move(extra));
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
