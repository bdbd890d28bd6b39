#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "srgswitch/search.hpp"

using namespace srgswitch;

namespace {

std::string data_path(const std::string& name) {
  return std::string(SRGSWITCH_DATA_DIR) + "/" + name;
}

std::vector<VertexSet> collect(GmSetStream stream) {
  std::vector<VertexSet> out;
  while (auto s = stream.next()) out.push_back(std::move(*s));
  return out;
}

std::vector<std::size_t> rank_column(const SearchReport& r) {
  std::vector<std::size_t> out;
  for (const SearchStep& s : r.path) out.push_back(s.rank_after);
  return out;
}

struct EnvGuard {
  std::string name;
  std::optional<std::string> old;
  EnvGuard(const std::string& var, const char* value) : name(var) {
    if (const char* prev = std::getenv(var.c_str())) old = prev;
    if (value)
      setenv(var.c_str(), value, 1);
    else
      unsetenv(var.c_str());
  }
  ~EnvGuard() {
    if (old)
      setenv(name.c_str(), old->c_str(), 1);
    else
      unsetenv(name.c_str());
  }
};

}  // namespace

TEST_CASE("transcript parsing and serialisation round trip") {
  const std::string text = R"({
    "start": "sp3",
    "steps": [
      {"set": ["100000", "010000", "101000", "011000"], "rank": 8},
      {"set": ["000010", "000001", "001010", "001001"], "rank": 10}
    ],
    "final_ones_in_colspace": true
  })";
  Transcript t = parse_transcript(text);
  CHECK(t.start == "sp3");
  REQUIRE(t.steps.size() == 2);
  CHECK(t.steps[0].set == std::vector<std::string>{"100000", "010000", "101000", "011000"});
  CHECK(t.steps[1].rank == 10);
  REQUIRE(t.final_ones_in_colspace.has_value());
  CHECK(*t.final_ones_in_colspace);
  CHECK(parse_transcript(transcript_to_json(t)) == t);

  Transcript bare = parse_transcript(R"({"start": "2k2", "steps": []})");
  CHECK(bare.steps.empty());
  CHECK(!bare.final_ones_in_colspace.has_value());
  CHECK(parse_transcript(transcript_to_json(bare)) == bare);
}

TEST_CASE("transcript parsing rejects malformed input") {
  CHECK_THROWS_AS(parse_transcript("not json"), std::invalid_argument);
  CHECK_THROWS_AS(parse_transcript("[1, 2]"), std::invalid_argument);
  CHECK_THROWS_AS(parse_transcript(R"({"steps": []})"), std::invalid_argument);
  CHECK_THROWS_AS(parse_transcript(R"({"start": "sp3"})"), std::invalid_argument);
  CHECK_THROWS_AS(parse_transcript(R"({"start": 3, "steps": []})"), std::invalid_argument);
  // sets must have exactly 4 labels
  CHECK_THROWS_AS(parse_transcript(R"({"start": "sp3", "steps": [{"set": ["a","b","c"], "rank": 8}]})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_transcript(R"({"start": "sp3", "steps": [{"set": ["a","b","c","d","e"], "rank": 8}]})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_transcript(R"({"start": "sp3", "steps": [{"set": ["a","b","c",4], "rank": 8}]})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_transcript(R"({"start": "sp3", "steps": [{"set": ["a","b","c","d"], "rank": -2}]})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_transcript(R"({"start": "sp3", "steps": [{"rank": 8}]})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      parse_transcript(R"({"start": "sp3", "steps": [], "final_ones_in_colspace": "yes"})"),
      std::invalid_argument);
  CHECK_THROWS_AS(load_transcript(data_path("missing.json")), std::runtime_error);
}

TEST_CASE("bundled transcripts load with the published shapes") {
  Transcript t1 = load_transcript(data_path("table1.json"));
  CHECK(t1.start == "sp3");
  CHECK(t1.steps.size() == 13);
  CHECK(t1.steps.back().rank == 24);

  for (const char* name : {"table2_left.json", "table2_right.json"}) {
    Transcript t = load_transcript(data_path(name));
    CHECK(t.steps.size() == 12);
    CHECK(t.steps.back().rank == 26);
    CHECK(t.final_ones_in_colspace == std::optional<bool>(true));
  }
  for (const char* name : {"table3_left.json", "table3_right.json"}) {
    Transcript t = load_transcript(data_path(name));
    CHECK(t.steps.size() == 15);
    CHECK(t.steps.back().rank == 26);
  }
  // expected ranks of the bundled tables are even and climb by 0 or +2
  for (const char* name : {"table1.json", "table2_left.json", "table2_right.json",
                           "table3_left.json", "table3_right.json"}) {
    Transcript t = load_transcript(data_path(name));
    std::size_t prev = rank2(resolve_named(t.start).adj);
    for (const TranscriptStep& s : t.steps) {
      CHECK(s.rank % 2 == 0);
      CHECK(s.rank >= prev);
      CHECK(s.rank - prev <= 2);
      prev = s.rank;
    }
  }
}

TEST_CASE("resolve_named covers the registry") {
  CHECK(resolve_named("sp3").order() == 63);
  CHECK(resolve_named("SP2").order() == 15);
  CHECK(resolve_named("2k2").order() == 4);
  CHECK(resolve_named("k4").order() == 4);
  CHECK(resolve_named("k1").order() == 1);
  CHECK(resolve_named("lattice4").order() == 16);
  CHECK(resolve_named("Shrikhande").order() == 16);
  CHECK(resolve_named("g'-3").order() == 64);
  CHECK(resolve_named("G+3").order() == 64);
  CHECK_THROWS(resolve_named("petersen"));
  CHECK_THROWS(resolve_named("sp0"));
  CHECK_THROWS(resolve_named("sp9"));
  CHECK_THROWS(resolve_named("sp3x"));
}

TEST_CASE("gm set stream rejects bad sizes") {
  CHECK_THROWS_AS(GmSetStream(two_k2(), 3), std::invalid_argument);
  CHECK_THROWS_AS(GmSetStream(two_k2(), 0), std::invalid_argument);
  // size exceeds the order
  Graph k2 = drop_vertex(drop_vertex(k4(), 3), 2);
  CHECK_THROWS_AS(GmSetStream(k2, 4), std::invalid_argument);
}

TEST_CASE("gm set stream on the empty graph yields every subset in lex order") {
  Graph empty = from_adjacency(F2Matrix(5, 5));
  std::vector<VertexSet> sets = collect(GmSetStream(empty, 4));
  REQUIRE(sets.size() == 5);
  CHECK(sets[0].members == std::vector<std::size_t>{0, 1, 2, 3});
  CHECK(sets[1].members == std::vector<std::size_t>{0, 1, 2, 4});
  CHECK(sets[2].members == std::vector<std::size_t>{0, 1, 3, 4});
  CHECK(sets[3].members == std::vector<std::size_t>{0, 2, 3, 4});
  CHECK(sets[4].members == std::vector<std::size_t>{1, 2, 3, 4});
}

TEST_CASE("gm set stream agrees with classify_gm on random graphs") {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 4 + rng() % 6;
    Graph g = oracle::random_graph(rng, n);
    for (std::size_t k : {std::size_t{2}, std::size_t{4}}) {
      if (k > n) continue;
      std::set<std::vector<std::size_t>> streamed;
      for (const VertexSet& s : collect(GmSetStream(g, k))) streamed.insert(s.members);
      // brute force over all k-subsets via bitmasks
      std::set<std::vector<std::size_t>> expected;
      for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        std::vector<std::size_t> members;
        for (std::size_t v = 0; v < n; ++v)
          if ((mask >> v) & 1) members.push_back(v);
        if (members.size() != k) continue;
        if (classify_gm(g, make_vertex_set(members, n)).has_value()) expected.insert(members);
      }
      CHECK(streamed == expected);
    }
  }
}

TEST_CASE("gm set stream on sp(3) contains the first published switching set") {
  Graph g = sp(3);
  const std::vector<std::size_t> wanted = {
      label_index(g, "010000"), label_index(g, "011000"),
      label_index(g, "100000"), label_index(g, "101000")};
  std::vector<std::size_t> sorted = wanted;
  std::sort(sorted.begin(), sorted.end());
  GmSetStream stream(g, 4);
  bool found = false;
  std::size_t count = 0;
  while (auto s = stream.next()) {
    ++count;
    if (s->members == sorted) found = true;
  }
  CHECK(found);
  CHECK(count > 0);
  MESSAGE("valid 4-sets in sp(3): ", count);
}

TEST_CASE("search rejects bad inputs") {
  // not strongly regular: a path on three vertices
  F2Matrix a(3, 3);
  a.set(0, 1, true);
  a.set(1, 0, true);
  a.set(1, 2, true);
  a.set(2, 1, true);
  Graph path3 = from_adjacency(std::move(a));
  CHECK_THROWS_AS(search_increase(path3, {}), std::invalid_argument);

  SearchConfig odd;
  odd.set_size = 3;
  CHECK_THROWS_AS(search_increase(two_k2(), odd), std::invalid_argument);

  SearchConfig toobig;
  toobig.set_size = 6;
  CHECK_THROWS_AS(search_increase(two_k2(), toobig), std::invalid_argument);

  SearchConfig nobudget;
  nobudget.budget_without_increase = 0;
  CHECK_THROWS_AS(search_increase(two_k2(), nobudget), std::invalid_argument);

  // random enumeration refuses to materialise C(255,4) candidates
  SearchConfig random_cfg;
  random_cfg.enumeration = Enumeration::Random;
  random_cfg.max_rank = 8;
  CHECK_THROWS_AS(search_increase(sp(4), random_cfg), std::invalid_argument);
}

TEST_CASE("search stops immediately when the target is already met") {
  SearchConfig cfg;
  cfg.max_rank = 6;
  SearchReport r = search_increase(sp(3), cfg);
  CHECK(r.path.empty());
  CHECK(r.final_rank == 6);
  CHECK(r.terminated_by == Termination::TargetReached);
  CHECK(r.final_graph.adj == sp(3).adj);
}

TEST_CASE("search finds a rank increase on sp(3)") {
  SearchConfig cfg;
  cfg.max_rank = 8;
  SearchReport r = search_increase(sp(3), cfg);
  REQUIRE(r.path.size() == 1);
  CHECK(r.path[0].delta == 2);
  CHECK(r.path[0].rank_after == 8);
  CHECK(r.final_rank == 8);
  CHECK(r.terminated_by == Termination::TargetReached);
  CHECK(rank2(r.final_graph.adj) == 8);
  CHECK(check_srg(r.final_graph) == SrgParams{63, 32, 16, 16});
}

TEST_CASE("search is deterministic, including across worker counts") {
  SearchConfig cfg;
  cfg.max_rank = 10;
  const SearchReport a = search_increase(sp(3), cfg);
  const SearchReport b = search_increase(sp(3), cfg);
  CHECK(a.path == b.path);
  CHECK(a.final_rank == b.final_rank);
  CHECK(a.terminated_by == b.terminated_by);
  CHECK(a.final_graph.adj == b.final_graph.adj);

  SearchReport serial = [&] {
    EnvGuard guard("SRGSWITCH_THREADS", "1");
    return search_increase(sp(3), cfg);
  }();
  SearchReport wide = [&] {
    EnvGuard guard("SRGSWITCH_THREADS", "4");
    return search_increase(sp(3), cfg);
  }();
  CHECK(serial.path == wide.path);
  CHECK(serial.final_graph.adj == wide.final_graph.adj);
  CHECK(a.path == serial.path);
}

TEST_CASE("random enumeration is seeded and reaches the target") {
  SearchConfig cfg;
  cfg.enumeration = Enumeration::Random;
  cfg.max_rank = 8;
  cfg.rng_seed = 7;
  SearchReport a = search_increase(sp(3), cfg);
  SearchReport b = search_increase(sp(3), cfg);
  CHECK(a.final_rank == 8);
  CHECK(a.path == b.path);
  CHECK(a.path.size() == 1);
  CHECK(check_srg(a.final_graph) == SrgParams{63, 32, 16, 16});
}

TEST_CASE("search exhausts its budget on 2K2 with rank-preserving switches") {
  SearchConfig cfg;
  cfg.budget_without_increase = 3;
  SearchReport r = search_increase(two_k2(), cfg);
  CHECK(r.terminated_by == Termination::BudgetExhausted);
  REQUIRE(r.path.size() == 3);
  for (const SearchStep& s : r.path) {
    CHECK(s.delta == 0);
    CHECK(s.rank_after == 4);
    CHECK(s.set.members == std::vector<std::size_t>{0, 1, 2, 3});
  }
  CHECK(r.final_rank == 4);
  CHECK(r.ones_in_colspace_final);
}

TEST_CASE("search reports an exhausted space on the 5-cycle") {
  F2Matrix a(5, 5);
  for (std::size_t i = 0; i < 5; ++i) {
    a.set(i, (i + 1) % 5, true);
    a.set((i + 1) % 5, i, true);
  }
  Graph c5 = from_adjacency(std::move(a));
  REQUIRE(check_srg(c5) == SrgParams{5, 2, 0, 1});
  SearchReport r = search_increase(c5, {});
  CHECK(r.terminated_by == Termination::SpaceExhausted);
  CHECK(r.path.empty());
  CHECK(r.final_rank == 4);
}

TEST_CASE("table 1 replays to the published rank column") {
  SearchReport r = replay(load_transcript(data_path("table1.json")));
  CHECK(r.final_rank == 24);
  CHECK(r.path.size() == 13);
  CHECK(rank_column(r) == std::vector<std::size_t>{8, 10, 12, 14, 16, 18, 18, 20, 20, 22, 22, 22, 24});
  CHECK(check_srg(r.final_graph) == SrgParams{63, 32, 16, 16});
}

TEST_CASE("table 2 replays to rank 26 in both columns") {
  for (const char* name : {"table2_left.json", "table2_right.json"}) {
    SearchReport r = replay(load_transcript(data_path(name)));
    CHECK(r.final_rank == 26);
    CHECK(r.path.size() == 12);
    CHECK(rank_column(r) ==
          std::vector<std::size_t>{10, 12, 14, 16, 18, 20, 20, 22, 22, 24, 24, 26});
    CHECK(check_srg(r.final_graph) == SrgParams{64, 28, 12, 12});
    CHECK(r.ones_in_colspace_final);
  }
}

// The plus-family transcripts are transcribed verbatim, and the printed data
// is defective: the left column's step 14 and the right column's step 3 are
// not switching sets for the graphs their own walks produce. Replay reports
// exactly where each walk breaks; the prefixes up to that point are exact.
TEST_CASE("the verbatim plus-family transcripts break where the printed sets are defective") {
  try {
    replay(load_transcript(data_path("table3_left.json")));
    FAIL("left column replayed despite the defective step");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("step 14: invalid GM set") != std::string::npos);
  }
  try {
    replay(load_transcript(data_path("table3_right.json")));
    FAIL("right column replayed despite the defective step");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("step 3: invalid GM set") != std::string::npos);
  }
}

TEST_CASE("the plus-family walks are exact up to their defective steps") {
  struct Prefix {
    const char* file;
    std::size_t steps;
    std::vector<std::size_t> ranks;
  };
  const Prefix prefixes[] = {
      {"table3_left.json", 13, {10, 12, 14, 16, 18, 20, 20, 20, 22, 22, 24, 24, 24}},
      {"table3_right.json", 2, {10, 12}},
  };
  for (const Prefix& p : prefixes) {
    Transcript t = load_transcript(data_path(p.file));
    Graph g = resolve_named(t.start);
    REQUIRE(check_srg(g) == SrgParams{64, 36, 20, 20});
    CHECK(ones_in_colspace(g));
    std::vector<std::size_t> ranks;
    for (std::size_t i = 0; i < p.steps; ++i) {
      std::vector<std::size_t> members;
      for (const std::string& label : t.steps[i].set)
        members.push_back(label_index(g, label));
      g = gm_switch(g, make_vertex_set(members, g.order()));
      ranks.push_back(rank2(g.adj));
      CHECK(ones_in_colspace(g));  // every reachable graph keeps 1 in Col2
      CHECK(check_srg(g) == SrgParams{64, 36, 20, 20});
    }
    CHECK(ranks == p.ranks);
  }
}

// Replacing the first label of the left column's step 14 by (1,3,3) — a label
// copied from the step directly above it in the printed table — is the unique
// single-label change that makes the whole column replay; the repaired walk is
// bundled alongside the verbatim one.
TEST_CASE("the repaired left plus-family walk reaches rank 26") {
  const Transcript verbatim = load_transcript(data_path("table3_left.json"));
  const Transcript repaired = load_transcript(data_path("table3_left_erratum.json"));
  REQUIRE(repaired.steps.size() == verbatim.steps.size());
  for (std::size_t i = 0; i < repaired.steps.size(); ++i) {
    if (i == 13) {
      CHECK(verbatim.steps[i].set[0] == "2,4,4");
      CHECK(repaired.steps[i].set[0] == "1,3,3");
      CHECK(std::vector<std::string>(repaired.steps[i].set.begin() + 1,
                                     repaired.steps[i].set.end()) ==
            std::vector<std::string>(verbatim.steps[i].set.begin() + 1,
                                     verbatim.steps[i].set.end()));
    } else {
      CHECK(repaired.steps[i].set == verbatim.steps[i].set);
    }
    CHECK(repaired.steps[i].rank == verbatim.steps[i].rank);
  }

  SearchReport r = replay(repaired);
  CHECK(r.final_rank == 26);
  CHECK(rank_column(r) ==
        std::vector<std::size_t>{10, 12, 14, 16, 18, 20, 20, 20, 22, 22, 24, 24, 24, 24, 26});
  CHECK(check_srg(r.final_graph) == SrgParams{64, 36, 20, 20});
  CHECK(r.ones_in_colspace_final);
}

TEST_CASE("replay reports a corrupted rank with step context") {
  Transcript t = load_transcript(data_path("table2_left.json"));
  t.steps[2].rank = 12;  // the published value is 14
  try {
    replay(t);
    FAIL("replay accepted a corrupted transcript");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()) == "step 3: expected 12, observed 14");
  }
}

TEST_CASE("replay rejects unknown labels and start graphs") {
  Transcript t = load_transcript(data_path("table1.json"));
  t.steps[1].set[0] = "222222";
  try {
    replay(t);
    FAIL("replay accepted an unknown label");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("step 2: unknown label '222222'") != std::string::npos);
  }

  Transcript bad_start = load_transcript(data_path("table1.json"));
  bad_start.start = "petersen";
  CHECK_THROWS(replay(bad_start));
}

TEST_CASE("replay rejects sets that are not switching sets") {
  Graph g = sp(3);
  // find a 4-subset that classify_gm rejects, then ask replay to apply it
  std::vector<std::size_t> bad;
  for (std::size_t a = 0; a < 6 && bad.empty(); ++a)
    for (std::size_t b = a + 1; b < 7 && bad.empty(); ++b)
      for (std::size_t c = b + 1; c < 8 && bad.empty(); ++c)
        for (std::size_t d = c + 1; d < 9 && bad.empty(); ++d)
          if (!classify_gm(g, make_vertex_set({a, b, c, d}, g.order())))
            bad = {a, b, c, d};
  REQUIRE(!bad.empty());
  Transcript t;
  t.start = "sp3";
  TranscriptStep step;
  for (std::size_t v : bad) step.set.push_back((*g.labels)[v]);
  step.rank = 8;
  t.steps.push_back(step);
  try {
    replay(t);
    FAIL("replay accepted an invalid switching set");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("step 1: invalid GM set") != std::string::npos);
  }

  // duplicated labels are caught the same way
  Transcript dup = load_transcript(data_path("table1.json"));
  dup.steps[0].set[1] = dup.steps[0].set[0];
  CHECK_THROWS_AS(replay(dup), std::runtime_error);
}

TEST_CASE("replay checks the expected final column-space flag") {
  Transcript t = load_transcript(data_path("table1.json"));
  SearchReport honest = replay(t);
  t.final_ones_in_colspace = !honest.ones_in_colspace_final;
  try {
    replay(t);
    FAIL("replay accepted a wrong final column-space flag");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("final ones-in-colspace mismatch") != std::string::npos);
  }
}

TEST_CASE("termination names") {
  CHECK(termination_name(Termination::TargetReached) == "target_reached");
  CHECK(termination_name(Termination::BudgetExhausted) == "budget_exhausted");
  CHECK(termination_name(Termination::SpaceExhausted) == "space_exhausted");
}

TEST_CASE("worker count respects the environment cap") {
  {
    EnvGuard guard("SRGSWITCH_THREADS", "1");
    CHECK(worker_count() == 1);
  }
  {
    EnvGuard guard("SRGSWITCH_THREADS", "2");
    CHECK(worker_count() >= 1);
    CHECK(worker_count() <= 2);
  }
  {
    EnvGuard guard("SRGSWITCH_THREADS", "not a number");
    CHECK(worker_count() >= 1);
  }
  {
    EnvGuard guard("SRGSWITCH_THREADS", nullptr);
    CHECK(worker_count() >= 1);
  }
}
