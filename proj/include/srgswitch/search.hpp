#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "srgswitch/graph.hpp"
#include "srgswitch/switching.hpp"

namespace srgswitch {

// One recorded switching step: the set that was applied and the 2-rank after.
struct TranscriptStep {
  std::vector<std::string> set;
  std::size_t rank = 0;

  friend bool operator==(const TranscriptStep&, const TranscriptStep&) = default;
};

// A start-graph name plus an ordered list of switching sets with the 2-rank
// expected after each application; the machine form of a published table.
struct Transcript {
  std::string start;
  std::vector<TranscriptStep> steps;
  std::optional<bool> final_ones_in_colspace;

  friend bool operator==(const Transcript&, const Transcript&) = default;
};

// JSON object {"start": str, "steps": [{"set": [label, ...], "rank": int}]}
// with an optional boolean "final_ones_in_colspace". Every set must hold
// exactly 4 labels. Expected ranks are checked during replay, not here, so a
// corrupted rank column is reported with step context rather than rejected
// at parse time.
Transcript parse_transcript(const std::string& json_text);
Transcript load_transcript(const std::string& path);
std::string transcript_to_json(const Transcript& t);

enum class Enumeration { Exhaustive, Random };

struct SearchConfig {
  std::size_t set_size = 4;
  std::size_t budget_without_increase = 5000;
  std::uint64_t rng_seed = 0;
  std::optional<std::size_t> max_rank;
  Enumeration enumeration = Enumeration::Exhaustive;
};

enum class Termination { TargetReached, BudgetExhausted, SpaceExhausted };

std::string termination_name(Termination t);

struct SearchStep {
  VertexSet set;
  std::size_t rank_after = 0;
  int delta = 0;

  friend bool operator==(const SearchStep&, const SearchStep&) = default;
};

struct SearchReport {
  std::vector<SearchStep> path;
  Graph final_graph;
  std::size_t final_rank = 0;
  Termination terminated_by = Termination::TargetReached;
  bool ones_in_colspace_final = false;
};

// Streams the size-k subsets W for which classify_gm(g, W) succeeds, in
// lexicographic order of the sorted index tuples. The graph must outlive the
// stream. Size must be even, >= 2 and <= order.
class GmSetStream {
 public:
  GmSetStream(const Graph& g, std::size_t size);

  std::optional<VertexSet> next();

 private:
  const Graph* g_;
  std::size_t k_;
  std::vector<std::size_t> current_;
  F2Vector scratch_;
  bool done_ = false;
};

// Registry used by transcripts and the command line: sp2..sp8 (spN), 2k2,
// k4, k1, lattice4, shrikhande, clebsch, g-3, g'-3, g+3, g'+3.
Graph resolve_named(const std::string& name);

// Number of scan workers: hardware concurrency capped by SRGSWITCH_THREADS.
std::size_t worker_count();

// Greedy rank chase: repeatedly scan the switching sets of the current graph,
// apply the first (in enumeration order) that raises the 2-rank by 2, and
// otherwise apply a seeded-random rank-preserving set until the budget of
// consecutive non-increasing switches runs out. Deterministic for a fixed
// (graph, config) pair, including the worker count.
SearchReport search_increase(const Graph& g, const SearchConfig& cfg);

// Applies the transcript's sets in order, checking after every step that the
// set was a valid switching set, the 2-rank matches the recorded value and
// that the strongly-regular parameters are unchanged. Errors carry the
// 1-based step number ("step 3: expected 12, observed 14").
SearchReport replay(const Transcript& t);

}  // namespace srgswitch
