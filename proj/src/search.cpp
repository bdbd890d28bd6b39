#include "srgswitch/search.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "srgswitch/product.hpp"

namespace srgswitch {
namespace {

using nlohmann::json;

std::uint64_t binom(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 acc = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    acc = acc * (n - k + i) / i;
    if (acc > std::numeric_limits<std::uint64_t>::max())
      throw std::overflow_error("binomial coefficient overflow");
  }
  return static_cast<std::uint64_t>(acc);
}

// members (strictly increasing) of the k-subset with lexicographic rank r
std::vector<std::size_t> unrank_combination(std::size_t n, std::size_t k, std::uint64_t r) {
  std::vector<std::size_t> c(k);
  std::size_t v = 0;
  for (std::size_t i = 0; i < k; ++i) {
    while (true) {
      const std::uint64_t below = binom(n - 1 - v, k - 1 - i);
      if (r < below) break;
      r -= below;
      ++v;
    }
    c[i] = v++;
  }
  return c;
}

bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
  std::size_t i = c.size();
  while (i-- > 0) {
    if (c[i] + (c.size() - i) <= n - 1) {
      ++c[i];
      for (std::size_t j = i + 1; j < c.size(); ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

// Allocation-free validity test; classify_gm is the reference implementation.
// `mask` is an all-zero scratch vector of length g.order() and is restored to
// zero before returning.
bool gm_set_valid(const Graph& g, const std::vector<std::size_t>& members, F2Vector& mask) {
  const std::size_t words = g.adj.words_per_row;
  for (std::size_t v : members) mask.set(v, true);
  const std::size_t k = members.size();
  const std::size_t d0 = and_popcount(g.adj.row(members[0]), mask.words.data(), words);
  bool ok = true;
  for (std::size_t i = 1; ok && i < k; ++i)
    ok = and_popcount(g.adj.row(members[i]), mask.words.data(), words) == d0;
  if (ok) {
    const std::size_t half = k / 2;
    for (std::size_t v = 0; v < g.order(); ++v) {
      if (mask.get(v)) continue;
      const std::size_t c = and_popcount(g.adj.row(v), mask.words.data(), words);
      if (c != 0 && c != half && c != k) {
        ok = false;
        break;
      }
    }
  }
  for (std::size_t v : members) mask.set(v, false);
  return ok;
}

// Candidate subsets are numbered by "slots"; a slot maps to a lexicographic
// combination rank either directly (exhaustive order) or through a shuffle.
struct CandidateSpace {
  std::size_t n = 0, k = 0;
  std::uint64_t total = 0;
  const std::vector<std::uint64_t>* order = nullptr;

  std::vector<std::size_t> members(std::uint64_t slot) const {
    return unrank_combination(n, k, order ? (*order)[slot] : slot);
  }
};

enum class SlotKind { Invalid, Preserving, Increasing, Decreasing };

SlotKind evaluate_slot(const Graph& g, std::size_t base_rank, const CandidateSpace& space,
                       std::uint64_t slot, F2Vector& mask) {
  std::vector<std::size_t> mem = space.members(slot);
  if (!gm_set_valid(g, mem, mask)) return SlotKind::Invalid;
  const VertexSet w{std::move(mem), g.order()};
  const std::size_t r = rank2(gm_switch(g, w).adj);
  if (r == base_rank) return SlotKind::Preserving;
  return r > base_rank ? SlotKind::Increasing : SlotKind::Decreasing;
}

struct ScanOutcome {
  // least slot whose switch raises the rank, if any
  std::optional<std::uint64_t> increase_slot;
  // sorted rank-preserving slots; complete only when increase_slot is empty
  std::vector<std::uint64_t> preserve_slots;
};

ScanOutcome scan_serial(const Graph& g, std::size_t base_rank, const CandidateSpace& space) {
  ScanOutcome out;
  F2Vector mask(g.order());
  for (std::uint64_t s = 0; s < space.total; ++s) {
    const SlotKind kind = evaluate_slot(g, base_rank, space, s, mask);
    if (kind == SlotKind::Increasing) {
      out.increase_slot = s;
      break;
    }
    if (kind == SlotKind::Preserving) out.preserve_slots.push_back(s);
  }
  return out;
}

// Same result as scan_serial: workers claim fixed chunks of the slot range
// and the accepted candidate is reduced by minimum slot, so the outcome does
// not depend on thread scheduling.
ScanOutcome scan_parallel(const Graph& g, std::size_t base_rank, const CandidateSpace& space,
                          std::size_t workers) {
  constexpr std::uint64_t kChunk = 1024;
  const std::uint64_t n_chunks = (space.total + kChunk - 1) / kChunk;
  workers = std::min<std::uint64_t>(workers, n_chunks);
  std::atomic<std::uint64_t> next_chunk{0};
  std::atomic<std::uint64_t> best{std::numeric_limits<std::uint64_t>::max()};
  std::vector<std::vector<std::uint64_t>> found(workers);

  auto body = [&](std::size_t self) {
    F2Vector mask(g.order());
    while (true) {
      const std::uint64_t chunk = next_chunk.fetch_add(1, std::memory_order_relaxed);
      if (chunk >= n_chunks) return;
      const std::uint64_t lo = chunk * kChunk;
      // every further slot exceeds an increase that was already found
      if (lo > best.load(std::memory_order_relaxed)) return;
      const std::uint64_t hi = std::min<std::uint64_t>(space.total, lo + kChunk);
      for (std::uint64_t s = lo; s < hi; ++s) {
        const SlotKind kind = evaluate_slot(g, base_rank, space, s, mask);
        if (kind == SlotKind::Increasing) {
          std::uint64_t cur = best.load(std::memory_order_relaxed);
          while (s < cur && !best.compare_exchange_weak(cur, s)) {
          }
          break;
        }
        if (kind == SlotKind::Preserving) found[self].push_back(s);
      }
    }
  };

  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(body, w);
  body(0);
  for (auto& t : pool) t.join();

  ScanOutcome out;
  const std::uint64_t b = best.load();
  if (b != std::numeric_limits<std::uint64_t>::max()) {
    out.increase_slot = b;
    return out;
  }
  std::size_t count = 0;
  for (const auto& part : found) count += part.size();
  out.preserve_slots.reserve(count);
  for (const auto& part : found)
    out.preserve_slots.insert(out.preserve_slots.end(), part.begin(), part.end());
  std::sort(out.preserve_slots.begin(), out.preserve_slots.end());
  return out;
}

}  // namespace

std::string termination_name(Termination t) {
  switch (t) {
    case Termination::TargetReached: return "target_reached";
    case Termination::BudgetExhausted: return "budget_exhausted";
    case Termination::SpaceExhausted: return "space_exhausted";
  }
  throw std::logic_error("termination_name: bad value");
}

GmSetStream::GmSetStream(const Graph& g, std::size_t size)
    : g_(&g), k_(size), scratch_(g.order()) {
  if (size < 2 || size % 2 != 0)
    throw std::invalid_argument("gm set stream: size must be even and at least 2");
  if (size > g.order())
    throw std::invalid_argument("gm set stream: size exceeds the graph order");
  current_.resize(k_);
  for (std::size_t i = 0; i < k_; ++i) current_[i] = i;
}

std::optional<VertexSet> GmSetStream::next() {
  while (!done_) {
    const bool valid = gm_set_valid(*g_, current_, scratch_);
    std::optional<VertexSet> out;
    if (valid) out = VertexSet{current_, g_->order()};
    if (!next_combination(current_, g_->order())) done_ = true;
    if (out) return out;
  }
  return std::nullopt;
}

Graph resolve_named(const std::string& name) {
  std::string key;
  for (char ch : name)
    key += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  if (key == "2k2") return two_k2();
  if (key == "k4") return k4();
  if (key == "k1") return k1();
  const bool sp_form = key.size() > 2 && key.compare(0, 2, "sp") == 0 &&
                       std::all_of(key.begin() + 2, key.end(), [](unsigned char c) {
                         return std::isdigit(c) != 0;
                       });
  if (sp_form) {
    const unsigned long m = std::stoul(key.substr(2));
    if (m < 1 || m > 8)
      throw std::invalid_argument("resolve_named: symplectic order out of range: " + name);
    return sp(m);
  }
  return named_graph(key);
}

std::size_t worker_count() {
  std::size_t count = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("SRGSWITCH_THREADS")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1)
      count = std::min<std::size_t>(count, static_cast<std::size_t>(v));
  }
  return count;
}

SearchReport search_increase(const Graph& g0, const SearchConfig& cfg) {
  const auto params = check_srg(g0);
  if (!params) throw std::invalid_argument("search: start graph is not strongly regular");
  if (cfg.set_size < 2 || cfg.set_size % 2 != 0)
    throw std::invalid_argument("search: set size must be even and at least 2");
  if (cfg.set_size > g0.order())
    throw std::invalid_argument("search: set size exceeds the graph order");
  if (cfg.budget_without_increase == 0)
    throw std::invalid_argument("search: budget must be at least 1");

  const std::size_t n = g0.order();
  const std::uint64_t total = binom(n, cfg.set_size);
  std::mt19937_64 rng(cfg.rng_seed);

  std::vector<std::uint64_t> shuffled;
  CandidateSpace space{n, cfg.set_size, total, nullptr};
  if (cfg.enumeration == Enumeration::Random) {
    if (total > (1ull << 23))
      throw std::invalid_argument(
          "search: random enumeration would materialise too many candidate sets");
    shuffled.resize(total);
    for (std::uint64_t i = 0; i < total; ++i) shuffled[i] = i;
    space.order = &shuffled;
  }

  Graph g = g0;
  std::size_t rank = rank2(g.adj);
  std::size_t budget = cfg.budget_without_increase;
  std::vector<SearchStep> path;
  Termination term;

  while (true) {
    if (cfg.max_rank && rank >= *cfg.max_rank) {
      term = Termination::TargetReached;
      break;
    }
    if (cfg.enumeration == Enumeration::Random)
      std::shuffle(shuffled.begin(), shuffled.end(), rng);
    const std::size_t workers = worker_count();
    const ScanOutcome scan = (workers > 1 && total >= 4096)
                                 ? scan_parallel(g, rank, space, workers)
                                 : scan_serial(g, rank, space);
    if (scan.increase_slot) {
      VertexSet w{space.members(*scan.increase_slot), n};
      g = gm_switch(g, w);
      rank += 2;
      path.push_back({std::move(w), rank, +2});
      budget = cfg.budget_without_increase;
      continue;
    }
    if (scan.preserve_slots.empty()) {
      term = Termination::SpaceExhausted;
      break;
    }
    if (budget == 0) {
      term = Termination::BudgetExhausted;
      break;
    }
    const std::uint64_t slot = scan.preserve_slots[rng() % scan.preserve_slots.size()];
    VertexSet w{space.members(slot), n};
    g = gm_switch(g, w);
    path.push_back({std::move(w), rank, 0});
    --budget;
  }

  const auto final_params = check_srg(g);
  if (!final_params || !(*final_params == *params))
    throw std::runtime_error("search: strongly regular parameters changed along the path");
  const bool ones = ones_in_colspace(g);
  return SearchReport{std::move(path), std::move(g), rank, term, ones};
}

SearchReport replay(const Transcript& t) {
  Graph g = resolve_named(t.start);
  const auto params = check_srg(g);
  if (!params) throw std::invalid_argument("replay: start graph is not strongly regular");
  std::size_t rank = rank2(g.adj);
  std::vector<SearchStep> path;

  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    const TranscriptStep& step = t.steps[i];
    const std::string where = "step " + std::to_string(i + 1);
    std::vector<std::size_t> members;
    for (const std::string& label : step.set) {
      try {
        members.push_back(label_index(g, label));
      } catch (const std::exception&) {
        throw std::invalid_argument(where + ": unknown label '" + label + "'");
      }
    }
    VertexSet w;
    try {
      w = make_vertex_set(std::move(members), g.order());
      if (!classify_gm(g, w)) throw std::invalid_argument("not a switching set");
    } catch (const std::exception& e) {
      throw std::runtime_error(where + ": invalid GM set (" + e.what() + ")");
    }
    g = gm_switch(g, w);
    const std::size_t observed = rank2(g.adj);
    if (observed != step.rank)
      throw std::runtime_error(where + ": expected " + std::to_string(step.rank) +
                               ", observed " + std::to_string(observed));
    const auto p = check_srg(g);
    if (!p || !(*p == *params))
      throw std::runtime_error(where + ": strongly regular parameters changed");
    path.push_back({std::move(w), observed, static_cast<int>(observed) - static_cast<int>(rank)});
    rank = observed;
  }

  const bool ones = ones_in_colspace(g);
  if (t.final_ones_in_colspace && *t.final_ones_in_colspace != ones)
    throw std::runtime_error(std::string("final ones-in-colspace mismatch: expected ") +
                             (*t.final_ones_in_colspace ? "true" : "false") + ", observed " +
                             (ones ? "true" : "false"));
  return SearchReport{std::move(path), std::move(g), rank, Termination::TargetReached, ones};
}

Transcript parse_transcript(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("transcript: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("transcript: top level must be a JSON object");
  if (!j.contains("start") || !j["start"].is_string())
    throw std::invalid_argument("transcript: missing string field 'start'");
  if (!j.contains("steps") || !j["steps"].is_array())
    throw std::invalid_argument("transcript: missing array field 'steps'");

  Transcript t;
  t.start = j["start"].get<std::string>();
  std::size_t index = 0;
  for (const json& s : j["steps"]) {
    ++index;
    const std::string where = "transcript: step " + std::to_string(index);
    if (!s.is_object() || !s.contains("set") || !s.contains("rank"))
      throw std::invalid_argument(where + " must be an object with 'set' and 'rank'");
    const json& set = s["set"];
    if (!set.is_array() || set.size() != 4)
      throw std::invalid_argument(where + ": 'set' must list exactly 4 labels");
    TranscriptStep step;
    for (const json& label : set) {
      if (!label.is_string())
        throw std::invalid_argument(where + ": labels must be strings");
      step.set.push_back(label.get<std::string>());
    }
    if (!s["rank"].is_number_unsigned())
      throw std::invalid_argument(where + ": 'rank' must be a non-negative integer");
    step.rank = s["rank"].get<std::size_t>();
    t.steps.push_back(std::move(step));
  }
  if (j.contains("final_ones_in_colspace")) {
    if (!j["final_ones_in_colspace"].is_boolean())
      throw std::invalid_argument("transcript: 'final_ones_in_colspace' must be a boolean");
    t.final_ones_in_colspace = j["final_ones_in_colspace"].get<bool>();
  }
  return t;
}

Transcript load_transcript(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open transcript file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_transcript(buffer.str());
}

std::string transcript_to_json(const Transcript& t) {
  json steps = json::array();
  for (const TranscriptStep& s : t.steps)
    steps.push_back(json{{"set", s.set}, {"rank", s.rank}});
  json j{{"start", t.start}, {"steps", std::move(steps)}};
  if (t.final_ones_in_colspace) j["final_ones_in_colspace"] = *t.final_ones_in_colspace;
  return j.dump(2) + "\n";
}

}  // namespace srgswitch
