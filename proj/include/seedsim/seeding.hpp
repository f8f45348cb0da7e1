#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>

#include "seedsim/centrality.hpp"
#include "seedsim/diffusion.hpp"
#include "seedsim/errors.hpp"
#include "seedsim/graph.hpp"
#include "seedsim/rng.hpp"

namespace seedsim {

// SS places the whole budget at stage 0. The sequential schedules spread it
// out: Sq unconditionally one per stage, RSq one per stage but only while the
// natural process is stopped, BSq banks one credit per stage and spends the
// whole bank whenever the natural process stops.
enum class SeedingMode { SS, Sq, RSq, BSq };

inline const char* to_string(SeedingMode m) {
  switch (m) {
    case SeedingMode::SS: return "ss";
    case SeedingMode::Sq: return "sq";
    case SeedingMode::RSq: return "rsq";
    case SeedingMode::BSq: return "bsq";
  }
  return "?";
}

inline SeedingMode seeding_mode_from_string(const std::string& s) {
  for (SeedingMode m : {SeedingMode::SS, SeedingMode::Sq, SeedingMode::RSq, SeedingMode::BSq}) {
    if (s == to_string(m)) return m;
  }
  throw InputError("unknown seeding mode: " + s);
}

inline bool is_sequential(SeedingMode m) { return m != SeedingMode::SS; }

// Seed allowance of a run plus its mutable spend state.
struct SeedBudget {
  std::size_t budget = 1;         // total seeds available, >= 1
  double sp = 0.0;                // fraction of nodes, 0 when built from a raw count
  std::size_t remaining = 1;
  std::size_t buffer_credit = 0;  // banked allowance, bseq only

  static SeedBudget from_count(std::size_t count) {
    if (count == 0) throw InputError("seed budget must be at least 1");
    SeedBudget b;
    b.budget = count;
    b.remaining = count;
    return b;
  }

  static SeedBudget from_fraction(std::size_t node_count, double sp) {
    if (!(sp > 0.0 && sp <= 1.0)) throw InputError("seeding percentage must lie in (0, 1]");
    SeedBudget b = from_count(std::max<std::size_t>(
        1, static_cast<std::size_t>(std::llround(sp * static_cast<double>(node_count)))));
    b.sp = sp;
    return b;
  }
};

// Highest-ranked node that is not yet active, scanning from *cursor. Skipped
// positions stay skipped: activation is monotone, so once a ranked node is
// seen active it never needs another look.
inline std::optional<NodeId> next_seed(const Ranking& ranking,
                                       const std::vector<std::uint8_t>& active,
                                       std::size_t& cursor) {
  while (cursor < ranking.order.size()) {
    NodeId v = ranking.order[cursor];
    if (!active[v]) return v;
    ++cursor;
  }
  return std::nullopt;
}

inline std::optional<NodeId> next_seed(const Ranking& ranking,
                                       const std::vector<std::uint8_t>& active) {
  std::size_t cursor = 0;
  return next_seed(ranking, active, cursor);
}

// How many seeds to inject this stage, called once per stage right after the
// natural sub-step. natural_this_stage == 0 means the frontier is empty, i.e.
// the natural process has stopped. Mutates the budget's buffer credit.
inline std::size_t seeding_decision(SeedingMode mode, std::size_t natural_this_stage,
                                    SeedBudget& budget) {
  switch (mode) {
    case SeedingMode::SS:
      // everything on the first call; remaining is 0 from then on
      return budget.remaining;
    case SeedingMode::Sq:
      return budget.remaining > 0 ? 1 : 0;
    case SeedingMode::RSq:
      return (natural_this_stage == 0 && budget.remaining > 0) ? 1 : 0;
    case SeedingMode::BSq: {
      budget.buffer_credit = std::min(budget.buffer_credit + 1, budget.remaining);
      if (natural_this_stage == 0) {
        std::size_t inject = budget.buffer_credit;
        budget.buffer_credit = 0;
        return inject;
      }
      return 0;
    }
  }
  return 0;
}

namespace detail {

// Shared run loop. Per stage: natural sub-step, then the schedule decides
// how many seeds to add while watching that stage's natural count, then the
// seeds join the naturals to form the next frontier. Stops once the frontier
// is empty with nothing left to spend, or no inactive node remains.
template <typename NaturalStep>
RunResult run_schedule(const Graph& g, const Ranking& ranking, SeedingMode mode,
                       SeedBudget budget, NaturalStep&& natural_step) {
  const std::size_t n = g.node_count();
  if (n == 0) throw InputError("run needs a non-empty graph");
  if (budget.budget > n) throw InputError("seed budget exceeds node count");
  if (ranking.order.size() != n) throw InputError("ranking does not cover the graph");
  budget.remaining = budget.budget;
  budget.buffer_credit = 0;

  DiffusionState state(n);
  RunResult result;
  result.node_count = n;
  std::size_t cursor = 0;

  for (std::size_t stage = 0;; ++stage) {
    state.stage = stage;
    const std::size_t naturals = natural_step(state);
    result.natural_count += naturals;

    const std::size_t want = seeding_decision(mode, naturals, budget);
    StageRecord rec;
    rec.stage = stage;
    rec.natural_count = naturals;
    for (std::size_t i = 0; i < want; ++i) {
      auto v = next_seed(ranking, state.active, cursor);
      if (!v) break;  // every node is already active
      activate_seed(state, *v);
      rec.seeded_ids.push_back(*v);
      result.seeds_used.emplace_back(stage, *v);
      --budget.remaining;
    }
    rec.seeded_count = rec.seeded_ids.size();
    rec.cumulative_active = state.active_count;
    rec.buffer_credit = budget.buffer_credit;
    state.log.push_back(std::move(rec));

    if (state.active_count == n || (state.frontier.empty() && budget.remaining == 0)) break;
  }

  result.active_count = state.active_count;
  result.final_active = std::move(state.active);
  result.log = std::move(state.log);
  return result;
}

}  // namespace detail

inline RunResult run_strategy(const Graph& g, const Ranking& ranking, SeedingMode mode,
                              SeedBudget budget, double pp, Rng& rng) {
  if (!(pp >= 0.0 && pp <= 1.0)) throw InputError("propagation probability must lie in [0, 1]");
  return detail::run_schedule(g, ranking, mode, budget,
                              [&](DiffusionState& s) { return ic_step(g, s, pp, rng); });
}

inline RunResult run_strategy(const Graph& g, const Ranking& ranking, SeedingMode mode,
                              SeedBudget budget, const LiveEdgeSample& sample) {
  if (sample.live.size() != g.directed_slot_count()) {
    throw InputError("live-edge sample does not match the graph");
  }
  return detail::run_schedule(g, ranking, mode, budget,
                              [&](DiffusionState& s) { return ic_step_coupled(g, s, sample); });
}

}  // namespace seedsim
