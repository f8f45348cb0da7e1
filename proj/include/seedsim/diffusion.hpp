#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "seedsim/errors.hpp"
#include "seedsim/graph.hpp"
#include "seedsim/rng.hpp"

namespace seedsim {

// One completed stage of a run. Natural activations happen first, then any
// seeds injected by the schedule; both together form the next frontier.
struct StageRecord {
  std::size_t stage = 0;
  std::size_t natural_count = 0;
  std::size_t seeded_count = 0;
  std::vector<NodeId> seeded_ids;
  std::size_t cumulative_active = 0;  // after this stage completed
  std::size_t buffer_credit = 0;      // unspent credit after this stage (bseq)
};

// Mutable per-run state. Owned by exactly one run; many runs may share the
// same immutable Graph.
struct DiffusionState {
  explicit DiffusionState(std::size_t node_count) : active(node_count, 0) {}

  std::vector<std::uint8_t> active;
  std::vector<NodeId> frontier;  // nodes activated in the previous stage
  std::size_t stage = 0;
  std::size_t active_count = 0;
  std::vector<StageRecord> log;
};

// Coin flips for every directed edge slot, drawn up front. Simulating on a
// fixed sample is deterministic, which lets two schedules be compared under
// identical propagation conditions.
struct LiveEdgeSample {
  std::vector<std::uint8_t> live;  // indexed by directed slot

  std::size_t live_count() const {
    std::size_t c = 0;
    for (std::uint8_t b : live) c += b;
    return c;
  }
};

inline LiveEdgeSample sample_live_edges(const Graph& g, double pp, Rng& rng) {
  if (!(pp >= 0.0 && pp <= 1.0)) throw InputError("propagation probability must lie in [0, 1]");
  LiveEdgeSample sample;
  sample.live.resize(g.directed_slot_count());
  for (auto& bit : sample.live) bit = chance(rng, pp) ? 1 : 0;
  return sample;
}

// Natural sub-step: every node activated last stage gets its single shot at
// each currently inactive neighbor with probability pp. The old frontier is
// spent; the new frontier holds this stage's natural activations until the
// caller merges in any seeds.
inline std::size_t ic_step(const Graph& g, DiffusionState& state, double pp, Rng& rng) {
  std::vector<NodeId> next;
  for (NodeId u : state.frontier) {
    for (NodeId v : g.neighbors(u)) {
      if (!state.active[v] && chance(rng, pp)) {
        state.active[v] = 1;
        ++state.active_count;
        next.push_back(v);
      }
    }
  }
  state.frontier = std::move(next);
  return state.frontier.size();
}

// Same contract as ic_step but the attempt u->v succeeds iff its slot is
// live in the pre-drawn sample. Fully deterministic.
inline std::size_t ic_step_coupled(const Graph& g, DiffusionState& state,
                                   const LiveEdgeSample& sample) {
  std::vector<NodeId> next;
  for (NodeId u : state.frontier) {
    auto nb = g.neighbors(u);
    for (std::size_t j = 0; j < nb.size(); ++j) {
      NodeId v = nb[j];
      if (!state.active[v] && sample.live[g.slot_index(u, j)]) {
        state.active[v] = 1;
        ++state.active_count;
        next.push_back(v);
      }
    }
  }
  state.frontier = std::move(next);
  return state.frontier.size();
}

// Marks v active as a seed and adds it to the pending frontier. The caller
// must not seed an already-active node.
inline void activate_seed(DiffusionState& state, NodeId v) {
  state.active[v] = 1;
  ++state.active_count;
  state.frontier.push_back(v);
}

// Nodes reachable from the seed set via live directed slots, seeds included.
// Brute-force oracle: a coupled run from an upfront seed set must activate
// exactly this set.
inline std::vector<std::uint8_t> reachable_coverage(const Graph& g, const LiveEdgeSample& sample,
                                                    const std::vector<NodeId>& seeds) {
  std::vector<std::uint8_t> reached(g.node_count(), 0);
  std::vector<NodeId> stack;
  for (NodeId s : seeds) {
    if (!reached[s]) {
      reached[s] = 1;
      stack.push_back(s);
    }
  }
  while (!stack.empty()) {
    NodeId u = stack.back();
    stack.pop_back();
    auto nb = g.neighbors(u);
    for (std::size_t j = 0; j < nb.size(); ++j) {
      NodeId v = nb[j];
      if (!reached[v] && sample.live[g.slot_index(u, j)]) {
        reached[v] = 1;
        stack.push_back(v);
      }
    }
  }
  return reached;
}

// Outcome of one full run of a seeding schedule.
struct RunResult {
  std::size_t node_count = 0;
  std::size_t active_count = 0;    // at termination
  std::size_t natural_count = 0;   // activated by contagion rather than seeding
  std::vector<std::pair<std::size_t, NodeId>> seeds_used;  // (stage, node)
  std::vector<StageRecord> log;
  std::vector<std::uint8_t> final_active;

  double coverage_total() const {
    return node_count ? static_cast<double>(active_count) / static_cast<double>(node_count) : 0.0;
  }
  double coverage_natural() const {
    return node_count ? static_cast<double>(natural_count) / static_cast<double>(node_count) : 0.0;
  }

  // Last stage with any activation, seeded or natural.
  std::size_t duration() const {
    for (auto it = log.rbegin(); it != log.rend(); ++it) {
      if (it->natural_count + it->seeded_count > 0) return it->stage;
    }
    return 0;
  }

  // First stage at which the final activation count was already reached.
  std::size_t peak_stage() const {
    for (const StageRecord& rec : log) {
      if (rec.cumulative_active == active_count) return rec.stage;
    }
    return 0;
  }
};

}  // namespace seedsim
