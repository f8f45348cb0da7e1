#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <string>
#include <unordered_set>
#include <vector>

#include "seedsim/errors.hpp"
#include "seedsim/graph.hpp"
#include "seedsim/rng.hpp"

namespace seedsim {

struct WsParams {
  std::size_t n = 0;       // node count, must exceed 2 * nei
  std::size_t nei = 1;     // lattice neighborhood radius, >= 1
  double rewire_p = 0.0;   // per-edge rewiring probability in [0, 1]
};

struct BaParams {
  std::size_t n = 0;       // node count, must exceed m
  std::size_t m = 1;       // edges attached per new node, >= 1
  double power = 1.0;      // preferential attachment exponent, >= 0
};

namespace detail {

// Fenwick tree over per-node sampling weights; supports point updates and
// drawing an index proportional to its weight.
class WeightTree {
 public:
  explicit WeightTree(std::size_t capacity) : tree_(capacity + 1, 0.0), weight_(capacity, 0.0) {}

  void set(std::size_t i, double w) {
    add_raw(i, w - weight_[i]);
    weight_[i] = w;
  }

  double total() const { return prefix(tree_.size() - 1); }

  // Index i with prefix(i) <= r < prefix(i + 1); r must lie in [0, total).
  std::size_t sample(double r) const {
    std::size_t idx = 0;
    std::size_t mask = std::bit_floor(tree_.size() - 1);
    for (; mask != 0; mask >>= 1) {
      std::size_t next = idx + mask;
      if (next < tree_.size() && tree_[next] <= r) {
        idx = next;
        r -= tree_[next];
      }
    }
    return std::min(idx, weight_.size() - 1);  // guard against fp round-off at the top end
  }

 private:
  void add_raw(std::size_t i, double delta) {
    for (std::size_t j = i + 1; j < tree_.size(); j += j & (~j + 1)) tree_[j] += delta;
  }

  double prefix(std::size_t count) const {
    double s = 0.0;
    for (std::size_t j = count; j != 0; j &= j - 1) s += tree_[j];
    return s;
  }

  std::vector<double> tree_;
  std::vector<double> weight_;
};

}  // namespace detail

// Watts-Strogatz small world: ring lattice with nei neighbors on each side
// (n * nei undirected edges), then every lattice edge's far endpoint is
// rewired with probability rewire_p to a uniform target, resampling on
// self-loops and duplicates. Edge count is preserved exactly.
inline Graph generate_ws(const WsParams& p, Rng& rng) {
  if (p.nei < 1 || p.n <= 2 * p.nei) {
    throw InputError("ws: need n > 2 * nei and nei >= 1");
  }
  if (!(p.rewire_p >= 0.0 && p.rewire_p <= 1.0)) {
    throw InputError("ws: rewire_p must lie in [0, 1]");
  }

  const std::size_t n = p.n;
  std::vector<std::unordered_set<NodeId>> adj(n);
  auto connect = [&](NodeId a, NodeId b) {
    adj[a].insert(b);
    adj[b].insert(a);
  };
  auto disconnect = [&](NodeId a, NodeId b) {
    adj[a].erase(b);
    adj[b].erase(a);
  };

  for (std::size_t j = 1; j <= p.nei; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      connect(static_cast<NodeId>(i), static_cast<NodeId>((i + j) % n));
    }
  }

  for (std::size_t j = 1; j <= p.nei; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!chance(rng, p.rewire_p)) continue;
      auto u = static_cast<NodeId>(i);
      if (adj[u].size() >= n - 1) continue;  // saturated, nowhere to rewire
      NodeId w;
      do {
        w = static_cast<NodeId>(uniform_below(rng, n));
      } while (w == u || adj[u].contains(w));
      disconnect(u, static_cast<NodeId>((i + j) % n));
      connect(u, w);
    }
  }

  EdgeList edges;
  edges.reserve(n * p.nei);
  for (std::size_t v = 0; v < n; ++v) {
    for (NodeId w : adj[v]) {
      if (v < w) edges.emplace_back(static_cast<NodeId>(v), w);
    }
  }
  return build_graph(std::move(edges), n);
}

// Barabasi-Albert growth: initial clique on m + 1 nodes, then each new node
// attaches m edges to distinct existing nodes drawn with probability
// proportional to degree^power + 1. Final edge count is exactly
// m(m+1)/2 + (n-m-1)m.
inline Graph generate_ba(const BaParams& p, Rng& rng) {
  if (p.m < 1 || p.n <= p.m) throw InputError("ba: need n > m >= 1");
  if (!(p.power >= 0.0)) throw InputError("ba: power must be >= 0");

  const std::size_t n = p.n;
  const std::size_t m = p.m;
  auto attach_weight = [&](std::size_t deg) {
    return std::pow(static_cast<double>(deg), p.power) + 1.0;
  };

  EdgeList edges;
  edges.reserve(m * (m + 1) / 2 + (n - m - 1) * m);
  std::vector<std::size_t> deg(n, 0);
  detail::WeightTree weights(n);

  for (std::size_t a = 0; a <= m; ++a) {
    for (std::size_t b = a + 1; b <= m; ++b) {
      edges.emplace_back(static_cast<NodeId>(a), static_cast<NodeId>(b));
    }
    deg[a] = m;
    weights.set(a, attach_weight(m));
  }

  std::vector<std::size_t> chosen;
  chosen.reserve(m);
  for (std::size_t t = m + 1; t < n; ++t) {
    chosen.clear();
    while (chosen.size() < m) {
      double r = uniform01(rng) * weights.total();
      // clamp handles the r == total() floating corner; only nodes < t exist
      std::size_t target = std::min(weights.sample(r), t - 1);
      if (std::find(chosen.begin(), chosen.end(), target) != chosen.end()) continue;
      chosen.push_back(target);
    }
    for (std::size_t target : chosen) {
      edges.emplace_back(static_cast<NodeId>(t), static_cast<NodeId>(target));
      deg[target] += 1;
      weights.set(target, attach_weight(deg[target]));
    }
    deg[t] = m;
    weights.set(t, attach_weight(m));
  }

  return build_graph(std::move(edges), n);
}

}  // namespace seedsim
