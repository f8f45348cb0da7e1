#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "seedsim/detail/parallel.hpp"
#include "seedsim/errors.hpp"
#include "seedsim/graph.hpp"
#include "seedsim/rng.hpp"

namespace seedsim {

enum class RankStrategy { Random, Degree, TwoHopDegree, Closeness, Clustering, PageRank };

inline const char* to_string(RankStrategy s) {
  switch (s) {
    case RankStrategy::Random: return "random";
    case RankStrategy::Degree: return "degree";
    case RankStrategy::TwoHopDegree: return "degree2";
    case RankStrategy::Closeness: return "closeness";
    case RankStrategy::Clustering: return "clustering";
    case RankStrategy::PageRank: return "pagerank";
  }
  return "?";
}

inline RankStrategy rank_strategy_from_string(const std::string& s) {
  for (RankStrategy r : {RankStrategy::Random, RankStrategy::Degree, RankStrategy::TwoHopDegree,
                         RankStrategy::Closeness, RankStrategy::Clustering, RankStrategy::PageRank}) {
    if (s == to_string(r)) return r;
  }
  throw InputError("unknown ranking strategy: " + s);
}

// A seed-selection order over all nodes, best first. Scores are indexed by
// node id and empty for the random strategy. Ties break deterministically:
// higher score, then higher degree, then lower node id.
struct Ranking {
  RankStrategy strategy = RankStrategy::Degree;
  std::vector<NodeId> order;
  std::vector<double> scores;
};

// Number of distinct nodes within two hops of v, v excluded.
inline std::size_t two_hop_degree(const Graph& g, NodeId v) {
  std::vector<std::uint8_t> seen(g.node_count(), 0);
  seen[v] = 1;
  std::size_t count = 0;
  for (NodeId u : g.neighbors(v)) {
    if (!seen[u]) {
      seen[u] = 1;
      ++count;
    }
  }
  for (NodeId u : g.neighbors(v)) {
    for (NodeId w : g.neighbors(u)) {
      if (!seen[w]) {
        seen[w] = 1;
        ++count;
      }
    }
  }
  return count;
}

inline std::vector<std::size_t> two_hop_degrees(const Graph& g) {
  const std::size_t n = g.node_count();
  std::vector<std::size_t> result(n, 0);
  detail::parallel_for_blocks(n, 0, [&](std::size_t begin, std::size_t end) {
    std::vector<NodeId> stamp(n, static_cast<NodeId>(-1));
    for (std::size_t v = begin; v < end; ++v) {
      auto vid = static_cast<NodeId>(v);
      stamp[v] = vid;
      std::size_t count = 0;
      for (NodeId u : g.neighbors(vid)) {
        if (stamp[u] != vid) {
          stamp[u] = vid;
          ++count;
        }
      }
      for (NodeId u : g.neighbors(vid)) {
        for (NodeId w : g.neighbors(u)) {
          if (stamp[w] != vid) {
            stamp[w] = vid;
            ++count;
          }
        }
      }
      result[v] = count;
    }
  });
  return result;
}

// Harmonic closeness: sum over reachable u != v of 1 / dist(v, u).
// Unreachable pairs contribute nothing, so disconnected graphs are fine.
inline std::vector<double> closeness_scores(const Graph& g) {
  const std::size_t n = g.node_count();
  std::vector<double> result(n, 0.0);
  detail::parallel_for_blocks(n, 0, [&](std::size_t begin, std::size_t end) {
    std::vector<std::uint32_t> dist(n);
    std::vector<NodeId> queue(n);
    for (std::size_t s = begin; s < end; ++s) {
      std::fill(dist.begin(), dist.end(), std::uint32_t(-1));
      std::size_t head = 0, tail = 0;
      dist[s] = 0;
      queue[tail++] = static_cast<NodeId>(s);
      double sum = 0.0;
      while (head < tail) {
        NodeId u = queue[head++];
        for (NodeId w : g.neighbors(u)) {
          if (dist[w] == std::uint32_t(-1)) {
            dist[w] = dist[u] + 1;
            sum += 1.0 / dist[w];
            queue[tail++] = w;
          }
        }
      }
      result[s] = sum;
    }
  });
  return result;
}

// Local clustering coefficient: edges among neighbors over deg*(deg-1)/2,
// defined as 0 for degree < 2.
inline std::vector<double> clustering_scores(const Graph& g) {
  const std::size_t n = g.node_count();
  std::vector<double> result(n, 0.0);
  detail::parallel_for_blocks(n, 0, [&](std::size_t begin, std::size_t end) {
    for (std::size_t v = begin; v < end; ++v) {
      auto vid = static_cast<NodeId>(v);
      const std::size_t deg = g.degree(vid);
      if (deg < 2) continue;
      auto nb = g.neighbors(vid);
      std::size_t links = 0;
      for (NodeId u : nb) {
        // sorted-list intersection; each neighbor-neighbor edge counted twice
        auto un = g.neighbors(u);
        auto it = nb.begin();
        auto jt = un.begin();
        while (it != nb.end() && jt != un.end()) {
          if (*it < *jt) ++it;
          else if (*jt < *it) ++jt;
          else { ++links; ++it; ++jt; }
        }
      }
      result[v] = static_cast<double>(links / 2) / (static_cast<double>(deg) * (deg - 1) / 2.0);
    }
  });
  return result;
}

struct PageRankOptions {
  double damping = 0.85;
  double tol = 1e-9;
  std::size_t max_iter = 200;
};

struct PageRankResult {
  std::vector<double> scores;
  bool converged = false;
  std::size_t iterations = 0;
};

// Power iteration on the undirected graph with uniform teleport; mass of
// degree-0 nodes is redistributed uniformly. Scores always sum to 1.
inline PageRankResult pagerank_scores(const Graph& g, const PageRankOptions& opts = {}) {
  if (!(opts.damping > 0.0 && opts.damping < 1.0)) {
    throw InputError("pagerank: damping must lie in (0, 1)");
  }
  const std::size_t n = g.node_count();
  PageRankResult res;
  if (n == 0) return res;

  std::vector<double> x(n, 1.0 / static_cast<double>(n));
  std::vector<double> next(n);
  const double teleport = (1.0 - opts.damping) / static_cast<double>(n);

  for (res.iterations = 1; res.iterations <= opts.max_iter; ++res.iterations) {
    double dangling = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
      if (g.degree(static_cast<NodeId>(v)) == 0) dangling += x[v];
    }
    const double base = teleport + opts.damping * dangling / static_cast<double>(n);
    double delta = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
      double in = 0.0;
      for (NodeId u : g.neighbors(static_cast<NodeId>(v))) {
        in += x[u] / static_cast<double>(g.degree(u));
      }
      next[v] = base + opts.damping * in;
      delta += std::abs(next[v] - x[v]);
    }
    x.swap(next);
    if (delta < opts.tol) {
      res.converged = true;
      break;
    }
  }
  res.scores = std::move(x);
  return res;
}

namespace detail {

inline Ranking make_ranking(const Graph& g, RankStrategy strategy, std::vector<double> scores) {
  Ranking r;
  r.strategy = strategy;
  r.scores = std::move(scores);
  r.order.resize(g.node_count());
  std::iota(r.order.begin(), r.order.end(), NodeId{0});
  std::sort(r.order.begin(), r.order.end(), [&](NodeId a, NodeId b) {
    if (r.scores[a] != r.scores[b]) return r.scores[a] > r.scores[b];
    if (g.degree(a) != g.degree(b)) return g.degree(a) > g.degree(b);
    return a < b;
  });
  return r;
}

}  // namespace detail

// Computes the static seed ranking for one strategy. The rng is consumed
// only by the random strategy and may be null otherwise.
inline Ranking rank_nodes(const Graph& g, RankStrategy strategy, Rng* rng = nullptr) {
  const std::size_t n = g.node_count();
  if (n == 0) throw InputError("rank_nodes: graph has no nodes");

  switch (strategy) {
    case RankStrategy::Random: {
      if (rng == nullptr) throw InputError("rank_nodes: random strategy needs an rng");
      Ranking r;
      r.strategy = strategy;
      r.order.resize(n);
      std::iota(r.order.begin(), r.order.end(), NodeId{0});
      for (std::size_t i = n - 1; i > 0; --i) {
        std::size_t j = uniform_below(*rng, i + 1);
        std::swap(r.order[i], r.order[j]);
      }
      return r;
    }
    case RankStrategy::Degree: {
      std::vector<double> scores(n);
      for (std::size_t v = 0; v < n; ++v) scores[v] = static_cast<double>(g.degree(static_cast<NodeId>(v)));
      return detail::make_ranking(g, strategy, std::move(scores));
    }
    case RankStrategy::TwoHopDegree: {
      auto counts = two_hop_degrees(g);
      std::vector<double> scores(counts.begin(), counts.end());
      return detail::make_ranking(g, strategy, std::move(scores));
    }
    case RankStrategy::Closeness:
      return detail::make_ranking(g, strategy, closeness_scores(g));
    case RankStrategy::Clustering:
      return detail::make_ranking(g, strategy, clustering_scores(g));
    case RankStrategy::PageRank:
      return detail::make_ranking(g, strategy, pagerank_scores(g).scores);
  }
  throw InputError("rank_nodes: unknown strategy");
}

}  // namespace seedsim
