#pragma once

#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include <unistd.h>

#include "seedsim.hpp"

namespace th {

using namespace seedsim;

// Scratch directory wiped on scope exit.
struct TempDir {
  std::filesystem::path path;
  TempDir() {
    static int counter = 0;
    path = std::filesystem::temp_directory_path() /
           ("seedsim_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
};

inline Graph graph_of(std::size_t n, std::initializer_list<std::pair<NodeId, NodeId>> edges) {
  EdgeList list;
  for (const auto& e : edges) list.push_back(e);
  return build_graph(std::move(list), n);
}

// Sample with exactly the given directed slots live; every pair must name an
// existing edge direction.
inline LiveEdgeSample sample_of(const Graph& g,
                                std::initializer_list<std::pair<NodeId, NodeId>> live) {
  LiveEdgeSample s;
  s.live.assign(g.directed_slot_count(), 0);
  for (const auto& [u, v] : live) {
    auto slot = g.slot_of(u, v);
    REQUIRE(slot.has_value());
    s.live[*slot] = 1;
  }
  return s;
}

inline Ranking ranking_of(std::vector<NodeId> order) {
  Ranking r;
  r.order = std::move(order);
  return r;
}

// Structural sanity: sorted unique neighbor lists, no self-loops, symmetric
// adjacency, degree sum twice the edge count.
inline void check_valid(const Graph& g) {
  std::size_t degree_sum = 0;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    auto nb = g.neighbors(v);
    degree_sum += nb.size();
    for (std::size_t j = 0; j < nb.size(); ++j) {
      REQUIRE(nb[j] != v);
      REQUIRE(nb[j] < g.node_count());
      if (j > 0) REQUIRE(nb[j - 1] < nb[j]);
      REQUIRE(g.has_edge(nb[j], v));
    }
  }
  REQUIRE(degree_sum == 2 * g.edge_count());
}

// Sparse uniform multigraph draw collapsed to a simple graph.
inline Graph random_graph(Rng& rng, std::size_t n, double avg_degree = 3.0) {
  EdgeList edges;
  const auto draws = static_cast<std::size_t>(avg_degree * static_cast<double>(n) / 2.0);
  for (std::size_t i = 0; i < draws; ++i) {
    auto a = static_cast<NodeId>(uniform_below(rng, n));
    auto b = static_cast<NodeId>(uniform_below(rng, n));
    if (a != b) edges.emplace_back(a, b);
  }
  return build_graph(std::move(edges), n);
}

inline std::size_t bfs_eccentricity(const Graph& g, NodeId source) {
  std::vector<std::size_t> dist(g.node_count(), static_cast<std::size_t>(-1));
  std::vector<NodeId> queue{source};
  dist[source] = 0;
  std::size_t ecc = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    NodeId u = queue[head];
    for (NodeId v : g.neighbors(u)) {
      if (dist[v] == static_cast<std::size_t>(-1)) {
        dist[v] = dist[u] + 1;
        ecc = std::max(ecc, dist[v]);
        queue.push_back(v);
      }
    }
  }
  return ecc;
}

}  // namespace th
