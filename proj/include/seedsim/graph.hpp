#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <istream>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "seedsim/errors.hpp"

namespace seedsim {

using NodeId = std::uint32_t;
using EdgeList = std::vector<std::pair<NodeId, NodeId>>;

// Immutable undirected simple graph in compressed adjacency form. Neighbor
// lists are sorted ascending; adjacency is symmetric and free of self-loops
// and duplicates. Each undirected edge {u, v} occupies two directed slots,
// u->v and v->u, addressed by slot_index(); the diffusion layer flips one
// coin per slot.
class Graph {
 public:
  Graph() = default;

  std::size_t node_count() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const { return adjacency_.size() / 2; }

  std::span<const NodeId> neighbors(NodeId v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }

  std::size_t degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }

  bool has_edge(NodeId u, NodeId v) const {
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
  }

  // Directed slot addressing: slot of the j-th out-neighbor of u.
  std::size_t directed_slot_count() const { return adjacency_.size(); }
  std::size_t slot_index(NodeId u, std::size_t j) const { return offsets_[u] + j; }

  // Slot of the directed pair u->v, if the edge exists.
  std::optional<std::size_t> slot_of(NodeId u, NodeId v) const {
    auto nb = neighbors(u);
    auto it = std::lower_bound(nb.begin(), nb.end(), v);
    if (it == nb.end() || *it != v) return std::nullopt;
    return offsets_[u] + static_cast<std::size_t>(it - nb.begin());
  }

  friend bool operator==(const Graph&, const Graph&) = default;

  friend Graph build_graph(EdgeList edges, std::optional<std::size_t> node_count);

 private:
  std::vector<std::size_t> offsets_;  // node_count + 1
  std::vector<NodeId> adjacency_;     // 2 * edge_count
};

// Normalizes an edge list into a Graph: drops self-loops, collapses
// duplicate and reversed-duplicate pairs into one undirected edge. Node
// count defaults to max id + 1.
inline Graph build_graph(EdgeList edges, std::optional<std::size_t> node_count = std::nullopt) {
  std::size_t n = 0;
  if (node_count) {
    n = *node_count;
    for (const auto& [a, b] : edges) {
      if (a >= n || b >= n) {
        throw InputError("edge endpoint " + std::to_string(std::max(a, b)) +
                         " out of range for node count " + std::to_string(n));
      }
    }
  } else {
    for (const auto& [a, b] : edges) n = std::max<std::size_t>(n, std::max(a, b) + std::size_t{1});
  }

  for (auto& [a, b] : edges) {
    if (a > b) std::swap(a, b);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  std::erase_if(edges, [](const auto& e) { return e.first == e.second; });

  Graph g;
  g.offsets_.assign(n + 1, 0);
  for (const auto& [a, b] : edges) {
    ++g.offsets_[a + 1];
    ++g.offsets_[b + 1];
  }
  for (std::size_t v = 0; v < n; ++v) g.offsets_[v + 1] += g.offsets_[v];

  g.adjacency_.resize(2 * edges.size());
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& [a, b] : edges) {
    g.adjacency_[cursor[a]++] = b;
    g.adjacency_[cursor[b]++] = a;
  }
  // Sorted insertion order per node is guaranteed for the lower endpoint only;
  // sort each list to make it hold everywhere.
  for (std::size_t v = 0; v < n; ++v) {
    std::sort(g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]),
              g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]));
  }
  return g;
}

struct EdgeListOptions {
  char delimiter = '\0';              // '\0' means any whitespace
  std::string comment_prefix = "#";   // lines starting with this are skipped
  long long index_base = 0;           // subtracted from every parsed id
};

// A loaded graph plus the original node labels, indexed by dense node id.
struct LoadedGraph {
  Graph graph;
  std::vector<long long> labels;
};

namespace detail {

inline bool parse_int_token(std::string_view tok, long long& out) {
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc{} && ptr == tok.data() + tok.size();
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace detail

// Parses an edge-list stream: one edge per line, two integer endpoints,
// extra tokens (weights, timestamps) ignored. Node ids are re-indexed
// densely from 0 in first-appearance order; original labels are kept in
// the side table for reporting.
inline LoadedGraph load_edge_list(std::istream& in, const EdgeListOptions& opts = {}) {
  EdgeList edges;
  std::unordered_map<long long, NodeId> dense;
  std::vector<long long> labels;

  auto intern = [&](long long label) {
    auto [it, inserted] = dense.emplace(label, static_cast<NodeId>(labels.size()));
    if (inserted) labels.push_back(label);
    return it->second;
  };

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view sv = detail::trim(line);
    if (sv.empty()) continue;
    if (!opts.comment_prefix.empty() && sv.starts_with(opts.comment_prefix)) continue;

    long long endpoint[2];
    int found = 0;
    std::size_t pos = 0;
    while (found < 2) {
      // next token
      std::string_view tok;
      if (opts.delimiter == '\0') {
        while (pos < sv.size() && (sv[pos] == ' ' || sv[pos] == '\t')) ++pos;
        std::size_t start = pos;
        while (pos < sv.size() && sv[pos] != ' ' && sv[pos] != '\t') ++pos;
        tok = sv.substr(start, pos - start);
      } else {
        std::size_t end = sv.find(opts.delimiter, pos);
        tok = detail::trim(sv.substr(pos, end == std::string_view::npos ? end : end - pos));
        pos = (end == std::string_view::npos) ? sv.size() : end + 1;
      }
      if (tok.empty()) {
        if (pos >= sv.size()) throw ParseError(lineno, "expected two node ids");
        continue;
      }
      long long value;
      if (!detail::parse_int_token(tok, value)) {
        throw ParseError(lineno, "non-integer node id '" + std::string(tok) + "'");
      }
      if (value < opts.index_base) {
        throw ParseError(lineno, "node id " + std::to_string(value) + " below index base " +
                                     std::to_string(opts.index_base));
      }
      endpoint[found++] = value;
    }
    // interning order assigns ids by first appearance, so sequence it
    const NodeId u = intern(endpoint[0]);
    const NodeId v = intern(endpoint[1]);
    edges.emplace_back(u, v);
  }

  if (labels.empty()) throw InputError("edge list is empty");
  return {build_graph(std::move(edges), labels.size()), std::move(labels)};
}

inline LoadedGraph load_edge_list_file(const std::string& path, const EdgeListOptions& opts = {}) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open edge list file: " + path);
  return load_edge_list(in, opts);
}

}  // namespace seedsim
