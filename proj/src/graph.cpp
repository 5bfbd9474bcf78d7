#include "chipfire/graph.hpp"

#include <algorithm>
#include <cctype>
#include <queue>

namespace chipfire {

void validate_vertex_name(std::string_view name) {
  if (name.empty()) {
    throw Error(ErrorCode::InvalidVertexName, "vertex name is empty");
  }
  if (name.find_first_of(",\n\r") != std::string_view::npos) {
    throw Error(ErrorCode::InvalidVertexName,
                "vertex name '" + std::string(name) + "' contains a comma or line break");
  }
  auto is_space = [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; };
  if (is_space(name.front()) || is_space(name.back())) {
    throw Error(ErrorCode::InvalidVertexName,
                "vertex name '" + std::string(name) + "' has surrounding whitespace");
  }
}

Multigraph Multigraph::build(std::span<const std::string> vertices, std::span<const EdgeSpec> edges) {
  if (vertices.empty()) {
    throw Error(ErrorCode::EmptyVertexSet, "graph needs at least one vertex");
  }
  Multigraph g;
  g.names_.assign(vertices.begin(), vertices.end());
  for (const auto& name : g.names_) validate_vertex_name(name);
  std::sort(g.names_.begin(), g.names_.end());
  if (auto dup = std::adjacent_find(g.names_.begin(), g.names_.end()); dup != g.names_.end()) {
    throw Error(ErrorCode::DuplicateVertex, "vertex '" + *dup + "' listed twice");
  }

  const auto n = static_cast<std::size_t>(g.names_.size());
  std::vector<long> mult(n * n, 0);
  for (const auto& spec : edges) {
    const Index u = g.index_of(spec.u);
    const Index v = g.index_of(spec.v);
    if (u == v) {
      throw Error(ErrorCode::LoopEdge, "loop at vertex '" + spec.u + "'");
    }
    if (spec.multiplicity <= 0) {
      throw Error(ErrorCode::NonpositiveMultiplicity,
                  "edge " + spec.u + "-" + spec.v + " has multiplicity " +
                      std::to_string(spec.multiplicity));
    }
    const auto lo = static_cast<std::size_t>(std::min(u, v));
    const auto hi = static_cast<std::size_t>(std::max(u, v));
    mult[lo * n + hi] += spec.multiplicity;
  }

  g.adjacency_.resize(n);
  g.valence_.assign(n, 0);
  g.pair_to_edge_.assign(n * n, -1);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      const long m = mult[u * n + v];
      if (m == 0) continue;
      const auto id = static_cast<Index>(g.edges_.size());
      g.edges_.push_back({static_cast<Index>(u), static_cast<Index>(v), static_cast<int>(m)});
      g.pair_to_edge_[u * n + v] = id;
      g.pair_to_edge_[v * n + u] = id;
      g.edge_count_ += m;
    }
  }
  for (const auto& e : g.edges_) {
    g.adjacency_[static_cast<std::size_t>(e.u)].push_back({e.v, e.multiplicity});
    g.adjacency_[static_cast<std::size_t>(e.v)].push_back({e.u, e.multiplicity});
    g.valence_[static_cast<std::size_t>(e.u)] += e.multiplicity;
    g.valence_[static_cast<std::size_t>(e.v)] += e.multiplicity;
  }
  for (auto& adj : g.adjacency_) {
    std::sort(adj.begin(), adj.end(), [](auto a, auto b) { return a.vertex < b.vertex; });
  }

  const auto dist = bfs_distances(g, 0);
  if (auto it = std::find(dist.begin(), dist.end(), -1); it != dist.end()) {
    throw Error(ErrorCode::Disconnected,
                "vertex '" + g.names_[static_cast<std::size_t>(it - dist.begin())] +
                    "' is not reachable from '" + g.names_.front() + "'");
  }
  return g;
}

std::optional<Index> Multigraph::find(std::string_view name) const {
  auto it = std::lower_bound(names_.begin(), names_.end(), name);
  if (it == names_.end() || *it != name) return std::nullopt;
  return static_cast<Index>(it - names_.begin());
}

Index Multigraph::index_of(std::string_view name) const {
  if (auto idx = find(name)) return *idx;
  throw Error(ErrorCode::UnknownVertex, "unknown vertex '" + std::string(name) + "'");
}

Index Multigraph::edge_index(Index u, Index v) const {
  const auto n = static_cast<std::size_t>(names_.size());
  return pair_to_edge_[static_cast<std::size_t>(u) * n + static_cast<std::size_t>(v)];
}

int Multigraph::multiplicity(Index u, Index v) const {
  const Index e = edge_index(u, v);
  return e < 0 ? 0 : edges_[static_cast<std::size_t>(e)].multiplicity;
}

bool operator==(const Multigraph& a, const Multigraph& b) {
  if (a.names_ != b.names_ || a.edges_.size() != b.edges_.size()) return false;
  for (std::size_t i = 0; i < a.edges_.size(); ++i) {
    const auto& x = a.edges_[i];
    const auto& y = b.edges_[i];
    if (x.u != y.u || x.v != y.v || x.multiplicity != y.multiplicity) return false;
  }
  return true;
}

GraphPtr build_graph(std::span<const std::string> vertices, std::span<const EdgeSpec> edges) {
  return std::make_shared<const Multigraph>(Multigraph::build(vertices, edges));
}

GraphPtr build_graph(std::initializer_list<std::string> vertices,
                     std::initializer_list<EdgeSpec> edges) {
  return build_graph(std::span(vertices.begin(), vertices.size()),
                     std::span(edges.begin(), edges.size()));
}

GraphStats graph_stats(const Multigraph& graph) {
  GraphStats stats;
  stats.valence.reserve(static_cast<std::size_t>(graph.num_vertices()));
  for (Index v = 0; v < graph.num_vertices(); ++v) stats.valence.push_back(graph.valence(v));
  stats.edge_count = graph.edge_count();
  stats.genus = graph.genus();
  return stats;
}

std::vector<int> bfs_distances(const Multigraph& graph, Index q) {
  std::vector<int> dist(static_cast<std::size_t>(graph.num_vertices()), -1);
  std::queue<Index> frontier;
  dist[static_cast<std::size_t>(q)] = 0;
  frontier.push(q);
  while (!frontier.empty()) {
    const Index v = frontier.front();
    frontier.pop();
    for (const auto& nb : graph.neighbors(v)) {
      auto& d = dist[static_cast<std::size_t>(nb.vertex)];
      if (d < 0) {
        d = dist[static_cast<std::size_t>(v)] + 1;
        frontier.push(nb.vertex);
      }
    }
  }
  return dist;
}

std::map<std::string, int> bfs_distances(const Multigraph& graph, std::string_view q) {
  const auto dist = bfs_distances(graph, graph.index_of(q));
  std::map<std::string, int> out;
  for (Index v = 0; v < graph.num_vertices(); ++v) {
    out.emplace(graph.name(v), dist[static_cast<std::size_t>(v)]);
  }
  return out;
}

}  // namespace chipfire
