#pragma once

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "chipfire/error.hpp"
#include "chipfire/types.hpp"

namespace chipfire {

/// Throws InvalidVertexName unless `name` is nonempty, has no comma or line
/// break, and no leading or trailing whitespace.
void validate_vertex_name(std::string_view name);

struct EdgeSpec {
  std::string u;
  std::string v;
  int multiplicity = 1;
};

/// Finite, connected, loopless multigraph. Vertices are stored in canonical
/// (lexicographic) order and addressed by their index in that order.
/// Immutable after construction.
class Multigraph {
 public:
  struct Edge {
    Index u;  // u < v
    Index v;
    int multiplicity;
  };
  struct Neighbor {
    Index vertex;
    int multiplicity;
  };

  /// Validates and builds. Repeated pairs in `edges` are summed.
  static Multigraph build(std::span<const std::string> vertices, std::span<const EdgeSpec> edges);

  Index num_vertices() const noexcept { return static_cast<Index>(names_.size()); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::string& name(Index v) const { return names_.at(static_cast<std::size_t>(v)); }

  std::optional<Index> find(std::string_view name) const;
  /// Like find(), but throws UnknownVertex.
  Index index_of(std::string_view name) const;

  /// Distinct adjacent pairs in canonical pair order.
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  /// Position of the pair {u, v} in edges(), or -1.
  Index edge_index(Index u, Index v) const;
  int multiplicity(Index u, Index v) const;
  std::span<const Neighbor> neighbors(Index v) const {
    return adjacency_[static_cast<std::size_t>(v)];
  }
  int valence(Index v) const { return valence_[static_cast<std::size_t>(v)]; }

  /// |E| counted with multiplicity.
  long edge_count() const noexcept { return edge_count_; }
  long genus() const noexcept { return edge_count_ - static_cast<long>(names_.size()) + 1; }

  friend bool operator==(const Multigraph& a, const Multigraph& b);

 private:
  Multigraph() = default;

  std::vector<std::string> names_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Neighbor>> adjacency_;
  std::vector<int> valence_;
  std::vector<Index> pair_to_edge_;  // n*n, -1 where not adjacent
  long edge_count_ = 0;
};

using GraphPtr = std::shared_ptr<const Multigraph>;

GraphPtr build_graph(std::span<const std::string> vertices, std::span<const EdgeSpec> edges);
GraphPtr build_graph(std::initializer_list<std::string> vertices, std::initializer_list<EdgeSpec> edges);

struct GraphStats {
  std::vector<int> valence;  // canonical order
  long edge_count;
  long genus;
};

GraphStats graph_stats(const Multigraph& graph);

/// Laplacian L = Deg - A in canonical vertex order.
template <typename Scalar = Chip>
Matrix<Scalar> laplacian(const Multigraph& graph) {
  const Index n = graph.num_vertices();
  Matrix<Scalar> lap = Matrix<Scalar>::Zero(n, n);
  for (const auto& e : graph.edges()) {
    lap(e.u, e.v) -= Scalar(e.multiplicity);
    lap(e.v, e.u) -= Scalar(e.multiplicity);
    lap(e.u, e.u) += Scalar(e.multiplicity);
    lap(e.v, e.v) += Scalar(e.multiplicity);
  }
  return lap;
}

/// Adjacency matrix with multiplicities.
template <typename Scalar = Chip>
Matrix<Scalar> adjacency(const Multigraph& graph) {
  const Index n = graph.num_vertices();
  Matrix<Scalar> adj = Matrix<Scalar>::Zero(n, n);
  for (const auto& e : graph.edges()) {
    adj(e.u, e.v) = Scalar(e.multiplicity);
    adj(e.v, e.u) = Scalar(e.multiplicity);
  }
  return adj;
}

/// Unit-length hop distance from q, indexed by canonical vertex index.
std::vector<int> bfs_distances(const Multigraph& graph, Index q);
std::map<std::string, int> bfs_distances(const Multigraph& graph, std::string_view q);

}  // namespace chipfire
