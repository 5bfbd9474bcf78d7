#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chipfire/configuration.hpp"

namespace chipfire {

/// Direction of an adjacent pair {u, v} with u before v in canonical order.
/// All parallel edges of the pair share it.
enum class Direction : std::int8_t { Unoriented, Forward, Backward };  // Forward: u -> v

/// Possibly partial orientation, one direction per adjacent pair.
class Orientation {
 public:
  explicit Orientation(GraphPtr graph);
  Orientation(GraphPtr graph, std::vector<Direction> directions);

  const Multigraph& graph() const noexcept { return *graph_; }
  const GraphPtr& graph_ptr() const noexcept { return graph_; }
  const std::vector<Direction>& directions() const noexcept { return dir_; }
  Direction direction(Index edge) const { return dir_[static_cast<std::size_t>(edge)]; }

  /// Orients the pair {from, to} as from -> to. The pair must be adjacent.
  void orient(Index from, Index to);
  bool is_full() const;

  /// (source, sink) pairs of the oriented pairs, canonical pair order.
  std::vector<std::pair<std::string, std::string>> arcs() const;

  friend bool operator==(const Orientation& a, const Orientation& b) {
    return same_graph(*a.graph_, *b.graph_) && a.dir_ == b.dir_;
  }

 private:
  GraphPtr graph_;
  std::vector<Direction> dir_;
};

/// Unlisted pairs stay unoriented. Throws NotAnEdge, ConflictingArc (also for
/// a pair listed twice), UnknownVertex.
Orientation make_orientation(GraphPtr graph,
                             const std::vector<std::pair<std::string, std::string>>& arcs);

std::vector<long> indegrees(const Orientation& o);
std::vector<long> outdegrees(const Orientation& o);

struct OrientationAnalysis {
  std::vector<long> indegree;
  std::vector<long> outdegree;
  bool full;
  // Only filled for full orientations.
  std::vector<std::string> sources;
  std::vector<std::string> sinks;
  bool acyclic = false;
  std::optional<std::string> unique_source;
};

/// Degree bookkeeping always; sources, sinks and acyclicity for full
/// orientations only.
OrientationAnalysis orientation_analysis(const Orientation& o);

/// Throws PartialOrientation.
bool is_acyclic(const Orientation& o);
std::vector<Index> sources(const Orientation& o);

/// D(O)(v) = indeg(v) - 1. Throws PartialOrientation.
Divisor divisor_of_orientation(const Orientation& o);
/// c(O) relative to q.
Configuration config_of_orientation(const Orientation& o, std::string_view q);

Orientation reverse_orientation(const Orientation& o);

/// Full acyclic orientations whose only source is q, in binary counting
/// order over the pairs (bit set = Backward). Throws EnumerationTooLarge
/// if 2^pairs exceeds cap.
std::vector<Orientation> enumerate_acyclic_unique_source(GraphPtr graph, std::string_view q,
                                                         std::size_t cap = kDefaultEnumerationCap);

}  // namespace chipfire
