#include "chipfire/orientation.hpp"

#include <queue>

namespace chipfire {
namespace {

void require_full(const Orientation& o) {
  if (!o.is_full()) throw Error(ErrorCode::PartialOrientation, "operation needs a full orientation");
}

// (tail, head) of an oriented pair
std::pair<Index, Index> arc(const Multigraph::Edge& e, Direction d) {
  return d == Direction::Forward ? std::pair{e.u, e.v} : std::pair{e.v, e.u};
}

}  // namespace

Orientation::Orientation(GraphPtr graph)
    : graph_(std::move(graph)), dir_(graph_->edges().size(), Direction::Unoriented) {}

Orientation::Orientation(GraphPtr graph, std::vector<Direction> directions)
    : graph_(std::move(graph)), dir_(std::move(directions)) {
  if (dir_.size() != graph_->edges().size()) {
    throw Error(ErrorCode::GraphMismatch, "direction list does not match the graph's pairs");
  }
}

void Orientation::orient(Index from, Index to) {
  const Index e = graph_->edge_index(from, to);
  if (e < 0) {
    throw Error(ErrorCode::NotAnEdge,
                "'" + graph_->name(from) + "' and '" + graph_->name(to) + "' are not adjacent");
  }
  dir_[static_cast<std::size_t>(e)] = from < to ? Direction::Forward : Direction::Backward;
}

bool Orientation::is_full() const {
  return std::none_of(dir_.begin(), dir_.end(), [](Direction d) { return d == Direction::Unoriented; });
}

std::vector<std::pair<std::string, std::string>> Orientation::arcs() const {
  std::vector<std::pair<std::string, std::string>> out;
  const auto& edges = graph_->edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (dir_[i] == Direction::Unoriented) continue;
    auto [tail, head] = arc(edges[i], dir_[i]);
    out.emplace_back(graph_->name(tail), graph_->name(head));
  }
  return out;
}

Orientation make_orientation(GraphPtr graph, const std::vector<std::pair<std::string, std::string>>& arcs) {
  Orientation o(graph);
  std::vector<char> listed(graph->edges().size(), 0);
  for (const auto& [source, sink] : arcs) {
    const Index u = graph->index_of(source);
    const Index v = graph->index_of(sink);
    const Index e = u == v ? -1 : graph->edge_index(u, v);
    if (e < 0) throw Error(ErrorCode::NotAnEdge, "'" + source + "' -> '" + sink + "' is not an edge");
    if (listed[static_cast<std::size_t>(e)]) {
      throw Error(ErrorCode::ConflictingArc, "pair '" + source + "', '" + sink + "' listed twice");
    }
    listed[static_cast<std::size_t>(e)] = 1;
    o.orient(u, v);
  }
  return o;
}

std::vector<long> indegrees(const Orientation& o) {
  const auto& g = o.graph();
  std::vector<long> in(static_cast<std::size_t>(g.num_vertices()), 0);
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    if (o.directions()[i] == Direction::Unoriented) continue;
    in[static_cast<std::size_t>(arc(g.edges()[i], o.directions()[i]).second)] += g.edges()[i].multiplicity;
  }
  return in;
}

std::vector<long> outdegrees(const Orientation& o) {
  const auto& g = o.graph();
  std::vector<long> out(static_cast<std::size_t>(g.num_vertices()), 0);
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    if (o.directions()[i] == Direction::Unoriented) continue;
    out[static_cast<std::size_t>(arc(g.edges()[i], o.directions()[i]).first)] += g.edges()[i].multiplicity;
  }
  return out;
}

bool is_acyclic(const Orientation& o) {
  require_full(o);
  const auto& g = o.graph();
  const auto n = static_cast<std::size_t>(g.num_vertices());
  std::vector<std::vector<Index>> succ(n);
  std::vector<long> pending(n, 0);
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    auto [tail, head] = arc(g.edges()[i], o.directions()[i]);
    succ[static_cast<std::size_t>(tail)].push_back(head);
    ++pending[static_cast<std::size_t>(head)];
  }
  std::queue<Index> ready;
  for (std::size_t v = 0; v < n; ++v)
    if (pending[v] == 0) ready.push(static_cast<Index>(v));
  std::size_t seen = 0;
  while (!ready.empty()) {
    const Index v = ready.front();
    ready.pop();
    ++seen;
    for (Index w : succ[static_cast<std::size_t>(v)])
      if (--pending[static_cast<std::size_t>(w)] == 0) ready.push(w);
  }
  return seen == n;
}

std::vector<Index> sources(const Orientation& o) {
  require_full(o);
  const auto in = indegrees(o);
  std::vector<Index> out;
  for (std::size_t v = 0; v < in.size(); ++v)
    if (in[v] == 0) out.push_back(static_cast<Index>(v));
  return out;
}

OrientationAnalysis orientation_analysis(const Orientation& o) {
  OrientationAnalysis a;
  a.indegree = indegrees(o);
  a.outdegree = outdegrees(o);
  a.full = o.is_full();
  if (!a.full) return a;
  const auto& g = o.graph();
  for (Index v = 0; v < g.num_vertices(); ++v) {
    if (a.indegree[static_cast<std::size_t>(v)] == 0) a.sources.push_back(g.name(v));
    if (a.outdegree[static_cast<std::size_t>(v)] == 0) a.sinks.push_back(g.name(v));
  }
  a.acyclic = is_acyclic(o);
  if (a.sources.size() == 1) a.unique_source = a.sources.front();
  return a;
}

Divisor divisor_of_orientation(const Orientation& o) {
  require_full(o);
  const auto in = indegrees(o);
  ChipVector chips(static_cast<Index>(in.size()));
  for (std::size_t v = 0; v < in.size(); ++v) chips(static_cast<Index>(v)) = in[v] - 1;
  return {o.graph_ptr(), std::move(chips)};
}

Configuration config_of_orientation(const Orientation& o, std::string_view q) {
  const Index qi = o.graph().index_of(q);
  ChipVector chips = divisor_of_orientation(o).chips();
  chips(qi) = 0;
  return {Divisor(o.graph_ptr(), std::move(chips)), qi};
}

Orientation reverse_orientation(const Orientation& o) {
  auto dirs = o.directions();
  for (auto& d : dirs) {
    if (d == Direction::Forward) d = Direction::Backward;
    else if (d == Direction::Backward) d = Direction::Forward;
  }
  return {o.graph_ptr(), std::move(dirs)};
}

std::vector<Orientation> enumerate_acyclic_unique_source(GraphPtr graph, std::string_view q, std::size_t cap) {
  const Index qi = graph->index_of(q);
  const auto pairs = graph->edges().size();
  if (pairs >= 63 || (std::size_t{1} << pairs) > cap) {
    throw Error(ErrorCode::EnumerationTooLarge,
                "2^" + std::to_string(pairs) + " orientations exceed the cap " + std::to_string(cap));
  }
  std::vector<Orientation> out;
  std::vector<Direction> dirs(pairs);
  for (std::size_t mask = 0; mask < (std::size_t{1} << pairs); ++mask) {
    for (std::size_t i = 0; i < pairs; ++i)
      dirs[i] = (mask >> i) & 1 ? Direction::Backward : Direction::Forward;
    Orientation o(graph, dirs);
    if (!is_acyclic(o)) continue;
    const auto src = sources(o);
    if (src.size() == 1 && src.front() == qi) out.push_back(std::move(o));
  }
  return out;
}

}  // namespace chipfire
