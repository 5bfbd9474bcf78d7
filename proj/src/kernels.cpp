#include "kernels.hpp"

#include <algorithm>

#include "chipfire/error.hpp"

namespace chipfire::detail {

bool burn(const Multigraph& g, const ChipVector& chips, Index q, Workspace& ws) {
  const auto n = static_cast<std::size_t>(g.num_vertices());
  ws.unburnt.assign(n, 1);
  ws.burning.assign(n, 0);
  ws.stack.clear();
  ws.unburnt[static_cast<std::size_t>(q)] = 0;
  ws.stack.push_back(q);
  std::size_t burnt = 1;
  while (!ws.stack.empty()) {
    const Index v = ws.stack.back();
    ws.stack.pop_back();
    for (const auto& nb : g.neighbors(v)) {
      const auto w = static_cast<std::size_t>(nb.vertex);
      if (!ws.unburnt[w]) continue;
      ws.burning[w] += nb.multiplicity;
      if (ws.burning[w] > chips(nb.vertex)) {
        ws.unburnt[w] = 0;
        ws.stack.push_back(nb.vertex);
        ++burnt;
      }
    }
  }
  return burnt < n;
}

void concentrate(const Multigraph& g, ChipVector& chips, Index q, ChipVector* script, Workspace& ws,
                 const StepSink* sink) {
  ws.dist = bfs_distances(g, q);
  const int max_dist = *std::max_element(ws.dist.begin(), ws.dist.end());
  const Index n = g.num_vertices();
  for (int d = max_dist; d >= 1; --d) {
    // Firing the ball {dist < d} only feeds the shell at distance d, and
    // each shell vertex has at least one edge into the ball.
    Chip times = 0;
    for (Index v = 0; v < n; ++v) {
      if (ws.dist[static_cast<std::size_t>(v)] != d || chips(v) >= 0) continue;
      Chip inner = 0;
      for (const auto& nb : g.neighbors(v))
        if (ws.dist[static_cast<std::size_t>(nb.vertex)] < d) inner += nb.multiplicity;
      times = std::max(times, (-chips(v) + inner - 1) / inner);
    }
    if (times == 0) continue;
    for (Index u = 0; u < n; ++u) {
      if (ws.dist[static_cast<std::size_t>(u)] >= d) continue;
      for (const auto& nb : g.neighbors(u)) {
        if (ws.dist[static_cast<std::size_t>(nb.vertex)] < d) continue;
        chips(u) -= times * nb.multiplicity;
        chips(nb.vertex) += times * nb.multiplicity;
      }
      if (script) (*script)(u) += times;
    }
    if (sink) {
      std::vector<char> fired(static_cast<std::size_t>(n), 0);
      for (Index u = 0; u < n; ++u) fired[static_cast<std::size_t>(u)] = ws.dist[static_cast<std::size_t>(u)] < d;
      (*sink)(fired, times, chips);
    }
  }
}

std::size_t fire_until_superstable(const Multigraph& g, ChipVector& chips, Index q, ChipVector* script,
                                   std::size_t ceiling, Workspace& ws, const StepSink* sink) {
  const Index n = g.num_vertices();
  std::size_t steps = 0;
  while (burn(g, chips, q, ws)) {
    if (++steps > ceiling) {
      throw Error(ErrorCode::LoopCeiling,
                  "reduction exceeded " + std::to_string(ceiling) + " firing steps");
    }
    // Firing S k times is legal iff c(v) >= k * outdeg_S(v) on S.
    Chip times = -1;
    for (Index v = 0; v < n; ++v) {
      if (!ws.unburnt[static_cast<std::size_t>(v)]) continue;
      Chip out = 0;
      for (const auto& nb : g.neighbors(v))
        if (!ws.unburnt[static_cast<std::size_t>(nb.vertex)]) out += nb.multiplicity;
      if (out > 0) {
        const Chip k = chips(v) / out;
        times = times < 0 ? k : std::min(times, k);
      }
    }
    for (Index v = 0; v < n; ++v) {
      if (!ws.unburnt[static_cast<std::size_t>(v)]) continue;
      for (const auto& nb : g.neighbors(v)) {
        if (ws.unburnt[static_cast<std::size_t>(nb.vertex)]) continue;
        chips(v) -= times * nb.multiplicity;
        chips(nb.vertex) += times * nb.multiplicity;
      }
      if (script) (*script)(v) += times;
    }
    if (sink) (*sink)(ws.unburnt, times, chips);
  }
  return steps;
}

void reduce(const Multigraph& g, ChipVector& chips, Index q, ChipVector* script, std::size_t ceiling,
            Workspace& ws) {
  concentrate(g, chips, q, script, ws);
  fire_until_superstable(g, chips, q, script, ceiling, ws);
}

bool winnable(const Multigraph& g, ChipVector chips, Index q, Workspace& ws) {
  const Chip deg = chips.sum();
  if (deg < 0) return false;
  if (deg >= g.genus()) return true;
  reduce(g, chips, q, nullptr, static_cast<std::size_t>(-1), ws);
  return chips(q) >= 0;
}

}  // namespace chipfire::detail
