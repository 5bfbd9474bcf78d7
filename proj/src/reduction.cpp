#include "chipfire/reduction.hpp"

#include "kernels.hpp"

namespace chipfire {
namespace {

VertexSet names_of(const Multigraph& g, const std::vector<char>& mask) {
  VertexSet out;
  for (Index v = 0; v < g.num_vertices(); ++v)
    if (mask[static_cast<std::size_t>(v)]) out.insert(g.name(v));
  return out;
}

Index resolve_q(const Multigraph& g, std::string_view q) { return q.empty() ? 0 : g.index_of(q); }

}  // namespace

DharOutcome dhar_burning(const Configuration& c) {
  if (!c.nonnegative()) {
    throw Error(ErrorCode::NegativeConfiguration, "burning needs c >= 0 off q");
  }
  const auto& g = c.graph();
  const Index n = g.num_vertices();
  std::vector<char> burnt(static_cast<std::size_t>(n), 0);
  Orientation orientation(c.divisor().graph_ptr());
  std::vector<std::string> order{c.q_name()};
  burnt[static_cast<std::size_t>(c.q())] = 1;

  bool progress = true;
  while (progress) {
    progress = false;
    for (Index v = 0; v < n; ++v) {
      if (burnt[static_cast<std::size_t>(v)]) continue;
      long burning = 0;
      for (const auto& nb : g.neighbors(v))
        if (burnt[static_cast<std::size_t>(nb.vertex)]) burning += nb.multiplicity;
      if (burning <= c[v]) continue;
      for (const auto& nb : g.neighbors(v))
        if (burnt[static_cast<std::size_t>(nb.vertex)]) orientation.orient(nb.vertex, v);
      burnt[static_cast<std::size_t>(v)] = 1;
      order.push_back(g.name(v));
      progress = true;
      break;
    }
  }

  VertexSet unburnt;
  for (Index v = 0; v < n; ++v)
    if (!burnt[static_cast<std::size_t>(v)]) unburnt.insert(g.name(v));
  return {std::move(unburnt), std::move(orientation), std::move(order)};
}

Reduction concentrate_debt(const Divisor& d, std::string_view q) {
  const auto& g = d.graph();
  const Index qi = g.index_of(q);
  ChipVector chips = d.chips();
  ChipVector script = ChipVector::Zero(g.num_vertices());
  detail::Workspace ws;
  detail::concentrate(g, chips, qi, &script, ws);
  return {Divisor(d.graph_ptr(), std::move(chips)), FiringScript(d.graph_ptr(), std::move(script))};
}

Reduction q_reduce(const Divisor& d, std::string_view q, std::size_t loop_ceiling) {
  const auto& g = d.graph();
  const Index qi = g.index_of(q);
  ChipVector chips = d.chips();
  ChipVector script = ChipVector::Zero(g.num_vertices());
  detail::Workspace ws;
  detail::reduce(g, chips, qi, &script, loop_ceiling, ws);
  return {Divisor(d.graph_ptr(), std::move(chips)), FiringScript(d.graph_ptr(), std::move(script))};
}

bool is_q_reduced(const Divisor& d, std::string_view q) {
  const Configuration c(d, d.graph().index_of(q));
  return c.nonnegative() && is_superstable(c).superstable;
}

EwdResult ewd(const Divisor& d, std::string_view q, bool optimized) {
  const auto& g = d.graph();
  const Index qi = resolve_q(g, q);
  const Chip deg = degree(d);
  EwdResult result{false, std::nullopt, std::nullopt, {}};
  if (optimized && deg < 0) return result;
  if (optimized && deg >= g.genus()) {
    result.winnable = true;
    return result;
  }

  ChipVector chips = d.chips();
  detail::Workspace ws;
  auto phase = EwdStep::Phase::Concentrate;
  const detail::StepSink sink = [&](const std::vector<char>& fired, Chip times, const ChipVector& now) {
    result.log.push_back({phase, result.log.size(), names_of(g, fired), times, now});
  };
  detail::concentrate(g, chips, qi, nullptr, ws, &sink);
  phase = EwdStep::Phase::Dhar;
  detail::fire_until_superstable(g, chips, qi, nullptr, kDefaultLoopCeiling, ws, &sink);
  result.log.push_back({EwdStep::Phase::Dhar, result.log.size(), {}, 0, chips});

  Divisor reduced(d.graph_ptr(), std::move(chips));
  result.winnable = reduced[qi] >= 0;
  result.orientation = dhar_burning(Configuration(reduced, qi)).orientation;
  result.q_reduced = std::move(reduced);
  return result;
}

bool is_winnable(const Divisor& d, bool optimized) {
  if (!optimized) return ewd(d, {}, false).winnable;
  detail::Workspace ws;
  return detail::winnable(d.graph(), d.chips(), 0, ws);
}

}  // namespace chipfire
