#include "chipfire/configuration.hpp"

#include <algorithm>

#include "kernels.hpp"

namespace chipfire {
namespace {

std::vector<char> resolve_set(const Configuration& c, const VertexSet& s) {
  std::vector<char> in(static_cast<std::size_t>(c.graph().num_vertices()), 0);
  for (const auto& name : s) {
    const Index v = c.graph().index_of(name);
    if (v == c.q()) throw Error(ErrorCode::QInS, "q = '" + name + "' may not be in S");
    in[static_cast<std::size_t>(v)] = 1;
  }
  return in;
}

long outdeg(const Multigraph& g, Index v, const std::vector<char>& in) {
  long out = 0;
  for (const auto& nb : g.neighbors(v))
    if (!in[static_cast<std::size_t>(nb.vertex)]) out += nb.multiplicity;
  return out;
}

}  // namespace

Configuration::Configuration(Divisor divisor, Index q) : divisor_(std::move(divisor)), q_(q) {
  if (q_ < 0 || q_ >= divisor_.graph().num_vertices()) {
    throw Error(ErrorCode::UnknownVertex, "q index out of range");
  }
}

bool Configuration::nonnegative() const {
  for (Index v = 0; v < divisor_.chips().size(); ++v)
    if (v != q_ && divisor_[v] < 0) return false;
  return true;
}

std::vector<std::string> Configuration::v_tilde_names() const {
  std::vector<std::string> out;
  for (Index v = 0; v < graph().num_vertices(); ++v)
    if (v != q_) out.push_back(graph().name(v));
  return out;
}

Configuration make_config(const Divisor& d, std::string_view q) {
  return {d, d.graph().index_of(q)};
}

long outdeg_S(const Configuration& c, std::string_view v, const VertexSet& s) {
  const auto in = resolve_set(c, s);
  const Index vi = c.graph().index_of(v);
  if (!in[static_cast<std::size_t>(vi)]) {
    throw Error(ErrorCode::VertexNotInS, "vertex '" + std::string(v) + "' is not in S");
  }
  return outdeg(c.graph(), vi, in);
}

SetFiring legal_set_fire(const Configuration& c, const VertexSet& s) {
  if (s.empty()) throw Error(ErrorCode::EmptyS, "set-firing needs a nonempty S");
  const auto in = resolve_set(c, s);
  const auto& g = c.graph();
  ChipVector chips = c.divisor().chips();
  for (Index v = 0; v < g.num_vertices(); ++v) {
    if (!in[static_cast<std::size_t>(v)]) continue;
    for (const auto& nb : g.neighbors(v)) {
      if (in[static_cast<std::size_t>(nb.vertex)]) continue;
      chips(v) -= nb.multiplicity;
      chips(nb.vertex) += nb.multiplicity;
    }
  }
  bool legal = true;
  for (Index v = 0; v < g.num_vertices(); ++v)
    if (in[static_cast<std::size_t>(v)] && chips(v) < 0) legal = false;
  return {legal, Configuration(Divisor(c.divisor().graph_ptr(), std::move(chips)), c.q())};
}

Superstability is_superstable(const Configuration& c) {
  if (!c.nonnegative()) {
    throw Error(ErrorCode::NegativeConfiguration, "superstability needs c >= 0 off q");
  }
  detail::Workspace ws;
  const bool superstable = !detail::burn(c.graph(), c.divisor().chips(), c.q(), ws);
  return {superstable, superstable && c.degree_sum() == c.graph().genus()};
}

std::vector<Configuration> enumerate_superstables(GraphPtr graph, std::string_view q, std::size_t cap) {
  const Index qi = graph->index_of(q);
  const Index n = graph->num_vertices();
  std::size_t box = 1;
  for (Index v = 0; v < n; ++v) {
    if (v == qi) continue;
    box *= static_cast<std::size_t>(graph->valence(v));
    if (box > cap) {
      throw Error(ErrorCode::EnumerationTooLarge,
                  "superstable search box exceeds " + std::to_string(cap));
    }
  }
  std::vector<Configuration> out;
  detail::Workspace ws;
  ChipVector chips = ChipVector::Zero(n);
  // odometer over the box, last vertex fastest, so output is lexicographic
  while (true) {
    if (!detail::burn(*graph, chips, qi, ws)) out.emplace_back(Divisor(graph, chips), qi);
    Index v = n - 1;
    for (; v >= 0; --v) {
      if (v == qi) continue;
      if (chips(v) + 1 < graph->valence(v)) {
        chips(v) += 1;
        break;
      }
      chips(v) = 0;
    }
    if (v < 0) break;
  }
  return out;
}

}  // namespace chipfire
