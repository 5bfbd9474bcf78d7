#include "chipfire/divisor.hpp"

#include <set>

#include "chipfire/enumeration.hpp"
#include "chipfire/reduction.hpp"

namespace chipfire {
namespace {

ChipVector assign(const Multigraph& g, const Assignments& assignments) {
  ChipVector values = ChipVector::Zero(g.num_vertices());
  std::vector<char> seen(static_cast<std::size_t>(g.num_vertices()), 0);
  for (const auto& [name, value] : assignments) {
    const Index v = g.index_of(name);
    if (seen[static_cast<std::size_t>(v)]) {
      throw Error(ErrorCode::DuplicateAssignment, "vertex '" + name + "' assigned twice");
    }
    seen[static_cast<std::size_t>(v)] = 1;
    values(v) = value;
  }
  return values;
}

std::string render(const Multigraph& g, const ChipVector& values) {
  std::string out;
  for (Index v = 0; v < g.num_vertices(); ++v) {
    if (v > 0) out += ", ";
    out += g.name(v) + ": " + std::to_string(values(v));
  }
  return out;
}

}  // namespace

Divisor::Divisor(GraphPtr graph, ChipVector chips) : graph_(std::move(graph)), chips_(std::move(chips)) {
  if (!graph_ || chips_.size() != graph_->num_vertices()) {
    throw Error(ErrorCode::GraphMismatch, "chip vector does not match the graph's vertex count");
  }
}

Divisor Divisor::zero(GraphPtr graph) {
  const Index n = graph->num_vertices();
  return {std::move(graph), ChipVector::Zero(n)};
}

bool operator==(const Divisor& a, const Divisor& b) {
  return same_graph(*a.graph_, *b.graph_) && a.chips_ == b.chips_;
}

Divisor operator+(const Divisor& a, const Divisor& b) {
  require_same_graph(*a.graph_, *b.graph_);
  return {a.graph_, a.chips_ + b.chips_};
}

Divisor operator-(const Divisor& a, const Divisor& b) {
  require_same_graph(*a.graph_, *b.graph_);
  return {a.graph_, a.chips_ - b.chips_};
}

FiringScript::FiringScript(GraphPtr graph, ChipVector net) : graph_(std::move(graph)), net_(std::move(net)) {
  if (!graph_ || net_.size() != graph_->num_vertices()) {
    throw Error(ErrorCode::GraphMismatch, "script does not match the graph's vertex count");
  }
}

FiringScript FiringScript::zero(GraphPtr graph) {
  const Index n = graph->num_vertices();
  return {std::move(graph), ChipVector::Zero(n)};
}

bool operator==(const FiringScript& a, const FiringScript& b) {
  return same_graph(*a.graph_, *b.graph_) && a.net_ == b.net_;
}

FiringScript operator+(const FiringScript& a, const FiringScript& b) {
  require_same_graph(*a.graph_, *b.graph_);
  return {a.graph_, a.net_ + b.net_};
}

Divisor make_divisor(GraphPtr graph, const Assignments& assignments) {
  auto values = assign(*graph, assignments);
  return {std::move(graph), std::move(values)};
}

FiringScript make_script(GraphPtr graph, const Assignments& assignments) {
  auto values = assign(*graph, assignments);
  return {std::move(graph), std::move(values)};
}

bool same_graph(const Multigraph& a, const Multigraph& b) { return &a == &b || a == b; }

void require_same_graph(const Multigraph& a, const Multigraph& b) {
  if (!same_graph(a, b)) throw Error(ErrorCode::GraphMismatch, "objects live on different graphs");
}

DivisorMetrics divisor_metrics(const Divisor& d) { return {degree(d), is_effective(d)}; }

std::string_view to_string(Move::Kind kind) {
  switch (kind) {
    case Move::Kind::Lend: return "lend";
    case Move::Kind::Borrow: return "borrow";
    case Move::Kind::SetFire: return "set_fire";
  }
  return "unknown";
}

Divisor apply_move(const Divisor& d, const Move& move) {
  const auto& g = d.graph();
  ChipVector sigma = ChipVector::Zero(g.num_vertices());
  switch (move.kind) {
    case Move::Kind::Lend:
    case Move::Kind::Borrow:
      if (move.vertices.size() != 1) {
        throw Error(ErrorCode::InvalidParameter,
                    std::string(to_string(move.kind)) + " takes exactly one vertex");
      }
      sigma(g.index_of(move.vertices.front())) = move.kind == Move::Kind::Lend ? 1 : -1;
      break;
    case Move::Kind::SetFire: {
      // duplicates in the list name the same vertex once
      for (const auto& name : move.vertices) sigma(g.index_of(name)) = 1;
      break;
    }
  }
  return apply_script(d, FiringScript(d.graph_ptr(), std::move(sigma)));
}

Divisor apply_script(const Divisor& d, const FiringScript& script) {
  require_same_graph(d.graph(), script.graph());
  return {d.graph_ptr(), d.chips() - laplacian(d.graph()) * script.net()};
}

Divisor principal_divisor(const FiringScript& script) {
  return {script.graph_ptr(), laplacian(script.graph()) * script.net()};
}

Divisor canonical_divisor(GraphPtr graph) {
  ChipVector k(graph->num_vertices());
  for (Index v = 0; v < k.size(); ++v) k(v) = graph->valence(v) - 2;
  return {std::move(graph), std::move(k)};
}

bool linear_equivalence(const Divisor& a, const Divisor& b) {
  require_same_graph(a.graph(), b.graph());
  if (degree(a) != degree(b)) return false;
  const auto& q0 = a.graph().name(0);
  return q_reduce(a, q0).divisor.chips() == q_reduce(b, q0).divisor.chips();
}

std::size_t stars_and_bars(long total, long slots, std::size_t limit) {
  if (total < 0 || slots <= 0) return total == 0 && slots == 0 ? 1 : 0;
  // C(total + slots - 1, slots - 1) built incrementally; each partial
  // product C(total + i, i) is an integer.
  unsigned __int128 value = 1;
  for (long i = 1; i < slots; ++i) {
    value = value * static_cast<unsigned __int128>(total + i) / static_cast<unsigned __int128>(i);
    if (value > limit) return limit + 1;
  }
  return static_cast<std::size_t>(value);
}

std::vector<Divisor> complete_linear_system(const Divisor& d, std::size_t cap) {
  const Chip deg = degree(d);
  std::vector<Divisor> out;
  if (deg < 0) return out;
  const auto candidates = enumerate_effective(d.graph_ptr(), deg);
  const auto count = candidates.size(cap);
  if (count > cap) {
    throw Error(ErrorCode::EnumerationTooLarge,
                "complete linear system has more than " + std::to_string(cap) + " candidates");
  }
  const auto& q0 = d.graph().name(0);
  const ChipVector target = q_reduce(d, q0).divisor.chips();
  for (const auto& chips : candidates) {
    Divisor e(d.graph_ptr(), chips);
    if (q_reduce(e, q0).divisor.chips() == target) out.push_back(std::move(e));
  }
  return out;
}

std::string to_string(const Divisor& d) { return render(d.graph(), d.chips()); }
std::string to_string(const FiringScript& s) { return render(s.graph(), s.net()); }

}  // namespace chipfire
