#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "chipfire/graph.hpp"

namespace chipfire {

/// Integer chip count on every vertex of a graph. Chips are stored in
/// canonical vertex order.
class Divisor {
 public:
  Divisor(GraphPtr graph, ChipVector chips);
  static Divisor zero(GraphPtr graph);

  const Multigraph& graph() const noexcept { return *graph_; }
  const GraphPtr& graph_ptr() const noexcept { return graph_; }
  const ChipVector& chips() const noexcept { return chips_; }
  Chip operator[](Index v) const { return chips_(v); }
  Chip at(std::string_view vertex) const { return chips_(graph_->index_of(vertex)); }

  friend bool operator==(const Divisor& a, const Divisor& b);
  friend Divisor operator+(const Divisor& a, const Divisor& b);
  friend Divisor operator-(const Divisor& a, const Divisor& b);

 private:
  GraphPtr graph_;
  ChipVector chips_;
};

/// Net firing counts: positive lends, negative borrows, omitted vertices 0.
class FiringScript {
 public:
  FiringScript(GraphPtr graph, ChipVector net);
  static FiringScript zero(GraphPtr graph);

  const Multigraph& graph() const noexcept { return *graph_; }
  const GraphPtr& graph_ptr() const noexcept { return graph_; }
  const ChipVector& net() const noexcept { return net_; }
  Chip operator[](Index v) const { return net_(v); }
  bool empty() const { return net_.isZero(); }

  friend bool operator==(const FiringScript& a, const FiringScript& b);
  friend FiringScript operator+(const FiringScript& a, const FiringScript& b);

 private:
  GraphPtr graph_;
  ChipVector net_;
};

using Assignments = std::vector<std::pair<std::string, Chip>>;

/// Unassigned vertices get 0. Throws UnknownVertex, DuplicateAssignment.
Divisor make_divisor(GraphPtr graph, const Assignments& assignments);
FiringScript make_script(GraphPtr graph, const Assignments& assignments);

/// Same underlying graph: identical pointer or structurally equal.
bool same_graph(const Multigraph& a, const Multigraph& b);
void require_same_graph(const Multigraph& a, const Multigraph& b);

inline Chip degree(const Divisor& d) { return d.chips().sum(); }
inline bool is_effective(const Divisor& d) { return d.chips().size() == 0 || d.chips().minCoeff() >= 0; }

struct DivisorMetrics {
  Chip degree;
  bool effective;
};
DivisorMetrics divisor_metrics(const Divisor& d);

/// A single game move. Vertices are named; they are resolved against the
/// divisor's graph when the move is applied.
struct Move {
  enum class Kind { Lend, Borrow, SetFire };
  Kind kind;
  std::vector<std::string> vertices;  // one vertex for Lend/Borrow

  static Move lend(std::string v) { return {Kind::Lend, {std::move(v)}}; }
  static Move borrow(std::string v) { return {Kind::Borrow, {std::move(v)}}; }
  static Move set_fire(std::vector<std::string> set) { return {Kind::SetFire, std::move(set)}; }

  friend bool operator==(const Move&, const Move&) = default;
};

std::string_view to_string(Move::Kind kind);

/// Moves apply unconditionally; debt may deepen.
Divisor apply_move(const Divisor& d, const Move& move);

/// D - L * sigma.
Divisor apply_script(const Divisor& d, const FiringScript& script);

/// L * sigma; always degree 0.
Divisor principal_divisor(const FiringScript& script);

/// K(v) = val(v) - 2.
Divisor canonical_divisor(GraphPtr graph);

/// True iff the two divisors differ by a principal divisor. Decided by
/// comparing reduced forms at the canonically least vertex.
bool linear_equivalence(const Divisor& a, const Divisor& b);

inline constexpr std::size_t kDefaultEnumerationCap = 1'000'000;

/// Every effective divisor linearly equivalent to `d`. Exhaustive; throws
/// EnumerationTooLarge when the candidate count exceeds `cap`.
std::vector<Divisor> complete_linear_system(const Divisor& d, std::size_t cap = kDefaultEnumerationCap);

/// "Alice: 2, Bob: -3, ..." in canonical order.
std::string to_string(const Divisor& d);
std::string to_string(const FiringScript& s);

/// Number of ways to place `total` chips on `slots` vertices, saturating at
/// `limit + 1` so callers can compare against a cap without overflow.
std::size_t stars_and_bars(long total, long slots, std::size_t limit);

}  // namespace chipfire
