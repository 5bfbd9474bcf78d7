#pragma once

#include <set>
#include <string>
#include <vector>

#include "chipfire/divisor.hpp"

namespace chipfire {

/// A divisor seen from a distinguished vertex q. Only the values on
/// V \ {q} matter for configuration queries; the chips at q are kept so the
/// underlying divisor is never lost.
class Configuration {
 public:
  Configuration(Divisor divisor, Index q);

  const Divisor& divisor() const noexcept { return divisor_; }
  const Multigraph& graph() const noexcept { return divisor_.graph(); }
  Index q() const noexcept { return q_; }
  const std::string& q_name() const { return graph().name(q_); }

  Chip operator[](Index v) const { return divisor_[v]; }
  Chip q_underlying_degree() const { return divisor_[q_]; }
  /// Sum over V \ {q}.
  Chip degree_sum() const { return degree(divisor_) - divisor_[q_]; }
  bool nonnegative() const;
  std::vector<std::string> v_tilde_names() const;

  friend bool operator==(const Configuration& a, const Configuration& b) {
    return a.q_ == b.q_ && a.divisor_ == b.divisor_;
  }

 private:
  Divisor divisor_;
  Index q_;
};

using VertexSet = std::set<std::string>;

Configuration make_config(const Divisor& d, std::string_view q);

/// Edges (with multiplicity) from v to vertices outside S.
/// Throws VertexNotInS, QInS.
long outdeg_S(const Configuration& c, std::string_view v, const VertexSet& s);

struct SetFiring {
  bool legal;
  Configuration after;
};

/// Fires every vertex of S once. `after` is returned whether or not the
/// firing was legal. Throws EmptyS, QInS, UnknownVertex.
SetFiring legal_set_fire(const Configuration& c, const VertexSet& s);

struct Superstability {
  bool superstable;
  bool maximal;  // superstable and degree == genus
};

/// Throws NegativeConfiguration when c < 0 somewhere off q.
Superstability is_superstable(const Configuration& c);

/// All superstable configurations wrt q (chips at q set to 0), ordered
/// lexicographically by chip vector. Per-vertex values range over
/// 0..val(v)-1; throws EnumerationTooLarge if that box exceeds `cap`.
std::vector<Configuration> enumerate_superstables(GraphPtr graph, std::string_view q,
                                                  std::size_t cap = kDefaultEnumerationCap);

}  // namespace chipfire
