#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <stop_token>
#include <string>
#include <vector>

#include "chipfire/enumeration.hpp"
#include "chipfire/reduction.hpp"

namespace chipfire {

struct GreedyResult {
  bool winnable;
  std::optional<FiringScript> script;  // net script (borrows are negative)
};

/// Picks the vertex to borrow at among the in-debt vertices (ascending).
using DebtorPolicy = std::function<Index(std::span<const Index> in_debt)>;

/// Borrow at in-debt vertices, marking them, until the divisor is effective
/// or every vertex has been marked while some debt remains. The default
/// policy picks the canonically least debtor.
GreedyResult greedy_play(const Divisor& d, const DebtorPolicy& policy = {},
                         std::size_t loop_ceiling = kDefaultLoopCeiling);

struct RankResult {
  long rank;
  std::optional<Divisor> witness;  // effective, degree rank + 1, d - witness unwinnable
  std::size_t ewd_calls = 0;
  std::vector<std::string> log;
};

/// Baker-Norine rank by exhaustive search over effective divisors of
/// increasing degree. `optimized` answers deg < 0 and deg > 2g - 2 directly.
RankResult rank(const Divisor& d, bool optimized = true, std::stop_token stop = {});

/// rank(d) >= 1: d - v is winnable for every vertex v.
bool has_positive_rank(const Divisor& d);

/// Unwinnable, and winnable after adding a chip anywhere.
bool is_maximal_unwinnable(const Divisor& d);

struct RiemannRochCheck {
  long lhs;  // r(D) - r(K - D)
  long rhs;  // 1 + deg(D) - g
  bool holds;
};

/// Uses the full search (no degree shortcuts) unless told otherwise, so the
/// identity is checked rather than assumed.
RiemannRochCheck riemann_roch_check(const Divisor& d, bool optimized = false);

/// Not (r(D) >= 0 and r(K - D) >= 0) or r(D) <= deg(D) / 2.
bool clifford_check(const Divisor& d, bool optimized = false);

struct GonalityOptions {
  std::optional<long> max_degree;  // lowers the genus + 1 ceiling
  unsigned parallelism = 0;        // worker threads; 0 = hardware concurrency
  std::stop_token stop;
};

struct GonalityResult {
  long gonality;
  std::vector<Divisor> winning_strategies;  // every rank >= 1 divisor of that degree, canonical order
  std::vector<long> searched_degrees;
  std::vector<std::string> log;
};

/// Smallest degree of an effective divisor of positive rank, by exhaustive
/// scan. Throws CeilingExceeded when max_degree is below the gonality.
GonalityResult gonality(GraphPtr graph, const GonalityOptions& options = {});

}  // namespace chipfire
