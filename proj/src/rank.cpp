#include "chipfire/rank.hpp"

#include <algorithm>
#include <mutex>
#include <thread>

#include "kernels.hpp"

namespace chipfire {
namespace {

void check_stop(const std::stop_token& stop) {
  if (stop.stop_requested()) throw Error(ErrorCode::Cancelled, "computation cancelled");
}

// d - v winnable for all v, with d effective handled cheaply: only vertices
// without chips need a reduction, and reducing at q = v needs no debt
// concentration.
bool positive_rank_kernel(const Multigraph& g, const ChipVector& chips, detail::Workspace& ws,
                          ChipVector& scratch) {
  const Chip deg = chips.sum();
  if (deg - 1 >= g.genus()) return true;
  const bool effective = chips.minCoeff() >= 0;
  for (Index v = 0; v < g.num_vertices(); ++v) {
    if (effective && chips(v) > 0) continue;
    scratch = chips;
    scratch(v) -= 1;
    if (!detail::winnable(g, scratch, v, ws)) return false;
  }
  return true;
}

}  // namespace

GreedyResult greedy_play(const Divisor& d, const DebtorPolicy& policy, std::size_t loop_ceiling) {
  const auto& g = d.graph();
  const Index n = g.num_vertices();
  ChipVector chips = d.chips();
  ChipVector sigma = ChipVector::Zero(n);
  std::vector<char> marked(static_cast<std::size_t>(n), 0);
  Index marked_count = 0;
  std::vector<Index> debtors;
  for (std::size_t iter = 0;; ++iter) {
    debtors.clear();
    for (Index v = 0; v < n; ++v)
      if (chips(v) < 0) debtors.push_back(v);
    if (debtors.empty()) break;
    if (marked_count == n) return {false, std::nullopt};
    if (iter >= loop_ceiling) {
      throw Error(ErrorCode::LoopCeiling, "greedy play exceeded " + std::to_string(loop_ceiling) + " borrows");
    }
    const Index v = policy ? policy(debtors) : debtors.front();
    if (std::find(debtors.begin(), debtors.end(), v) == debtors.end()) {
      throw Error(ErrorCode::InvalidParameter, "debtor policy chose a vertex that is not in debt");
    }
    chips(v) += g.valence(v);
    for (const auto& nb : g.neighbors(v)) chips(nb.vertex) -= nb.multiplicity;
    sigma(v) -= 1;
    if (!marked[static_cast<std::size_t>(v)]) {
      marked[static_cast<std::size_t>(v)] = 1;
      ++marked_count;
    }
  }
  return {true, FiringScript(d.graph_ptr(), std::move(sigma))};
}

RankResult rank(const Divisor& d, bool optimized, std::stop_token stop) {
  const auto& g = d.graph();
  const Chip deg = degree(d);
  const long genus = g.genus();
  RankResult result{-1, std::nullopt, 0, {}};
  if (optimized && deg < 0) {
    result.log.push_back("degree " + std::to_string(deg) + " < 0: rank -1");
    return result;
  }
  if (optimized && deg > 2 * genus - 2) {
    result.rank = deg - genus;
    result.log.push_back("degree " + std::to_string(deg) + " > 2g - 2 = " + std::to_string(2 * genus - 2) +
                         ": rank = deg - g = " + std::to_string(result.rank));
    return result;
  }

  detail::Workspace ws;
  ++result.ewd_calls;
  if (!detail::winnable(g, d.chips(), 0, ws)) {
    result.log.push_back("unwinnable: rank -1");
    return result;
  }
  ChipVector scratch;
  for (long k = 0; k <= deg; ++k) {
    for (const auto& e : enumerate_effective(d.graph_ptr(), k + 1)) {
      check_stop(stop);
      scratch = d.chips() - e;
      ++result.ewd_calls;
      if (!detail::winnable(g, scratch, 0, ws)) {
        result.rank = k;
        result.witness = Divisor(d.graph_ptr(), e);
        result.log.push_back("removing " + to_string(*result.witness) + " leaves an unwinnable divisor: rank " +
                             std::to_string(k));
        return result;
      }
    }
    result.log.push_back("every removal of " + std::to_string(k + 1) + " chip(s) stays winnable");
  }
  // unreachable: removing deg + 1 chips always leaves negative degree
  throw Error(ErrorCode::LoopCeiling, "rank search did not terminate");
}

bool has_positive_rank(const Divisor& d) {
  detail::Workspace ws;
  ChipVector scratch;
  return positive_rank_kernel(d.graph(), d.chips(), ws, scratch);
}

bool is_maximal_unwinnable(const Divisor& d) {
  const auto& g = d.graph();
  detail::Workspace ws;
  if (detail::winnable(g, d.chips(), 0, ws)) return false;
  ChipVector plus;
  for (Index v = 0; v < g.num_vertices(); ++v) {
    plus = d.chips();
    plus(v) += 1;
    if (!detail::winnable(g, plus, 0, ws)) return false;
  }
  return true;
}

RiemannRochCheck riemann_roch_check(const Divisor& d, bool optimized) {
  const auto& g = d.graph();
  const Divisor k = canonical_divisor(d.graph_ptr());
  const long lhs = rank(d, optimized).rank - rank(k - d, optimized).rank;
  const long rhs = 1 + degree(d) - g.genus();
  return {lhs, rhs, lhs == rhs};
}

bool clifford_check(const Divisor& d, bool optimized) {
  const Divisor k = canonical_divisor(d.graph_ptr());
  const long r = rank(d, optimized).rank;
  const long r_dual = rank(k - d, optimized).rank;
  if (r < 0 || r_dual < 0) return true;
  return 2 * r <= degree(d);
}

GonalityResult gonality(GraphPtr graph, const GonalityOptions& options) {
  const auto& g = *graph;
  long ceiling = g.genus() + 1;
  if (options.max_degree) ceiling = std::min(ceiling, *options.max_degree);
  unsigned workers = options.parallelism ? options.parallelism : std::thread::hardware_concurrency();
  workers = std::max(1u, workers);

  GonalityResult result{0, {}, {}, {}};
  for (long d = 1; d <= ceiling; ++d) {
    check_stop(options.stop);
    const auto candidates = enumerate_effective(graph, d);
    const std::size_t total = candidates.size();
    result.searched_degrees.push_back(d);

    // Workers pull fixed-size batches from one shared generator and keep
    // the ordinal of each hit, so the merged result is order-independent.
    constexpr std::size_t kBatch = 2048;
    std::mutex source_mutex;
    auto it = candidates.begin();
    std::size_t next_ordinal = 0;
    std::mutex hits_mutex;
    std::vector<std::pair<std::size_t, ChipVector>> hits;
    std::exception_ptr failure;

    auto work = [&] {
      detail::Workspace ws;
      ChipVector scratch;
      std::vector<ChipVector> batch;
      std::vector<std::pair<std::size_t, ChipVector>> local;
      try {
        while (true) {
          std::size_t first = 0;
          batch.clear();
          {
            std::lock_guard lock(source_mutex);
            first = next_ordinal;
            for (; batch.size() < kBatch && it != candidates.end(); ++it) batch.push_back(*it);
            next_ordinal += batch.size();
          }
          if (batch.empty()) break;
          check_stop(options.stop);
          for (std::size_t i = 0; i < batch.size(); ++i)
            if (positive_rank_kernel(g, batch[i], ws, scratch)) local.emplace_back(first + i, batch[i]);
        }
      } catch (...) {
        std::lock_guard lock(hits_mutex);
        if (!failure) failure = std::current_exception();
      }
      std::lock_guard lock(hits_mutex);
      for (auto& h : local) hits.push_back(std::move(h));
    };

    if (workers == 1) {
      work();
    } else {
      std::vector<std::jthread> pool;
      for (unsigned i = 0; i < workers; ++i) pool.emplace_back(work);
    }
    if (failure) std::rethrow_exception(failure);

    result.log.push_back("degree " + std::to_string(d) + ": " + std::to_string(total) + " candidates, " +
                         std::to_string(hits.size()) + " of rank >= 1");
    if (hits.empty()) continue;
    std::sort(hits.begin(), hits.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    result.gonality = d;
    for (auto& [ordinal, chips] : hits) result.winning_strategies.emplace_back(graph, std::move(chips));
    return result;
  }
  throw Error(ErrorCode::CeilingExceeded,
              "no divisor of positive rank up to degree " + std::to_string(ceiling));
}

}  // namespace chipfire
