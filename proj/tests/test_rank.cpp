#include <doctest.h>

#include <random>

#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "support/random.hpp"

using namespace chipfire;
using namespace chipfire::testing;

namespace {

// Rank straight from the definition: the largest k such that D - E is
// winnable for every effective E of degree k.
long rank_by_definition(const Divisor& d) {
  const auto& g = d.graph_ptr();
  long k = 0;
  for (; k <= degree(d) + 1; ++k)
    for (const auto& e : enumerate_effective(g, k))
      if (!oracle::effective_within(*g, d.chips() - e, 6)) return k - 1;
  return k - 1;
}

}  // namespace

TEST_CASE("enumerate_effective") {
  auto g = example_graph();
  CHECK(enumerate_effective(g, 2).size() == 10);
  std::size_t count = 0;
  for (const auto& c : enumerate_effective(g, 2)) {
    CHECK(c.sum() == 2);
    CHECK(c.minCoeff() >= 0);
    ++count;
  }
  CHECK(count == 10);

  std::vector<ChipVector> zero(enumerate_effective(g, 0).begin(), enumerate_effective(g, 0).end());
  REQUIRE(zero.size() == 1);
  CHECK(zero.front() == ChipVector::Zero(4));

  std::vector<ChipVector> edge(enumerate_effective(k2(), 1).begin(), enumerate_effective(k2(), 1).end());
  REQUIRE(edge.size() == 2);
  CHECK(edge[0] == chips(k2(), {1, 0}).chips());
  CHECK(edge[1] == chips(k2(), {0, 1}).chips());

  CHECK(enumerate_effective(g, -1).size() == 0);
  CHECK(enumerate_effective(tetrahedron(), 3).size() == 20);
}

TEST_CASE("greedy_play") {
  auto g = example_graph();
  const auto won = greedy_play(example_divisor(g));
  CHECK(won.winnable);
  REQUIRE(won.script);
  CHECK(is_effective(apply_script(example_divisor(g), *won.script)));
  CHECK(won.script->net().maxCoeff() <= 0);

  const auto effective = greedy_play(make_divisor(g, {{"Bob", 1}}));
  CHECK(effective.winnable);
  CHECK(effective.script->empty());

  const auto lost = greedy_play(make_divisor(g, {{"Alice", -1}}));
  CHECK_FALSE(lost.winnable);
  CHECK_FALSE(lost.script);
}

TEST_CASE("rank examples") {
  auto g = example_graph();
  auto r = rank(example_divisor(g));
  CHECK(r.rank == 0);
  REQUIRE(r.witness);
  CHECK(*r.witness == make_divisor(g, {{"Bob", 1}}));
  CHECK(r.ewd_calls > 0);

  r = rank(canonical_divisor(g), false);
  CHECK(r.rank == 2);
  REQUIRE(r.witness);
  CHECK(degree(*r.witness) == 3);
  CHECK_FALSE(is_winnable(canonical_divisor(g) - *r.witness));

  const auto five = make_divisor(g, {{"Alice", 5}});
  r = rank(five);
  CHECK(r.rank == 2);
  CHECK_FALSE(r.witness);
  CHECK(rank(five, false).rank == 2);

  CHECK(rank(make_divisor(g, {{"Alice", -1}})).rank == -1);
  CHECK(rank(Divisor::zero(g)).rank == 0);
  CHECK(rank(make_divisor(g, {{"Alice", 2}, {"Bob", -1}})).rank == -1);
}

TEST_CASE("rank: cancellation") {
  auto g = tetrahedron();
  std::stop_source source;
  source.request_stop();
  try {
    rank(make_divisor(g, {{"v00", 4}}), false, source.get_token());
    FAIL("not cancelled");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Cancelled);
  }
}

TEST_CASE("riemann_roch_check and clifford_check examples") {
  auto g = example_graph();
  auto rr = riemann_roch_check(Divisor::zero(g));
  CHECK(rr.lhs == -2);
  CHECK(rr.rhs == -2);
  CHECK(rr.holds);

  rr = riemann_roch_check(example_divisor(g));
  CHECK(rr.rhs == 0);
  CHECK(rr.holds);
  CHECK(rank(canonical_divisor(g) - example_divisor(g), false).rank == 0);

  rr = riemann_roch_check(make_divisor(g, {{"Charlie", 5}}));
  CHECK(rr.holds);
  CHECK(rank(canonical_divisor(g) - make_divisor(g, {{"Charlie", 5}})).rank == -1);

  CHECK(clifford_check(canonical_divisor(g)));
  CHECK(clifford_check(Divisor::zero(g)));
  CHECK(clifford_check(make_divisor(g, {{"Alice", -1}})));
}

TEST_CASE("maximal unwinnable and positive rank") {
  auto g = example_graph();
  for (const auto& o : enumerate_acyclic_unique_source(g, "Bob"))
    CHECK(is_maximal_unwinnable(divisor_of_orientation(o)));
  CHECK_FALSE(is_maximal_unwinnable(make_divisor(g, {{"Alice", 1}, {"Bob", -1}})));
  CHECK_FALSE(is_maximal_unwinnable(example_divisor(g)));
  CHECK(has_positive_rank(canonical_divisor(g)));
  CHECK_FALSE(has_positive_rank(example_divisor(g)));
}

TEST_CASE("gonality: small platonic solids") {
  const auto tetra = gonality(tetrahedron());
  CHECK(tetra.gonality == 3);
  REQUIRE_FALSE(tetra.winning_strategies.empty());
  for (const auto& d : tetra.winning_strategies) {
    CHECK(degree(d) == 3);
    CHECK(is_effective(d));
    CHECK(has_positive_rank(d));
  }
  CHECK(tetra.searched_degrees == std::vector<long>{1, 2, 3});
  CHECK(gonality(cube()).gonality == 4);
  CHECK(gonality(octahedron()).gonality == 4);
}

TEST_CASE("gonality: chains of cycles") {
  CHECK(gonality(chain_of_cycles({2, 2, 2, 2, 2})).gonality == 2);
  CHECK(gonality(chain_of_cycles({3, 3, 3, 3, 3})).gonality == 3);
  CHECK(gonality(chain_of_cycles({3, 4, 4, 4, 3})).gonality == 4);
}

TEST_CASE("gonality: ceiling and parallel agreement") {
  try {
    gonality(cube(), {.max_degree = 3});
    FAIL("ceiling not reported");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CeilingExceeded);
  }
  const auto serial = gonality(octahedron(), {.parallelism = 1});
  const auto parallel = gonality(octahedron(), {.parallelism = 4});
  CHECK(serial.gonality == parallel.gonality);
  CHECK(serial.winning_strategies == parallel.winning_strategies);
  CHECK(gonality(k2()).gonality == 1);
}

TEST_CASE("property: gonality is minimal") {
  std::mt19937 rng(501);
  for (int i = 0; i < 40; ++i) {
    auto g = random_graph(rng, 2, 5, 2);
    const auto result = gonality(g, {.parallelism = 1});
    for (long d = 1; d < result.gonality; ++d)
      for (const auto& c : enumerate_effective(g, d)) CHECK_FALSE(has_positive_rank(Divisor(g, c)));
    for (const auto& w : result.winning_strategies) CHECK(rank_by_definition(w) >= 1);
  }
}

TEST_CASE("property: greedy agrees with ewd") {
  std::mt19937 rng(502);
  for (int i = 0; i < 300; ++i) {
    auto g = random_graph(rng, 1, 6);
    const auto d = random_divisor(rng, g);
    const auto greedy = greedy_play(d);
    CHECK(greedy.winnable == ewd(d).winnable);
    if (greedy.winnable) CHECK(is_effective(apply_script(d, *greedy.script)));
  }
}

TEST_CASE("property: greedy script does not depend on the debtor order") {
  std::mt19937 rng(503);
  int winnable = 0;
  for (int i = 0; i < 400 && winnable < 200; ++i) {
    auto g = random_graph(rng, 1, 6);
    const auto d = random_divisor(rng, g, -3, 5);
    const auto base = greedy_play(d);
    if (!base.winnable) continue;
    ++winnable;
    for (int trial = 0; trial < 3; ++trial) {
      const auto random_pick = [&](std::span<const Index> in_debt) {
        return in_debt[std::uniform_int_distribution<std::size_t>(0, in_debt.size() - 1)(rng)];
      };
      const auto other = greedy_play(d, random_pick);
      REQUIRE(other.winnable);
      CHECK(*other.script == *base.script);
    }
  }
  CHECK(winnable >= 200);
}

TEST_CASE("property: rank matches the definition and is an equivalence invariant") {
  std::mt19937 rng(504);
  for (int i = 0; i < 200; ++i) {
    auto g = random_graph(rng, 1, 4, 2);
    const auto d = random_divisor(rng, g, -1, 2);
    const auto r = rank(d, false);
    CHECK(r.rank == rank_by_definition(d));
    CHECK(rank(apply_script(d, random_script(rng, g)), false).rank == r.rank);
    if (r.witness) {
      CHECK(degree(*r.witness) == r.rank + 1);
      CHECK_FALSE(is_winnable(d - *r.witness));
    }
  }
}

TEST_CASE("property: Riemann-Roch and Clifford on small graphs") {
  std::mt19937 rng(505);
  int cases = 0;
  for (int i = 0; i < 60; ++i) {
    auto g = random_graph(rng, 1, 5, 2);
    const long genus = g->genus();
    // every divisor with entries in a small box and -2 <= deg <= 2g
    const Index n = g->num_vertices();
    ChipVector c = ChipVector::Constant(n, -1);
    int taken = 0;
    while (taken < 8) {
      const long deg = c.sum();
      if (deg >= -2 && deg <= 2 * genus) {
        const Divisor d(g, c);
        const auto rr = riemann_roch_check(d);
        CHECK(rr.holds);
        CHECK(rr.rhs == 1 + deg - genus);
        CHECK(clifford_check(d));
        ++cases;
        ++taken;
      }
      Index k = 0;
      while (k < n && c(k) == 2) c(k++) = -1;
      if (k == n) break;
      ++c(k);
      for (Index skip = std::uniform_int_distribution<Index>(0, 6)(rng); skip > 0; --skip) {
        Index j = 0;
        while (j < n && c(j) == 2) c(j++) = -1;
        if (j == n) break;
        ++c(j);
      }
    }
  }
  CHECK(cases >= 200);
}

TEST_CASE("property: superadditivity on winnable pairs") {
  std::mt19937 rng(506);
  int pairs = 0;
  for (int i = 0; i < 600 && pairs < 200; ++i) {
    auto g = random_graph(rng, 1, 5, 2);
    const auto a = random_divisor(rng, g, -1, 2);
    const auto b = random_divisor(rng, g, -1, 2);
    const auto ra = rank(a).rank, rb = rank(b).rank;
    if (ra < 0 || rb < 0) continue;
    ++pairs;
    CHECK(rank(a + b).rank >= ra + rb);
  }
  CHECK(pairs >= 200);
}

TEST_CASE("property: rank shortcut matches full enumeration") {
  std::mt19937 rng(507);
  int cases = 0;
  for (int i = 0; i < 400 && cases < 200; ++i) {
    auto g = random_graph(rng, 1, 4, 2);
    const auto d = random_divisor(rng, g, -1, 4);
    if (degree(d) <= 2 * g->genus() - 2 && degree(d) >= 0) continue;
    ++cases;
    const auto fast = rank(d, true);
    CHECK(fast.rank == rank(d, false).rank);
    if (degree(d) > 2 * g->genus() - 2) CHECK(fast.rank == degree(d) - g->genus());
  }
  CHECK(cases >= 200);
}

TEST_CASE("property: maximal unwinnable duality") {
  std::mt19937 rng(508);
  for (int i = 0; i < 200; ++i) {
    auto g = random_graph(rng, 1, 4, 2);
    const auto d = random_divisor(rng, g, -2, 2);
    const auto k = canonical_divisor(g);
    CHECK(is_maximal_unwinnable(d) == is_maximal_unwinnable(k - d));
  }
}
