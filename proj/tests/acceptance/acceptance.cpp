// Acceptance suite: one PASS/FAIL line per criterion, details indented
// beneath. Exit status is nonzero when any criterion fails.
//
//   acceptance [--extended]
//
// --extended (or CHIPFIRE_EXTENDED=1) adds the 1024-chain classification.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "chipfire/chipfire.hpp"
#include "cli.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "support/random.hpp"

using namespace chipfire;
using namespace chipfire::testing;

namespace {

using Seconds = std::chrono::duration<double>;

struct Report {
  std::vector<std::string> details;
  bool ok = true;

  void check(bool condition, const std::string& what) {
    if (!condition) {
      ok = false;
      details.push_back("failed: " + what);
    }
  }
  void note(const std::string& text) { details.push_back(text); }
};

int failures = 0;

void criterion(const std::string& name, const std::function<void(Report&)>& body) {
  Report report;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(report);
  } catch (const std::exception& e) {
    report.ok = false;
    report.note(std::string("exception: ") + e.what());
  }
  const double elapsed = Seconds(std::chrono::steady_clock::now() - start).count();
  std::ostringstream time;
  time.precision(2);
  time << std::fixed << elapsed << " s";
  std::cout << (report.ok ? "PASS " : "FAIL ") << name << " (" << time.str() << ")\n";
  for (const auto& line : report.details) std::cout << "    " << line << '\n';
  std::cout.flush();
  if (!report.ok) ++failures;
}

// Counts cases and failures for one randomized property.
struct Property {
  Report& report;
  std::string name;
  std::size_t cases = 0;
  std::size_t failed = 0;

  void operator()(bool holds) {
    ++cases;
    if (!holds) ++failed;
  }
  ~Property() {
    report.check(failed == 0 && cases >= 200, name + ": " + std::to_string(failed) + " of " + std::to_string(cases));
    if (failed == 0 && cases >= 200) report.note(name + ": " + std::to_string(cases) + " cases");
  }
};

long chain_formula(const std::vector<int>& m) {
  if (m[1] == 2 && m[2] == 2 && m[3] == 2) return 2;
  if (m[1] == 2 || m[2] == 3 || m[3] == 2) return 3;
  return 4;
}

void chains(Report& r, const std::vector<int>& lengths) {
  std::size_t total = 0, mismatches = 0;
  std::vector<int> m(5, lengths.front());
  const auto k = lengths.size();
  std::vector<std::size_t> digit(5, 0);
  while (true) {
    for (int i = 0; i < 5; ++i) m[i] = lengths[digit[i]];
    const long got = gonality(chain_of_cycles(m)).gonality;
    const long want = chain_formula(m);
    ++total;
    if (got != want) {
      ++mismatches;
      r.check(false, "chain " + std::to_string(m[0]) + std::to_string(m[1]) + std::to_string(m[2]) +
                         std::to_string(m[3]) + std::to_string(m[4]) + ": got " + std::to_string(got) +
                         ", expected " + std::to_string(want));
    }
    int i = 4;
    while (i >= 0 && ++digit[i] == k) digit[i--] = 0;
    if (i < 0) break;
  }
  r.note(std::to_string(total) + " chains, " + std::to_string(mismatches) + " mismatches");
}

void worked_example(Report& r) {
  auto g = example_graph();
  const auto d = example_divisor(g);
  r.check(degree(d) == 2, "degree of the example divisor is 2");

  Matrix<Chip> expected(4, 4);
  expected << 4, -1, -1, -2, -1, 2, -1, 0, -1, -1, 3, -1, -2, 0, -1, 3;
  r.check(laplacian<Chip>(*g) == expected, "Laplacian matches the printed matrix");

  const auto script = make_script(g, {{"Bob", -1}, {"Charlie", 1}});
  r.check(principal_divisor(script) == chips(g, {0, -3, 4, -1}), "L sigma = (0, -3, 4, -1)");
  r.check(apply_script(d, script) == chips(g, {2, 0, 0, 0}), "D - L sigma = (2, 0, 0, 0)");

  auto state = apply_move(d, Move::set_fire({"Alice", "Elise", "Charlie"}));
  r.check(state == chips(g, {1, -1, 3, -1}), "first set-firing gives (1, -1, 3, -1)");
  state = apply_move(state, Move::set_fire({"Alice", "Elise", "Charlie"}));
  state = apply_move(state, Move::set_fire({"Bob", "Charlie"}));
  r.check(state == chips(g, {2, 0, 0, 0}) && is_effective(state), "three set-firings end effective at (2, 0, 0, 0)");

  const auto burn = dhar_burning(make_config(chips(g, {3, -2, 1, 0}), "Bob"));
  r.check(burn.firing_set == VertexSet{"Alice", "Charlie", "Elise"}, "burning from Bob leaves {Alice, Charlie, Elise}");
  r.check(ewd(d).winnable, "the example game is winnable");
  r.check(q_reduce(d, "Bob").divisor == chips(g, {2, 0, 0, 0}), "Bob-reduced form is (2, 0, 0, 0)");
}

void gonality_set(Report& r, const std::vector<std::pair<std::string, long>>& cases) {
  for (const auto& [family, expected] : cases) {
    const auto start = std::chrono::steady_clock::now();
    const auto result = gonality(generate_family(family));
    const double s = Seconds(std::chrono::steady_clock::now() - start).count();
    r.check(result.gonality == expected, family + " = " + std::to_string(expected) + ", got " +
                                             std::to_string(result.gonality));
    bool witnesses = !result.winning_strategies.empty();
    for (const auto& w : result.winning_strategies)
      witnesses = witnesses && degree(w) == expected && is_effective(w) && has_positive_rank(w);
    r.check(witnesses, family + " winning strategies have positive rank");
    std::ostringstream line;
    line.precision(2);
    line << std::fixed << family << ": " << result.gonality << " (" << result.winning_strategies.size()
         << " strategies, " << s << " s)";
    r.note(line.str());
  }
}

// Enumerates every chip vector with entries in [lo, hi].
template <typename F>
void for_each_box(Index n, Chip lo, Chip hi, F&& fn) {
  ChipVector c = ChipVector::Constant(n, lo);
  while (true) {
    fn(c);
    Index k = 0;
    while (k < n && c(k) == hi) c(k++) = lo;
    if (k == n) return;
    ++c(k);
  }
}

std::vector<Orientation> all_full(const GraphPtr& g) {
  std::vector<Orientation> out;
  const auto pairs = g->edges().size();
  for (unsigned long mask = 0; mask < (1ul << pairs); ++mask) {
    std::vector<Direction> dirs(pairs);
    for (std::size_t e = 0; e < pairs; ++e) dirs[e] = (mask >> e) & 1 ? Direction::Backward : Direction::Forward;
    out.emplace_back(g, std::move(dirs));
  }
  return out;
}

void properties(Report& r) {
  std::mt19937 rng(20240501);
  const auto pick = [&](const GraphPtr& g) {
    return std::uniform_int_distribution<Index>(0, g->num_vertices() - 1)(rng);
  };

  {
    Property conservation{r, "degree conservation under moves and scripts"};
    Property whole{r, "set_fire(V) is the identity"};
    Property borrow{r, "borrow(v) equals set_fire(V minus v)"};
    for (int i = 0; i < 200; ++i) {
      auto g = random_graph(rng, 1, 6);
      const auto d = random_divisor(rng, g);
      const auto& v = g->name(pick(g));
      std::vector<std::string> subset, rest;
      for (const auto& w : g->names()) {
        if (rng() % 2) subset.push_back(w);
        if (w != v) rest.push_back(w);
      }
      conservation(degree(apply_move(d, Move::lend(v))) == degree(d) &&
                   degree(apply_move(d, Move::borrow(v))) == degree(d) &&
                   degree(apply_move(d, Move::set_fire(subset))) == degree(d) &&
                   degree(apply_script(d, random_script(rng, g))) == degree(d));
      whole(apply_move(d, Move::set_fire(g->names())) == d);
      borrow(apply_move(d, Move::borrow(v)) == apply_move(d, Move::set_fire(rest)));
    }
  }
  {
    Property idempotent{r, "q-reduction idempotence"};
    Property consistent{r, "q-reduction script consistency"};
    Property unique{r, "q-reduction uniqueness across equivalent divisors"};
    for (int i = 0; i < 200; ++i) {
      auto g = random_graph(rng, 1, 6);
      const auto d = random_divisor(rng, g);
      const auto& q = g->name(pick(g));
      const auto red = q_reduce(d, q);
      idempotent(q_reduce(red.divisor, q).divisor == red.divisor);
      consistent(apply_script(d, red.script) == red.divisor);
      unique(q_reduce(apply_script(d, random_script(rng, g)), q).divisor == red.divisor);
    }
  }
  {
    Property agree{r, "greedy and EWD agree on winnability"};
    Property order{r, "greedy script is independent of debtor order"};
    while (agree.cases < 200 || order.cases < 200) {
      auto g = random_graph(rng, 1, 6);
      const auto d = random_divisor(rng, g);
      const auto greedy = greedy_play(d);
      agree(greedy.winnable == ewd(d).winnable);
      if (!greedy.winnable) continue;
      const auto other = greedy_play(d, [&](std::span<const Index> in_debt) {
        return in_debt[std::uniform_int_distribution<std::size_t>(0, in_debt.size() - 1)(rng)];
      });
      order(other.winnable && *other.script == *greedy.script);
    }
  }
  {
    Property dhar{r, "Dhar and subset brute force agree on superstability"};
    for (int i = 0; i < 300; ++i) {
      auto g = random_graph(rng, 2, 5);
      const Index q = pick(g);
      ChipVector c(g->num_vertices());
      for (Index v = 0; v < g->num_vertices(); ++v) c(v) = std::uniform_int_distribution<Chip>(0, g->valence(v))(rng);
      dhar(is_superstable(make_config(Divisor(g, c), g->name(q))).superstable == oracle::superstable(*g, c, q));
    }
  }
  {
    Property canonical{r, "D(O) + D(reverse O) == K"};
    Property indeg{r, "sum of indegrees == |E|"};
    for (int i = 0; i < 200; ++i) {
      auto g = random_graph(rng, 2, 6);
      std::vector<Direction> dirs(g->edges().size());
      for (auto& d : dirs) d = rng() % 2 ? Direction::Forward : Direction::Backward;
      const Orientation o(g, dirs);
      canonical(divisor_of_orientation(o) + divisor_of_orientation(reverse_orientation(o)) == canonical_divisor(g));
      const auto in = indegrees(o);
      indeg(std::accumulate(in.begin(), in.end(), 0l) == g->edge_count());
    }
  }
  {
    Property rigid{r, "acyclic orientations are determined by indegrees"};
    Property bijection{r, "unique-source acyclic orientations match maximal superstables"};
    while (rigid.cases < 200) {
      auto g = random_graph(rng, 2, 5);
      if (g->edges().size() > 10) continue;
      std::set<std::vector<long>> seen;
      std::size_t acyclic = 0;
      for (const auto& o : all_full(g)) {
        if (!is_acyclic(o)) continue;
        ++acyclic;
        seen.insert(indegrees(o));
      }
      rigid(seen.size() == acyclic);

      const Index q = pick(g);
      std::size_t maximal = 0;
      for (const auto& c : enumerate_superstables(g, g->name(q)))
        if (c.degree_sum() == g->genus()) ++maximal;
      bijection(enumerate_acyclic_unique_source(g, g->name(q)).size() == maximal);
    }
  }
  {
    Property max_unwinnable{r, "maximal unwinnable divisors have degree g - 1"};
    while (max_unwinnable.cases < 200) {
      auto g = random_graph(rng, 2, 4, 2);
      for_each_box(g->num_vertices(), -2, 2, [&](const ChipVector& c) {
        const Divisor d(g, c);
        if (is_maximal_unwinnable(d)) max_unwinnable(degree(d) == g->genus() - 1);
      });
    }
  }
  {
    Property rr{r, "Riemann-Roch identity"};
    Property clifford{r, "Clifford bound"};
    while (rr.cases < 200) {
      auto g = random_graph(rng, 1, 5, 2);
      const long genus = g->genus();
      for_each_box(g->num_vertices(), -1, 2, [&](const ChipVector& c) {
        if (c.sum() < -2 || c.sum() > 2 * genus || rng() % 4) return;
        const Divisor d(g, c);
        rr(riemann_roch_check(d).holds);
        clifford(clifford_check(d));
      });
    }
  }
  {
    Property super{r, "rank superadditivity on winnable pairs"};
    while (super.cases < 200) {
      auto g = random_graph(rng, 1, 5, 2);
      const auto a = random_divisor(rng, g, -1, 2);
      const auto b = random_divisor(rng, g, -1, 2);
      const auto ra = rank(a).rank, rb = rank(b).rank;
      if (ra < 0 || rb < 0) continue;
      super(rank(a + b).rank >= ra + rb);
    }
  }
  {
    Property shortcut{r, "rank shortcut matches full enumeration"};
    while (shortcut.cases < 200) {
      auto g = random_graph(rng, 1, 4, 2);
      const auto d = random_divisor(rng, g, 0, 5);
      if (degree(d) <= 2 * g->genus() - 2) continue;
      shortcut(rank(d, true).rank == degree(d) - g->genus() && rank(d, false).rank == degree(d) - g->genus());
    }
  }
}

void io_golden(Report& r, const std::filesystem::path& fixtures) {
  const std::pair<const char*, io::ObjectKind> files[] = {
      {"graph.json", io::ObjectKind::Graph},
      {"graph.txt", io::ObjectKind::Graph},
      {"divisor.json", io::ObjectKind::Divisor},
      {"divisor.txt", io::ObjectKind::Divisor},
      {"orientation.json", io::ObjectKind::Orientation},
      {"orientation.txt", io::ObjectKind::Orientation},
      {"script.json", io::ObjectKind::FiringScript},
      {"script.txt", io::ObjectKind::FiringScript},
      {"example_graph.json", io::ObjectKind::Graph},
      {"example_divisor.json", io::ObjectKind::Divisor},
      {"example_divisor.txt", io::ObjectKind::Divisor},
  };
  for (const auto& [file, kind] : files) {
    const auto text = io::read_file(fixtures / file);
    const auto format = io::format_from_path(file);
    r.check(io::write(format, io::read(format, kind, text)) == text, std::string(file) + " round trips byte for byte");
  }
  r.note(std::to_string(std::size(files)) + " golden fixtures");

  std::mt19937 rng(7);
  std::size_t trips = 0;
  for (int i = 0; i < 200; ++i) {
    auto g = random_graph(rng, 1, 6);
    std::vector<Direction> dirs(g->edges().size());
    for (auto& d : dirs) d = static_cast<Direction>(rng() % 3);
    const io::Object objects[] = {g, random_divisor(rng, g), Orientation(g, dirs), random_script(rng, g)};
    for (const auto& object : objects) {
      const auto kind = io::kind_of(object);
      for (const auto format : {io::Format::Json, io::Format::Txt}) {
        const auto text = io::write(format, object);
        const auto back = io::read(format, kind, text);
        const bool same = kind == io::ObjectKind::Graph ? *std::get<GraphPtr>(back) == *g : back == object;
        r.check(same && io::write(format, back) == text, "random " + std::string(io::to_string(kind)) + " round trip");
        ++trips;
      }
    }
  }
  r.note(std::to_string(trips) + " random round trips over four kinds and two formats");
}

struct CliRun {
  int code;
  std::string out;
};

CliRun cli_run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run_cli(args, out, err);
  return {code, out.str()};
}

void cli_differential(Report& r, const std::filesystem::path& fixtures) {
  const auto tmp = std::filesystem::temp_directory_path() / "chipfire_acceptance";
  std::filesystem::remove_all(tmp);
  std::filesystem::create_directories(tmp);
  const auto path = [&](const char* name) { return (tmp / name).string(); };
  const auto graph_file = (fixtures / "example_graph.json").string();
  const auto divisor_file = (fixtures / "example_divisor.json").string();
  auto g = example_graph();
  const auto d = example_divisor(g);
  const auto fig4 = chips(g, {3, -2, 1, 0});
  io::write_file(path("fig4.txt"), io::write(io::Format::Txt, fig4));
  io::write_file(path("two_a.json"), io::write(io::Format::Json, make_divisor(g, {{"Alice", 2}})));

  auto run = cli_run({"winnable", "-g", graph_file, "-d", divisor_file});
  r.check(run.code == 0 && run.out == (ewd(d).winnable ? "WINNABLE\n" : "UNWINNABLE\n"), "winnable");

  const auto red = q_reduce(d, "Bob");
  run = cli_run({"qreduce", "-d", divisor_file, "-q", "Bob"});
  r.check(run.out == "q: Bob\ndivisor: " + to_string(red.divisor) + "\nscript: " +
                         to_string(Divisor(g, red.script.net())) + "\n",
          "qreduce");

  const auto rk = rank(d, false);
  run = cli_run({"rank", "-d", divisor_file});
  r.check(run.out == "rank: " + std::to_string(rk.rank) + "\nwitness: " + to_string(*rk.witness) + "\n", "rank");

  const auto gon = gonality(tetrahedron());
  std::string expected = "gonality: " + std::to_string(gon.gonality) + "\nwinning strategies: " +
                         std::to_string(gon.winning_strategies.size()) + "\n";
  for (const auto& w : gon.winning_strategies) expected += "  " + to_string(w) + "\n";
  run = cli_run({"gonality", "--family", "tetrahedron"});
  r.check(run.out == expected && run.out.rfind("gonality: 3\n", 0) == 0, "gonality");

  run = cli_run({"equiv", "-d", divisor_file, "-e", path("two_a.json")});
  r.check(run.out == (linear_equivalence(d, make_divisor(g, {{"Alice", 2}})) ? "EQUIVALENT\n" : "NOT EQUIVALENT\n"),
          "equiv");

  const auto burn = dhar_burning(make_config(fig4, "Bob"));
  run = cli_run({"dhar", "-d", path("fig4.txt"), "-q", "Bob", "-o", path("burn.json")});
  r.check(run.out.find("firing set: Alice, Charlie, Elise\n") != std::string::npos &&
              io::read_orientation(io::Format::Json, io::read_file(path("burn.json"))) == burn.orientation,
          "dhar");

  const auto lap = laplacian<Chip>(*g);
  expected = "vertices: Alice, Bob, Charlie, Elise\n";
  for (Index i = 0; i < 4; ++i) {
    for (Index j = 0; j < 4; ++j) expected += (j ? " " : "") + std::to_string(lap(i, j));
    expected += "\n";
  }
  r.check(cli_run({"laplacian", "-g", graph_file}).out == expected, "laplacian");

  r.check(cli_run({"generate", "--family", "icosahedron", "--format", "json"}).out ==
              io::write(io::Format::Json, icosahedron()),
          "generate");

  cli_run({"convert", "--kind", "divisor", "--from", "json", "--to", "txt", divisor_file, path("d.txt")});
  cli_run({"convert", "--kind", "divisor", path("d.txt"), path("d.json")});
  cli_run({"convert", "--kind", "divisor", path("d.json"), path("d2.txt")});
  r.check(io::read_file(path("d.txt")) == io::write(io::Format::Txt, d) &&
              io::read_file(path("d2.txt")) == io::read_file(path("d.txt")) &&
              io::read_file(path("d.json")) == io::read_file(divisor_file),
          "convert");

  // serve is exercised over loopback by the server tests; here only its usage contract
  r.check(cli_run({"serve", "--port", "not-a-port"}).code == 2, "serve rejects a bad port");
  r.note("10 subcommands compared against direct library calls");
  std::filesystem::remove_all(tmp);
}

}  // namespace

int main(int argc, char** argv) {
  bool extended = false;
  for (int i = 1; i < argc; ++i)
    if (std::string(argv[i]) == "--extended") extended = true;
  if (const char* env = std::getenv("CHIPFIRE_EXTENDED"); env && std::string(env) == "1") extended = true;
  const std::filesystem::path fixtures = CHIPFIRE_FIXTURES;

  criterion("worked example", [](Report& r) {
    const auto start = std::chrono::steady_clock::now();
    worked_example(r);
    r.check(Seconds(std::chrono::steady_clock::now() - start).count() < 1.0, "under 1 s");
  });
  criterion("gonality fast set", [](Report& r) {
    const auto start = std::chrono::steady_clock::now();
    gonality_set(r, {{"tetrahedron", 3}, {"cube", 4}, {"octahedron", 4}});
    r.check(Seconds(std::chrono::steady_clock::now() - start).count() < 10.0, "under 10 s");
  });
  criterion("gonality extended set", [](Report& r) {
    gonality_set(r, {{"dodecahedron", 6}, {"icosahedron", 9}});
  });
  criterion("chain of loops, lengths 2 and 3", [](Report& r) {
    const auto start = std::chrono::steady_clock::now();
    chains(r, {2, 3});
    r.check(Seconds(std::chrono::steady_clock::now() - start).count() < 300.0, "under 5 min");
  });
  if (extended)
    criterion("chain of loops, lengths 2 to 5", [](Report& r) { chains(r, {2, 3, 4, 5}); });
  else
    std::cout << "SKIP chain of loops, lengths 2 to 5 (run with --extended)\n";
  criterion("property suites", properties);
  criterion("io golden suite", [&](Report& r) { io_golden(r, fixtures); });
  criterion("cli differential suite", [&](Report& r) { cli_differential(r, fixtures); });

  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << '\n';
  return failures == 0 ? 0 : 1;
}
