#include "gborsuk/solver.hpp"

#include "gborsuk/covers.hpp"
#include "oracles.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <sstream>

using namespace gborsuk;

namespace {

QuotGraph circulant_c12_345() { return quotient_graph(circle_complex(3, 12)); }

QuotGraph complete(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  return QuotGraph::from_edges(n, edges);
}

QuotGraph cycle(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) edges.emplace_back(std::min(i, (i + 1) % n), std::max(i, (i + 1) % n));
  return QuotGraph::from_edges(n, edges);
}

QuotGraph random_graph(std::mt19937_64& rng, int n, double p) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if ((double)(rng() >> 11) * 0x1.0p-53 < p) edges.emplace_back(i, j);
  return QuotGraph::from_edges(n, edges);
}

}  // namespace

TEST_CASE("dsatur upper bound") {
  CHECK(dsatur_upper(complete(6)).num_colors_used == 6);
  CHECK(dsatur_upper(circulant_c12_345()).num_colors_used <= 5);
  CHECK(dsatur_upper(QuotGraph::from_edges(10, {})).num_colors_used == 1);
  CHECK_THROWS_AS(dsatur_upper(QuotGraph::from_edges(2, {}, {0})), solver_error);
}

TEST_CASE("max clique") {
  CHECK(max_clique(complete(6)).size() == 6);
  auto c12 = circulant_c12_345();
  CHECK(max_clique(c12).size() == 3);
  CHECK(oracles::brute_clique_number(c12) == 3);
  // {0,4,8} realizes it: differences 4, 4, 8 are all in the connection set.
  CHECK((c12.adjacent(0, 4) && c12.adjacent(4, 8) && c12.adjacent(0, 8)));
  // bipartite graph
  auto k33 = QuotGraph::from_edges(6, {{0, 3}, {0, 4}, {0, 5}, {1, 3}, {1, 4}, {1, 5},
                                       {2, 3}, {2, 4}, {2, 5}});
  CHECK(max_clique(k33).size() == 2);
}

TEST_CASE("exact chromatic number") {
  CHECK(exact_chromatic(circulant_c12_345()).chi() == 4);
  CHECK(exact_chromatic(complete(6)).chi() == 6);
  CHECK(exact_chromatic(cycle(9)).chi() == 3);
  // Determinism: identical runs give identical witnesses.
  auto a = exact_chromatic(circulant_c12_345());
  auto b = exact_chromatic(circulant_c12_345());
  CHECK(a.witness->colors == b.witness->colors);
}

TEST_CASE("precoloring extension") {
  auto path = QuotGraph::from_edges(3, {{0, 1}, {1, 2}});
  ColoringProblem p(path, 2, {{0, 0}, {2, 0}});
  auto r = extend_precoloring(p);
  REQUIRE(r.status == SolveStatus::sat);
  CHECK(r.coloring->colors == std::vector<int>{0, 1, 0});

  auto tri = complete(3);
  CHECK_THROWS_MATCHES(extend_precoloring(ColoringProblem(tri, 3, {{0, 0}, {1, 0}})),
                       solver_error,
                       Catch::Matchers::Predicate<solver_error>([](const solver_error& e) {
                         return e.which() == solver_error::kind::improper_precoloring;
                       }));

  auto c12 = circulant_c12_345();
  ColoringProblem blocks(c12, 4, {{0, 0}, {3, 1}, {6, 2}, {9, 3}});
  CHECK(extend_precoloring(blocks).status == SolveStatus::sat);

  CHECK_THROWS_AS(ColoringProblem(QuotGraph::from_edges(2, {}, {1}), 2), solver_error);
}

TEST_CASE("timeout is a distinct result") {
  std::mt19937_64 rng(5);
  auto g = random_graph(rng, 40, 0.5);
  auto res = exact_chromatic(g, 3);
  CHECK_FALSE(res.exact);
  CHECK(res.lower <= res.upper);
  REQUIRE(res.witness.has_value());
  CHECK(is_proper(g, res.witness->colors));

  ColoringProblem p(g, std::max(2, res.lower - 1));
  auto ext = extend_precoloring(p, 2);
  CHECK(ext.status == SolveStatus::timeout);
}

TEST_CASE("solver matches brute force on random graphs") {
  std::mt19937_64 rng(20240817);
  for (int trial = 0; trial < 80; ++trial) {
    int n = 3 + static_cast<int>(rng() % 10);
    double p = 0.1 + 0.8 * static_cast<double>(rng() % 1000) / 1000.0;
    auto g = random_graph(rng, n, p);
    int expect = oracles::brute_chromatic(g);
    auto res = exact_chromatic(g);
    REQUIRE(res.exact);
    CHECK(res.chi() == expect);
    CHECK(is_proper(g, res.witness->colors));
    CHECK(res.chi() >= static_cast<int>(max_clique(g).size()));
    CHECK(extend_precoloring(ColoringProblem(g, expect)).status == SolveStatus::sat);
    if (expect > 1)
      CHECK(extend_precoloring(ColoringProblem(g, expect - 1)).status == SolveStatus::unsat);
  }
}

TEST_CASE("known chromatic numbers of classic graphs") {
  // Grötzsch graph via the Mycielski construction over C5: chi 4, omega 2.
  auto c5 = cycle(5);
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < 5; ++u)
    for (int v : c5.adj[u])
      if (u < v) edges.emplace_back(u, v);
  for (int u = 0; u < 5; ++u)
    for (int v : c5.adj[u]) edges.emplace_back(std::min(5 + u, v), std::max(5 + u, v));
  for (int u = 0; u < 5; ++u) edges.emplace_back(5 + u, 10);
  auto grotzsch = QuotGraph::from_edges(11, edges);
  CHECK(max_clique(grotzsch).size() == 2);
  CHECK(exact_chromatic(grotzsch).chi() == 4);
  CHECK(oracles::brute_chromatic(grotzsch) == 4);

  // Petersen graph as Kneser(5,2): chi 3, omega 2.
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < 5; ++a)
    for (int b = a + 1; b < 5; ++b) pairs.emplace_back(a, b);
  std::vector<std::pair<int, int>> pedges;
  for (size_t i = 0; i < pairs.size(); ++i)
    for (size_t j = i + 1; j < pairs.size(); ++j) {
      auto [a, b] = pairs[i];
      auto [c, d] = pairs[j];
      if (a != c && a != d && b != c && b != d) pedges.emplace_back(i, j);
    }
  auto petersen = QuotGraph::from_edges(10, pedges);
  CHECK(max_clique(petersen).size() == 2);
  CHECK(exact_chromatic(petersen).chi() == 3);
}

TEST_CASE("warm start must be proper") {
  auto g = complete(3);
  CHECK_THROWS_AS(exact_chromatic(g, kDefaultBudget, Coloring::of({0, 0, 1})), solver_error);
  auto ok = exact_chromatic(g, kDefaultBudget, Coloring::of({0, 1, 2}));
  CHECK(ok.chi() == 3);
}

TEST_CASE("ilp export shape") {
  auto tri = complete(3);
  ColoringProblem p(tri, 3);
  auto text = export_ilp(p);
  int binaries = 0, assigns = 0, conflicts = 0;
  std::istringstream in(text);
  std::string line;
  bool in_binaries = false;
  while (std::getline(in, line)) {
    if (line.rfind(" a", 0) == 0) ++assigns;
    if (line.rfind(" e", 0) == 0) ++conflicts;
    if (line == "Binaries") in_binaries = true;
    else if (in_binaries && line != "End") {
      std::istringstream ls(line);
      std::string tok;
      while (ls >> tok) ++binaries;
    }
  }
  CHECK(binaries == 9);
  CHECK(assigns == 3);
  CHECK(conflicts == 9);

  ColoringProblem pre(tri, 3, {{1, 2}});
  CHECK(export_ilp(pre).find("Bounds\n x_1_2 = 1") != std::string::npos);
}

TEST_CASE("solution import verifies") {
  auto c12 = circulant_c12_345();
  ColoringProblem p(c12, 4);
  auto res = extend_precoloring(p);
  REQUIRE(res.status == SolveStatus::sat);
  std::ostringstream sol;
  for (int v = 0; v < c12.n; ++v) sol << "v " << v << " " << res.coloring->colors[v] << "\n";
  auto imported = import_solution(p, sol.str());
  CHECK(imported.colors == res.coloring->colors);

  CHECK_THROWS_AS(import_solution(p, "v 0 0\n"), solver_error);  // incomplete
  std::string bad = sol.str();
  bad.replace(bad.find("v 0 "), 6, "v 0 9");
  CHECK_THROWS_AS(import_solution(p, bad), solver_error);  // out of range
}
