#include "gborsuk/quotient.hpp"

#include "gborsuk/covers.hpp"
#include "oracles.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

using namespace gborsuk;

TEST_CASE("quotient of C6 under Z3 is K6") {
  auto c6 = circle_complex(3, 6);
  auto h = quotient_graph(c6);
  REQUIRE(h.n == 6);
  CHECK(h.loops.empty());
  CHECK(h.num_edges() == 15);
  for (int u = 0; u < 6; ++u)
    for (int v = 0; v < 6; ++v)
      if (u != v) CHECK(h.adjacent(u, v) == oracles::brute_quotient_adjacent(c6, u, v));
}

TEST_CASE("quotient of C12 under Z3 is the circulant C12(3,4,5)") {
  auto c12 = circle_complex(3, 12);
  auto h = quotient_graph(c12);
  REQUIRE(h.n == 12);
  CHECK(h.loops.empty());
  for (int u = 0; u < 12; ++u)
    for (int v = u + 1; v < 12; ++v) {
      int d = std::min((v - u + 12) % 12, (u - v + 12) % 12);
      bool circulant = d == 3 || d == 4 || d == 5;
      CHECK(h.adjacent(u, v) == circulant);
      CHECK(h.adjacent(u, v) == oracles::brute_quotient_adjacent(c12, u, v));
    }
  // Exhaustive refutation of 3 colors plus the explicit block 4-coloring.
  CHECK_FALSE(oracles::brute_colorable(h, 3));
  std::vector<int> blocks(12);
  for (int v = 0; v < 12; ++v) blocks[v] = v / 3;
  CHECK(is_proper(h, blocks));
}

TEST_CASE("quotient of C3 under Z3 has a loop at every vertex") {
  auto c3 = cycle_complex(3);
  auto h = quotient_graph(c3);
  CHECK(h.loops == std::vector<int>{0, 1, 2});
  for (int v = 0; v < 3; ++v) CHECK(oracles::brute_quotient_loop(c3, v));
}

TEST_CASE("quotient graphs are G-invariant") {
  auto t = medial_subdivide_2d(classifying_space(GroupTable::cyclic(3), 2));
  auto h = quotient_graph(t);
  for (int g = 0; g < 3; ++g)
    for (int u = 0; u < h.n; ++u)
      for (int v : h.adj[u]) CHECK(h.adjacent(t.vertex_action(g, u), t.vertex_action(g, v)));
}

namespace {

double circ_dist(const std::vector<double>& a, const std::vector<double>& b) {
  double d = std::fabs(a[0] - b[0]);
  d = std::fmod(d, 2 * std::numbers::pi);
  return std::min(d, 2 * std::numbers::pi - d);
}

std::vector<double> rotate(int m, int g, const std::vector<double>& p) {
  return {p[0] + 2 * std::numbers::pi * g / m};
}

}  // namespace

TEST_CASE("borsuk graphs on explicit points") {
  using P = std::vector<double>;
  std::vector<P> antipodal = {{0.0}, {std::numbers::pi}};
  auto g1 = borsuk_graph_points(
      antipodal, 2, [](int e, const P& p) { return rotate(2, e, p); }, circ_dist, 0.1);
  CHECK(g1.num_edges() == 1);
  CHECK(g1.loops.empty());

  std::vector<P> thirds = {{0.0}, {2 * std::numbers::pi / 3}};
  auto g2 = borsuk_graph_points(
      thirds, 3, [](int e, const P& p) { return rotate(3, e, p); }, circ_dist, 0.01);
  CHECK(g2.num_edges() == 1);

  std::vector<P> four = {{0.0},
                         {std::numbers::pi / 2},
                         {std::numbers::pi},
                         {3 * std::numbers::pi / 2}};
  auto g3 = borsuk_graph_points(
      four, 2, [](int e, const P& p) { return rotate(2, e, p); }, circ_dist, 0.01);
  CHECK(g3.num_edges() == 2);
  CHECK(g3.adjacent(0, 2));
  CHECK(g3.adjacent(1, 3));
}

TEST_CASE("edge monotonicity in eps") {
  using P = std::vector<double>;
  std::vector<P> pts;
  std::mt19937_64 rng(99);
  for (int i = 0; i < 60; ++i)
    pts.push_back({2 * std::numbers::pi * (double)(rng() >> 11) * 0x1.0p-53});
  auto act = [](int e, const P& p) { return rotate(3, e, p); };
  auto small = borsuk_graph_points(pts, 3, act, circ_dist, 0.05);
  auto large = borsuk_graph_points(pts, 3, act, circ_dist, 0.15);
  for (int u = 0; u < small.n; ++u)
    for (int v : small.adj[u]) CHECK(large.adjacent(u, v));
}

TEST_CASE("dimacs round trip") {
  auto h = quotient_graph(circle_complex(3, 12));
  auto text = to_dimacs(h);
  auto back = from_dimacs(text);
  CHECK(back.n == h.n);
  CHECK(back.adj == h.adj);
  CHECK(back.loops == h.loops);

  auto loopy = quotient_graph(cycle_complex(3));
  auto ltext = to_dimacs(loopy);
  CHECK(ltext.find("ERROR") != std::string::npos);
  auto lback = from_dimacs(ltext);
  CHECK(lback.loops == loopy.loops);
  CHECK(lback.adj == loopy.adj);
}
