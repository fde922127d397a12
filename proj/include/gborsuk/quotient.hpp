#pragma once

#include "gborsuk/complex.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace gborsuk {

/// A finite simple graph with loops tracked separately. Vertex ids coincide
/// with triangulation vertex ids when built from a GComplex. Loops are
/// recorded, never dropped; downstream solvers refuse loopy graphs
/// explicitly.
struct QuotGraph {
  int n = 0;
  std::vector<std::vector<int>> adj;  // sorted neighbor lists, loop-free
  std::vector<int> loops;             // sorted vertex ids with v ~ v
  std::string source;

  bool adjacent(int u, int v) const {
    const auto& row = adj[u];
    return std::binary_search(row.begin(), row.end(), v);
  }

  bool has_loops() const { return !loops.empty(); }

  long long num_edges() const {
    long long s = 0;
    for (const auto& row : adj) s += static_cast<long long>(row.size());
    return s / 2;
  }

  int max_degree() const {
    size_t d = 0;
    for (const auto& row : adj) d = std::max(d, row.size());
    return static_cast<int>(d);
  }

  static QuotGraph from_edges(int n, std::vector<std::pair<int, int>> edges,
                              std::vector<int> loops = {}, std::string source = {}) {
    QuotGraph g;
    g.n = n;
    g.adj.assign(n, {});
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    for (auto [u, v] : edges) {
      g.adj[u].push_back(v);
      g.adj[v].push_back(u);
    }
    for (auto& row : g.adj) {
      std::sort(row.begin(), row.end());
      row.erase(std::unique(row.begin(), row.end()), row.end());
    }
    std::sort(loops.begin(), loops.end());
    loops.erase(std::unique(loops.begin(), loops.end()), loops.end());
    g.loops = std::move(loops);
    g.source = std::move(source);
    return g;
  }
};

/// The quotient graph H(T): u ~ v whenever {u, g v} is a simplex of T for
/// some non-identity g. The singleton case g v = u counts (it is the
/// simplex {u}), so every vertex orbit spans a clique. Loops appear exactly
/// when {v, g v} is an edge of T.
inline QuotGraph quotient_graph(const GComplex& t) {
  int m = t.group().order();
  std::vector<std::pair<int, int>> edges;
  std::vector<int> loops;
  auto add = [&](int u, int v) {
    if (u == v)
      loops.push_back(u);
    else
      edges.emplace_back(std::min(u, v), std::max(u, v));
  };
  for (int g = 1; g < m; ++g)
    for (int v = 0; v < t.num_vertices(); ++v) add(t.vertex_action(g, v), v);
  const auto t_edges = t.all_edges();
  for (int g = 1; g < m; ++g) {
    int ginv = t.group().inv(g);
    for (auto [x, y] : t_edges) {
      add(x, t.vertex_action(ginv, y));
      add(y, t.vertex_action(ginv, x));
    }
  }
  return QuotGraph::from_edges(t.num_vertices(), std::move(edges), std::move(loops),
                               "quotient");
}

/// G-Borsuk graph on an explicit point sample: x ~ y iff some non-identity
/// g brings g y within eps of x. The action must be isometric so the
/// relation is symmetric.
template <typename Point, typename Action, typename Metric>
QuotGraph borsuk_graph_points(const std::vector<Point>& points, int group_order,
                              Action&& action, Metric&& metric, double eps) {
  if (eps <= 0) throw std::invalid_argument("eps must be positive");
  int n = static_cast<int>(points.size());
  std::vector<std::pair<int, int>> edges;
  std::vector<int> loops;
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      bool hit = false;
      for (int g = 1; g < group_order && !hit; ++g)
        hit = metric(points[i], action(g, points[j])) <= eps;
      if (!hit) continue;
      if (i == j)
        loops.push_back(i);
      else
        edges.emplace_back(i, j);
    }
  }
  return QuotGraph::from_edges(n, std::move(edges), std::move(loops), "points");
}

/// DIMACS export. Loops make coloring infeasible, so they are flagged in
/// the header and listed as comments rather than as edges.
inline std::string to_dimacs(const QuotGraph& g) {
  std::ostringstream out;
  out << "c source: " << (g.source.empty() ? "unknown" : g.source) << "\n";
  if (g.has_loops())
    out << "c ERROR: graph has " << g.loops.size()
        << " loop(s); not colorable as exported\n";
  out << "p edge " << g.n << " " << g.num_edges() << "\n";
  for (int v : g.loops) out << "c loop " << v + 1 << "\n";
  for (int u = 0; u < g.n; ++u)
    for (int v : g.adj[u])
      if (u < v) out << "e " << u + 1 << " " << v + 1 << "\n";
  return out.str();
}

inline QuotGraph from_dimacs(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int n = -1;
  std::vector<std::pair<int, int>> edges;
  std::vector<int> loops;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag == "c") {
      std::string what;
      if (ls >> what && what == "loop") {
        int v;
        if (ls >> v) loops.push_back(v - 1);
      }
    } else if (tag == "p") {
      std::string fmt;
      long long m;
      if (!(ls >> fmt >> n >> m)) throw std::invalid_argument("bad DIMACS p line");
    } else if (tag == "e") {
      int u, v;
      if (!(ls >> u >> v)) throw std::invalid_argument("bad DIMACS e line");
      if (u == v)
        loops.push_back(u - 1);
      else
        edges.emplace_back(std::min(u, v) - 1, std::max(u, v) - 1);
    }
  }
  if (n < 0) throw std::invalid_argument("DIMACS input has no p line");
  return QuotGraph::from_edges(n, std::move(edges), std::move(loops), "dimacs");
}

}  // namespace gborsuk
