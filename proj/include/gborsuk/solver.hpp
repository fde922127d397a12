#pragma once

#include "gborsuk/quotient.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gborsuk {

class solver_error : public std::runtime_error {
 public:
  enum class kind { loopy_graph, improper_precoloring, bad_input };

  solver_error(kind k, const std::string& msg) : std::runtime_error(msg), kind_(k) {}
  kind which() const { return kind_; }

 private:
  kind kind_;
};

struct Coloring {
  std::vector<int> colors;
  int num_colors_used = 0;

  static Coloring of(std::vector<int> c) {
    Coloring out;
    out.num_colors_used = c.empty() ? 0 : *std::max_element(c.begin(), c.end()) + 1;
    out.colors = std::move(c);
    return out;
  }
};

/// Properness check independent of any solver. Returns a monochromatic edge
/// when improper.
inline bool is_proper(const QuotGraph& g, const std::vector<int>& colors,
                      std::pair<int, int>* witness = nullptr) {
  for (int u = 0; u < g.n; ++u)
    for (int v : g.adj[u])
      if (u < v && colors[u] == colors[v]) {
        if (witness) *witness = {u, v};
        return false;
      }
  return true;
}

enum class SolveStatus { sat, unsat, timeout };

inline constexpr std::uint64_t kDefaultBudget = 100'000'000;  // branch nodes

/// A precoloring-extension instance. Rejects loopy graphs and out-of-range
/// precolor entries at construction; properness of the precoloring itself is
/// checked by the solver (ImproperPrecoloring).
class ColoringProblem {
 public:
  ColoringProblem(QuotGraph graph, int num_colors,
                  std::vector<std::pair<int, int>> precolored = {},
                  std::vector<std::vector<int>> symmetry_hint = {})
      : graph_(std::move(graph)),
        num_colors_(num_colors),
        precolored_(std::move(precolored)),
        symmetry_hint_(std::move(symmetry_hint)) {
    if (graph_.has_loops())
      throw solver_error(solver_error::kind::loopy_graph,
                         "coloring problem on a graph with loops");
    if (num_colors_ < 1 || num_colors_ > 62)
      throw std::invalid_argument("num_colors must be in [1, 62]");
    std::sort(precolored_.begin(), precolored_.end());
    for (size_t i = 0; i < precolored_.size(); ++i) {
      auto [v, c] = precolored_[i];
      if (v < 0 || v >= graph_.n)
        throw std::invalid_argument("precolored vertex out of range");
      if (c < 0 || c >= num_colors_)
        throw std::invalid_argument("precolored color out of range");
      if (i > 0 && precolored_[i - 1].first == v)
        throw std::invalid_argument("vertex precolored twice");
    }
  }

  const QuotGraph& graph() const { return graph_; }
  int num_colors() const { return num_colors_; }
  const std::vector<std::pair<int, int>>& precolored() const { return precolored_; }
  const std::vector<std::vector<int>>& symmetry_hint() const { return symmetry_hint_; }

 private:
  QuotGraph graph_;
  int num_colors_;
  std::vector<std::pair<int, int>> precolored_;
  std::vector<std::vector<int>> symmetry_hint_;
};

struct ExtendResult {
  SolveStatus status;
  std::optional<Coloring> coloring;  // present iff sat
  std::uint64_t nodes = 0;
};

struct ChromaticResult {
  bool exact = false;  // false means the budget ran out; [lower, upper] brackets chi
  int lower = 0;
  int upper = 0;
  std::optional<Coloring> witness;  // proper coloring with `upper` colors
  std::uint64_t nodes = 0;

  int chi() const { return upper; }
};

namespace detail {

/// Forward checking with conflict-directed backjumping (Prosser's FC-CBJ).
///
/// Branch order: minimum remaining values, then max degree, then lowest id;
/// singleton domains are picked up immediately, which plays the role of
/// unit propagation. Value order: ascending, restricted to used colors plus
/// the lowest unused one (unused colors are interchangeable once the
/// precolored ones are pinned; a fresh color can never have been pruned,
/// since pruning implies a neighbor uses it). Every domain pruning records
/// the decision level responsible, so an exhausted level jumps straight to
/// the deepest level implicated in its conflicts.
class FcSolver {
 public:
  FcSolver(const QuotGraph& g, int k, std::uint64_t budget)
      : g_(g), n_(g.n), k_(k), budget_(budget) {
    full_ = (k >= 64) ? ~0ULL : ((1ULL << k) - 1);
    domain_.assign(n_, full_);
    color_.assign(n_, -1);
    pruned_by_.assign(static_cast<size_t>(n_) * k_, 0);
    conf_words_ = static_cast<size_t>(n_ + 2 + 63) / 64;
  }

  void mark_used(int c) { used_ |= 1ULL << c; }

  /// Level-0 assignment. Returns false on immediate conflict.
  bool seed(int v, int c) {
    if (color_[v] != -1) return color_[v] == c;
    if (!(domain_[v] >> c & 1)) return false;
    color_[v] = c;
    used_ |= 1ULL << c;
    std::uint64_t bit = 1ULL << c;
    for (int u : g_.adj[v]) {
      if (color_[u] != -1) {
        if (color_[u] == c) return false;
        continue;
      }
      if (domain_[u] & bit) {
        domain_[u] &= ~bit;
        pruned_by_[static_cast<size_t>(u) * k_ + c] = 0;
        if (domain_[u] == 0) return false;
      }
    }
    return true;
  }

  SolveStatus run() {
    for (;;) {
      int v = select();
      if (v == -1) return SolveStatus::sat;
      open_level(v);
      for (;;) {
        Level& lv = levels_.back();
        int d = static_cast<int>(levels_.size());
        bool descended = false;
        while (lv.candidates) {
          if (++nodes_ > budget_) return SolveStatus::timeout;
          int c = std::countr_zero(lv.candidates);
          lv.candidates &= lv.candidates - 1;
          int wiped = assign(lv, c, d);
          if (wiped < 0) {
            descended = true;
            break;
          }
          merge_pruners(conf_[d], wiped);
          undo_value(lv);
        }
        if (descended) break;
        // Exhausted: jump to the deepest level implicated in the failures.
        clear_bit(conf_[d], d);
        int j = highest_bit(conf_[d]);
        if (j < 1) return SolveStatus::unsat;
        or_into(conf_[j], conf_[d]);
        while (static_cast<int>(levels_.size()) > j) {
          undo_value(levels_.back());
          levels_.pop_back();
        }
        undo_value(levels_.back());
      }
    }
  }

  std::uint64_t nodes() const { return nodes_; }
  std::vector<int> take_colors() { return std::move(color_); }

 private:
  struct Level {
    int var;
    std::uint64_t candidates;
    int value = -1;
    size_t trail_mark = 0;
    std::uint64_t used_before = 0;
  };

  int& pruned_at(int v, int c) { return pruned_by_[static_cast<size_t>(v) * k_ + c]; }

  static void set_bit(std::vector<std::uint64_t>& w, int i) {
    w[static_cast<size_t>(i) >> 6] |= 1ULL << (i & 63);
  }
  static void clear_bit(std::vector<std::uint64_t>& w, int i) {
    w[static_cast<size_t>(i) >> 6] &= ~(1ULL << (i & 63));
  }
  static void or_into(std::vector<std::uint64_t>& dst, const std::vector<std::uint64_t>& src) {
    for (size_t i = 0; i < dst.size(); ++i) dst[i] |= src[i];
  }
  static int highest_bit(const std::vector<std::uint64_t>& w) {
    for (int i = static_cast<int>(w.size()) - 1; i >= 0; --i)
      if (w[i]) return (i << 6) + 63 - std::countl_zero(w[i]);
    return -1;
  }

  int select() const {
    int best = -1, best_dom = 65, best_deg = -1;
    for (int v = 0; v < n_; ++v) {
      if (color_[v] != -1) continue;
      int dom = std::popcount(domain_[v]);
      if (dom == 1) return v;
      int deg = static_cast<int>(g_.adj[v].size());
      if (dom < best_dom || (dom == best_dom && deg > best_deg)) {
        best = v;
        best_dom = dom;
        best_deg = deg;
      }
    }
    return best;
  }

  void open_level(int v) {
    int d = static_cast<int>(levels_.size()) + 1;
    if (static_cast<int>(conf_.size()) <= d) conf_.resize(d + 1);
    conf_[d].assign(conf_words_, 0);
    std::uint64_t fresh = full_ & ~used_;
    std::uint64_t candidates = domain_[v] & (fresh ? (used_ | (fresh & -fresh)) : ~0ULL);
    // Colors already gone from the domain implicate their pruners.
    std::uint64_t unavailable = full_ & ~domain_[v];
    while (unavailable) {
      int c = std::countr_zero(unavailable);
      unavailable &= unavailable - 1;
      set_bit(conf_[d], pruned_at(v, c));
    }
    levels_.push_back({v, candidates, -1, trail_.size(), used_});
  }

  /// Assigns the level's variable and forward-checks. Returns the wiped-out
  /// neighbor, or -1 when none.
  int assign(Level& lv, int c, int d) {
    lv.value = c;
    lv.trail_mark = trail_.size();
    lv.used_before = used_;
    color_[lv.var] = c;
    used_ |= 1ULL << c;
    std::uint64_t bit = 1ULL << c;
    for (int u : g_.adj[lv.var]) {
      if (color_[u] != -1) continue;  // proper by the pruning discipline
      if (domain_[u] & bit) {
        domain_[u] &= ~bit;
        pruned_at(u, c) = d;
        trail_.push_back(u);
        if (domain_[u] == 0) return u;
      }
    }
    return -1;
  }

  void undo_value(Level& lv) {
    if (lv.value == -1) return;
    std::uint64_t bit = 1ULL << lv.value;
    while (trail_.size() > lv.trail_mark) {
      domain_[trail_.back()] |= bit;
      trail_.pop_back();
    }
    color_[lv.var] = -1;
    used_ = lv.used_before;
    lv.value = -1;
  }

  void merge_pruners(std::vector<std::uint64_t>& conf, int wiped) {
    for (int c = 0; c < k_; ++c) set_bit(conf, pruned_at(wiped, c));
  }

  const QuotGraph& g_;
  int n_, k_;
  std::uint64_t budget_;
  std::uint64_t full_;
  std::uint64_t used_ = 0;
  std::vector<std::uint64_t> domain_;
  std::vector<int> color_;
  std::vector<int> pruned_by_;
  size_t conf_words_;
  std::vector<Level> levels_;
  std::vector<std::vector<std::uint64_t>> conf_;
  std::vector<int> trail_;
  std::uint64_t nodes_ = 0;
};

}  // namespace detail

/// Greedy DSATUR coloring: highest saturation first, ties by degree then by
/// lowest vertex id. Deterministic upper-bound seed for the exact search.
inline Coloring dsatur_upper(const QuotGraph& g) {
  if (g.has_loops())
    throw solver_error(solver_error::kind::loopy_graph, "dsatur on a graph with loops");
  int n = g.n;
  std::vector<int> color(n, -1);
  std::vector<std::uint64_t> neighbor_colors_lo(n, 0);
  std::vector<std::set<int>> neighbor_colors_hi(n);  // colors >= 64, rare
  std::vector<int> sat(n, 0);
  for (int step = 0; step < n; ++step) {
    int pick = -1, pick_sat = -1, pick_deg = -1;
    for (int v = 0; v < n; ++v) {
      if (color[v] != -1) continue;
      int deg = static_cast<int>(g.adj[v].size());
      if (sat[v] > pick_sat || (sat[v] == pick_sat && deg > pick_deg)) {
        pick = v;
        pick_sat = sat[v];
        pick_deg = deg;
      }
    }
    int c = 0;
    while (true) {
      bool taken = c < 64 ? (neighbor_colors_lo[pick] >> c & 1)
                          : neighbor_colors_hi[pick].count(c) > 0;
      if (!taken) break;
      ++c;
    }
    color[pick] = c;
    for (int u : g.adj[pick]) {
      if (color[u] != -1) continue;
      bool had = c < 64 ? (neighbor_colors_lo[u] >> c & 1) : neighbor_colors_hi[u].count(c) > 0;
      if (!had) {
        if (c < 64)
          neighbor_colors_lo[u] |= 1ULL << c;
        else
          neighbor_colors_hi[u].insert(c);
        ++sat[u];
      }
    }
  }
  return Coloring::of(std::move(color));
}

/// Exact maximum clique, branch and bound with a greedy-coloring bound.
inline std::vector<int> max_clique(const QuotGraph& g) {
  if (g.has_loops())
    throw solver_error(solver_error::kind::loopy_graph, "max_clique on a graph with loops");
  int n = g.n;
  if (n == 0) return {};
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return g.adj[a].size() > g.adj[b].size();
  });
  std::vector<int> pos(n);
  for (int i = 0; i < n; ++i) pos[order[i]] = i;
  // Adjacency over the reordered ids, as bitsets.
  int words = (n + 63) / 64;
  std::vector<std::vector<std::uint64_t>> nb(n, std::vector<std::uint64_t>(words, 0));
  for (int u = 0; u < n; ++u)
    for (int v : g.adj[u]) nb[pos[u]][pos[v] >> 6] |= 1ULL << (pos[v] & 63);

  std::vector<int> best, cur;
  std::vector<int> color_buf, cand_buf;

  std::function<void(std::vector<int>&)> expand = [&](std::vector<int>& cands) {
    // Greedy coloring of the candidate set; candidates reordered by class.
    int nc = static_cast<int>(cands.size());
    std::vector<int> klass(nc), seq;
    std::vector<std::vector<std::uint64_t>> class_sets;
    seq.reserve(nc);
    std::vector<int> cls_of(nc);
    for (int i = 0; i < nc; ++i) {
      int v = cands[i];
      size_t c = 0;
      for (; c < class_sets.size(); ++c) {
        if (!(class_sets[c][v >> 6] >> (v & 63) & 1)) break;
      }
      if (c == class_sets.size()) class_sets.emplace_back(words, 0);
      // class_sets[c] holds the union of neighborhoods of class members.
      for (int w = 0; w < words; ++w) class_sets[c][w] |= nb[v][w];
      cls_of[i] = static_cast<int>(c) + 1;
    }
    std::vector<int> idx(nc);
    for (int i = 0; i < nc; ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(),
                     [&](int a, int b) { return cls_of[a] < cls_of[b]; });
    for (int t = nc - 1; t >= 0; --t) {
      int i = idx[t];
      int v = cands[i];
      if (cur.size() + cls_of[i] <= best.size()) return;
      cur.push_back(v);
      std::vector<int> next;
      next.reserve(nc);
      for (int s = 0; s < t; ++s) {
        int u = cands[idx[s]];
        if (nb[v][u >> 6] >> (u & 63) & 1) next.push_back(u);
      }
      if (next.empty()) {
        if (cur.size() > best.size()) best = cur;
      } else {
        expand(next);
      }
      cur.pop_back();
    }
  };

  std::vector<int> all(n);
  for (int i = 0; i < n; ++i) all[i] = i;
  expand(all);
  std::vector<int> out;
  out.reserve(best.size());
  for (int v : best) out.push_back(order[v]);
  std::sort(out.begin(), out.end());
  return out;
}

/// Precoloring extension: total proper coloring with the problem's palette
/// respecting the precolored entries, a definitive UNSAT, or a timeout when
/// the node budget runs out.
inline ExtendResult extend_precoloring(const ColoringProblem& p,
                                       std::uint64_t budget = kDefaultBudget) {
  const QuotGraph& g = p.graph();
  for (auto [v, c] : p.precolored())
    for (int u : g.adj[v]) {
      // Improper precolorings are caller errors, not UNSAT.
      auto it = std::lower_bound(p.precolored().begin(), p.precolored().end(),
                                 std::make_pair(u, -1));
      if (it != p.precolored().end() && it->first == u && it->second == c)
        throw solver_error(solver_error::kind::improper_precoloring,
                           "precolored vertices " + std::to_string(v) + " and " +
                               std::to_string(u) + " share color " + std::to_string(c));
    }
  detail::FcSolver solver(g, p.num_colors(), budget);
  for (auto [v, c] : p.precolored()) solver.mark_used(c);
  for (auto [v, c] : p.precolored())
    if (!solver.seed(v, c)) return {SolveStatus::unsat, std::nullopt, solver.nodes()};
  SolveStatus st = solver.run();
  if (st != SolveStatus::sat) return {st, std::nullopt, solver.nodes()};
  return {st, Coloring::of(solver.take_colors()), solver.nodes()};
}

/// Exact chromatic number: clique lower bound, DSATUR upper bound, then
/// downward decision runs with the clique precolored as a rainbow. Returns
/// a bracket instead of an answer when the budget is exceeded. A verified
/// proper coloring may be passed as a warm upper-bound witness.
inline ChromaticResult exact_chromatic(const QuotGraph& g,
                                       std::uint64_t budget = kDefaultBudget,
                                       std::optional<Coloring> warm_start = std::nullopt) {
  if (g.has_loops())
    throw solver_error(solver_error::kind::loopy_graph,
                       "exact_chromatic on a graph with loops");
  ChromaticResult res;
  if (g.n == 0) {
    res.exact = true;
    res.witness = Coloring::of({});
    return res;
  }
  std::vector<int> clique = max_clique(g);
  Coloring greedy = dsatur_upper(g);
  res.lower = static_cast<int>(clique.size());
  res.upper = greedy.num_colors_used;
  res.witness = std::move(greedy);
  if (warm_start) {
    if (static_cast<int>(warm_start->colors.size()) != g.n ||
        !is_proper(g, warm_start->colors))
      throw solver_error(solver_error::kind::bad_input,
                         "warm start is not a proper coloring of the graph");
    if (warm_start->num_colors_used < res.upper) {
      res.upper = warm_start->num_colors_used;
      res.witness = std::move(warm_start);
    }
  }
  while (res.upper > res.lower) {
    int k = res.upper - 1;
    std::vector<std::pair<int, int>> pre;
    for (size_t i = 0; i < clique.size(); ++i) pre.emplace_back(clique[i], static_cast<int>(i));
    ColoringProblem p(g, k, std::move(pre));
    std::uint64_t left = budget > res.nodes ? budget - res.nodes : 0;
    ExtendResult r = extend_precoloring(p, left);
    res.nodes += r.nodes;
    if (r.status == SolveStatus::sat) {
      res.upper = r.coloring->num_colors_used;
      res.witness = std::move(*r.coloring);
    } else if (r.status == SolveStatus::unsat) {
      res.lower = res.upper;
    } else {
      return res;  // timeout: bracket [lower, upper]
    }
  }
  res.exact = true;
  return res;
}

inline std::string export_dimacs(const QuotGraph& g) { return to_dimacs(g); }

/// CPLEX-style LP text for the assignment model: one binary per
/// (vertex, color), per-vertex assignment rows, per-edge-per-color conflict
/// rows, precolored variables fixed in the bounds section.
inline std::string export_ilp(const ColoringProblem& p) {
  const QuotGraph& g = p.graph();
  int k = p.num_colors();
  std::ostringstream out;
  out << "\\ gborsuk coloring model: " << g.n << " vertices, " << g.num_edges()
      << " edges, " << k << " colors\n";
  out << "Minimize\n obj: 0\nSubject To\n";
  for (int v = 0; v < g.n; ++v) {
    out << " a" << v << ":";
    for (int c = 0; c < k; ++c) out << (c ? " + " : " ") << "x_" << v << "_" << c;
    out << " = 1\n";
  }
  long long e = 0;
  for (int u = 0; u < g.n; ++u)
    for (int v : g.adj[u]) {
      if (u >= v) continue;
      for (int c = 0; c < k; ++c)
        out << " e" << e << "c" << c << ": x_" << u << "_" << c << " + x_" << v << "_" << c
            << " <= 1\n";
      ++e;
    }
  out << "Bounds\n";
  for (auto [v, c] : p.precolored()) out << " x_" << v << "_" << c << " = 1\n";
  out << "Binaries\n";
  int per_line = 0;
  for (int v = 0; v < g.n; ++v)
    for (int c = 0; c < k; ++c) {
      out << (per_line ? " " : " ") << "x_" << v << "_" << c;
      if (++per_line == 8) {
        out << "\n";
        per_line = 0;
      }
    }
  if (per_line) out << "\n";
  out << "End\n";
  return out.str();
}

/// Parses "v <vertex> <color>" lines (0-indexed) and verifies the result is
/// a total proper coloring consistent with the problem.
inline Coloring import_solution(const ColoringProblem& p, const std::string& text) {
  const QuotGraph& g = p.graph();
  std::vector<int> colors(g.n, -1);
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag != "v") continue;
    int v, c;
    if (!(ls >> v >> c))
      throw solver_error(solver_error::kind::bad_input, "malformed solution line: " + line);
    if (v < 0 || v >= g.n || c < 0 || c >= p.num_colors())
      throw solver_error(solver_error::kind::bad_input, "solution entry out of range: " + line);
    colors[v] = c;
  }
  for (int v = 0; v < g.n; ++v)
    if (colors[v] == -1)
      throw solver_error(solver_error::kind::bad_input,
                         "vertex " + std::to_string(v) + " missing from solution");
  for (auto [v, c] : p.precolored())
    if (colors[v] != c)
      throw solver_error(solver_error::kind::bad_input,
                         "solution disagrees with precoloring at vertex " + std::to_string(v));
  std::pair<int, int> bad;
  if (!is_proper(g, colors, &bad))
    throw solver_error(solver_error::kind::bad_input,
                       "solution is not proper: edge " + std::to_string(bad.first) + "-" +
                           std::to_string(bad.second));
  return Coloring::of(std::move(colors));
}

}  // namespace gborsuk
