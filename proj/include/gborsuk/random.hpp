#pragma once

#include "gborsuk/quotient.hpp"
#include "gborsuk/solver.hpp"

#include <nlohmann/json.hpp>

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace gborsuk {

/// One of the supported metric G-spaces: the unit circle with Z_m acting by
/// 2 pi / m rotations, or the d-sphere with the antipodal Z_2 action. Both
/// actions are free isometries of the geodesic metric.
struct AnalyticSpace {
  enum class Kind { circle, sphere };
  Kind kind = Kind::circle;
  int group_order = 2;
  int dim = 1;

  static AnalyticSpace circle(int m) {
    if (m < 2) throw std::invalid_argument("circle needs group order >= 2");
    return {Kind::circle, m, 1};
  }
  static AnalyticSpace sphere(int d) {
    if (d < 1) throw std::invalid_argument("sphere needs dimension >= 1");
    return {Kind::sphere, 2, d};
  }

  std::string name() const {
    return kind == Kind::circle ? "circle/Z" + std::to_string(group_order)
                                : "S" + std::to_string(dim) + "/Z2";
  }
};

/// Points: {theta} on the circle, unit coordinate vectors on the sphere.
using SpacePoint = std::vector<double>;

inline double geodesic(const AnalyticSpace& s, const SpacePoint& a, const SpacePoint& b) {
  if (s.kind == AnalyticSpace::Kind::circle) {
    double d = std::fabs(a[0] - b[0]);
    d = std::fmod(d, 2 * std::numbers::pi);
    return std::min(d, 2 * std::numbers::pi - d);
  }
  double dot = 0;
  for (size_t i = 0; i < a.size(); ++i) dot += a[i] * b[i];
  dot = std::clamp(dot, -1.0, 1.0);
  return std::acos(dot);
}

inline SpacePoint apply_action(const AnalyticSpace& s, int g, const SpacePoint& p) {
  if (s.kind == AnalyticSpace::Kind::circle) {
    double theta = p[0] + 2 * std::numbers::pi * g / s.group_order;
    theta = std::fmod(theta, 2 * std::numbers::pi);
    if (theta < 0) theta += 2 * std::numbers::pi;
    return {theta};
  }
  if (g == 0) return p;
  SpacePoint q(p.size());
  for (size_t i = 0; i < p.size(); ++i) q[i] = -p[i];
  return q;
}

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// mt19937_64 with implementation-independent uniform and gaussian draws
/// (std::distributions are not portable across standard libraries).
struct Rng {
  std::mt19937_64 eng;

  explicit Rng(std::uint64_t seed) : eng(seed) {}

  double uniform() {  // [0, 1)
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
  }

  double gauss() {
    // Box-Muller, cosine branch only: every draw consumes exactly two uniforms.
    double u1 = uniform(), u2 = uniform();
    while (u1 <= 0) u1 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2 * std::numbers::pi * u2);
  }
};

}  // namespace detail

inline std::uint64_t trial_seed(std::uint64_t seed, int trial) {
  return detail::splitmix64(seed ^ detail::splitmix64(static_cast<std::uint64_t>(trial) + 1));
}

inline std::vector<SpacePoint> sample_uniform(const AnalyticSpace& s, int n,
                                              std::uint64_t seed) {
  detail::Rng rng(seed);
  std::vector<SpacePoint> pts;
  pts.reserve(n);
  for (int i = 0; i < n; ++i) {
    if (s.kind == AnalyticSpace::Kind::circle) {
      pts.push_back({2 * std::numbers::pi * rng.uniform()});
    } else {
      SpacePoint p(s.dim + 1);
      double norm = 0;
      do {
        norm = 0;
        for (auto& x : p) {
          x = rng.gauss();
          norm += x * x;
        }
      } while (norm == 0);
      norm = std::sqrt(norm);
      for (auto& x : p) x /= norm;
      pts.push_back(std::move(p));
    }
  }
  return pts;
}

inline QuotGraph random_borsuk(const AnalyticSpace& s, int n, double eps,
                               std::uint64_t seed) {
  auto pts = sample_uniform(s, n, seed);
  return borsuk_graph_points(
      pts, s.group_order, [&](int g, const SpacePoint& p) { return apply_action(s, g, p); },
      [&](const SpacePoint& a, const SpacePoint& b) { return geodesic(s, a, b); }, eps);
}

/// Greedy maximal delta-separated set drawn from a seeded shuffle of a fine
/// probe grid; maximality over the probes makes it a delta-net of the grid,
/// and the certificate reports the exact pairwise and covering radii over
/// the same grid.
struct NetResult {
  std::vector<SpacePoint> points;
  double min_pairwise = 0;
  double covering_radius = 0;
  bool certified = false;
};

inline NetResult greedy_net(const AnalyticSpace& s, double delta, std::uint64_t seed) {
  if (delta <= 0) throw std::invalid_argument("delta must be positive");
  std::vector<SpacePoint> probes;
  if (s.kind == AnalyticSpace::Kind::circle) {
    int n = std::max(1 << 12, static_cast<int>(std::ceil(256 * std::numbers::pi / delta)));
    probes.reserve(n);
    for (int i = 0; i < n; ++i) probes.push_back({2 * std::numbers::pi * i / n});
  } else {
    double area = 4 * std::numbers::pi;  // scale by 1/delta^d, capped
    int n = static_cast<int>(std::min(
        200000.0, std::max(8192.0, 64 * area / std::pow(delta, s.dim))));
    probes = sample_uniform(s, n, detail::splitmix64(seed));
  }
  std::vector<int> order(probes.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  detail::Rng rng(seed);
  for (size_t i = order.size(); i > 1; --i)
    std::swap(order[i - 1], order[rng.eng() % i]);

  NetResult out;
  for (int idx : order) {
    const SpacePoint& p = probes[idx];
    bool far = true;
    for (const auto& q : out.points)
      if (geodesic(s, p, q) <= delta) {
        far = false;
        break;
      }
    if (far) out.points.push_back(p);
  }
  out.min_pairwise = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < out.points.size(); ++i)
    for (size_t j = i + 1; j < out.points.size(); ++j)
      out.min_pairwise = std::min(out.min_pairwise, geodesic(s, out.points[i], out.points[j]));
  out.covering_radius = 0;
  for (const auto& p : probes) {
    double d = std::numeric_limits<double>::infinity();
    for (const auto& q : out.points) d = std::min(d, geodesic(s, p, q));
    out.covering_radius = std::max(out.covering_radius, d);
  }
  out.certified = (out.points.size() < 2 || out.min_pairwise > delta) &&
                  out.covering_radius <= delta;
  return out;
}

enum class SweepMode { exact_chromatic, k_colorability, bipartite };

struct ExperimentConfig {
  AnalyticSpace space;
  int n = 0;
  double eps_c = 6.0;                 // coefficient in C (log n / n)^(1/d)
  std::optional<double> eps_fixed;    // overrides the rule when set
  int trials = 1;
  std::uint64_t seed = 0;
  SweepMode mode = SweepMode::exact_chromatic;
  int threads = 1;
  std::uint64_t solver_budget = kDefaultBudget;

  double eps() const {
    if (eps_fixed) return *eps_fixed;
    return eps_c * std::pow(std::log(static_cast<double>(n)) / n, 1.0 / space.dim);
  }
};

struct TrialRecord {
  int trial = 0;
  std::uint64_t seed = 0;
  double eps = 0;
  long long edges = 0;
  std::string verdict;
  int chi = -1;
  int omega = -1;
  double ms = 0;
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<TrialRecord> trials;
  int timeouts = 0;

  /// Fraction of non-timeout trials whose verdict matches.
  double fraction(const std::string& verdict) const {
    int hit = 0, total = 0;
    for (const auto& t : trials) {
      if (t.verdict == "timeout") continue;
      ++total;
      if (t.verdict == verdict) ++hit;
    }
    return total == 0 ? 0.0 : static_cast<double>(hit) / total;
  }
};

inline bool is_bipartite(const QuotGraph& g) {
  if (g.has_loops()) return false;
  std::vector<int> side(g.n, -1);
  std::vector<int> queue;
  for (int s = 0; s < g.n; ++s) {
    if (side[s] != -1) continue;
    side[s] = 0;
    queue.assign(1, s);
    while (!queue.empty()) {
      int u = queue.back();
      queue.pop_back();
      for (int v : g.adj[u]) {
        if (side[v] == -1) {
          side[v] = side[u] ^ 1;
          queue.push_back(v);
        } else if (side[v] == side[u]) {
          return false;
        }
      }
    }
  }
  return true;
}

/// The closed-arc coloring of circle points with m+1 colors; proper for
/// every edge exactly when eps leaves slack between the arcs and the
/// rotation, and then an upper-bound witness for the exact solver.
inline std::optional<Coloring> circle_arc_witness(const AnalyticSpace& s,
                                                  const std::vector<SpacePoint>& pts,
                                                  const QuotGraph& g) {
  int m = s.group_order;
  std::vector<int> colors(pts.size());
  for (size_t i = 0; i < pts.size(); ++i) {
    double frac = pts[i][0] / (2 * std::numbers::pi);
    int arc = static_cast<int>(frac * (m + 1));
    colors[i] = std::min(arc, m);
  }
  if (!is_proper(g, colors)) return std::nullopt;
  return Coloring::of(std::move(colors));
}

namespace detail {

inline void run_trials(const ExperimentConfig& cfg,
                       const std::function<TrialRecord(int, std::uint64_t)>& one,
                       std::vector<TrialRecord>& out) {
  out.resize(cfg.trials);
  int threads = std::max(1, cfg.threads);
  if (threads == 1) {
    for (int i = 0; i < cfg.trials; ++i) out[i] = one(i, trial_seed(cfg.seed, i));
    return;
  }
  std::atomic<int> next{0};
  auto worker = [&] {
    for (;;) {
      int i = next.fetch_add(1);
      if (i >= cfg.trials) return;
      out[i] = one(i, trial_seed(cfg.seed, i));
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

}  // namespace detail

/// Chromatic-number sweeps: exact chi per trial (dense regime target
/// cov_G(d) = m+d), exact k-colorability (sparse target), or a plain
/// bipartite check for circle/Z_2.
inline ExperimentResult threshold_sweep(const ExperimentConfig& cfg) {
  ExperimentResult result;
  result.config = cfg;
  double eps = cfg.eps();
  int sparse_k = cfg.space.kind == AnalyticSpace::Kind::circle ? cfg.space.group_order
                                                               : cfg.space.dim + 1;
  auto one = [&](int trial, std::uint64_t seed) {
    auto t0 = std::chrono::steady_clock::now();
    TrialRecord rec;
    rec.trial = trial;
    rec.seed = seed;
    rec.eps = eps;
    auto pts = sample_uniform(cfg.space, cfg.n, seed);
    QuotGraph g = borsuk_graph_points(
        pts, cfg.space.group_order,
        [&](int e, const SpacePoint& p) { return apply_action(cfg.space, e, p); },
        [&](const SpacePoint& a, const SpacePoint& b) { return geodesic(cfg.space, a, b); },
        eps);
    rec.edges = g.num_edges();
    if (g.has_loops()) {
      rec.verdict = "loopy";
    } else if (cfg.mode == SweepMode::bipartite) {
      rec.verdict = is_bipartite(g) ? "bipartite" : "non-bipartite";
    } else if (cfg.mode == SweepMode::k_colorability) {
      ColoringProblem p(g, sparse_k);
      ExtendResult r = extend_precoloring(p, cfg.solver_budget);
      rec.verdict = r.status == SolveStatus::sat     ? "colorable"
                    : r.status == SolveStatus::unsat ? "not-colorable"
                                                     : "timeout";
    } else {
      std::optional<Coloring> warm;
      if (cfg.space.kind == AnalyticSpace::Kind::circle)
        warm = circle_arc_witness(cfg.space, pts, g);
      ChromaticResult r = exact_chromatic(g, cfg.solver_budget, std::move(warm));
      if (!r.exact) {
        rec.verdict = "timeout";
      } else {
        rec.chi = r.chi();
        rec.verdict = "chi=" + std::to_string(r.chi());
      }
    }
    rec.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                 .count();
    return rec;
  };
  detail::run_trials(cfg, one, result.trials);
  for (const auto& t : result.trials)
    if (t.verdict == "timeout") ++result.timeouts;
  return result;
}

/// Clique-number sweeps in the dense regime: omega per trial.
inline ExperimentResult clique_sweep(const ExperimentConfig& cfg) {
  ExperimentResult result;
  result.config = cfg;
  double eps = cfg.eps();
  auto one = [&](int trial, std::uint64_t seed) {
    auto t0 = std::chrono::steady_clock::now();
    TrialRecord rec;
    rec.trial = trial;
    rec.seed = seed;
    rec.eps = eps;
    QuotGraph g = random_borsuk(cfg.space, cfg.n, eps, seed);
    rec.edges = g.num_edges();
    if (g.has_loops()) {
      rec.verdict = "loopy";
    } else {
      auto clique = max_clique(g);
      rec.omega = static_cast<int>(clique.size());
      rec.verdict = "omega=" + std::to_string(rec.omega);
    }
    rec.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                 .count();
    return rec;
  };
  detail::run_trials(cfg, one, result.trials);
  for (const auto& t : result.trials)
    if (t.verdict == "timeout") ++result.timeouts;
  return result;
}

inline std::string to_csv(const ExperimentResult& r) {
  std::ostringstream out;
  out << "trial,seed,n,eps,edges,verdict,omega,ms\n";
  for (const auto& t : r.trials) {
    std::ostringstream eps;
    eps.precision(12);
    eps << t.eps;
    out << t.trial << "," << t.seed << "," << r.config.n << "," << eps.str() << ","
        << t.edges << "," << t.verdict << "," << t.omega << "," << t.ms << "\n";
  }
  return out.str();
}

inline nlohmann::json summary_json(const ExperimentResult& r) {
  nlohmann::json verdicts = nlohmann::json::object();
  for (const auto& t : r.trials) {
    std::string key = t.verdict;
    verdicts[key] = verdicts.value(key, 0) + 1;
  }
  return {{"space", r.config.space.name()},
          {"n", r.config.n},
          {"eps", r.config.eps()},
          {"trials", r.config.trials},
          {"seed", r.config.seed},
          {"timeouts", r.timeouts},
          {"verdicts", verdicts}};
}

}  // namespace gborsuk
