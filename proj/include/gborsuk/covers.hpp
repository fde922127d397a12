#pragma once

#include "gborsuk/complex.hpp"
#include "gborsuk/quotient.hpp"
#include "gborsuk/solver.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gborsuk {

class cover_error : public std::runtime_error {
 public:
  enum class kind {
    incompatible_refinement,
    precoloring_not_distinct,
    base_unverified,
    unsupported
  };

  cover_error(kind k, const std::string& msg) : std::runtime_error(msg), kind_(k) {}
  kind which() const { return kind_; }

 private:
  kind kind_;
};

enum class VerifyState { unverified, verified, failed };

struct CoverFailure {
  bool loop = false;
  int u = -1;
  int v = -1;  // -1 for loops
  int g = -1;  // witnessing group element
};

/// A vertex coloring of a triangulation that certifies a closed G-cover
/// once verified: the coloring is proper on the quotient graph and the
/// quotient is loop-free.
struct CoverColoring {
  GComplex triangulation;
  std::vector<int> colors;
  int num_colors = 0;
  VerifyState state = VerifyState::unverified;
  std::optional<CoverFailure> failure;
};

struct CoverBounds {
  int lower;        // k + |G|
  int upper;        // k(|G|-1) + 2
  int conjectured;  // |G| + k
};

inline CoverBounds bounds(const GroupTable& g, int k) {
  if (k < 0) throw std::invalid_argument("index must be >= 0");
  int m = g.order();
  return {k + m, k * (m - 1) + 2, m + k};
}

/// Re-derives the certificate: builds the quotient graph and checks the
/// coloring is proper and the graph loop-free. Failures carry a witness.
inline CoverColoring verify_cover(CoverColoring c) {
  const GComplex& t = c.triangulation;
  QuotGraph h = quotient_graph(t);
  if (h.has_loops()) {
    int u = h.loops.front();
    CoverFailure f{true, u, -1, -1};
    // Find the witnessing element: {u, g u} is an edge of t.
    for (int g = 1; g < t.group().order() && f.g == -1; ++g) {
      int gu = t.vertex_action(g, u);
      for (const auto& face : t.maximal_faces()) {
        if (std::binary_search(face.begin(), face.end(), u) &&
            std::binary_search(face.begin(), face.end(), gu)) {
          f.g = g;
          break;
        }
      }
    }
    c.state = VerifyState::failed;
    c.failure = f;
    return c;
  }
  std::pair<int, int> bad;
  if (!is_proper(h, c.colors, &bad)) {
    CoverFailure f{false, bad.first, bad.second, -1};
    const GroupTable& grp = t.group();
    auto edges = t.all_edges();
    std::set<std::pair<int, int>> edge_set(edges.begin(), edges.end());
    for (int g = 1; g < grp.order() && f.g == -1; ++g) {
      int gv = t.vertex_action(g, bad.second);
      if (gv == bad.first) f.g = g;
      int a = std::min(bad.first, gv), b = std::max(bad.first, gv);
      if (edge_set.count({a, b})) f.g = g;
      int gu = t.vertex_action(g, bad.first);
      a = std::min(bad.second, gu);
      b = std::max(bad.second, gu);
      if (edge_set.count({a, b})) f.g = g;
    }
    c.state = VerifyState::failed;
    c.failure = f;
    return c;
  }
  c.state = VerifyState::verified;
  c.failure.reset();
  return c;
}

/// C_N as a Z_m-complex: N atoms on the circle at positions p/N, the group
/// rotating by N/m steps.
inline GComplex circle_complex(int m, int n) {
  if (m < 2) throw std::invalid_argument("circle_complex requires group order >= 2");
  if (n < 3 || n % m != 0)
    throw cover_error(cover_error::kind::incompatible_refinement,
                      "refinement must be a multiple of the group order and >= 3");
  GroupTable g = GroupTable::cyclic(m);
  int step = n / m;
  std::vector<std::vector<int>> action(m, std::vector<int>(n));
  for (int e = 0; e < m; ++e)
    for (int a = 0; a < n; ++a) action[e][a] = (a + e * step) % n;
  std::vector<VertexLabel> verts;
  std::vector<std::vector<int>> faces;
  for (int a = 0; a < n; ++a) {
    verts.push_back(VertexLabel::atom(a));
    faces.push_back({a, (a + 1) % n});
  }
  return GComplex(std::move(g), n, std::move(action), std::move(verts), std::move(faces));
}

/// The circle cover: C_N under Z_m colored by m+1 equal closed arcs,
/// vertex p getting arc index floor(p (m+1) / N). Needs N divisible by both
/// m and m+1 so that rotations and arc boundaries land on vertices.
inline CoverColoring circle_cover(int m, int n) {
  if (m < 2) throw std::invalid_argument("circle_cover requires m >= 2");
  if (n % m != 0 || n % (m + 1) != 0)
    throw cover_error(cover_error::kind::incompatible_refinement,
                      "refinement " + std::to_string(n) + " must be divisible by " +
                          std::to_string(m) + " and " + std::to_string(m + 1));
  GComplex circle = circle_complex(m, n);
  std::vector<int> colors(n);
  for (int p = 0; p < n; ++p) colors[p] = p * (m + 1) / n;
  CoverColoring c{std::move(circle), std::move(colors), m + 1};
  return verify_cover(std::move(c));
}

/// One cyclic orbit of edges colored after the circle cover: each edge is
/// split into k+1 subsegments and position s of edge i is colored by the
/// arc of the pulled-back circle at k(i) + s/(k+1), arcs being relabeled so
/// that arc i carries the color of endpoint i and the leftover arc the
/// extra color.
struct CycleFragment {
  int cycle_len = 0;  // k
  int parts = 0;      // k+1 subsegments per edge
  std::vector<std::vector<int>> edge_colors;  // per edge, positions 0..parts
  int extra_color = 0;
  bool used_extra = false;
};

namespace detail {

/// Arc color at integer position u of the k(k+1)-step circle:
/// arc floor(u/k) taken mod k+1; arcs 0..k-1 map to the cycle's endpoint
/// colors and arc k to the extra color.
inline int fragment_color(int k, long long u, const std::vector<int>& endpoint_colors,
                          int extra_color) {
  long long arc = (u / k) % (k + 1);
  return arc < k ? endpoint_colors[static_cast<size_t>(arc)] : extra_color;
}

}  // namespace detail

inline CycleFragment cyclic_join_cover(const std::vector<std::pair<int, int>>& edge_cycle,
                                       const std::vector<int>& endpoint_colors,
                                       int extra_color = 0) {
  int k = static_cast<int>(edge_cycle.size());
  if (k < 1) throw std::invalid_argument("empty edge cycle");
  if (static_cast<int>(endpoint_colors.size()) != k)
    throw std::invalid_argument("need one endpoint color per edge");
  for (int i = 0; i < k; ++i)
    if (edge_cycle[i].second != edge_cycle[(i + 1) % k].first)
      throw std::invalid_argument("edge sequence is not a cycle");
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      if (endpoint_colors[i] == endpoint_colors[j])
        throw cover_error(cover_error::kind::precoloring_not_distinct,
                          "endpoint colors must be pairwise distinct");
  for (int c : endpoint_colors)
    if (c == extra_color)
      throw cover_error(cover_error::kind::precoloring_not_distinct,
                        "extra color collides with an endpoint color");
  CycleFragment f;
  f.cycle_len = k;
  f.parts = k + 1;
  f.extra_color = extra_color;
  f.edge_colors.assign(k, std::vector<int>(k + 2));
  for (int i = 0; i < k; ++i)
    for (int s = 0; s <= k + 1; ++s) {
      int c = detail::fragment_color(k, static_cast<long long>(i) * (k + 1) + s,
                                     endpoint_colors, extra_color);
      f.edge_colors[i][s] = c;
      if (c == extra_color) f.used_extra = true;
    }
  return f;
}

/// The |G|+1 cover of G*G. Every edge orbit (one per group element h, with
/// sigma = right multiplication by h) splits into r = |G|/ord(h) cycles;
/// edges are cut into r(ord(h)+1) equal parts so each cycle's diagonal
/// block carries the pulled-back circle pattern and the off-diagonal blocks
/// take the colors of their endpoints.
inline CoverColoring one_dim_cover(const GroupTable& g) {
  int m = g.order();
  GComplex gg = join(group_complex(g), group_complex(g));
  // h for the edge {x, bar y} is x^{-1} y; constant on G-orbits.
  auto orbit_h = [&](int a, int b) {
    int x = std::min(a, b), y = std::max(a, b) - m;
    return g.mul(g.inv(x), y);
  };
  std::vector<int> parts_of_h(m), ord_of_h(m);
  for (int h = 0; h < m; ++h) {
    int k = g.element_order(h);
    ord_of_h[h] = k;
    parts_of_h[h] = (m / k) * (k + 1);
  }
  GComplex t = subdivide_edges(
      gg, [&](int a, int b) { return parts_of_h[orbit_h(a, b)]; });

  // Cycle decomposition of right multiplication by h, per h: cycles are
  // enumerated from their smallest element.
  struct CycleInfo {
    std::vector<int> cycle_of;  // 1-based cycle index per element
    std::vector<int> pos_of;    // 1-based position within the cycle
    std::vector<std::vector<int>> cycles;
  };
  std::vector<CycleInfo> info(m);
  for (int h = 0; h < m; ++h) {
    CycleInfo ci;
    ci.cycle_of.assign(m, 0);
    ci.pos_of.assign(m, 0);
    for (int start = 0; start < m; ++start) {
      if (ci.cycle_of[start]) continue;
      std::vector<int> cyc;
      int x = start;
      do {
        ci.cycle_of[x] = static_cast<int>(ci.cycles.size()) + 1;
        ci.pos_of[x] = static_cast<int>(cyc.size()) + 1;
        cyc.push_back(x);
        x = g.mul(x, h);
      } while (x != start);
      ci.cycles.push_back(std::move(cyc));
    }
    info[h] = std::move(ci);
  }

  auto color_of_element = [](int e) { return e + 1; };  // color 0 is the extra class
  std::vector<int> colors(t.num_vertices(), -1);
  for (int v = 0; v < t.num_vertices(); ++v) {
    const VertexLabel& lbl = t.label(v);
    if (lbl.weights.size() == 1) {
      int a = lbl.weights[0].first;
      colors[v] = color_of_element(a < m ? a : a - m);
      continue;
    }
    int x = lbl.weights[0].first;       // left endpoint, an element of the first copy
    int ybar = lbl.weights[1].first;    // right endpoint in the second copy
    int h = g.mul(g.inv(x), ybar - m);
    int k = ord_of_h[h];
    int n = parts_of_h[h];
    Rational tw = lbl.weights[1].second;  // weight of the bar endpoint = q/n
    Rational qr = tw * n;
    long long q = static_cast<long long>(numerator(qr));
    const CycleInfo& ci = info[h];
    int j = ci.cycle_of[x], i = ci.pos_of[x];
    long long lo = static_cast<long long>(j - 1) * (k + 1);
    long long hi = static_cast<long long>(j) * (k + 1);
    if (q <= lo) {
      colors[v] = color_of_element(x);
    } else if (q >= hi) {
      colors[v] = color_of_element(g.mul(x, h));
    } else {
      int s = static_cast<int>(q - lo);
      long long u = static_cast<long long>(i - 1) * (k + 1) + s;
      long long arc = (u / k) % (k + 1);
      colors[v] = arc < k
                      ? color_of_element(ci.cycles[j - 1][static_cast<size_t>(arc)])
                      : 0;
    }
  }
  CoverColoring c{std::move(t), std::move(colors), m + 1};
  return verify_cover(std::move(c));
}

namespace detail {

/// Splits a tracked label of a join complex into the apex element (if any),
/// its weight, and the base-vertex part.
struct JoinPosition {
  int apex = -1;       // group element of the cone, -1 if none
  Rational t = 0;      // apex weight
  int foot_vertex = -1;  // base vertex of maximum tracked weight
};

inline JoinPosition join_position(const VertexLabel& tracked, int num_apexes,
                                  const std::vector<int>& base_colors) {
  JoinPosition p;
  Rational best_w = -1;
  int best_color = -1;
  for (const auto& [slot, w] : tracked.weights) {
    if (slot < num_apexes) {
      p.apex = slot;
      p.t += w;
      continue;
    }
    int v = slot - num_apexes;
    // Max-weight base vertex; ties go to the lower color index.
    if (w > best_w || (w == best_w && base_colors[v] < best_color)) {
      best_w = w;
      best_color = base_colors[v];
      p.foot_vertex = v;
    }
  }
  return p;
}

}  // namespace detail

/// Recursive cover of G * M from a verified cover of M with k colors:
/// k + |G| - 1 classes. Vertices at the base keep their base color, the
/// upper halves of non-identity cones (midpoints included) take the cone's
/// new class, everything else inherits the color of its foot's region.
/// Only 1-dimensional bases are supported.
inline CoverColoring join_cover(const GroupTable& g, const CoverColoring& base,
                                int extra_subdivisions) {
  if (base.state != VerifyState::verified)
    throw cover_error(cover_error::kind::base_unverified,
                      "join_cover needs a verified base cover");
  if (base.triangulation.dim() != 1)
    throw cover_error(cover_error::kind::unsupported,
                      "join_cover supports 1-dimensional bases");
  if (extra_subdivisions < 0) throw std::invalid_argument("extra_subdivisions must be >= 0");
  int m = g.order();
  int k = base.num_colors;
  GComplex j = join(group_complex(g), base.triangulation);
  // Track positions as (apex slots | base triangulation vertices).
  int vb = base.triangulation.num_vertices();
  std::vector<VertexLabel> tracking;
  tracking.reserve(j.num_vertices());
  for (int v = 0; v < m; ++v) tracking.push_back(VertexLabel::atom(v));
  for (int v = 0; v < vb; ++v) tracking.push_back(VertexLabel::atom(m + v));
  GComplex t = j.with_tracking(std::move(tracking), m + vb);
  for (int s = 0; s < 1 + extra_subdivisions; ++s) t = medial_subdivide_2d(t);

  Rational half(1, 2);
  std::vector<int> colors(t.num_vertices());
  for (int v = 0; v < t.num_vertices(); ++v) {
    auto p = detail::join_position(t.tracking(v), m, base.colors);
    if (p.apex > 0 && p.t >= half) {
      colors[v] = k + p.apex - 1;  // classes k .. k+m-2
    } else if (p.apex == 0 && p.t == 1) {
      colors[v] = 0;  // the identity apex sits in every base class; pick the first
    } else {
      colors[v] = base.colors[p.foot_vertex];
    }
  }
  CoverColoring c{std::move(t), std::move(colors), k + m - 1};
  return verify_cover(std::move(c));
}

/// The closed regions of a verified cover: every facet of the barycentric
/// subdivision contains exactly one vertex of the triangulation and is
/// assigned to that vertex's color. The facets partition the complex.
struct RegionDecomposition {
  GComplex barycentric_complex;
  std::vector<std::vector<std::vector<int>>> facets_by_color;
};

inline RegionDecomposition extract_regions(const CoverColoring& c) {
  if (c.state != VerifyState::verified)
    throw cover_error(cover_error::kind::base_unverified,
                      "extract_regions needs a verified cover");
  RegionDecomposition out{barycentric(c.triangulation), {}};
  out.facets_by_color.resize(c.num_colors);
  int nv = c.triangulation.num_vertices();
  for (const auto& facet : out.barycentric_complex.maximal_faces()) {
    // Barycentric vertices of singletons keep the original ids, which are
    // the smallest; a maximal chain contains exactly one of them.
    int owner = facet.front();
    if (owner >= nv)
      throw std::logic_error("barycentric facet without an original vertex");
    out.facets_by_color[c.colors[owner]].push_back(facet);
  }
  return out;
}

enum class PipelineStatus { found, max_k_exceeded, timeout };

struct KTrace {
  int k = 0;
  bool base_proper = false;
  bool quotient_loops = false;
  std::optional<SolveStatus> extend;
  std::uint64_t nodes = 0;
  int num_vertices = 0;
};

struct PipelineReport {
  int target_dim = 0;
  PipelineStatus status = PipelineStatus::max_k_exceeded;
  std::vector<KTrace> trace;
  std::optional<CoverColoring> cover;
  CoverBounds cover_bounds{0, 0, 0};
};

namespace detail {

/// Circle position of a vertex of a subdivided m-cycle, as an exact
/// fraction of the full turn. Supports wrap on the {m-1, 0} segment.
inline Rational cycle_position(const VertexLabel& lbl, int m) {
  if (lbl.weights.size() == 1) return Rational(lbl.weights[0].first, m);
  int a = lbl.weights[0].first, b = lbl.weights[1].first;
  Rational wa = lbl.weights[0].second, wb = lbl.weights[1].second;
  if (a == 0 && b == m - 1) {
    // Segment from m-1 to m (=0).
    Rational pos = (Rational(m - 1) * wb + Rational(m) * wa) / m;
    return pos == 1 ? Rational(0) : pos;
  }
  return (Rational(a) * wa + Rational(b) * wb) / m;
}

struct PipelineBase {
  bool analytic = false;      // cyclic path: arc colors from positions
  int num_colors = 0;
  std::optional<GComplex> layer;  // E_{d-1} layer joined under the apexes
  std::vector<int> base_colors;   // colors on layer's tracked base (analytic: unused)

  int color_at(const GComplex& t0, int v, int m) const {
    if (analytic) {
      Rational pos = cycle_position(t0.label(v), m);
      // floor(pos * (num_colors)) over [0,1): arcs are closed, boundary
      // vertices join the arc starting there.
      Rational x = pos * num_colors;
      Integer fl = numerator(x) / denominator(x);
      int arc = static_cast<int>(fl);
      return arc >= num_colors ? 0 : arc;
    }
    auto p = join_position(t0.tracking(v), 0, base_colors);
    return base_colors[p.foot_vertex];
  }
};

}  // namespace detail

/// The cover search loop: K = G * L subdivided k times, the base cover
/// restricted to the subdivided L checked for properness, the identity cone
/// precolored with the fresh color, and the rest extended by the exact
/// solver. UNSAT increases k; timeouts are reported distinctly.
inline PipelineReport pipeline(const GroupTable& g, int target_dim, int max_k,
                               std::uint64_t budget = kDefaultBudget) {
  if (target_dim < 1 || target_dim > 3)
    throw cover_error(cover_error::kind::unsupported,
                      "pipeline supports target dimensions 1..3");
  int m = g.order();
  PipelineReport report;
  report.target_dim = target_dim;
  report.cover_bounds = bounds(g, target_dim);

  if (target_dim == 1) {
    CoverColoring c = one_dim_cover(g);
    KTrace tr;
    tr.base_proper = true;
    tr.num_vertices = c.triangulation.num_vertices();
    tr.extend = SolveStatus::sat;
    report.trace.push_back(tr);
    report.status =
        c.state == VerifyState::verified ? PipelineStatus::found : PipelineStatus::max_k_exceeded;
    report.cover = std::move(c);
    return report;
  }

  bool cyclic = m >= 3 && g == GroupTable::cyclic(m);
  detail::PipelineBase base;
  if (target_dim == 2) {
    base.num_colors = m + 1;
    if (cyclic) {
      base.analytic = true;
      base.layer = cycle_complex(m);
    } else {
      CoverColoring bc = one_dim_cover(g);
      if (bc.state != VerifyState::verified)
        throw cover_error(cover_error::kind::base_unverified,
                          "one dimensional base cover failed verification");
      base.base_colors = bc.colors;
      base.layer = bc.triangulation.with_identity_tracking();
    }
  } else {
    PipelineReport rec = pipeline(g, target_dim - 1, max_k, budget);
    if (rec.status != PipelineStatus::found) return rec;
    base.num_colors = rec.cover->num_colors;
    base.base_colors = rec.cover->colors;
    base.layer = rec.cover->triangulation.with_identity_tracking();
  }
  const GComplex& layer = *base.layer;

  int palette = m + target_dim;
  int fresh_color = palette - 1;
  bool three_d = target_dim == 3;

  // K = G * L with tracking over (apex slots | layer vertices); T0 = the
  // subdivided layer alone, tracked over layer vertices.
  GComplex k0 = join(group_complex(g), layer);
  {
    std::vector<VertexLabel> tracking;
    for (int v = 0; v < m; ++v) tracking.push_back(VertexLabel::atom(v));
    for (int v = 0; v < layer.num_vertices(); ++v)
      tracking.push_back(VertexLabel::atom(m + v));
    k0 = k0.with_tracking(std::move(tracking), m + layer.num_vertices());
  }
  GComplex t0 = base.analytic ? layer : layer.with_identity_tracking();

  std::optional<GComplex> t_cur;
  std::optional<GComplex> t0_cur;
  for (int k = 0; k <= max_k; ++k) {
    if (k == 0) {
      t_cur = k0;
      t0_cur = t0;
    } else {
      t_cur = three_d ? medial_subdivide_3d(*t_cur) : medial_subdivide_2d(*t_cur);
      t0_cur = medial_subdivide_2d(*t0_cur);
    }
    KTrace tr;
    tr.k = k;
    tr.num_vertices = t_cur->num_vertices();

    std::vector<int> c0(t0_cur->num_vertices());
    for (int v = 0; v < t0_cur->num_vertices(); ++v) c0[v] = base.color_at(*t0_cur, v, m);
    QuotGraph h0 = quotient_graph(*t0_cur);
    tr.base_proper = !h0.has_loops() && is_proper(h0, c0);
    if (!tr.base_proper) {
      report.trace.push_back(tr);
      continue;
    }

    QuotGraph h = quotient_graph(*t_cur);
    if (h.has_loops()) {
      tr.quotient_loops = true;
      report.trace.push_back(tr);
      continue;
    }

    // Step 7 partial coloring: base vertices keep the restricted cover, the
    // identity cone (t > 0) takes the fresh color, other cones are free.
    std::vector<std::pair<int, int>> precolored;
    for (int v = 0; v < t_cur->num_vertices(); ++v) {
      const VertexLabel& trk = t_cur->tracking(v);
      Rational apex_w = 0;
      int apex = -1;
      VertexLabel foot;
      for (const auto& [slot, w] : trk.weights) {
        if (slot < m) {
          apex = slot;
          apex_w += w;
        } else {
          foot.weights.emplace_back(slot - m, w);
        }
      }
      if (apex == -1) {
        // Base slice: find the matching T0 vertex by label and restrict.
        VertexLabel unshifted = t_cur->label(v);
        for (auto& [a, w] : unshifted.weights) a -= m;
        int v0 = t0_cur->vertex_of_label(unshifted);
        if (v0 < 0) throw std::logic_error("base slice vertex missing from T0");
        precolored.emplace_back(v, c0[v0]);
      } else if (apex == 0) {
        precolored.emplace_back(v, fresh_color);
      }
    }

    ColoringProblem problem(h, palette, std::move(precolored));
    ExtendResult r;
    try {
      r = extend_precoloring(problem, budget);
    } catch (const solver_error& e) {
      if (e.which() != solver_error::kind::improper_precoloring) throw;
      // The restricted cover clashes across the quotient at this refinement.
      report.trace.push_back(tr);
      continue;
    }
    tr.extend = r.status;
    tr.nodes = r.nodes;
    report.trace.push_back(tr);
    if (r.status == SolveStatus::timeout) {
      report.status = PipelineStatus::timeout;
      return report;
    }
    if (r.status == SolveStatus::sat) {
      CoverColoring cover{*t_cur, std::move(r.coloring->colors), palette};
      cover = verify_cover(std::move(cover));
      report.status = cover.state == VerifyState::verified ? PipelineStatus::found
                                                           : PipelineStatus::max_k_exceeded;
      report.cover = std::move(cover);
      return report;
    }
  }
  report.status = PipelineStatus::max_k_exceeded;
  return report;
}

/// The precoloring-extension instance the pipeline would solve at a given
/// refinement, for export to an external ILP solver.
struct PipelineInstance {
  GComplex triangulation;
  QuotGraph quotient;
  int palette = 0;
  std::vector<std::pair<int, int>> precolored;
  bool base_proper = false;
};

inline nlohmann::json cover_to_json(const CoverColoring& c) {
  nlohmann::json j = {{"triangulation", c.triangulation.to_json()},
                      {"colors", c.colors},
                      {"num_colors", c.num_colors}};
  switch (c.state) {
    case VerifyState::unverified: j["verified"] = "unverified"; break;
    case VerifyState::verified: j["verified"] = "verified"; break;
    case VerifyState::failed: j["verified"] = "failed"; break;
  }
  if (c.failure) {
    j["failure"] = {{"loop", c.failure->loop},
                    {"u", c.failure->u},
                    {"v", c.failure->v},
                    {"g", c.failure->g}};
  }
  return j;
}

inline CoverColoring cover_from_json(const nlohmann::json& j) {
  CoverColoring c{GComplex::from_json(j.at("triangulation")),
                  j.at("colors").get<std::vector<int>>(), j.at("num_colors").get<int>()};
  std::string state = j.value("verified", "unverified");
  c.state = state == "verified"  ? VerifyState::verified
            : state == "failed" ? VerifyState::failed
                                : VerifyState::unverified;
  if (j.contains("failure")) {
    const auto& f = j.at("failure");
    c.failure = CoverFailure{f.at("loop").get<bool>(), f.at("u").get<int>(),
                             f.at("v").get<int>(), f.at("g").get<int>()};
  }
  return c;
}

inline nlohmann::json report_to_json(const PipelineReport& r) {
  nlohmann::json trace = nlohmann::json::array();
  for (const auto& tr : r.trace) {
    nlohmann::json e = {{"k", tr.k},
                        {"base_proper", tr.base_proper},
                        {"quotient_loops", tr.quotient_loops},
                        {"nodes", tr.nodes},
                        {"vertices", tr.num_vertices}};
    if (tr.extend)
      e["extend"] = *tr.extend == SolveStatus::sat     ? "sat"
                    : *tr.extend == SolveStatus::unsat ? "unsat"
                                                       : "timeout";
    trace.push_back(e);
  }
  nlohmann::json j = {{"target_dim", r.target_dim},
                      {"status", r.status == PipelineStatus::found          ? "found"
                                 : r.status == PipelineStatus::max_k_exceeded ? "max-k-exceeded"
                                                                              : "timeout"},
                      {"trace", trace},
                      {"bounds",
                       {{"lower", r.cover_bounds.lower},
                        {"upper", r.cover_bounds.upper},
                        {"conjectured", r.cover_bounds.conjectured}}}};
  if (r.cover) j["cover"] = cover_to_json(*r.cover);
  return j;
}

inline PipelineInstance pipeline_instance(const GroupTable& g, int target_dim, int k,
                                          std::uint64_t budget = kDefaultBudget) {
  if (target_dim < 2 || target_dim > 3)
    throw cover_error(cover_error::kind::unsupported,
                      "pipeline_instance supports target dimensions 2 and 3");
  int m = g.order();
  bool cyclic = m >= 3 && g == GroupTable::cyclic(m);
  detail::PipelineBase base;
  if (target_dim == 2) {
    base.num_colors = m + 1;
    if (cyclic) {
      base.analytic = true;
      base.layer = cycle_complex(m);
    } else {
      CoverColoring bc = one_dim_cover(g);
      base.base_colors = bc.colors;
      base.layer = bc.triangulation.with_identity_tracking();
    }
  } else {
    PipelineReport rec = pipeline(g, 2, 4, budget);
    if (rec.status != PipelineStatus::found)
      throw cover_error(cover_error::kind::base_unverified,
                        "no verified 2-dimensional base cover");
    base.num_colors = rec.cover->num_colors;
    base.base_colors = rec.cover->colors;
    base.layer = rec.cover->triangulation.with_identity_tracking();
  }
  const GComplex& layer = *base.layer;
  int palette = m + target_dim;
  int fresh_color = palette - 1;
  GComplex t = join(group_complex(g), layer);
  {
    std::vector<VertexLabel> tracking;
    for (int v = 0; v < m; ++v) tracking.push_back(VertexLabel::atom(v));
    for (int v = 0; v < layer.num_vertices(); ++v)
      tracking.push_back(VertexLabel::atom(m + v));
    t = t.with_tracking(std::move(tracking), m + layer.num_vertices());
  }
  GComplex t0 = base.analytic ? layer : layer.with_identity_tracking();
  for (int i = 0; i < k; ++i) {
    t = target_dim == 3 ? medial_subdivide_3d(t) : medial_subdivide_2d(t);
    t0 = medial_subdivide_2d(t0);
  }
  std::vector<int> c0(t0.num_vertices());
  for (int v = 0; v < t0.num_vertices(); ++v) c0[v] = base.color_at(t0, v, m);
  QuotGraph h0 = quotient_graph(t0);
  bool base_proper = !h0.has_loops() && is_proper(h0, c0);
  std::vector<std::pair<int, int>> precolored;
  for (int v = 0; v < t.num_vertices(); ++v) {
    const VertexLabel& trk = t.tracking(v);
    int apex = -1;
    for (const auto& [slot, w] : trk.weights)
      if (slot < m) apex = slot;
    if (apex == -1) {
      VertexLabel unshifted = t.label(v);
      for (auto& [a, w] : unshifted.weights) a -= m;
      int v0 = t0.vertex_of_label(unshifted);
      if (v0 < 0) throw std::logic_error("base slice vertex missing from T0");
      precolored.emplace_back(v, c0[v0]);
    } else if (apex == 0) {
      precolored.emplace_back(v, fresh_color);
    }
  }
  QuotGraph h = quotient_graph(t);
  return PipelineInstance{std::move(t), std::move(h), palette, std::move(precolored),
                          base_proper};
}

}  // namespace gborsuk
