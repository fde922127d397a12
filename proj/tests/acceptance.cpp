// Acceptance suite: runs every gate end to end and prints one line per
// criterion. Exit code is the number of failed criteria.

#include "gborsuk/cli.hpp"
#include "gborsuk/covers.hpp"
#include "gborsuk/homcx.hpp"
#include "gborsuk/random.hpp"
#include "gborsuk/render.hpp"

#include "oracles.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace gborsuk;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int criterion, const std::string& name, bool pass, const std::string& detail,
            Clock::time_point start) {
  double secs = std::chrono::duration<double>(Clock::now() - start).count();
  std::printf("[%s] %2d. %s — %s (%.1fs)\n", pass ? "PASS" : "FAIL", criterion, name.c_str(),
              detail.c_str(), secs);
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::filesystem::path temp_file(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "gborsuk_acceptance";
  std::filesystem::create_directories(dir);
  return dir / name;
}

// --- criterion 1: Table 1 reproduction -----------------------------------
void criterion_table1() {
  auto start = Clock::now();
  std::ostringstream detail;
  bool pass = true;

  struct Target {
    std::string name;
    GroupTable group;
    int dim;
    int colors;
  };
  std::vector<Target> targets = {{"Z2 d=1", GroupTable::cyclic(2), 1, 3},
                                 {"Z2 d=2", GroupTable::cyclic(2), 2, 4},
                                 {"Z3 d=2", GroupTable::cyclic(3), 2, 5},
                                 {"Z4 d=2", GroupTable::cyclic(4), 2, 6}};
  for (const auto& t : targets) {
    PipelineReport rep = pipeline(t.group, t.dim, 4);
    bool ok = rep.status == PipelineStatus::found && rep.cover &&
              rep.cover->state == VerifyState::verified &&
              rep.cover->num_colors == t.colors && rep.cover_bounds.lower == t.colors;
    if (!ok) pass = false;
    detail << t.name << (ok ? " -> " : " FAILED, wanted ")
           << (rep.cover ? rep.cover->num_colors : -1) << " colors; ";
  }

  // Stretch targets: construct the extension instance and export the ILP.
  struct Stretch {
    std::string name;
    GroupTable group;
    int dim;
    int k;
  };
  std::vector<Stretch> stretch = {
      {"Z5 d=2", GroupTable::cyclic(5), 2, 3},
      {"Z6 d=2", GroupTable::cyclic(6), 2, 3},
      {"Z2xZ2 d=2", GroupTable::product(GroupTable::cyclic(2), GroupTable::cyclic(2)), 2, 2},
      {"Z3 d=3", GroupTable::cyclic(3), 3, 1}};
  for (const auto& s : stretch) {
    try {
      PipelineInstance inst = pipeline_instance(s.group, s.dim, s.k);
      ColoringProblem p(inst.quotient, inst.palette, inst.precolored);
      std::string lp = export_ilp(p);
      auto path = temp_file("stretch_" + std::to_string(s.dim) + "_" +
                            std::to_string(s.group.order()) + ".lp");
      std::ofstream(path) << lp;
      bool ok = inst.base_proper && lp.size() > 1000 &&
                std::filesystem::file_size(path) == lp.size();
      std::filesystem::remove(path);
      if (!ok) pass = false;
      detail << s.name << " ILP " << (ok ? "exported" : "FAILED") << " ("
             << inst.quotient.n << "v); ";
    } catch (const std::exception& e) {
      pass = false;
      detail << s.name << " threw: " << e.what() << "; ";
    }
  }
  report(1, "Table 1 reproduction", pass, detail.str(), start);
}

// --- criterion 2: one-dimensional theorem --------------------------------
void criterion_one_dim() {
  auto start = Clock::now();
  std::ostringstream detail;
  bool pass = true;
  std::vector<std::pair<std::string, GroupTable>> groups;
  for (int m = 2; m <= 6; ++m)
    groups.emplace_back("Z" + std::to_string(m), GroupTable::cyclic(m));
  groups.emplace_back("Z2xZ2",
                      GroupTable::product(GroupTable::cyclic(2), GroupTable::cyclic(2)));
  groups.emplace_back("S3", symmetric_group(3));
  for (const auto& [name, g] : groups) {
    auto cover = one_dim_cover(g);
    bool cover_ok =
        cover.state == VerifyState::verified && cover.num_colors == g.order() + 1;
    auto h = quotient_graph(cover.triangulation);
    auto chi = exact_chromatic(h, kDefaultBudget, Coloring::of(cover.colors));
    bool chi_ok = chi.exact && chi.chi() == g.order() + 1;
    if (!cover_ok || !chi_ok) pass = false;
    detail << name << (cover_ok && chi_ok ? " ok" : " FAILED") << "; ";
  }
  report(2, "one-dimensional covers and chromatic lower bound", pass, detail.str(), start);
}

// --- criterion 3: Hom-complex dimension ----------------------------------
void criterion_hom() {
  auto start = Clock::now();
  bool pass = true;
  std::ostringstream detail;
  for (int m = 2; m <= 6; ++m)
    for (int t = m; t <= 6; ++t) {
      auto [d, witness] = hom_dimension_complete(m, t);
      if (d != t - m || witness.dim() != d) {
        pass = false;
        detail << "dim(" << m << "," << t << ")=" << d << " (wanted " << t - m << "); ";
      }
    }
  long long cells_checked = 0;
  for (int m = 2; m <= 4; ++m) {
    GroupTable g = GroupTable::cyclic(m);
    for (int t = m; t <= 6; ++t) {
      auto cells = hom_cells(m, complete_graph(t));
      for (const auto& cell : cells)
        for (int e = 1; e < m; ++e) {
          auto moved = act_on_cell(g, e, cell);
          ++cells_checked;
          for (int i = 0; i < m; ++i) {
            std::vector<int> common;
            std::set_intersection(cell.parts[i].begin(), cell.parts[i].end(),
                                  moved.parts[i].begin(), moved.parts[i].end(),
                                  std::back_inserter(common));
            if (!common.empty()) pass = false;
          }
        }
    }
  }
  detail << "dims 2<=m<=t<=6 ok; freeness checked on " << cells_checked
         << " (cell, g) pairs";
  report(3, "Hom-complex dimension and free action", pass, detail.str(), start);
}

// --- criterion 4: quotient oracle equivalence ----------------------------
void criterion_quotient_oracles() {
  auto start = Clock::now();
  bool pass = true;
  std::ostringstream detail;

  auto c6 = circle_complex(3, 6);
  auto h6 = quotient_graph(c6);
  for (int u = 0; u < 6 && pass; ++u)
    for (int v = u + 1; v < 6; ++v)
      if (!h6.adjacent(u, v) || !oracles::brute_quotient_adjacent(c6, u, v)) pass = false;
  if (h6.num_edges() != 15 || h6.has_loops()) pass = false;
  auto chi6 = exact_chromatic(h6);
  if (!chi6.exact || chi6.chi() != 6) pass = false;
  detail << "C6/Z3=K6 chi=" << chi6.chi() << "; ";

  auto c12 = circle_complex(3, 12);
  auto h12 = quotient_graph(c12);
  for (int u = 0; u < 12 && pass; ++u)
    for (int v = u + 1; v < 12; ++v) {
      int d = std::min((v - u + 12) % 12, (u - v + 12) % 12);
      bool circulant = d >= 3 && d <= 5;
      if (h12.adjacent(u, v) != circulant ||
          h12.adjacent(u, v) != oracles::brute_quotient_adjacent(c12, u, v))
        pass = false;
    }
  if (oracles::brute_colorable(h12, 3)) pass = false;
  auto chi12 = exact_chromatic(h12);
  if (!chi12.exact || chi12.chi() != 4) pass = false;
  detail << "C12/Z3=C12(3,4,5) chi=" << chi12.chi();
  report(4, "quotient-graph oracle equivalence", pass, detail.str(), start);
}

// --- criterion 5: solver soundness ----------------------------------------
void criterion_solver_soundness() {
  auto start = Clock::now();
  std::mt19937_64 rng(424242);
  int discrepancies = 0, total = 0;
  for (int trial = 0; trial < 220; ++trial) {
    int n = 3 + static_cast<int>(rng() % 10);
    double p = 0.1 + 0.8 * static_cast<double>(rng() % 1000) / 1000.0;
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (static_cast<double>(rng() % 1000) / 1000.0 < p) edges.emplace_back(i, j);
    auto g = QuotGraph::from_edges(n, edges);
    ++total;
    int expect = oracles::brute_chromatic(g);
    auto res = exact_chromatic(g);
    if (!res.exact || res.chi() != expect || !is_proper(g, res.witness->colors))
      ++discrepancies;
    if (extend_precoloring(ColoringProblem(g, expect)).status != SolveStatus::sat)
      ++discrepancies;
    if (expect > 1 &&
        extend_precoloring(ColoringProblem(g, expect - 1)).status != SolveStatus::unsat)
      ++discrepancies;
  }
  std::ostringstream detail;
  detail << total << " random graphs, " << discrepancies << " discrepancies";
  report(5, "solver soundness vs brute force", discrepancies == 0 && total >= 200,
         detail.str(), start);
}

// --- criterion 6: recursive bound -----------------------------------------
void criterion_join_cover() {
  auto start = Clock::now();
  bool pass = true;
  std::ostringstream detail;
  for (int m : {2, 3}) {
    auto base = circle_cover(m, m * (m + 1) * 2);
    if (base.state != VerifyState::verified) {
      pass = false;
      continue;
    }
    bool verified = false;
    int used_extra = -1;
    for (int extra = 0; extra <= 3 && !verified; ++extra) {
      auto jc = join_cover(GroupTable::cyclic(m), base, extra);
      if (jc.num_colors != 2 * m) pass = false;
      if (jc.state == VerifyState::verified) {
        verified = true;
        used_extra = extra;
      }
    }
    if (!verified) pass = false;
    detail << "m=" << m << " -> " << 2 * m << " classes at extra=" << used_extra << "; ";
  }
  report(6, "recursive join cover class counts", pass, detail.str(), start);
}

// --- criterion 7: random thresholds ---------------------------------------
void criterion_thresholds() {
  auto start = Clock::now();
  bool pass = true;
  std::ostringstream detail;

  ExperimentConfig dense{AnalyticSpace::circle(2), 10000, 6.0, std::nullopt, 50, 1001,
                         SweepMode::bipartite, 4};
  auto d = threshold_sweep(dense);
  double nonbip = d.fraction("non-bipartite");
  if (nonbip < 0.9) pass = false;
  detail << "dense non-bipartite " << nonbip << "; ";

  ExperimentConfig sparse{AnalyticSpace::circle(2), 10000, 0.01, std::nullopt, 50, 1002,
                          SweepMode::bipartite, 4};
  auto s = threshold_sweep(sparse);
  double bip = s.fraction("bipartite");
  if (bip < 0.9) pass = false;
  detail << "sparse bipartite " << bip << "; ";

  ExperimentConfig z3{AnalyticSpace::circle(3), 300, 6.0, std::nullopt, 30, 1003,
                      SweepMode::exact_chromatic, 4};
  auto r3 = threshold_sweep(z3);
  double four = r3.fraction("chi=4");
  if (four < 0.8) pass = false;
  detail << "Z3 chi=4 fraction " << four << " (timeouts " << r3.timeouts << ")";
  report(7, "random chromatic thresholds", pass, detail.str(), start);
}

// --- criterion 8: clique number --------------------------------------------
void criterion_cliques() {
  auto start = Clock::now();
  bool pass = true;
  std::ostringstream detail;
  for (int m : {2, 3, 4}) {
    ExperimentConfig cfg{AnalyticSpace::circle(m), 2000, 0.0, 0.1, 20,
                         2000 + static_cast<std::uint64_t>(m), SweepMode::exact_chromatic, 4};
    auto r = clique_sweep(cfg);
    double frac = r.fraction("omega=" + std::to_string(m));
    if (frac < 0.9) pass = false;
    detail << "Z" << m << " omega=" << m << " fraction " << frac << "; ";
  }
  report(8, "clique numbers of dense samples", pass, detail.str(), start);
}

// --- criterion 9: the 3-dimensional instance --------------------------------
void criterion_3d_instance() {
  auto start = Clock::now();
  bool pass = true;
  std::ostringstream detail;
  auto z3 = GroupTable::cyclic(3);
  GComplex k = join(join(group_complex(z3), group_complex(z3)), cycle_complex(3));
  std::vector<int> vertex_trace = {k.num_vertices()};
  for (int i = 0; i < 3; ++i) {
    k = medial_subdivide_3d(k);
    vertex_trace.push_back(k.num_vertices());
  }
  auto h = quotient_graph(k);
  if (h.has_loops()) {
    pass = false;
    detail << "quotient has loops; ";
  }
  if (k.num_vertices() != 9129) {
    pass = false;
    detail << "vertex trace:";
    for (int v : vertex_trace) detail << " " << v;
    detail << " (expected final 9129); ";
  } else {
    detail << "9129 vertices, " << h.num_edges() << " edges, loop-free; ";
  }
  ColoringProblem p(h, 6);
  std::string lp = export_ilp(p);
  auto path = temp_file("e3z3.lp");
  std::ofstream(path) << lp;
  bool exported = std::filesystem::file_size(path) == lp.size() && lp.size() > 1'000'000;
  std::filesystem::remove(path);
  if (!exported) pass = false;
  detail << "ILP " << (exported ? "exported" : "export FAILED") << " (" << lp.size()
         << " bytes)";
  report(9, "3-dimensional 9,129-vertex instance", pass, detail.str(), start);
}

// --- criterion 10: rendering -------------------------------------------------
void criterion_render() {
  auto start = Clock::now();
  bool pass = true;
  std::ostringstream detail;
  auto rep = pipeline(GroupTable::cyclic(3), 2, 4);
  if (rep.status != PipelineStatus::found) {
    report(10, "rendering", false, "no pipeline cover to render", start);
    return;
  }
  RenderSpec spec{*rep.cover};
  auto svg = render_cover(spec);
  auto svg2 = render_cover(spec);
  if (svg != svg2) {
    pass = false;
    detail << "not byte-stable; ";
  }
  if (svg.rfind("<svg", 0) != 0 || svg.find("</svg>") == std::string::npos) {
    pass = false;
    detail << "not an svg; ";
  }
  int disks = 0;
  for (size_t p = svg.find("class=\"disk\""); p != std::string::npos;
       p = svg.find("class=\"disk\"", p + 1))
    ++disks;
  std::set<std::string> fills;
  for (size_t p = svg.find("fill=\"#"); p != std::string::npos; p = svg.find("fill=\"#", p + 1))
    fills.insert(svg.substr(p + 6, 7));
  if (disks != 3) pass = false;
  if (fills.size() != 5) pass = false;
  detail << disks << " disks, " << fills.size() << " fill colors, " << svg.size()
         << " bytes, byte-stable";
  report(10, "figure rendering", pass, detail.str(), start);
}

}  // namespace

int main() {
  std::printf("gborsuk acceptance suite\n");
  criterion_table1();
  criterion_one_dim();
  criterion_hom();
  criterion_quotient_oracles();
  criterion_solver_soundness();
  criterion_join_cover();
  criterion_thresholds();
  criterion_cliques();
  criterion_3d_instance();
  criterion_render();
  std::printf("%s: %d criterion(s) failed\n", failures == 0 ? "OK" : "FAILED", failures);
  return failures;
}
