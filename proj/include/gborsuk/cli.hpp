#pragma once

#include "gborsuk/covers.hpp"
#include "gborsuk/homcx.hpp"
#include "gborsuk/random.hpp"
#include "gborsuk/render.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace gborsuk::cli {

// Exit codes: 0 success, 1 verification failure or UNSAT, 2 usage error,
// 3 solver timeout.
inline constexpr int kOk = 0;
inline constexpr int kFailed = 1;
inline constexpr int kUsage = 2;
inline constexpr int kTimeout = 3;

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_output(const std::string& path, const std::string& content,
                         std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write file: " + path);
  f << content;
}

inline GroupTable load_group(const std::string& spec, const std::string& file) {
  if (!file.empty()) return GroupTable::from_json(nlohmann::json::parse(read_file(file)));
  if (!spec.empty()) return parse_group_spec(spec);
  throw std::runtime_error("need --group or --group-file");
}

inline std::vector<std::pair<int, int>> load_vertex_values(const std::string& path) {
  std::vector<std::pair<int, int>> out;
  std::istringstream in(read_file(path));
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tag;
    int v, c;
    if ((ls >> tag >> v >> c) && tag == "v") out.emplace_back(v, c);
  }
  return out;
}

inline AnalyticSpace parse_space(const std::string& space, int order, int sphere_dim) {
  if (space == "circle") return AnalyticSpace::circle(order);
  if (space == "sphere") return AnalyticSpace::sphere(sphere_dim);
  throw std::runtime_error("unknown space '" + space + "'");
}

inline std::string coloring_lines(const std::vector<int>& colors) {
  std::ostringstream ss;
  for (size_t v = 0; v < colors.size(); ++v) ss << "v " << v << " " << colors[v] << "\n";
  return ss.str();
}

}  // namespace detail

inline int run(std::vector<std::string> argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"finite G-Borsuk graphs: complexes, covers, colorings, experiments"};
  app.require_subcommand(1);
  int code = kOk;

  // group ------------------------------------------------------------
  auto* group_cmd = app.add_subcommand("group", "finite group tables");
  {
    auto* build = group_cmd->add_subcommand("build", "build a group table");
    auto spec = std::make_shared<std::string>();
    auto file = std::make_shared<std::string>();
    auto out_path = std::make_shared<std::string>();
    build->add_option("--group", *spec, "group spec, e.g. Z6, Z2xZ3, S3");
    build->add_option("--group-file", *file, "group JSON file");
    build->add_option("--out", *out_path, "output file (default stdout)");
    build->callback([=, &out]() {
      GroupTable g = detail::load_group(*spec, *file);
      detail::write_output(*out_path, g.to_json().dump(2) + "\n", out);
    });

    auto* show = group_cmd->add_subcommand("show", "print a group table");
    auto sspec = std::make_shared<std::string>();
    auto sfile = std::make_shared<std::string>();
    show->add_option("--group", *sspec, "group spec");
    show->add_option("--group-file", *sfile, "group JSON file");
    show->callback([=, &out]() {
      GroupTable g = detail::load_group(*sspec, *sfile);
      out << "order " << g.order() << "\n";
      out << "abelian " << (g.is_abelian() ? "yes" : "no") << "\n";
      for (int a = 0; a < g.order(); ++a) {
        out << g.label(a) << ":";
        for (int b = 0; b < g.order(); ++b) out << " " << g.mul(a, b);
        out << "\n";
      }
    });
  }

  // complex ----------------------------------------------------------
  auto* complex_cmd = app.add_subcommand("complex", "free G-simplicial complexes");
  {
    auto* build = complex_cmd->add_subcommand("build", "build a complex");
    auto kind = std::make_shared<std::string>();
    auto spec = std::make_shared<std::string>();
    auto file = std::make_shared<std::string>();
    auto m = std::make_shared<int>(3);
    auto dim = std::make_shared<int>(1);
    auto a_path = std::make_shared<std::string>();
    auto b_path = std::make_shared<std::string>();
    auto out_path = std::make_shared<std::string>();
    build->add_option("--kind", *kind, "group | cycle | classifying | join")->required();
    build->add_option("--group", *spec, "group spec");
    build->add_option("--group-file", *file, "group JSON file");
    build->add_option("--m", *m, "cycle length");
    build->add_option("--dim", *dim, "classifying space dimension");
    build->add_option("--a", *a_path, "first join factor (complex JSON)");
    build->add_option("--b", *b_path, "second join factor (complex JSON)");
    build->add_option("--out", *out_path, "output file");
    build->callback([=, &out]() {
      std::optional<GComplex> c;
      if (*kind == "group") {
        c = group_complex(detail::load_group(*spec, *file));
      } else if (*kind == "cycle") {
        c = cycle_complex(*m);
      } else if (*kind == "classifying") {
        c = classifying_space(detail::load_group(*spec, *file), *dim);
      } else if (*kind == "join") {
        c = join(GComplex::from_json(nlohmann::json::parse(detail::read_file(*a_path))),
                 GComplex::from_json(nlohmann::json::parse(detail::read_file(*b_path))));
      } else {
        throw std::runtime_error("unknown kind '" + *kind + "'");
      }
      detail::write_output(*out_path, c->to_json().dump(2) + "\n", out);
    });

    auto* subdiv = complex_cmd->add_subcommand("subdivide", "subdivide a complex");
    auto in_path = std::make_shared<std::string>();
    auto method = std::make_shared<std::string>();
    auto times = std::make_shared<int>(1);
    auto parts = std::make_shared<int>(2);
    auto sout = std::make_shared<std::string>();
    subdiv->add_option("--in", *in_path, "complex JSON")->required();
    subdiv->add_option("--method", *method, "medial2d | medial3d | barycentric | edges")
        ->required();
    subdiv->add_option("--times", *times, "number of rounds");
    subdiv->add_option("--parts", *parts, "segments per edge (method=edges)");
    subdiv->add_option("--out", *sout, "output file");
    subdiv->callback([=, &out]() {
      GComplex c = GComplex::from_json(nlohmann::json::parse(detail::read_file(*in_path)));
      for (int i = 0; i < *times; ++i) {
        if (*method == "medial2d")
          c = medial_subdivide_2d(c);
        else if (*method == "medial3d")
          c = medial_subdivide_3d(c);
        else if (*method == "barycentric")
          c = barycentric(c);
        else if (*method == "edges")
          c = subdivide_edges(c, *parts);
        else
          throw std::runtime_error("unknown method '" + *method + "'");
      }
      detail::write_output(*sout, c.to_json().dump(2) + "\n", out);
    });

    auto* chk = complex_cmd->add_subcommand("check-free", "simplicial freeness check");
    auto cin_path = std::make_shared<std::string>();
    chk->add_option("--in", *cin_path, "complex JSON")->required();
    chk->callback([=, &out, &code]() {
      GComplex c = GComplex::from_json(nlohmann::json::parse(detail::read_file(*cin_path)));
      FreenessResult r = check_free(c);
      if (r.free) {
        out << "free\n";
      } else {
        out << "not free: face " << r.face << " meets its translate under g=" << r.g << "\n";
        code = kFailed;
      }
    });

    auto* info = complex_cmd->add_subcommand("info", "complex summary");
    auto iin_path = std::make_shared<std::string>();
    info->add_option("--in", *iin_path, "complex JSON")->required();
    info->callback([=, &out]() {
      GComplex c = GComplex::from_json(nlohmann::json::parse(detail::read_file(*iin_path)));
      FreenessResult r = check_free(c);
      out << "group order " << c.group().order() << "\n"
          << "atoms " << c.num_atoms() << "\n"
          << "vertices " << c.num_vertices() << "\n"
          << "maximal faces " << c.maximal_faces().size() << "\n"
          << "dim " << c.dim() << "\n"
          << "pure " << (c.is_pure() ? "yes" : "no") << "\n"
          << "free " << (r.free ? "yes" : "no") << "\n";
    });
  }

  // quotient ----------------------------------------------------------
  auto* quot_cmd = app.add_subcommand("quotient", "quotient (G-Borsuk) graphs");
  for (const char* name : {"build", "export-dimacs"}) {
    auto* sub = quot_cmd->add_subcommand(
        name, std::string(name) == "build" ? "quotient graph of a triangulation (DIMACS)"
                                           : "alias of build");
    auto in_path = std::make_shared<std::string>();
    auto out_path = std::make_shared<std::string>();
    sub->add_option("--in", *in_path, "complex JSON")->required();
    sub->add_option("--out", *out_path, "output file");
    sub->callback([=, &out]() {
      GComplex c = GComplex::from_json(nlohmann::json::parse(detail::read_file(*in_path)));
      detail::write_output(*out_path, to_dimacs(quotient_graph(c)), out);
    });
  }

  // chromatic ----------------------------------------------------------
  auto* chrom_cmd = app.add_subcommand("chromatic", "exact coloring");
  {
    auto* exact = chrom_cmd->add_subcommand("exact", "exact chromatic number");
    auto gpath = std::make_shared<std::string>();
    auto budget = std::make_shared<std::uint64_t>(kDefaultBudget);
    auto warm = std::make_shared<std::string>();
    exact->add_option("--graph", *gpath, "DIMACS graph")->required();
    exact->add_option("--budget", *budget, "branch node budget");
    exact->add_option("--warm", *warm, "proper coloring file for the upper bound");
    exact->callback([=, &out, &code]() {
      QuotGraph g = from_dimacs(detail::read_file(*gpath));
      std::optional<Coloring> w;
      if (!warm->empty()) {
        auto vals = detail::load_vertex_values(*warm);
        std::vector<int> colors(g.n, -1);
        for (auto [v, c] : vals) colors[v] = c;
        w = Coloring::of(std::move(colors));
      }
      ChromaticResult r = exact_chromatic(g, *budget, std::move(w));
      if (!r.exact) {
        out << "timeout lower " << r.lower << " upper " << r.upper << "\n";
        code = kTimeout;
        return;
      }
      out << "chi " << r.chi() << "\n" << detail::coloring_lines(r.witness->colors);
    });

    auto* extend = chrom_cmd->add_subcommand("extend", "precoloring extension");
    auto epath = std::make_shared<std::string>();
    auto ecolors = std::make_shared<int>(0);
    auto eprecolor = std::make_shared<std::string>();
    auto ebudget = std::make_shared<std::uint64_t>(kDefaultBudget);
    extend->add_option("--graph", *epath, "DIMACS graph")->required();
    extend->add_option("--colors", *ecolors, "palette size")->required();
    extend->add_option("--precolor", *eprecolor, "file of 'v <vertex> <color>' lines");
    extend->add_option("--budget", *ebudget, "branch node budget");
    extend->callback([=, &out, &code]() {
      QuotGraph g = from_dimacs(detail::read_file(*epath));
      std::vector<std::pair<int, int>> pre;
      if (!eprecolor->empty()) pre = detail::load_vertex_values(*eprecolor);
      ColoringProblem p(std::move(g), *ecolors, std::move(pre));
      ExtendResult r = extend_precoloring(p, *ebudget);
      if (r.status == SolveStatus::sat) {
        out << "SAT\n" << detail::coloring_lines(r.coloring->colors);
      } else if (r.status == SolveStatus::unsat) {
        out << "UNSAT\n";
        code = kFailed;
      } else {
        out << "timeout\n";
        code = kTimeout;
      }
    });

    auto* ilp = chrom_cmd->add_subcommand("export-ilp", "LP-format assignment model");
    auto ipath = std::make_shared<std::string>();
    auto icolors = std::make_shared<int>(0);
    auto iprecolor = std::make_shared<std::string>();
    auto iout = std::make_shared<std::string>();
    ilp->add_option("--graph", *ipath, "DIMACS graph")->required();
    ilp->add_option("--colors", *icolors, "palette size")->required();
    ilp->add_option("--precolor", *iprecolor, "precoloring file");
    ilp->add_option("--out", *iout, "output file");
    ilp->callback([=, &out]() {
      QuotGraph g = from_dimacs(detail::read_file(*ipath));
      std::vector<std::pair<int, int>> pre;
      if (!iprecolor->empty()) pre = detail::load_vertex_values(*iprecolor);
      ColoringProblem p(std::move(g), *icolors, std::move(pre));
      detail::write_output(*iout, export_ilp(p), out);
    });

    auto* imp = chrom_cmd->add_subcommand("import-solution", "verify an external solution");
    auto mpath = std::make_shared<std::string>();
    auto mcolors = std::make_shared<int>(0);
    auto msol = std::make_shared<std::string>();
    auto mprecolor = std::make_shared<std::string>();
    imp->add_option("--graph", *mpath, "DIMACS graph")->required();
    imp->add_option("--colors", *mcolors, "palette size")->required();
    imp->add_option("--solution", *msol, "file of 'v <vertex> <color>' lines")->required();
    imp->add_option("--precolor", *mprecolor, "precoloring file");
    imp->callback([=, &out, &code]() {
      QuotGraph g = from_dimacs(detail::read_file(*mpath));
      std::vector<std::pair<int, int>> pre;
      if (!mprecolor->empty()) pre = detail::load_vertex_values(*mprecolor);
      ColoringProblem p(std::move(g), *mcolors, std::move(pre));
      try {
        Coloring c = import_solution(p, detail::read_file(*msol));
        out << "valid, " << c.num_colors_used << " colors used\n";
      } catch (const solver_error& e) {
        out << "invalid: " << e.what() << "\n";
        code = kFailed;
      }
    });
  }

  // cover ----------------------------------------------------------
  auto* cover_cmd = app.add_subcommand("cover", "G-covers and certificates");
  {
    auto* bnd = cover_cmd->add_subcommand("bounds", "covering number bounds");
    auto bspec = std::make_shared<std::string>();
    auto bfile = std::make_shared<std::string>();
    auto bindex = std::make_shared<int>(0);
    bnd->add_option("--group", *bspec, "group spec");
    bnd->add_option("--group-file", *bfile, "group JSON");
    bnd->add_option("--index", *bindex, "G-index")->required();
    bnd->callback([=, &out]() {
      CoverBounds b = bounds(detail::load_group(*bspec, *bfile), *bindex);
      out << "lower " << b.lower << ", upper " << b.upper << ", conjectured " << b.conjectured
          << "\n";
    });

    auto report_cover = [&out, &code](const CoverColoring& c, const std::string& out_path) {
      if (c.state == VerifyState::verified) {
        out << "verified, " << c.num_colors << " colors, "
            << c.triangulation.num_vertices() << " vertices\n";
      } else {
        code = kFailed;
        out << "verification failed";
        if (c.failure) {
          if (c.failure->loop)
            out << ": loop at vertex " << c.failure->u << " (g=" << c.failure->g << ")";
          else
            out << ": vertices " << c.failure->u << "," << c.failure->v
                << " share a color (g=" << c.failure->g << ")";
        }
        out << "\n";
      }
      if (!out_path.empty()) {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write file: " + out_path);
        f << cover_to_json(c).dump(2) << "\n";
      }
    };

    auto* circ = cover_cmd->add_subcommand("circle", "circle cover of C_N under Z_m");
    auto cm = std::make_shared<int>(0);
    auto cn = std::make_shared<int>(0);
    auto cout_path = std::make_shared<std::string>();
    circ->add_option("--m", *cm, "group order")->required();
    circ->add_option("--refinement", *cn, "cycle length N (default m(m+1))");
    circ->add_option("--out", *cout_path, "cover JSON output");
    circ->callback([=, &out]() {
      int n = *cn > 0 ? *cn : *cm * (*cm + 1);
      report_cover(circle_cover(*cm, n), *cout_path);
    });

    auto* od = cover_cmd->add_subcommand("onedim", "|G|+1 cover of G*G");
    auto ospec = std::make_shared<std::string>();
    auto ofile = std::make_shared<std::string>();
    auto oout = std::make_shared<std::string>();
    od->add_option("--group", *ospec, "group spec");
    od->add_option("--group-file", *ofile, "group JSON");
    od->add_option("--out", *oout, "cover JSON output");
    od->callback([=]() { report_cover(one_dim_cover(detail::load_group(*ospec, *ofile)), *oout); });

    auto* jn = cover_cmd->add_subcommand("join", "recursive cover of G * base");
    auto jspec = std::make_shared<std::string>();
    auto jfile = std::make_shared<std::string>();
    auto jbase = std::make_shared<std::string>();
    auto jextra = std::make_shared<int>(0);
    auto jout = std::make_shared<std::string>();
    jn->add_option("--group", *jspec, "group spec");
    jn->add_option("--group-file", *jfile, "group JSON");
    jn->add_option("--base", *jbase, "base cover JSON")->required();
    jn->add_option("--extra", *jextra, "extra subdivisions");
    jn->add_option("--out", *jout, "cover JSON output");
    jn->callback([=]() {
      CoverColoring base = cover_from_json(nlohmann::json::parse(detail::read_file(*jbase)));
      report_cover(join_cover(detail::load_group(*jspec, *jfile), base, *jextra), *jout);
    });

    auto* ver = cover_cmd->add_subcommand("verify", "re-verify a cover certificate");
    auto vin = std::make_shared<std::string>();
    ver->add_option("--in", *vin, "cover JSON")->required();
    ver->callback([=]() {
      CoverColoring c = cover_from_json(nlohmann::json::parse(detail::read_file(*vin)));
      report_cover(verify_cover(std::move(c)), "");
    });

    auto* pipe = cover_cmd->add_subcommand("pipeline", "search for a |G|+d cover");
    auto pspec = std::make_shared<std::string>();
    auto pfile = std::make_shared<std::string>();
    auto pdim = std::make_shared<int>(2);
    auto pmaxk = std::make_shared<int>(4);
    auto pbudget = std::make_shared<std::uint64_t>(kDefaultBudget);
    auto pout = std::make_shared<std::string>();
    auto pcover = std::make_shared<std::string>();
    auto pilp = std::make_shared<std::string>();
    auto patk = std::make_shared<int>(-1);
    pipe->add_option("--group", *pspec, "group spec");
    pipe->add_option("--group-file", *pfile, "group JSON");
    pipe->add_option("--dim", *pdim, "target dimension")->required();
    pipe->add_option("--max-k", *pmaxk, "max subdivision rounds");
    pipe->add_option("--budget", *pbudget, "solver branch node budget");
    pipe->add_option("--out", *pout, "pipeline report JSON output");
    pipe->add_option("--cover-out", *pcover, "cover JSON output on success");
    auto pgraph = std::make_shared<std::string>();
    auto ppre = std::make_shared<std::string>();
    pipe->add_option("--export-ilp", *pilp,
                     "export the extension instance as an LP file instead of solving");
    pipe->add_option("--at-k", *patk, "refinement for --export-ilp");
    pipe->add_option("--export-graph", *pgraph, "also write the instance graph (DIMACS)");
    pipe->add_option("--export-precolor", *ppre, "also write the precoloring (v lines)");
    pipe->callback([=, &out, &code]() {
      GroupTable g = detail::load_group(*pspec, *pfile);
      if (!pilp->empty()) {
        int k = *patk >= 0 ? *patk : *pmaxk;
        PipelineInstance inst = pipeline_instance(g, *pdim, k, *pbudget);
        ColoringProblem p(inst.quotient, inst.palette, inst.precolored);
        detail::write_output(*pilp, export_ilp(p), out);
        if (!pgraph->empty()) detail::write_output(*pgraph, to_dimacs(inst.quotient), out);
        if (!ppre->empty()) {
          std::ostringstream pre;
          for (auto [v, c] : inst.precolored) pre << "v " << v << " " << c << "\n";
          detail::write_output(*ppre, pre.str(), out);
        }
        out << "instance at k=" << k << ": " << inst.quotient.n << " vertices, "
            << inst.quotient.num_edges() << " edges, palette " << inst.palette
            << ", base " << (inst.base_proper ? "proper" : "improper") << "\n";
        return;
      }
      PipelineReport rep = pipeline(g, *pdim, *pmaxk, *pbudget);
      if (!pout->empty()) {
        std::ofstream f(*pout, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write file: " + *pout);
        f << report_to_json(rep).dump(2) << "\n";
      }
      for (const auto& tr : rep.trace) {
        out << "k=" << tr.k << " vertices=" << tr.num_vertices
            << " base=" << (tr.base_proper ? "proper" : "improper");
        if (tr.quotient_loops) out << " loops";
        if (tr.extend)
          out << " extend="
              << (*tr.extend == SolveStatus::sat     ? "sat"
                  : *tr.extend == SolveStatus::unsat ? "unsat"
                                                     : "timeout");
        out << "\n";
      }
      if (rep.status == PipelineStatus::found) {
        out << "found: " << rep.cover->num_colors << " colors (lower bound "
            << rep.cover_bounds.lower << ")\n";
        if (!pcover->empty()) {
          std::ofstream f(*pcover, std::ios::binary);
          if (!f) throw std::runtime_error("cannot write file: " + *pcover);
          f << cover_to_json(*rep.cover).dump(2) << "\n";
        }
      } else if (rep.status == PipelineStatus::timeout) {
        out << "timeout\n";
        code = kTimeout;
      } else {
        out << "no cover found up to max-k\n";
        code = kFailed;
      }
    });
  }

  // hom ----------------------------------------------------------
  auto* hom_cmd = app.add_subcommand("hom", "Hom-complex cells");
  {
    auto* cells = hom_cmd->add_subcommand("cells", "enumerate cells of Hom(K_m, H)");
    auto hm = std::make_shared<int>(2);
    auto ht = std::make_shared<int>(0);
    auto hgraph = std::make_shared<std::string>();
    auto hmax = std::make_shared<int>(-1);
    auto hout = std::make_shared<std::string>();
    cells->add_option("--m", *hm, "source clique size")->required();
    cells->add_option("--t", *ht, "target complete graph K_t");
    cells->add_option("--graph", *hgraph, "target graph (DIMACS)");
    cells->add_option("--max-dim", *hmax, "cap on cell dimension");
    cells->add_option("--out", *hout, "output file");
    cells->callback([=, &out]() {
      QuotGraph h = hgraph->empty() ? complete_graph(*ht)
                                    : from_dimacs(detail::read_file(*hgraph));
      std::optional<int> cap;
      if (*hmax >= 0) cap = *hmax;
      auto cs = hom_cells(*hm, h, cap);
      detail::write_output(*hout, cells_to_json(cs).dump() + "\n", out);
    });

    auto* dim = hom_cmd->add_subcommand("dim", "dim Hom(K_m, K_t)");
    auto dm = std::make_shared<int>(2);
    auto dt = std::make_shared<int>(2);
    dim->add_option("--m", *dm, "source clique size")->required();
    dim->add_option("--t", *dt, "target complete graph K_t")->required();
    dim->callback([=, &out]() { out << hom_dimension_complete(*dm, *dt).first << "\n"; });

    auto* skel = hom_cmd->add_subcommand("skeleton", "1-skeleton of Hom(K_m, H)");
    auto sm = std::make_shared<int>(2);
    auto st = std::make_shared<int>(0);
    auto sgraph = std::make_shared<std::string>();
    auto sout = std::make_shared<std::string>();
    skel->add_option("--m", *sm, "source clique size")->required();
    skel->add_option("--t", *st, "target complete graph K_t");
    skel->add_option("--graph", *sgraph, "target graph (DIMACS)");
    skel->add_option("--out", *sout, "output file");
    skel->callback([=, &out]() {
      QuotGraph h = sgraph->empty() ? complete_graph(*st)
                                    : from_dimacs(detail::read_file(*sgraph));
      detail::write_output(*sout, to_dimacs(hom_one_skeleton(*sm, h)), out);
    });
  }

  // random ----------------------------------------------------------
  auto* random_cmd = app.add_subcommand("random", "random G-Borsuk graph experiments");
  {
    auto add_space_opts = [](CLI::App* cmd, auto space, auto order, auto sdim) {
      cmd->add_option("--space", *space, "circle | sphere");
      cmd->add_option("--order", *order, "group order (circle)");
      cmd->add_option("--sphere-dim", *sdim, "sphere dimension");
    };

    auto* sweep = random_cmd->add_subcommand("sweep", "chromatic threshold sweep");
    auto w_space = std::make_shared<std::string>("circle");
    auto w_order = std::make_shared<int>(2);
    auto w_sdim = std::make_shared<int>(1);
    auto w_n = std::make_shared<int>(1000);
    auto w_trials = std::make_shared<int>(10);
    auto w_epsc = std::make_shared<double>(6.0);
    auto w_eps = std::make_shared<double>(0.0);
    auto w_mode = std::make_shared<std::string>("exact");
    auto w_seed = std::make_shared<std::uint64_t>(0);
    auto w_threads = std::make_shared<int>(1);
    auto w_budget = std::make_shared<std::uint64_t>(kDefaultBudget);
    auto w_csv = std::make_shared<std::string>();
    auto w_json = std::make_shared<std::string>();
    add_space_opts(sweep, w_space, w_order, w_sdim);
    sweep->add_option("--n", *w_n, "points per trial")->required();
    sweep->add_option("--trials", *w_trials, "number of trials");
    sweep->add_option("--eps-c", *w_epsc, "coefficient C in C(log n/n)^(1/d)");
    sweep->add_option("--eps", *w_eps, "fixed epsilon (overrides --eps-c)");
    sweep->add_option("--mode", *w_mode, "exact | kcolor | bipartite");
    sweep->add_option("--seed", *w_seed, "RNG seed")->envname("GBORSUK_SEED");
    sweep->add_option("--threads", *w_threads, "parallel trials");
    sweep->add_option("--budget", *w_budget, "solver branch node budget");
    sweep->add_option("--csv", *w_csv, "per-trial CSV output file");
    sweep->add_option("--json", *w_json, "summary JSON output file");
    sweep->callback([=, &out]() {
      ExperimentConfig cfg{detail::parse_space(*w_space, *w_order, *w_sdim),
                           *w_n,
                           *w_epsc,
                           *w_eps > 0 ? std::optional<double>(*w_eps) : std::nullopt,
                           *w_trials,
                           *w_seed,
                           *w_mode == "bipartite" ? SweepMode::bipartite
                           : *w_mode == "kcolor"  ? SweepMode::k_colorability
                                                  : SweepMode::exact_chromatic,
                           *w_threads,
                           *w_budget};
      ExperimentResult r = threshold_sweep(cfg);
      if (!w_csv->empty()) detail::write_output(*w_csv, to_csv(r), out);
      std::string summary = summary_json(r).dump(2) + "\n";
      if (!w_json->empty()) detail::write_output(*w_json, summary, out);
      out << summary;
    });

    auto* clique = random_cmd->add_subcommand("clique", "clique number sweep");
    auto c_space = std::make_shared<std::string>("circle");
    auto c_order = std::make_shared<int>(2);
    auto c_sdim = std::make_shared<int>(1);
    auto c_n = std::make_shared<int>(1000);
    auto c_trials = std::make_shared<int>(10);
    auto c_epsc = std::make_shared<double>(6.0);
    auto c_eps = std::make_shared<double>(0.0);
    auto c_seed = std::make_shared<std::uint64_t>(0);
    auto c_threads = std::make_shared<int>(1);
    auto c_csv = std::make_shared<std::string>();
    auto c_json = std::make_shared<std::string>();
    add_space_opts(clique, c_space, c_order, c_sdim);
    clique->add_option("--n", *c_n, "points per trial")->required();
    clique->add_option("--trials", *c_trials, "number of trials");
    clique->add_option("--eps-c", *c_epsc, "coefficient C in C(log n/n)^(1/d)");
    clique->add_option("--eps", *c_eps, "fixed epsilon (overrides --eps-c)");
    clique->add_option("--seed", *c_seed, "RNG seed")->envname("GBORSUK_SEED");
    clique->add_option("--threads", *c_threads, "parallel trials");
    clique->add_option("--csv", *c_csv, "per-trial CSV output file");
    clique->add_option("--json", *c_json, "summary JSON output file");
    clique->callback([=, &out]() {
      ExperimentConfig cfg{detail::parse_space(*c_space, *c_order, *c_sdim),
                           *c_n,
                           *c_epsc,
                           *c_eps > 0 ? std::optional<double>(*c_eps) : std::nullopt,
                           *c_trials,
                           *c_seed,
                           SweepMode::exact_chromatic,
                           *c_threads,
                           kDefaultBudget};
      ExperimentResult r = clique_sweep(cfg);
      if (!c_csv->empty()) detail::write_output(*c_csv, to_csv(r), out);
      std::string summary = summary_json(r).dump(2) + "\n";
      if (!c_json->empty()) detail::write_output(*c_json, summary, out);
      out << summary;
    });

    auto* net = random_cmd->add_subcommand("net", "greedy delta-net with certificate");
    auto n_space = std::make_shared<std::string>("circle");
    auto n_order = std::make_shared<int>(2);
    auto n_sdim = std::make_shared<int>(1);
    auto n_delta = std::make_shared<double>(0.1);
    auto n_seed = std::make_shared<std::uint64_t>(0);
    add_space_opts(net, n_space, n_order, n_sdim);
    net->add_option("--delta", *n_delta, "net radius")->required();
    net->add_option("--seed", *n_seed, "RNG seed")->envname("GBORSUK_SEED");
    net->callback([=, &out, &code]() {
      NetResult r = greedy_net(detail::parse_space(*n_space, *n_order, *n_sdim), *n_delta,
                               *n_seed);
      nlohmann::json j = {{"size", r.points.size()},
                          {"min_pairwise", r.min_pairwise},
                          {"covering_radius", r.covering_radius},
                          {"certified", r.certified}};
      out << j.dump(2) << "\n";
      if (!r.certified) code = kFailed;
    });
  }

  // render ----------------------------------------------------------
  {
    auto* render = app.add_subcommand("render", "SVG picture of a cover of Z_m * S^1");
    auto r_cover = std::make_shared<std::string>();
    auto r_out = std::make_shared<std::string>();
    auto r_mesh = std::make_shared<int>(200);
    auto r_radius = std::make_shared<double>(3.0);
    render->add_option("--cover", *r_cover, "cover JSON")->required();
    render->add_option("--out", *r_out, "SVG output file");
    render->add_option("--mesh", *r_mesh, "mesh points per disk side");
    render->add_option("--radius", *r_radius, "m-gon circumradius");
    render->callback([=, &out]() {
      RenderSpec spec{cover_from_json(nlohmann::json::parse(detail::read_file(*r_cover)))};
      spec.mesh = *r_mesh;
      spec.radius = *r_radius;
      detail::write_output(*r_out, render_cover(spec), out);
    });
  }

  try {
    std::reverse(argv.begin(), argv.end());
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const solver_error& e) {
    if (e.which() == solver_error::kind::loopy_graph ||
        e.which() == solver_error::kind::improper_precoloring) {
      err << "error: " << e.what() << "\n";
      return kFailed;
    }
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return code;
}

}  // namespace gborsuk::cli
