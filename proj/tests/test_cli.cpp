#include "gborsuk/cli.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

using gborsuk::cli::run;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / "gborsuk_cli_test";
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Result {
  int code;
  std::string out, err;
};

Result cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("bounds and hom dim print the documented lines") {
  auto r = cli({"cover", "bounds", "--group", "Z5", "--index", "2"});
  CHECK(r.code == 0);
  CHECK(r.out == "lower 7, upper 10, conjectured 7\n");

  auto h = cli({"hom", "dim", "--m", "2", "--t", "5"});
  CHECK(h.code == 0);
  CHECK(h.out == "3\n");
}

TEST_CASE("usage errors exit 2") {
  CHECK(cli({"frobnicate"}).code == 2);
  CHECK(cli({"cover", "bounds"}).code == 2);  // missing --index
  CHECK(cli({}).code == 2);
}

TEST_CASE("group commands") {
  auto r = cli({"group", "build", "--group", "Z2xZ3"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("order").get<int>() == 6);
  // Byte determinism.
  CHECK(cli({"group", "build", "--group", "Z2xZ3"}).out == r.out);

  auto s = cli({"group", "show", "--group", "S3"});
  CHECK(s.code == 0);
  CHECK(s.out.find("abelian no") != std::string::npos);
}

TEST_CASE("complex and quotient round trip through files") {
  TempDir tmp;
  auto c = cli({"complex", "build", "--kind", "cycle", "--m", "6", "--out",
                tmp.file("c6.json")});
  REQUIRE(c.code == 0);

  auto info = cli({"complex", "info", "--in", tmp.file("c6.json")});
  CHECK(info.out.find("vertices 6") != std::string::npos);
  CHECK(info.out.find("free no") != std::string::npos);

  auto sub = cli({"complex", "subdivide", "--in", tmp.file("c6.json"), "--method",
                  "medial2d", "--out", tmp.file("c12.json")});
  REQUIRE(sub.code == 0);
  auto chk = cli({"complex", "check-free", "--in", tmp.file("c12.json")});
  CHECK(chk.code == 0);
  CHECK(chk.out == "free\n");
  CHECK(cli({"complex", "check-free", "--in", tmp.file("c6.json")}).code == 1);

  // Loops are flagged in the DIMACS header of a too-coarse quotient.
  auto q = cli({"quotient", "build", "--in", tmp.file("c6.json")});
  CHECK(q.code == 0);
  CHECK(q.out.find("p edge 6") != std::string::npos);
  CHECK(q.out.find("ERROR") != std::string::npos);

  auto q12 = cli({"quotient", "export-dimacs", "--in", tmp.file("c12.json"), "--out",
                  tmp.file("c12.dimacs")});
  CHECK(q12.code == 0);
  CHECK(slurp(tmp.file("c12.dimacs")).find("p edge 12") != std::string::npos);
}

TEST_CASE("chromatic commands") {
  TempDir tmp;
  {
    std::ofstream f(tmp.file("tri.dimacs"));
    f << "p edge 3 3\ne 1 2\ne 2 3\ne 1 3\n";
  }
  auto ex = cli({"chromatic", "exact", "--graph", tmp.file("tri.dimacs")});
  CHECK(ex.code == 0);
  CHECK(ex.out.rfind("chi 3\n", 0) == 0);

  auto un = cli({"chromatic", "extend", "--graph", tmp.file("tri.dimacs"), "--colors", "2"});
  CHECK(un.code == 1);
  CHECK(un.out == "UNSAT\n");

  auto sat = cli({"chromatic", "extend", "--graph", tmp.file("tri.dimacs"), "--colors", "3"});
  CHECK(sat.code == 0);
  CHECK(sat.out.rfind("SAT\n", 0) == 0);

  auto ilp = cli({"chromatic", "export-ilp", "--graph", tmp.file("tri.dimacs"), "--colors",
                  "3", "--out", tmp.file("tri.lp")});
  CHECK(ilp.code == 0);
  CHECK(slurp(tmp.file("tri.lp")).find("Binaries") != std::string::npos);

  {
    std::ofstream f(tmp.file("sol.txt"));
    f << "v 0 0\nv 1 1\nv 2 2\n";
  }
  auto imp = cli({"chromatic", "import-solution", "--graph", tmp.file("tri.dimacs"),
                  "--colors", "3", "--solution", tmp.file("sol.txt")});
  CHECK(imp.code == 0);
  CHECK(imp.out.find("valid") != std::string::npos);
  {
    std::ofstream f(tmp.file("bad.txt"));
    f << "v 0 0\nv 1 0\nv 2 2\n";
  }
  CHECK(cli({"chromatic", "import-solution", "--graph", tmp.file("tri.dimacs"), "--colors",
             "3", "--solution", tmp.file("bad.txt")})
            .code == 1);
}

TEST_CASE("cover commands") {
  TempDir tmp;
  auto circ = cli({"cover", "circle", "--m", "3", "--refinement", "12", "--out",
                   tmp.file("circle.json")});
  CHECK(circ.code == 0);
  CHECK(circ.out.find("verified, 4 colors") != std::string::npos);

  auto ver = cli({"cover", "verify", "--in", tmp.file("circle.json")});
  CHECK(ver.code == 0);

  auto od = cli({"cover", "onedim", "--group", "S3"});
  CHECK(od.code == 0);
  CHECK(od.out.find("verified, 7 colors") != std::string::npos);

  auto jn = cli({"cover", "join", "--group", "Z2", "--base", tmp.file("circle.json")});
  CHECK(jn.code == 2);  // group mismatch is a usage-level error

  auto jn3 = cli({"cover", "join", "--group", "Z3", "--base", tmp.file("circle.json"),
                  "--extra", "1"});
  CHECK(jn3.out.find("6 colors") != std::string::npos);
}

TEST_CASE("pipeline and render") {
  TempDir tmp;
  auto pipe = cli({"cover", "pipeline", "--group", "Z3", "--dim", "2", "--max-k", "4",
                   "--out", tmp.file("report.json"), "--cover-out", tmp.file("cover.json")});
  REQUIRE(pipe.code == 0);
  CHECK(pipe.out.find("found: 5 colors (lower bound 5)") != std::string::npos);
  auto report = nlohmann::json::parse(slurp(tmp.file("report.json")));
  CHECK(report.at("status") == "found");
  CHECK(report.at("bounds").at("lower") == 5);

  auto r1 = cli({"render", "--cover", tmp.file("cover.json"), "--mesh", "40", "--out",
                 tmp.file("fig.svg")});
  REQUIRE(r1.code == 0);
  auto svg = slurp(tmp.file("fig.svg"));
  CHECK(svg.rfind("<svg", 0) == 0);
  int disks = 0;
  for (size_t p = svg.find("class=\"disk\""); p != std::string::npos;
       p = svg.find("class=\"disk\"", p +  1))
    ++disks;
  CHECK(disks == 3);
  std::set<std::string> fills;
  for (size_t p = svg.find("fill=\"#"); p != std::string::npos;
       p = svg.find("fill=\"#", p + 1))
    fills.insert(svg.substr(p + 6, 7));
  CHECK(fills.size() == 5);
  // Byte stability.
  auto r2 = cli({"render", "--cover", tmp.file("cover.json"), "--mesh", "40", "--out",
                 tmp.file("fig2.svg")});
  CHECK(slurp(tmp.file("fig2.svg")) == svg);

  auto ilp = cli({"cover", "pipeline", "--group", "Z6", "--dim", "2", "--export-ilp",
                  tmp.file("z6.lp"), "--at-k", "3"});
  CHECK(ilp.code == 0);
  CHECK(ilp.out.find("base proper") != std::string::npos);
  CHECK(slurp(tmp.file("z6.lp")).find("Binaries") != std::string::npos);
}

TEST_CASE("random commands") {
  TempDir tmp;
  auto sweep = cli({"random", "sweep", "--space", "circle", "--order", "2", "--n", "200",
                    "--trials", "2", "--mode", "bipartite", "--seed", "4", "--csv",
                    tmp.file("t.csv")});
  REQUIRE(sweep.code == 0);
  auto j = nlohmann::json::parse(sweep.out);
  CHECK(j.at("trials").get<int>() == 2);
  CHECK(slurp(tmp.file("t.csv")).rfind("trial,seed,", 0) == 0);

  auto net = cli({"random", "net", "--space", "circle", "--delta", "1.0", "--seed", "2"});
  CHECK(net.code == 0);
  CHECK(nlohmann::json::parse(net.out).at("certified").get<bool>());

  auto cl = cli({"random", "clique", "--space", "circle", "--order", "3", "--n", "150",
                 "--trials", "2", "--eps", "0.3", "--seed", "11"});
  CHECK(cl.code == 0);
}

TEST_CASE("seed falls back to the environment") {
  setenv("GBORSUK_SEED", "1234", 1);
  auto a = cli({"random", "net", "--space", "circle", "--delta", "1.5"});
  unsetenv("GBORSUK_SEED");
  auto b = cli({"random", "net", "--space", "circle", "--delta", "1.5", "--seed", "1234"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("hom subcommands on files") {
  auto cells = cli({"hom", "cells", "--m", "2", "--t", "3", "--max-dim", "0"});
  CHECK(cells.code == 0);
  CHECK(nlohmann::json::parse(cells.out).size() == 6);

  auto skel = cli({"hom", "skeleton", "--m", "2", "--t", "3"});
  CHECK(skel.code == 0);
  CHECK(skel.out.find("p edge 6 6") != std::string::npos);
}
