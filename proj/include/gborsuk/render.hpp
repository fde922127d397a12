#pragma once

#include "gborsuk/covers.hpp"

#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace gborsuk {

class render_error : public std::runtime_error {
 public:
  enum class kind { not_a_cone_complex, palette_too_small };

  render_error(kind k, const std::string& msg) : std::runtime_error(msg), kind_(k) {}
  kind which() const { return kind_; }

 private:
  kind kind_;
};

/// Figure-style rendering of a cover of Z_m * S^1: one unit disk per cone,
/// placed at the vertices of a regular m-gon, a mesh of points in each disk
/// colored by the nearest triangulation vertex in disk coordinates.
struct RenderSpec {
  CoverColoring cover;
  int mesh = 200;        // mesh points per disk side
  double radius = 3.0;   // m-gon circumradius
  std::vector<std::string> palette = {"#e6194b", "#3cb44b", "#ffe119", "#4363d8",
                                      "#f58231", "#911eb4", "#46f0f0", "#f032e6",
                                      "#bcf60c", "#fabebe", "#008080", "#9a6324"};
};

namespace detail {

struct DiskVertex {
  int id;
  double x, y;  // disk-local coordinates, radius 1 - apex weight
};

}  // namespace detail

inline std::string render_cover(const RenderSpec& spec) {
  const GComplex& t = spec.cover.triangulation;
  int m = t.group().order();
  if (t.num_atoms() != 2 * m)
    throw render_error(render_error::kind::not_a_cone_complex,
                       "expected a join of the group with an m-cycle");
  if (spec.cover.num_colors > static_cast<int>(spec.palette.size()))
    throw render_error(render_error::kind::palette_too_small,
                       "palette has fewer entries than the cover has colors");

  // Split every vertex into (cone, radius, angle).
  struct Pos {
    int cone;  // -1 for base-circle vertices
    double r, theta;
  };
  std::vector<Pos> pos(t.num_vertices());
  for (int v = 0; v < t.num_vertices(); ++v) {
    const VertexLabel& lbl = t.label(v);
    Rational tw = 0;
    int apex = -1;
    VertexLabel foot;
    for (const auto& [a, w] : lbl.weights) {
      if (a < m) {
        if (apex != -1)
          throw render_error(render_error::kind::not_a_cone_complex,
                             "vertex lies over two cone apexes");
        apex = a;
        tw = w;
      } else {
        foot.weights.emplace_back(a - m, w);
      }
    }
    double theta = 0;
    if (!foot.weights.empty()) {
      Rational total = 0;
      for (auto& [a, w] : foot.weights) total += w;
      for (auto& [a, w] : foot.weights) w /= total;
      Rational frac = detail::cycle_position(foot, m);
      theta = 2 * std::numbers::pi * frac.convert_to<double>();
    }
    double tv = tw.convert_to<double>();
    pos[v] = {tv == 0 ? -1 : apex, 1.0 - tv, theta};
  }

  std::ostringstream svg;
  svg << std::fixed << std::setprecision(4);
  double extent = spec.radius + 1.2;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << -extent << " " << -extent
      << " " << 2 * extent << " " << 2 * extent << "\">\n";

  double cell = 2.0 / spec.mesh;
  for (int disk = 0; disk < m; ++disk) {
    double cx = spec.radius * std::cos(2 * std::numbers::pi * disk / m);
    double cy = spec.radius * std::sin(2 * std::numbers::pi * disk / m);
    std::vector<detail::DiskVertex> verts;
    for (int v = 0; v < t.num_vertices(); ++v) {
      if (pos[v].cone != -1 && pos[v].cone != disk) continue;
      verts.push_back({v, pos[v].r * std::cos(pos[v].theta), pos[v].r * std::sin(pos[v].theta)});
    }
    svg << "<g class=\"disk\" transform=\"translate(" << cx << " " << cy << ")\">\n";
    for (int j = 0; j < spec.mesh; ++j) {
      double y = -1 + cell * (j + 0.5);
      int run_color = -1;
      int run_start = 0;
      auto flush = [&](int upto) {
        if (run_color < 0) return;
        double x0 = -1 + cell * run_start;
        svg << "<rect x=\"" << x0 << "\" y=\"" << y - cell / 2 << "\" width=\""
            << cell * (upto - run_start) << "\" height=\"" << cell << "\" fill=\""
            << spec.palette[run_color] << "\"/>\n";
      };
      for (int i = 0; i < spec.mesh; ++i) {
        double x = -1 + cell * (i + 0.5);
        int color = -1;
        if (x * x + y * y <= 1.0) {
          double best = 0;
          int best_id = -1;
          for (const auto& dv : verts) {
            double d = (dv.x - x) * (dv.x - x) + (dv.y - y) * (dv.y - y);
            if (best_id == -1 || d < best || (d == best && dv.id < best_id)) {
              best = d;
              best_id = dv.id;
            }
          }
          if (best_id != -1) color = spec.cover.colors[best_id];
        }
        if (color != run_color) {
          flush(i);
          run_color = color;
          run_start = i;
        }
      }
      flush(spec.mesh);
    }
    svg << "<circle cx=\"0\" cy=\"0\" r=\"1\" fill=\"none\" stroke=\"black\" "
           "stroke-width=\"0.01\"/>\n";
    svg << "</g>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace gborsuk
