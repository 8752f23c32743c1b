#pragma once

#include "srvbv/curve.hpp"

#include <cstdio>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace srvbv {

namespace detail {

using PlanePoint = std::pair<double, double>;

inline std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

struct PlaneFigure {
  std::vector<std::vector<PlanePoint>> runs;            // continuity pieces
  std::vector<std::pair<PlanePoint, PlanePoint>> gaps;  // jump chords, drawn dotted
};

// Projects a curve to the drawing plane: first two coordinates, or the
// (parameter, first coordinate) graph when profile is set. Dimension one is
// always drawn as a graph.
inline PlaneFigure plane_figure(const SbvCurve& c, bool profile) {
  const bool graph = profile || c.dimension == 1;
  auto project = [&](double t, const Vec& v) -> PlanePoint {
    if (graph) return {t, v[0]};
    return {v[0], v[1]};
  };
  PlaneFigure fig;
  std::vector<PlanePoint> run;
  run.push_back(project(c.nodes.front().t, c.nodes.front().right));
  for (std::size_t i = 1; i < c.nodes.size(); ++i) {
    const Node& n = c.nodes[i];
    run.push_back(project(n.t, n.left));
    if (n.is_jump()) {
      fig.gaps.push_back({run.back(), project(n.t, n.right)});
      fig.runs.push_back(std::move(run));
      run.clear();
      run.push_back(project(n.t, n.right));
    }
  }
  fig.runs.push_back(std::move(run));
  return fig;
}

}  // namespace detail

// Renders curves to a fixed 640x480 SVG with a 5 percent margin, byte
// deterministic for identical inputs. Continuity pieces are polylines, jumps
// are dotted chords, the optional correspondences are thin gray lines between
// point pairs. Curves of dimension one (or any curve with profile set) are
// drawn as parameter-value graphs; otherwise the first two coordinates are
// used and correspondences are drawn in that plane.
inline std::string render_svg(const std::vector<SbvCurve>& curves,
                              const std::vector<std::pair<Vec, Vec>>& correspondences = {},
                              bool profile = false) {
  if (curves.empty()) throw std::invalid_argument("render_svg: no curves");
  const bool graph = profile || curves.front().dimension == 1;
  for (const SbvCurve& c : curves) {
    if (c.dimension != curves.front().dimension)
      throw std::invalid_argument("render_svg: mixed dimensions");
    if (!graph && c.dimension < 2)
      throw std::invalid_argument("render_svg: need dimension >= 2 for a plane plot");
  }

  std::vector<detail::PlaneFigure> figures;
  for (const SbvCurve& c : curves) figures.push_back(detail::plane_figure(c, profile));

  std::vector<std::pair<detail::PlanePoint, detail::PlanePoint>> chords;
  if (!graph) {
    for (const auto& [p, q] : correspondences) {
      if (p.size() < 2 || q.size() < 2)
        throw std::invalid_argument("render_svg: correspondence points need dimension >= 2");
      chords.push_back({{p[0], p[1]}, {q[0], q[1]}});
    }
  }

  double x0 = 0.0, x1 = 0.0, y0 = 0.0, y1 = 0.0;
  bool first = true;
  auto absorb = [&](const detail::PlanePoint& p) {
    if (first) {
      x0 = x1 = p.first;
      y0 = y1 = p.second;
      first = false;
      return;
    }
    x0 = std::min(x0, p.first);
    x1 = std::max(x1, p.first);
    y0 = std::min(y0, p.second);
    y1 = std::max(y1, p.second);
  };
  for (const auto& fig : figures) {
    for (const auto& run : fig.runs)
      for (const auto& p : run) absorb(p);
    for (const auto& g : fig.gaps) {
      absorb(g.first);
      absorb(g.second);
    }
  }
  for (const auto& ch : chords) {
    absorb(ch.first);
    absorb(ch.second);
  }

  const double width = 640.0, height = 480.0;
  const double mx = 0.05 * width, my = 0.05 * height;
  const double spanx = x1 - x0, spany = y1 - y0;
  auto to_px = [&](const detail::PlanePoint& p) -> detail::PlanePoint {
    const double fx = spanx > 0.0 ? (p.first - x0) / spanx : 0.5;
    const double fy = spany > 0.0 ? (p.second - y0) / spany : 0.5;
    return {mx + fx * (width - 2.0 * mx), height - (my + fy * (height - 2.0 * my))};
  };

  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};
  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" viewBox=\"0 0 640 480\">\n";
  out += "<rect width=\"640\" height=\"480\" fill=\"#ffffff\"/>\n";
  for (const auto& ch : chords) {
    const auto a = to_px(ch.first), b = to_px(ch.second);
    out += "<line x1=\"" + detail::fmt6(a.first) + "\" y1=\"" + detail::fmt6(a.second) +
           "\" x2=\"" + detail::fmt6(b.first) + "\" y2=\"" + detail::fmt6(b.second) +
           "\" stroke=\"#999999\" stroke-width=\"0.6\"/>\n";
  }
  for (std::size_t ci = 0; ci < figures.size(); ++ci) {
    const char* color = palette[ci % 4];
    const char* dash = ci == 0 ? "" : " stroke-dasharray=\"6,4\"";
    for (const auto& run : figures[ci].runs) {
      if (run.size() < 2) continue;
      out += "<polyline points=\"";
      for (std::size_t i = 0; i < run.size(); ++i) {
        const auto p = to_px(run[i]);
        if (i) out += " ";
        out += detail::fmt6(p.first) + "," + detail::fmt6(p.second);
      }
      out += "\" fill=\"none\" stroke=\"";
      out += color;
      out += "\" stroke-width=\"1.8\"";
      out += dash;
      out += "/>\n";
    }
    for (const auto& g : figures[ci].gaps) {
      const auto a = to_px(g.first), b = to_px(g.second);
      out += "<line x1=\"" + detail::fmt6(a.first) + "\" y1=\"" + detail::fmt6(a.second) +
             "\" x2=\"" + detail::fmt6(b.first) + "\" y2=\"" + detail::fmt6(b.second) +
             "\" stroke=\"";
      out += color;
      out += "\" stroke-width=\"1.2\" stroke-dasharray=\"1.5,3\"/>\n";
    }
  }
  out += "</svg>\n";
  return out;
}

inline std::string render_svg(const SbvCurve& c, bool profile = false) {
  return render_svg(std::vector<SbvCurve>{c}, {}, profile);
}

}  // namespace srvbv
